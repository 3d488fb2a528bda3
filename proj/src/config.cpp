#include "ale1d/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ale1d/reference.hpp"

namespace ale1d {

RunMode mode_from_name(const std::string& name) {
    if (name == "lts") return RunMode::lts;
    if (name == "gts") return RunMode::gts;
    fail(ErrorCategory::config, "unknown mode '" + name + "' (valid: lts, gts)");
}

const char* to_string(RunMode m) { return m == RunMode::lts ? "lts" : "gts"; }

State CaseSpec::initial_conserved(const System& sys, double x) const {
    if (custom_initial) return custom_initial(sys, x);
    if (kind == CaseKind::alfven) {
        AlfvenParams p{wave_amplitude, wave_halfwidth, wave_speed, gamma};
        return alfven_exact(x, 0.0, p);
    }
    return sys.conserved(x <= x_jump ? prim_left : prim_right);
}

State CaseSpec::initial_average(const System& sys, double xl, double xr) const {
    double dx = xr - xl;
    if (kind == CaseKind::riemann && !custom_initial) {
        State ql = sys.conserved(prim_left);
        State qr = sys.conserved(prim_right);
        if (xr <= x_jump) return ql;
        if (xl >= x_jump) return qr;
        State avg = ql * ((x_jump - xl) / dx);
        avg.add_scaled((xr - x_jump) / dx, qr);
        return avg;
    }
    // smooth data: fixed high-order quadrature of the pointwise state
    static const int npts = 8;
    std::vector<double> zeta, wq;
    gauss_legendre(npts, zeta, wq);
    State avg(sys.components());
    for (int g = 0; g < npts; ++g)
        avg.add_scaled(wq[static_cast<std::size_t>(g)],
                       initial_conserved(sys, xl + dx * zeta[static_cast<std::size_t>(g)]));
    return avg;
}

namespace {

State euler_prim(double rho, double u, double p) {
    State s(3);
    s[0] = rho; s[1] = u; s[2] = p;
    return s;
}

State mhd_prim(double rho, double u, double v, double w, double p, double bx,
               double by, double bz) {
    State s(9);
    s[0] = rho; s[1] = u; s[2] = v; s[3] = w; s[4] = p;
    s[5] = bx; s[6] = by; s[7] = bz; s[8] = 0.0;
    return s;
}

CaseSpec riemann_case(std::string name, std::string system, double gamma,
                      State left, State right, double x_jump, double t_end,
                      double lo, double hi) {
    CaseSpec c;
    c.name = std::move(name);
    c.system = std::move(system);
    c.gamma = gamma;
    c.kind = CaseKind::riemann;
    c.prim_left = std::move(left);
    c.prim_right = std::move(right);
    c.x_jump = x_jump;
    c.t_end = t_end;
    c.domain_lo = lo;
    c.domain_hi = hi;
    c.mesh_velocity = MeshVelocityKind::fluid_u;
    return c;
}

} // namespace

CaseSpec builtin_case(const std::string& system, const std::string& name) {
    const double rt4pi = std::sqrt(4.0 * M_PI);
    if (system == "euler") {
        if (name == "rp1")
            return riemann_case("rp1", "euler", 1.4, euler_prim(1.0, 0.0, 1.0),
                                euler_prim(0.125, 0.0, 0.1), 0.0, 0.4, -1.0, 1.0);
        if (name == "rp2")
            return riemann_case("rp2", "euler", 1.4, euler_prim(0.445, 0.698, 3.528),
                                euler_prim(0.5, 0.0, 0.571), 0.0, 0.1, -0.5, 0.5);
        if (name == "rp3")
            return riemann_case("rp3", "euler", 1.4, euler_prim(1.0, 0.0, 1000.0),
                                euler_prim(1.0, 0.0, 0.01), 0.1, 0.012, -0.5, 0.5);
        if (name == "rp4")
            return riemann_case("rp4", "euler", 1.4,
                                euler_prim(5.99924, 19.5975, 460.894),
                                euler_prim(5.99242, -6.19633, 46.095), -0.2, 0.035,
                                -1.0, 1.0);
    } else if (system == "mhd") {
        const double g = 5.0 / 3.0;
        if (name == "rp1")
            return riemann_case("rp1", "mhd", g,
                                mhd_prim(1.0, 0, 0, 0, 1.0, 0.75 * rt4pi, rt4pi, 0),
                                mhd_prim(0.125, 0, 0, 0, 0.1, 0.75 * rt4pi, -rt4pi, 0),
                                0.0, 0.1, -0.5, 0.5);
        if (name == "rp2")
            return riemann_case("rp2", "mhd", g,
                                mhd_prim(1.08, 1.2, 0.01, 0.5, 0.95, 2.0, 3.6, 2.0),
                                mhd_prim(0.9891, -0.0131, 0.0269, 0.010037, 0.97159,
                                         2.0, 4.0244, 2.0026),
                                -0.1, 0.2, -1.0, 1.0);
        if (name == "rp3")
            return riemann_case("rp3", "mhd", g,
                                mhd_prim(0.15, 21.55, 1.0, 1.0, 0.28, 0.05, -2.0, -1.0),
                                mhd_prim(0.1, -26.45, 0.0, 0.0, 0.1, 0.05, 2.0, 1.0),
                                0.0, 0.04, -2.0, 2.0);
        if (name == "rp4")
            return riemann_case("rp4", "mhd", g,
                                mhd_prim(1.0, 0, 0, 0, 1.0, 1.3 * rt4pi, rt4pi, 0),
                                mhd_prim(0.4, 0, 0, 0, 0.4, 1.3 * rt4pi, -rt4pi, 0),
                                0.0, 0.16, -0.75, 0.75);
        if (name == "rp5")
            return riemann_case("rp5", "mhd", g,
                                mhd_prim(1.0, 36.87, -0.115, -0.0386, 1.0, 4.0, 4.0, 1.0),
                                mhd_prim(1.0, -36.87, 0.0, 0.0, 1.0, 4.0, 4.0, 1.0),
                                0.0, 0.03, -2.0, 2.0);
        if (name == "rp6")
            return riemann_case("rp6", "mhd", g,
                                mhd_prim(1.7, 0, 0, 0, 1.7, 3.899398, 3.544908, 0.0),
                                mhd_prim(0.2, 0, 0, -1.496891, 0.2, 3.899398, 2.785898,
                                         2.192064),
                                -0.1, 0.15, -0.5, 0.5);
        if (name == "alfven") {
            CaseSpec c;
            c.name = "alfven";
            c.system = "mhd";
            c.gamma = g;
            c.kind = CaseKind::alfven;
            c.domain_lo = -2.0;
            c.domain_hi = 2.0;
            c.t_end = 0.1;
            c.mesh_velocity = MeshVelocityKind::fluid_v;
            return c;
        }
    }
    std::ostringstream os;
    os << "unknown case '" << system << "/" << name << "'; valid cases:";
    for (const auto& s : {std::string("euler"), std::string("mhd")})
        for (const auto& n : builtin_case_names(s)) os << " " << s << "/" << n;
    fail(ErrorCategory::config, os.str());
}

std::vector<std::string> builtin_case_names(const std::string& system) {
    if (system == "euler") return {"rp1", "rp2", "rp3", "rp4"};
    if (system == "mhd") return {"rp1", "rp2", "rp3", "rp4", "rp5", "rp6", "alfven"};
    return {};
}

void RunConfig::validate() const {
    if (order < 2 || order > 5)
        fail(ErrorCategory::config, "order must be in 2..5, got " + std::to_string(order));
    if (!(cfl > 0.0 && cfl <= 1.0))
        fail(ErrorCategory::config, "cfl must lie in (0, 1], got " + std::to_string(cfl));
    if (cells < order)
        fail(ErrorCategory::config, "cell count too small for the stencil");
    if (!(problem.t_end > 0.0))
        fail(ErrorCategory::config, "missing or non-positive t_end");
    if (!(problem.domain_hi > problem.domain_lo))
        fail(ErrorCategory::config, "empty computational domain");
    if (problem.system == "euler" && mesh_velocity() == MeshVelocityKind::fluid_v)
        fail(ErrorCategory::config, "euler has no transverse velocity for the mesh");
    if (osher_points < 1)
        fail(ErrorCategory::config, "osher path quadrature needs at least one point");
}

std::map<std::string, std::string> read_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCategory::io, "cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line, section;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = strip(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCategory::config, "malformed config line: '" + line + "'");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        kv[section.empty() ? key : section + "." + key] = value;
    }
    return kv;
}

namespace {

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(ErrorCategory::config, "key '" + key + "': expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    double d = to_double(key, v);
    int i = static_cast<int>(std::lround(d));
    if (std::abs(d - i) > 1e-12)
        fail(ErrorCategory::config, "key '" + key + "': expected an integer, got '" + v + "'");
    return i;
}

State to_state(const std::string& key, const std::string& v, int n) {
    std::istringstream is(v);
    State s(n);
    for (int i = 0; i < n; ++i)
        if (!(is >> s[i]))
            fail(ErrorCategory::config,
                 "key '" + key + "': expected " + std::to_string(n) + " numbers");
    return s;
}

} // namespace

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    int nprim = cfg.problem.system == "mhd" ? 9 : 3;
    if (key == "case.system") cfg.problem.system = value;
    else if (key == "case.name") cfg.problem = builtin_case(cfg.problem.system, value);
    else if (key == "case.gamma") cfg.problem.gamma = to_double(key, value);
    else if (key == "case.t_end") cfg.problem.t_end = to_double(key, value);
    else if (key == "case.x_d") cfg.problem.x_jump = to_double(key, value);
    else if (key == "case.domain_lo") cfg.problem.domain_lo = to_double(key, value);
    else if (key == "case.domain_hi") cfg.problem.domain_hi = to_double(key, value);
    else if (key == "case.left") cfg.problem.prim_left = to_state(key, value, nprim);
    else if (key == "case.right") cfg.problem.prim_right = to_state(key, value, nprim);
    else if (key == "case.mesh_velocity") cfg.problem.mesh_velocity = mesh_velocity_from_name(value);
    else if (key == "run.order") cfg.order = to_int(key, value);
    else if (key == "run.cfl") cfg.cfl = to_double(key, value);
    else if (key == "run.flux") cfg.flux = flux_from_name(value);
    else if (key == "run.osher_points") cfg.osher_points = to_int(key, value);
    else if (key == "run.mode") cfg.mode = mode_from_name(value);
    else if (key == "run.cells") cfg.cells = to_int(key, value);
    else if (key == "run.mesh_velocity") cfg.mesh_velocity_override = mesh_velocity_from_name(value);
    else if (key == "run.cleaning_speed") cfg.cleaning_speed = to_double(key, value);
    else if (key == "weno.epsilon") cfg.weno.epsilon = to_double(key, value);
    else if (key == "weno.exponent") cfg.weno.exponent = to_double(key, value);
    else if (key == "weno.lambda_central") cfg.weno.lambda_central = to_double(key, value);
    else if (key == "weno.lambda_sided") cfg.weno.lambda_sided = to_double(key, value);
    else fail(ErrorCategory::config, "unknown config key '" + key + "'");
}

RunConfig parse_config_file(const std::string& path) {
    auto kv = read_key_values(path);
    RunConfig cfg;
    // the system key steers state parsing and must be applied first,
    // then a builtin case name, then everything else as overrides
    if (auto it = kv.find("case.system"); it != kv.end()) {
        cfg.problem.system = it->second;
        kv.erase(it);
    }
    if (cfg.problem.system != "euler" && cfg.problem.system != "mhd")
        fail(ErrorCategory::config, "config must set case.system to euler or mhd");
    cfg.problem.gamma = cfg.problem.system == "mhd" ? 5.0 / 3.0 : 1.4;
    cfg.problem.prim_left = State(cfg.problem.system == "mhd" ? 9 : 3);
    cfg.problem.prim_right = State(cfg.problem.system == "mhd" ? 9 : 3);
    cfg.problem.t_end = 0.0;
    if (auto it = kv.find("case.name"); it != kv.end()) {
        cfg.problem = builtin_case(cfg.problem.system, it->second);
        kv.erase(it);
    } else {
        cfg.problem.name = "custom";
    }
    for (const auto& [key, value] : kv) apply_key(cfg, key, value);
    cfg.validate();
    return cfg;
}

} // namespace ale1d
