#include "ale1d/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ale1d {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_solution(const std::string& path, const std::vector<CellSnapshot>& cells,
                    const System& sys) {
    std::ofstream out(path);
    if (!out) fail(ErrorCategory::io, "cannot write '" + path + "'");
    out << "x_center,dx";
    for (const auto& n : sys.conserved_names()) out << "," << n;
    for (const auto& n : sys.primitive_names()) out << "," << n << "_prim";
    out << "\n";
    for (const auto& c : cells) {
        out << fmt17(0.5 * (c.x_left + c.x_right)) << "," << fmt17(c.x_right - c.x_left);
        State prim = sys.primitive(c.avg);
        for (int k = 0; k < c.avg.size(); ++k) out << "," << fmt17(c.avg[k]);
        for (int k = 0; k < prim.size(); ++k) out << "," << fmt17(prim[k]);
        out << "\n";
    }
    if (!out) fail(ErrorCategory::io, "short write to '" + path + "'");
}

int SolutionDump::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    fail(ErrorCategory::io, "solution dump has no column '" + name + "'");
}

SolutionDump read_solution(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCategory::io, "cannot open '" + path + "'");
    SolutionDump dump;
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCategory::io, "empty solution file '" + path + "'");
    std::stringstream hs(line);
    std::string tok;
    while (std::getline(hs, tok, ',')) dump.columns.push_back(tok);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::vector<double> row;
        while (std::getline(ls, tok, ',')) row.push_back(std::stod(tok));
        if (row.size() != dump.columns.size())
            fail(ErrorCategory::io, "ragged row in '" + path + "'");
        dump.rows.push_back(std::move(row));
    }
    return dump;
}

struct SpacetimeMeshWriter::Impl {
    std::ofstream out;
};

SpacetimeMeshWriter::SpacetimeMeshWriter(const std::string& path)
    : impl_(std::make_unique<Impl>()) {
    impl_->out.open(path);
    if (!impl_->out) fail(ErrorCategory::io, "cannot write '" + path + "'");
    impl_->out << "cell,t0,t1,xl0,xr0,xl1,xr1\n";
}

SpacetimeMeshWriter::~SpacetimeMeshWriter() = default;

void SpacetimeMeshWriter::record(const UpdateEvent& ev) {
    impl_->out << ev.cell << "," << fmt17(ev.t_old) << "," << fmt17(ev.t_new) << ","
               << fmt17(ev.xl_old) << "," << fmt17(ev.xr_old) << "," << fmt17(ev.xl_new)
               << "," << fmt17(ev.xr_new) << "\n";
}

namespace {

nlohmann::json state_to_json(const State& s, const std::vector<std::string>& names) {
    nlohmann::json j;
    for (int k = 0; k < s.size(); ++k) j[names[static_cast<std::size_t>(k)]] = s[k];
    return j;
}

} // namespace

void write_report_json(const std::string& path, const RunConfig& cfg,
                       const RunReport& report, const System& sys) {
    nlohmann::json j;
    j["case"] = cfg.problem.system + "/" + cfg.problem.name;
    j["order"] = cfg.order;
    j["cells"] = cfg.cells;
    j["cfl"] = cfg.cfl;
    j["flux"] = to_string(cfg.flux);
    j["mode"] = to_string(cfg.mode);
    j["mesh_velocity"] = to_string(cfg.mesh_velocity());
    j["total_updates"] = report.total_updates;
    j["cycles"] = report.cycles;
    j["wall_seconds"] = report.wall_seconds;
    j["osher_fallbacks"] = report.osher_fallbacks;
    auto names = sys.conserved_names();
    j["conservation_abs"] = state_to_json(report.conservation_abs, names);
    j["conservation_rel"] = state_to_json(report.conservation_rel, names);
    std::ofstream out(path);
    if (!out) fail(ErrorCategory::io, "cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

std::string format_report(const RunConfig& cfg, const RunReport& report,
                          const System& sys) {
    std::ostringstream os;
    os << "case=" << cfg.problem.system << "/" << cfg.problem.name
       << " order=" << cfg.order << " cells=" << cfg.cells << " flux="
       << to_string(cfg.flux) << " mode=" << to_string(cfg.mode) << "\n";
    os << "updates=" << report.total_updates << " cycles=" << report.cycles
       << " wall=" << report.wall_seconds << "s";
    if (report.osher_fallbacks > 0)
        os << " osher_fallbacks=" << report.osher_fallbacks;
    os << "\n";
    auto names = sys.conserved_names();
    os << "conservation (abs / rel):\n";
    for (int k = 0; k < report.conservation_abs.size(); ++k)
        os << "  " << names[static_cast<std::size_t>(k)] << " = "
           << fmt17(report.conservation_abs[k]) << " / "
           << fmt17(report.conservation_rel[k]) << "\n";
    return os.str();
}

} // namespace ale1d
