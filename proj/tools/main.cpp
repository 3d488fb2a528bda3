#include "CLI11.hpp"

#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>

#include "ale1d/harness.hpp"
#include "ale1d/io.hpp"
#include "ale1d/scheduler.hpp"

namespace {

using namespace ale1d;

struct CommonFlags {
    int order = 0;
    int cells = 0;
    double cfl = 0.0;
    std::string flux, mode, mesh_velocity;
    int osher_points = 0;
    double cleaning_speed = -1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--order", order, "scheme order (2-5)");
        cmd->add_option("--cells", cells, "initial cell count");
        cmd->add_option("--cfl", cfl, "local Courant number in (0,1]");
        cmd->add_option("--flux", flux, "rusanov | osher");
        cmd->add_option("--mode", mode, "lts | gts");
        cmd->add_option("--mesh-velocity", mesh_velocity, "zero | fluid-u | fluid-v");
        cmd->add_option("--osher-points", osher_points, "path quadrature points");
        cmd->add_option("--cleaning-speed", cleaning_speed, "mhd divergence cleaning speed");
    }

    void apply(RunConfig& cfg) const {
        if (order > 0) cfg.order = order;
        if (cells > 0) cfg.cells = cells;
        if (cfl > 0.0) cfg.cfl = cfl;
        if (!flux.empty()) cfg.flux = flux_from_name(flux);
        if (!mode.empty()) cfg.mode = mode_from_name(mode);
        if (!mesh_velocity.empty())
            cfg.mesh_velocity_override = mesh_velocity_from_name(mesh_velocity);
        if (osher_points > 0) cfg.osher_points = osher_points;
        if (cleaning_speed >= 0.0) cfg.cleaning_speed = cleaning_speed;
    }
};

RunConfig build_config(const std::string& config_path, const std::string& system,
                       const std::string& case_name, const CommonFlags& flags) {
    RunConfig cfg;
    if (!config_path.empty()) {
        cfg = parse_config_file(config_path);
        if (!system.empty() && !case_name.empty())
            cfg.problem = builtin_case(system, case_name);
    } else {
        if (system.empty() || case_name.empty())
            fail(ErrorCategory::config,
                 "either a config file or both <system> and <case> are required");
        cfg.problem = builtin_case(system, case_name);
    }
    flags.apply(cfg);
    cfg.validate();
    return cfg;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) fail(ErrorCategory::config, "empty integer list '" + s + "'");
    return out;
}

int cmd_solve(const std::string& config_path, const std::string& system,
              const std::string& case_name, const CommonFlags& flags,
              const std::string& out_dir, bool dump_mesh) {
    RunConfig cfg = build_config(config_path, system, case_name, flags);

    std::filesystem::create_directories(out_dir);
    std::string stem = out_dir + "/" + cfg.problem.system + "_" + cfg.problem.name + "_" +
                       to_string(cfg.mode);

    Solver solver(cfg);
    std::unique_ptr<SpacetimeMeshWriter> mesh_writer;
    if (dump_mesh) {
        mesh_writer = std::make_unique<SpacetimeMeshWriter>(stem + "_spacetime.csv");
        solver.set_observer([&](const UpdateEvent& ev) { mesh_writer->record(ev); });
    }
    RunReport report = solver.run();
    write_solution(stem + ".csv", solver.snapshot(), solver.system());
    write_report_json(stem + "_report.json", cfg, report, solver.system());
    std::cout << format_report(cfg, report, solver.system());
    std::cout << "solution: " << stem << ".csv\n";
    return 0;
}

int cmd_compare(const std::string& config_path, const std::string& system,
                const std::string& case_name, const CommonFlags& flags,
                double tolerance) {
    RunConfig cfg = build_config(config_path, system, case_name, flags);
    CompareResult r = compare_modes(cfg);
    std::cout << "updates: lts=" << r.lts.report.total_updates
              << " gts=" << r.gts.report.total_updates << " ratio=" << r.update_ratio
              << "\n";
    auto names = make_system(cfg.problem.system, cfg.problem.gamma)->conserved_names();
    double worst = 0.0;
    for (std::size_t k = 0; k < r.l1_diff.size(); ++k) {
        std::cout << "l1(" << names[k] << ") = " << r.l1_diff[k]
                  << "  scaled = " << r.l1_rel[k] << "\n";
        worst = std::max(worst, r.l1_rel[k]);
    }
    if (worst > tolerance) {
        std::ostringstream os;
        os << "mode solutions differ by " << worst << " (tolerance " << tolerance << ")";
        fail(ErrorCategory::comparison, os.str());
    }
    return 0;
}

int cmd_converge(const std::string& system, const std::string& case_name,
                 const CommonFlags& flags, const std::string& orders_str,
                 const std::string& grids_str) {
    RunConfig base;
    base.problem = builtin_case(system, case_name);
    flags.apply(base);

    std::vector<int> orders = parse_int_list(orders_str);
    std::vector<std::vector<int>> grids;
    std::stringstream gs(grids_str);
    std::string part;
    while (std::getline(gs, part, ';')) grids.push_back(parse_int_list(part));
    if (grids.size() == 1 && orders.size() > 1)
        grids.assign(orders.size(), grids.front());

    auto rows = convergence_study(base, orders, grids);
    std::cout << "order  cells  error_l2       observed\n";
    for (const auto& row : rows) {
        std::printf("%5d %6d  %.6e  ", row.order, row.cells, row.error_l2);
        if (row.observed != 0.0)
            std::printf("%.2f\n", row.observed);
        else
            std::printf("-\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moving-mesh finite volume solver for 1D conservation laws "
                 "with time-accurate local time stepping"};
    app.require_subcommand(1);

    std::string system, case_name, config_path, out_dir = ".";
    std::string orders = "3,4,5", grids = "100,200,400";
    double tolerance = 1e-3;
    bool dump_mesh = false;
    CommonFlags flags;

    auto* solve = app.add_subcommand("solve", "run one case and write the solution");
    solve->add_option("system", system, "euler | mhd");
    solve->add_option("case", case_name, "built-in case name (rp1.., alfven)");
    solve->add_option("--config", config_path, "key=value config file");
    solve->add_option("--out", out_dir, "output directory");
    solve->add_flag("--dump-mesh", dump_mesh, "write the space-time mesh quads");
    flags.attach(solve);

    auto* compare = app.add_subcommand("compare", "run both stepping modes and compare");
    compare->add_option("system", system, "euler | mhd");
    compare->add_option("case", case_name, "built-in case name");
    compare->add_option("--config", config_path, "key=value config file");
    compare->add_option("--tolerance", tolerance, "largest allowed per-component L1 gap");
    flags.attach(compare);

    auto* converge = app.add_subcommand("converge", "grid refinement study");
    converge->add_option("system", system, "euler | mhd")->required();
    converge->add_option("case", case_name, "case with an exact solution")->required();
    converge->add_option("--orders", orders, "comma list of scheme orders");
    converge->add_option("--grids", grids, "cell counts, ';'-separated per order");
    flags.attach(converge);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return cmd_solve(config_path, system, case_name, flags, out_dir, dump_mesh);
        if (compare->parsed())
            return cmd_compare(config_path, system, case_name, flags, tolerance);
        if (converge->parsed())
            return cmd_converge(system, case_name, flags, orders, grids);
    } catch (const ale1d::SolverError& e) {
        std::cerr << "error " << ale1d::to_string(e.category()) << ": " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
