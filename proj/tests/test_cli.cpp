#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ale1d/config.hpp"
#include "ale1d/harness.hpp"
#include "ale1d/io.hpp"

using namespace ale1d;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ale1d_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("built-in case registry") {
    CaseSpec rp1 = builtin_case("euler", "rp1");
    CHECK(rp1.gamma == doctest::Approx(1.4));
    CHECK(rp1.prim_left[0] == 1.0);
    CHECK(rp1.prim_left[2] == 1.0);
    CHECK(rp1.prim_right[0] == 0.125);
    CHECK(rp1.prim_right[2] == doctest::Approx(0.1));
    CHECK(rp1.x_jump == 0.0);
    CHECK(rp1.t_end == doctest::Approx(0.4));

    CaseSpec m1 = builtin_case("mhd", "rp1");
    double rt4pi = std::sqrt(4.0 * M_PI);
    CHECK(m1.gamma == doctest::Approx(5.0 / 3.0));
    CHECK(m1.prim_left[6] == doctest::Approx(rt4pi).epsilon(1e-15));
    CHECK(m1.prim_right[6] == doctest::Approx(-rt4pi).epsilon(1e-15));
    CHECK(m1.prim_left[5] == doctest::Approx(0.75 * rt4pi).epsilon(1e-15));
    CHECK(m1.t_end == doctest::Approx(0.1));

    CHECK_THROWS_AS(builtin_case("euler", "rp9"), SolverError);
    CHECK_THROWS_AS(builtin_case("water", "rp1"), SolverError);
}

TEST_CASE("config file parsing with overrides") {
    TempDir dir;
    {
        std::ofstream out(dir.file("run.cfg"));
        out << "# comment line\n"
            << "[case]\n"
            << "system = euler\n"
            << "name = rp2\n"
            << "[run]\n"
            << "order = 4\n"
            << "cfl = 0.4\n"
            << "flux = rusanov\n"
            << "mode = gts\n"
            << "cells = 120\n"
            << "[weno]\n"
            << "lambda_central = 2e5\n";
    }
    RunConfig cfg = parse_config_file(dir.file("run.cfg"));
    CHECK(cfg.problem.name == "rp2");
    CHECK(cfg.order == 4);
    CHECK(cfg.cfl == doctest::Approx(0.4));
    CHECK(cfg.flux == FluxKind::rusanov);
    CHECK(cfg.mode == RunMode::gts);
    CHECK(cfg.cells == 120);
    CHECK(cfg.weno.lambda_central == doctest::Approx(2e5));
}

TEST_CASE("custom case requires a final time") {
    TempDir dir;
    {
        std::ofstream out(dir.file("bad.cfg"));
        out << "[case]\nsystem = euler\nleft = 1 0 1\nright = 0.5 0 0.5\nx_d = 0\n"
            << "domain_lo = -1\ndomain_hi = 1\n";
    }
    CHECK_THROWS_AS(parse_config_file(dir.file("bad.cfg")), SolverError);
    {
        std::ofstream out(dir.file("good.cfg"));
        out << "[case]\nsystem = euler\nleft = 1 0 1\nright = 0.5 0 0.5\nx_d = 0\n"
            << "domain_lo = -1\ndomain_hi = 1\nt_end = 0.1\n";
    }
    RunConfig cfg = parse_config_file(dir.file("good.cfg"));
    CHECK(cfg.problem.prim_right[0] == doctest::Approx(0.5));
    CHECK(cfg.problem.t_end == doctest::Approx(0.1));
}

TEST_CASE("invalid settings raise usage errors") {
    RunConfig cfg;
    cfg.problem = builtin_case("euler", "rp1");
    cfg.cfl = 1.5;
    CHECK_THROWS_AS(cfg.validate(), SolverError);
    cfg.cfl = 0.5;
    cfg.order = 6;
    CHECK_THROWS_AS(cfg.validate(), SolverError);
    cfg.order = 3;
    cfg.mesh_velocity_override = MeshVelocityKind::fluid_v;
    CHECK_THROWS_AS(cfg.validate(), SolverError);
}

TEST_CASE("solution dump round trip is bit exact") {
    RunConfig cfg;
    cfg.problem = builtin_case("euler", "rp1");
    cfg.problem.t_end = 0.02;
    cfg.cells = 24;
    cfg.order = 3;
    RunOutcome out = run_solver(cfg);

    TempDir dir;
    EulerSystem sys(1.4);
    write_solution(dir.file("sol.csv"), out.cells, sys);
    SolutionDump dump = read_solution(dir.file("sol.csv"));
    REQUIRE(dump.rows.size() == out.cells.size());
    int col_rho = dump.column("rho");
    int col_x = dump.column("x_center");
    for (std::size_t i = 0; i < out.cells.size(); ++i) {
        CHECK(dump.rows[i][static_cast<std::size_t>(col_rho)] == out.cells[i].avg[0]);
        CHECK(dump.rows[i][static_cast<std::size_t>(col_x)] ==
              0.5 * (out.cells[i].x_left + out.cells[i].x_right));
    }
}

TEST_CASE("space-time mesh dump") {
    TempDir dir;
    RunConfig cfg;
    cfg.problem = builtin_case("euler", "rp1");
    cfg.problem.t_end = 0.01;
    cfg.cells = 12;
    cfg.order = 2;

    SUBCASE("global stepping produces level time slabs") {
        cfg.mode = RunMode::gts;
        Solver s(cfg);
        SpacetimeMeshWriter writer(dir.file("mesh.csv"));
        s.set_observer([&](const UpdateEvent& ev) { writer.record(ev); });
        s.run();
    }
    std::ifstream in(dir.file("mesh.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "cell,t0,t1,xl0,xr0,xl1,xr1");
    std::map<double, int> slabs;
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        double t0 = std::stod(line.substr(line.find(',') + 1));
        slabs[t0]++;
    }
    CHECK(rows >= 12);
    for (const auto& [t0, count] : slabs) CHECK(count == 12);  // no hanging nodes
}

TEST_CASE("mode comparison stays within tolerance on a short run") {
    RunConfig cfg;
    cfg.problem = builtin_case("euler", "rp1");
    cfg.problem.t_end = 0.1;
    cfg.cells = 200;
    cfg.order = 3;
    CompareResult r = compare_modes(cfg);
    CHECK(r.update_ratio >= 1.0);
    CHECK(r.lts.report.total_updates <= r.gts.report.total_updates);
    // per-component gap, scaled by the component's own content
    for (double d : r.l1_rel) CHECK(d < 1e-3);
}

TEST_CASE("convergence table layout") {
    RunConfig base;
    base.problem = builtin_case("mhd", "alfven");
    base.problem.t_end = 0.02;
    auto rows = convergence_study(base, {2}, {{40, 80}});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].observed == 0.0);  // first grid has no rate yet
    CHECK(rows[1].observed > 0.5);
    CHECK(rows[0].error_l2 > rows[1].error_l2);
}

TEST_CASE("exact sampler selection") {
    RunConfig cfg;
    cfg.problem = builtin_case("euler", "rp1");
    auto euler_exact = exact_sampler(cfg);
    State mid = euler_exact(0.4 * 0.92745);  // near the contact
    CHECK(mid[0] > 0.1);
    cfg.problem = builtin_case("mhd", "rp1");
    CHECK_THROWS_AS(exact_sampler(cfg), SolverError);  // no closed form
}
