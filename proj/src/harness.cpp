#include "ale1d/harness.hpp"

#include <algorithm>
#include <cmath>

namespace ale1d {

State sample_outcome(const BasisTables& tables, const std::vector<CellSnapshot>& cells,
                     double x) {
    // cells are ordered; find the one containing x
    auto it = std::upper_bound(cells.begin(), cells.end(), x,
                               [](double v, const CellSnapshot& c) { return v < c.x_right; });
    if (it == cells.end()) --it;
    const CellSnapshot& c = *it;
    double xi = std::clamp((x - c.recon.x_left) / c.recon.dx, 0.0, 1.0);
    return c.recon.value(tables, xi);
}

std::vector<double> l1_distance(const BasisTables& tables_a,
                                const std::vector<CellSnapshot>& a,
                                const BasisTables& tables_b,
                                const std::vector<CellSnapshot>& b) {
    double lo = std::max(a.front().x_left, b.front().x_left);
    double hi = std::min(a.back().x_right, b.back().x_right);
    if (!(hi > lo)) fail(ErrorCategory::comparison, "disjoint final domains");

    std::vector<double> breaks;
    for (const auto& c : a)
        if (c.x_right > lo && c.x_right < hi) breaks.push_back(c.x_right);
    for (const auto& c : b)
        if (c.x_right > lo && c.x_right < hi) breaks.push_back(c.x_right);
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());

    static const int npts = 6;
    std::vector<double> zeta, wq;
    gauss_legendre(npts, zeta, wq);

    const int nu = a.front().avg.size();
    std::vector<double> acc(static_cast<std::size_t>(nu), 0.0);
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
        double len = breaks[s + 1] - breaks[s];
        if (len <= 0.0) continue;
        for (int g = 0; g < npts; ++g) {
            double x = breaks[s] + len * zeta[static_cast<std::size_t>(g)];
            State va = sample_outcome(tables_a, a, x);
            State vb = sample_outcome(tables_b, b, x);
            for (int k = 0; k < nu; ++k)
                acc[static_cast<std::size_t>(k)] +=
                    len * wq[static_cast<std::size_t>(g)] * std::abs(va[k] - vb[k]);
        }
    }
    return acc;
}

CompareResult compare_modes(const RunConfig& cfg) {
    RunConfig lts_cfg = cfg;
    lts_cfg.mode = RunMode::lts;
    RunConfig gts_cfg = cfg;
    gts_cfg.mode = RunMode::gts;

    CompareResult r;
    r.lts = run_solver(lts_cfg);
    r.gts = run_solver(gts_cfg);
    double larger = static_cast<double>(std::max(r.lts.report.total_updates,
                                                 r.gts.report.total_updates));
    double smaller = static_cast<double>(std::min(r.lts.report.total_updates,
                                                  r.gts.report.total_updates));
    r.update_ratio = larger / smaller;
    BasisTables tables(cfg.degree());
    r.l1_diff = l1_distance(tables, r.lts.cells, tables, r.gts.cells);
    r.l1_rel = r.l1_diff;
    for (std::size_t k = 0; k < r.l1_rel.size(); ++k) {
        double mass = 0.0;
        for (const auto& c : r.gts.cells)
            mass += (c.x_right - c.x_left) * std::abs(c.avg[static_cast<int>(k)]);
        r.l1_rel[k] /= std::max(1.0, mass);
    }
    return r;
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& base,
                                              const std::vector<int>& orders,
                                              const std::vector<std::vector<int>>& grids) {
    if (orders.size() != grids.size())
        fail(ErrorCategory::config, "one grid list per order is required");
    std::vector<ConvergenceRow> rows;
    for (std::size_t s = 0; s < orders.size(); ++s) {
        double prev_err = 0.0;
        int prev_n = 0;
        for (int n : grids[s]) {
            RunConfig cfg = base;
            cfg.order = orders[s];
            cfg.cells = n;
            auto sampler = exact_sampler(cfg);
            RunOutcome out = run_solver(cfg);
            BasisTables tables(cfg.degree());
            std::vector<ReconstructionPolynomial> polys;
            polys.reserve(out.cells.size());
            for (const auto& c : out.cells) polys.push_back(c.recon);
            int comp = cfg.problem.system == "mhd" ? 6 : 0;  // By, else density
            double err = error_norm(tables, polys, sampler, comp, NormKind::l2);
            ConvergenceRow row;
            row.order = orders[s];
            row.cells = n;
            row.error_l2 = err;
            row.observed = prev_n == 0 ? 0.0 : observed_order(prev_err, err, prev_n, n);
            rows.push_back(row);
            prev_err = err;
            prev_n = n;
        }
    }
    return rows;
}

std::function<State(double)> exact_sampler(const RunConfig& cfg) {
    const CaseSpec& p = cfg.problem;
    if (p.kind == CaseKind::alfven) {
        AlfvenParams params{p.wave_amplitude, p.wave_halfwidth, p.wave_speed, p.gamma};
        double t = p.t_end;
        return [params, t](double x) { return alfven_exact(x, t, params); };
    }
    if (p.system == "euler") {
        auto rp = std::make_shared<ExactRiemannEuler>(p.prim_left, p.prim_right, p.gamma);
        double t = p.t_end, xd = p.x_jump;
        return [rp, t, xd](double x) { return rp->sample_conserved((x - xd) / t); };
    }
    fail(ErrorCategory::config,
         "no exact solution available for case " + p.system + "/" + p.name);
}

} // namespace ale1d
