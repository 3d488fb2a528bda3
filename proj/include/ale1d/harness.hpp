#ifndef ALE1D_HARNESS_HPP
#define ALE1D_HARNESS_HPP

#include <functional>
#include <vector>

#include "ale1d/reference.hpp"
#include "ale1d/scheduler.hpp"

namespace ale1d {

/// Evaluate a finished run's piecewise polynomial solution at x (nearest
/// cell clamped at the domain ends).
State sample_outcome(const BasisTables& tables, const std::vector<CellSnapshot>& cells,
                     double x);

/// Componentwise L1 distance between two finished runs over the overlap of
/// their final domains, by per-interval quadrature on the merged breakpoints.
std::vector<double> l1_distance(const BasisTables& tables_a,
                                const std::vector<CellSnapshot>& a,
                                const BasisTables& tables_b,
                                const std::vector<CellSnapshot>& b);

struct CompareResult {
    RunOutcome lts;
    RunOutcome gts;
    double update_ratio = 0.0;          // larger count / smaller count
    std::vector<double> l1_diff;        // per conserved component, absolute
    std::vector<double> l1_rel;         // scaled by the component's own size
};

/// Run the same configuration under local and global stepping.
CompareResult compare_modes(const RunConfig& cfg);

struct ConvergenceRow {
    int order = 0;
    int cells = 0;
    double error_l2 = 0.0;
    double observed = 0.0;   // 0 for the first grid of a series
};

/// Grid-refinement study against the exact smooth solution; the error is
/// measured in L2 on the By component per the reference results.
std::vector<ConvergenceRow> convergence_study(const RunConfig& base,
                                              const std::vector<int>& orders,
                                              const std::vector<std::vector<int>>& grids);

/// Exact-solution sampler for a finished run of a built-in case, when one
/// exists (euler riemann cases and the smooth mhd wave).
std::function<State(double)> exact_sampler(const RunConfig& cfg);

} // namespace ale1d

#endif
