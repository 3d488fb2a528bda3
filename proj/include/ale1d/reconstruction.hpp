#ifndef ALE1D_RECONSTRUCTION_HPP
#define ALE1D_RECONSTRUCTION_HPP

#include <span>
#include <vector>

#include "ale1d/basis.hpp"
#include "ale1d/state.hpp"

namespace ale1d {

/// Nonlinear weight parameters of the reconstruction blend.
struct WenoParams {
    double epsilon = 1e-14;
    double exponent = 8.0;
    double lambda_central = 1e5;
    double lambda_sided = 1.0;
};

/// One candidate stencil: extent to the left/right of the reconstructed
/// cell plus its linear weight.
struct Stencil {
    int left = 0;
    int right = 0;
    double lambda = 1.0;
};

/// Nominal stencil set for degree M: one central stencil when the scheme
/// order M+1 is odd, two shifted central stencils when it is even, plus the
/// fully left- and right-sided ones.
std::vector<Stencil> stencil_layout(int degree, const WenoParams& params);

/// Degree-M modal polynomial on one cell, written in the rescaled Legendre
/// basis over the cell's reference coordinate at reconstruction time.
struct ReconstructionPolynomial {
    std::vector<State> modal;   // M+1 coefficients
    int cell_index = -1;
    double time = 0.0;
    double x_left = 0.0;        // reference map anchor at reconstruction time
    double dx = 0.0;

    State value(const BasisTables& tables, double xi) const;

    /// Mean over the cell; equals the leading modal coefficient because the
    /// higher Legendre modes integrate to zero.
    const State& cell_average() const { return modal[0]; }
};

/// Solve the integral-conservation system of one stencil: the polynomial's
/// mean over every stencil interval (already mapped to the reconstructed
/// cell's reference coordinate) must match that interval's average.
///
/// xi_nodes holds the M+2 mapped interface coordinates, averages the M+1
/// interval means.  Throws mesh_tangling on collapsed intervals.
std::vector<State> solve_candidate(const BasisTables& tables,
                                   std::span<const double> xi_nodes,
                                   std::span<const State> averages);

/// Blend candidates with componentwise smoothness indicators and the
/// normalized nonlinear weights.
std::vector<State> weno_combine(const BasisTables& tables,
                                const std::vector<std::vector<State>>& candidates,
                                const std::vector<double>& lambdas,
                                const WenoParams& params);

} // namespace ale1d

#endif
