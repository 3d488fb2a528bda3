#ifndef ALE1D_REFERENCE_HPP
#define ALE1D_REFERENCE_HPP

#include <functional>
#include <span>

#include "ale1d/reconstruction.hpp"
#include "ale1d/state.hpp"
#include "ale1d/system.hpp"

namespace ale1d {

/// Exact solution of the Euler Riemann problem (ideal gas), following the
/// classical pressure-function iteration.  Input and output states are
/// primitive (rho, u, p).
class ExactRiemannEuler {
public:
    ExactRiemannEuler(const State& prim_left, const State& prim_right, double gamma);

    double star_pressure() const { return p_star_; }
    double star_velocity() const { return u_star_; }
    double star_density_left() const { return rho_star_l_; }
    double star_density_right() const { return rho_star_r_; }
    bool left_is_shock() const { return left_shock_; }
    bool right_is_shock() const { return right_shock_; }
    double left_shock_speed() const;
    double right_shock_speed() const;

    /// Self-similar sampler at xi = x/t.
    State sample_primitive(double xi) const;
    State sample_conserved(double xi) const;

private:
    double gamma_;
    State left_, right_;
    double c_left_, c_right_;
    double p_star_ = 0.0, u_star_ = 0.0;
    double rho_star_l_ = 0.0, rho_star_r_ = 0.0;
    bool left_shock_ = false, right_shock_ = false;
};

struct AlfvenParams {
    double amplitude = 0.1;
    double halfwidth = 0.25;
    double speed = 1.0;
    double gamma = 5.0 / 3.0;
};

/// Traveling circularly-polarized wave: an exact smooth MHD solution with
/// constant density, pressure and total energy.  Returns the conserved
/// 9-component state.
State alfven_exact(double x, double t, const AlfvenParams& params);

enum class NormKind { l1, l2, linf };
NormKind norm_from_name(const std::string& name);

/// Grid norm of (w_h - exact) for one component over the final cells,
/// with per-cell Gauss-Legendre quadrature for the integral norms.
double error_norm(const BasisTables& tables,
                  std::span<const ReconstructionPolynomial> cells,
                  const std::function<State(double)>& exact, int component,
                  NormKind kind);

/// Observed convergence order from two grid errors.
double observed_order(double err_coarse, double err_fine, int n_coarse, int n_fine);

} // namespace ale1d

#endif
