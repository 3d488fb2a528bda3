#ifndef ALE1D_FLUX_HPP
#define ALE1D_FLUX_HPP

#include <vector>

#include "ale1d/basis.hpp"
#include "ale1d/predictor.hpp"
#include "ale1d/system.hpp"

namespace ale1d {

enum class FluxKind { rusanov, osher };

FluxKind flux_from_name(const std::string& name);
const char* to_string(FluxKind k);

/// Arithmetic mean of the two local mesh-velocity evaluations.
double interface_speed(const System& sys, MeshVelocityKind mv, const State& qL,
                       const State& qR);

State rusanov_flux(const System& sys, const State& qL, const State& qR,
                   double wall_speed);

/// Path-integral flux: the dissipation matrix is |A| integrated along the
/// straight segment between the two states, by Gauss-Legendre quadrature.
/// Throws eigen_failure when an eigendecomposition along the path is
/// unusable; callers substitute Rusanov.
State osher_flux(const System& sys, const State& qL, const State& qR,
                 double wall_speed, std::span<const double> path_nodes,
                 std::span<const double> path_weights);

/// A configured numerical flux with its quadrature data and fallback counter.
class FluxScheme {
public:
    FluxScheme(FluxKind kind, int osher_points);

    FluxKind kind() const { return kind_; }
    long osher_fallbacks() const { return fallbacks_; }
    void reset_counters() { fallbacks_ = 0; }

    State evaluate(const System& sys, const State& qL, const State& qR,
                   double wall_speed) const;

private:
    FluxKind kind_;
    std::vector<double> path_nodes_, path_weights_;
    mutable long fallbacks_ = 0;
};

/// Time-integrated numerical flux over one edge interval.
struct EdgeFluxResult {
    State flux_integral;     // integral of f^V dt over [t_a, t_b]
    double dt_edge = 0.0;
    double x_new = 0.0;      // node position advanced by the mean-speed integral
    double mean_speed = 0.0;
};

/// Integrate the edge flux over [t_a, t_b] with one quadrature point set;
/// each side's predictor is sampled at its own relative time.  The single
/// result is shared by both adjacent elements, so the flux leaving one
/// equals the flux entering the other bit-for-bit.
EdgeFluxResult integrate_edge(const BasisTables& tables, const System& sys,
                              MeshVelocityKind mv, const FluxScheme& scheme,
                              const SpaceTimePredictor& predL,
                              const SpaceTimePredictor& predR, double t_a, double t_b,
                              double node_x);

/// Boundary variant: both interface states are the element's own trace, so
/// the flux reduces to the consistency value and the node follows the local
/// mesh velocity (transmissive wall).
EdgeFluxResult integrate_boundary_edge(const BasisTables& tables, const System& sys,
                                       MeshVelocityKind mv, const FluxScheme& scheme,
                                       const SpaceTimePredictor& pred, Side side,
                                       double t_a, double t_b, double node_x);

} // namespace ale1d

#endif
