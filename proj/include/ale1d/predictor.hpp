#ifndef ALE1D_PREDICTOR_HPP
#define ALE1D_PREDICTOR_HPP

#include <array>
#include <vector>

#include "ale1d/basis.hpp"
#include "ale1d/reconstruction.hpp"
#include "ale1d/system.hpp"

namespace ale1d {

enum class Side { left = 0, right = 1 };

struct TraceSample {
    State q;
    double x = 0.0;        // interface position from this element's trajectory
    double speed = 0.0;    // mesh velocity V(q) at the trace
};

/// Element-local space-time solution over one local step: nodal states and
/// nodal interface trajectories on the reference square, valid for
/// t in [t_start, t_start + dt] only.
class SpaceTimePredictor {
public:
    int cell_index = -1;
    double t_start = 0.0;
    double dt = 0.0;
    std::vector<State> q;        // (M+1)^2 nodal states, index a*(M+1)+b
    std::vector<double> x;       // (M+1)^2 nodal positions
    std::vector<double> x0;      // M+1 initial spatial nodes
    int iterations = 0;

    double t_end() const { return t_start + dt; }

    /// Relative time of an absolute instant; throws out_of_domain when t
    /// lies outside the step window beyond tol (no extrapolation in time).
    double tau_of(double t, double tol) const;
    bool covers(double t, double tol) const {
        return t >= t_start - tol && t <= t_end() + tol;
    }

    TraceSample trace(const BasisTables& tables, const System& sys,
                      MeshVelocityKind mv, Side side, double tau) const;

    /// Like trace, but substitutes the element mean when the interpolated
    /// face state leaves the admissible set (strong-shock transients).
    TraceSample admissible_trace(const BasisTables& tables, const System& sys,
                                 MeshVelocityKind mv, Side side, double tau) const;

    /// Mean of q_h over the element's own geometry at relative time tau.
    State average_at(const BasisTables& tables, double tau) const;

    double edge_position(const BasisTables& tables, Side side, double tau) const;
    double width_at(const BasisTables& tables, double tau) const;

private:
    friend SpaceTimePredictor run_predictor(const ReconstructionPolynomial&, double,
                                            double, double, double, const System&,
                                            MeshVelocityKind, const BasisTables&, int);
    // collapsed edge lines over the temporal index
    std::array<std::vector<State>, 2> q_edge_;
    std::array<std::vector<double>, 2> x_edge_;
};

/// Solve the element-local weak space-time problem by fixed-point iteration:
/// the interface-trajectory solve (from the current nodal mesh velocities)
/// alternates with the solution solve (geometry terms reassembled from the
/// current nodal map) until both sets of unknowns stop moving.
SpaceTimePredictor run_predictor(const ReconstructionPolynomial& w, double x_left,
                                 double x_right, double t_start, double dt,
                                 const System& sys, MeshVelocityKind mv,
                                 const BasisTables& tables, int cell_index = -1);

} // namespace ale1d

#endif
