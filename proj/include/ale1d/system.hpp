#ifndef ALE1D_SYSTEM_HPP
#define ALE1D_SYSTEM_HPP

#include <memory>
#include <string>
#include <vector>

#include "ale1d/errors.hpp"
#include "ale1d/state.hpp"

namespace ale1d {

/// How the mesh velocity V(Q) is derived from the local state.
enum class MeshVelocityKind { zero, fluid_u, fluid_v };

MeshVelocityKind mesh_velocity_from_name(const std::string& name);
const char* to_string(MeshVelocityKind k);

/// A hyperbolic system of conservation laws q_t + f(q)_x = 0 on a moving
/// mesh.  The moving-mesh flux is f(q) - V q with local wall speed V.
///
/// All member functions are pure: implementations hold only immutable
/// parameters and may be called concurrently.
class System {
public:
    virtual ~System() = default;

    virtual int components() const = 0;
    virtual const char* name() const = 0;
    virtual double heat_ratio() const = 0;

    /// Throws invalid_state naming the offending component when the state
    /// is non-finite or has non-positive density/pressure.
    virtual void validate(const State& q) const = 0;

    /// Quiet admissibility probe for fallback paths.
    bool admissible(const State& q) const noexcept;

    virtual double pressure(const State& q) const = 0;
    virtual State flux(const State& q) const = 0;

    /// Largest |eigenvalue| of the wall-relative Jacobian d(f - Vq)/dq.
    virtual double max_signal_speed(const State& q, double wall_speed) const = 0;

    /// |A|(q) dq for the wall-relative Jacobian A = df/dq - V I, through
    /// the real eigendecomposition |A| = R |Lambda| R^{-1}.
    /// Throws eigen_failure when the decomposition is unusable.
    virtual State abs_ale_jacobian_times(const State& q, double wall_speed,
                                         const State& dq) const = 0;

    virtual State primitive(const State& q) const = 0;
    virtual State conserved(const State& prim) const = 0;
    virtual std::vector<std::string> conserved_names() const = 0;
    virtual std::vector<std::string> primitive_names() const = 0;

    double fluid_velocity(const State& q) const { return q[1] / q[0]; }

    /// y-velocity; only meaningful for systems carrying one.
    virtual double transverse_velocity(const State& q) const;

    double mesh_velocity(const State& q, MeshVelocityKind k) const;

    State ale_flux(const State& q, double wall_speed) const {
        State f = flux(q);
        f.add_scaled(-wall_speed, q);
        return f;
    }
};

/// Compressible Euler equations, ideal gas: q = (rho, rho*u, rho*E).
class EulerSystem final : public System {
public:
    explicit EulerSystem(double gamma);

    int components() const override { return 3; }
    const char* name() const override { return "euler"; }
    double heat_ratio() const override { return gamma_; }
    void validate(const State& q) const override;
    double pressure(const State& q) const override;
    State flux(const State& q) const override;
    double max_signal_speed(const State& q, double wall_speed) const override;
    State abs_ale_jacobian_times(const State& q, double wall_speed,
                                 const State& dq) const override;
    State primitive(const State& q) const override;
    State conserved(const State& prim) const override;
    std::vector<std::string> conserved_names() const override;
    std::vector<std::string> primitive_names() const override;

    double sound_speed(const State& q) const;

private:
    double gamma_;
};

/// Ideal MHD with hyperbolic divergence cleaning, Gaussian units
/// (magnetic pressure |B|^2 / 8pi):
/// q = (rho, rho*u, rho*v, rho*w, rho*E, Bx, By, Bz, psi).
class MhdSystem final : public System {
public:
    MhdSystem(double gamma, double cleaning_speed);

    int components() const override { return 9; }
    const char* name() const override { return "mhd"; }
    double heat_ratio() const override { return gamma_; }
    void validate(const State& q) const override;
    double pressure(const State& q) const override;
    State flux(const State& q) const override;
    double max_signal_speed(const State& q, double wall_speed) const override;
    State abs_ale_jacobian_times(const State& q, double wall_speed,
                                 const State& dq) const override;
    State primitive(const State& q) const override;
    State conserved(const State& prim) const override;
    std::vector<std::string> conserved_names() const override;
    std::vector<std::string> primitive_names() const override;

    double transverse_velocity(const State& q) const override { return q[2] / q[0]; }

    double cleaning_speed() const { return c_h_; }
    void set_cleaning_speed(double c_h);

    double fast_speed(const State& q) const;

    /// Signal speed of the eight gas/magnetic waves alone, without the
    /// cleaning pair.  Used to bootstrap the cleaning speed itself.
    double max_wave_speed_without_cleaning(const State& q) const;

private:
    double gamma_;
    double c_h_;
};

std::unique_ptr<System> make_system(const std::string& name, double gamma,
                                    double cleaning_speed = 0.0);

} // namespace ale1d

#endif
