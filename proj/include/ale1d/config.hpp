#ifndef ALE1D_CONFIG_HPP
#define ALE1D_CONFIG_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "ale1d/flux.hpp"
#include "ale1d/reconstruction.hpp"
#include "ale1d/state.hpp"
#include "ale1d/system.hpp"

namespace ale1d {

enum class RunMode { lts, gts };
RunMode mode_from_name(const std::string& name);
const char* to_string(RunMode m);

enum class CaseKind { riemann, alfven };

/// One test problem: either a two-state Riemann initial condition or the
/// smooth traveling-wave setup used for convergence studies.
struct CaseSpec {
    std::string name;
    std::string system;          // "euler" | "mhd"
    double gamma = 1.4;
    CaseKind kind = CaseKind::riemann;
    State prim_left, prim_right; // primitive states for riemann cases
    double x_jump = 0.0;
    double wave_amplitude = 0.1; // alfven parameters
    double wave_halfwidth = 0.25;
    double wave_speed = 1.0;
    double domain_lo = -0.5;
    double domain_hi = 0.5;
    double t_end = 0.0;
    MeshVelocityKind mesh_velocity = MeshVelocityKind::fluid_u;
    /// Optional pointwise conserved initial state overriding the built-in
    /// profiles (verification runs with bespoke data).
    std::function<State(const System&, double)> custom_initial;

    /// Pointwise conserved initial state.
    State initial_conserved(const System& sys, double x) const;
    /// Exact mean of the initial state over [xl, xr]; splits the integral
    /// at the jump for Riemann data.
    State initial_average(const System& sys, double xl, double xr) const;
};

/// Registry of the built-in problems (euler/rp1..rp4, mhd/rp1..rp6,
/// mhd/alfven).  Throws a usage error listing the valid names otherwise.
CaseSpec builtin_case(const std::string& system, const std::string& name);
std::vector<std::string> builtin_case_names(const std::string& system);

struct RunConfig {
    CaseSpec problem;
    int order = 3;              // scheme order = degree + 1, orders 2..5 enabled
    double cfl = 0.5;
    FluxKind flux = FluxKind::osher;
    int osher_points = 5;
    RunMode mode = RunMode::lts;
    int cells = 200;
    std::optional<MeshVelocityKind> mesh_velocity_override;
    std::optional<double> cleaning_speed;   // mhd only; default: max initial signal speed
    WenoParams weno;
    std::vector<double> initial_nodes;      // optional nonuniform initial mesh

    int degree() const { return order - 1; }
    MeshVelocityKind mesh_velocity() const {
        return mesh_velocity_override.value_or(problem.mesh_velocity);
    }
    void validate() const;
};

/// Flat key=value text with bracketed section headers; later keys override
/// earlier ones.  Returns section-qualified keys ("run.order").
std::map<std::string, std::string> read_key_values(const std::string& path);

/// Build a config from a file.  All paper parameters (weno epsilon and
/// exponent, linear weights, cfl, cell count) are plain keys.
RunConfig parse_config_file(const std::string& path);

/// Apply one section-qualified key to a config (shared by file parsing and
/// command-line overrides).
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

} // namespace ale1d

#endif
