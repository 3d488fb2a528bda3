#ifndef ALE1D_SCHEDULER_HPP
#define ALE1D_SCHEDULER_HPP

#include <functional>
#include <memory>
#include <optional>

#include "ale1d/config.hpp"
#include "ale1d/flux.hpp"
#include "ale1d/mesh.hpp"

namespace ale1d {

struct EdgeRecord {
    bool active = false;    // an empty interval means the flux is already banked
    int node = -1;
    double t0 = 0.0, t1 = 0.0;
    State flux_integral;
    double x_old = 0.0, x_new = 0.0;
};

struct UpdateEvent {
    int cell = -1;
    double t_old = 0.0, t_new = 0.0;
    double xl_old = 0.0, xr_old = 0.0;
    double xl_new = 0.0, xr_new = 0.0;
    EdgeRecord left, right;
};

using UpdateObserver = std::function<void(const UpdateEvent&)>;

struct RunReport {
    long total_updates = 0;
    long cycles = 0;
    double wall_seconds = 0.0;
    long osher_fallbacks = 0;
    long width_clamps = 0;   // minimum-width guard activations
    State initial_total;      // per-component integral of the initial data
    State final_total;
    State boundary_outflow;   // net flux time-integral through the domain ends
    State conservation_abs;   // |final - initial + outflow|
    State conservation_rel;
};

/// Cycle-based time marching.  Every cycle sweeps all cells in ascending
/// index and updates those whose step fits under every neighbor's step
/// (plus, from third order on, under the whole stencil's windows).  In the
/// global-stepping mode all cells share the minimal step and every sweep
/// updates every cell through the same machinery.
class Solver {
public:
    explicit Solver(RunConfig cfg);

    RunReport run();

    void set_observer(UpdateObserver obs) { observer_ = std::move(obs); }

    // Individual phases, exposed for verification code.
    void initialize();
    int sweep_cycle();
    bool all_done() const;
    void finalize();
    RunReport make_report(double wall_seconds) const;

    bool is_updatable(int i) const;
    void update_cell(int i);

    /// Neighbor data interpolated to one instant: node positions advanced
    /// along the interface-velocity integrals and cell means taken from the
    /// local space-time solutions.  Cells sitting exactly at the requested
    /// time contribute their stored (real) data.
    struct VirtualWindow {
        int first = 0;                 // index of the leftmost cell
        std::vector<double> node_x;    // positions at the requested time
        std::vector<State> averages;
    };

    /// Empty result = some stencil cell's window does not contain t_target
    /// yet (the caller defers the cell to a later cycle).
    std::optional<VirtualWindow> gather_window(int i, double t_target, int radius) const;

    double local_cfl_step(int i, double t_now, const VirtualWindow& win) const;

    const Mesh& mesh() const { return mesh_; }
    const System& system() const { return *sys_; }
    const BasisTables& tables() const { return tables_; }
    const RunConfig& config() const { return cfg_; }
    const FluxScheme& flux_scheme() const { return scheme_; }
    double end_time() const { return t_end_; }

    std::vector<CellSnapshot> snapshot() const;

private:
    void replan_lts(int i);
    void replan_all_gts();
    void shrink_stale_steps();
    void refresh_horizon();
    ReconstructionPolynomial reconstruct_cell(int i, double t, const VirtualWindow& win) const;
    double propose_future(double t, double dt) const;
    double virtual_node_position(int node, double t_target) const;
    void build_predictor(int i);

    RunConfig cfg_;
    std::unique_ptr<System> sys_;
    BasisTables tables_;
    FluxScheme scheme_;
    MeshVelocityKind mv_;
    Mesh mesh_;
    std::vector<std::vector<Stencil>> stencils_;  // per cell, clipped to the domain
    double t_end_ = 0.0;
    double tie_tol_ = 0.0;
    double width_floor_ = 0.0;
    mutable long width_clamps_ = 0;
    std::vector<double> horizon_;  // earliest instant unknown data could arrive
    State boundary_outflow_;
    State initial_total_;
    long total_updates_ = 0;
    long cycles_ = 0;
    int done_count_ = 0;
    UpdateObserver observer_;
};

struct RunOutcome {
    RunReport report;
    std::vector<CellSnapshot> cells;
    double t_final = 0.0;
};

RunOutcome run_solver(const RunConfig& cfg, UpdateObserver observer = nullptr);

} // namespace ale1d

#endif
