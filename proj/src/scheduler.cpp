#include "ale1d/scheduler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace ale1d {

namespace {

RunConfig validated(RunConfig cfg) {
    cfg.validate();
    return cfg;
}

} // namespace

Solver::Solver(RunConfig cfg)
    : cfg_(validated(std::move(cfg))),
      sys_(make_system(cfg_.problem.system, cfg_.problem.gamma,
                       cfg_.cleaning_speed.value_or(0.0))),
      tables_(cfg_.degree()),
      scheme_(cfg_.flux, cfg_.osher_points),
      mv_(cfg_.mesh_velocity()),
      t_end_(cfg_.problem.t_end),
      tie_tol_(1e-12 * std::max(1.0, std::abs(cfg_.problem.t_end))) {}

void Solver::initialize() {
    const int n_cells = cfg_.cells;
    const int nu = sys_->components();
    const double lo = cfg_.problem.domain_lo;
    const double hi = cfg_.problem.domain_hi;

    mesh_.cells.assign(static_cast<std::size_t>(n_cells), Cell{});
    mesh_.nodes.assign(static_cast<std::size_t>(n_cells) + 1, Node{});
    if (!cfg_.initial_nodes.empty() &&
        static_cast<int>(cfg_.initial_nodes.size()) != n_cells + 1)
        fail(ErrorCategory::config, "initial_nodes must list cells+1 positions");
    for (int k = 0; k <= n_cells; ++k) {
        mesh_.nodes[static_cast<std::size_t>(k)].x =
            cfg_.initial_nodes.empty()
                ? lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n_cells)
                : cfg_.initial_nodes[static_cast<std::size_t>(k)];
        mesh_.nodes[static_cast<std::size_t>(k)].time = 0.0;
        if (k > 0 && !(mesh_.nodes[static_cast<std::size_t>(k)].x >
                       mesh_.nodes[static_cast<std::size_t>(k) - 1].x))
            fail(ErrorCategory::config, "initial nodes must increase strictly");
    }
    initial_total_ = State(nu);
    boundary_outflow_ = State(nu);
    for (int i = 0; i < n_cells; ++i) {
        Cell& c = mesh_.cells[static_cast<std::size_t>(i)];
        c.index = i;
        c.t = 0.0;
        c.t_future = 0.0;
        c.x_left = mesh_.nodes[static_cast<std::size_t>(i)].x;
        c.x_right = mesh_.nodes[static_cast<std::size_t>(i) + 1].x;
        c.avg = cfg_.problem.initial_average(*sys_, c.x_left, c.x_right);
        c.memory = State(nu);
        sys_->validate(c.avg);
        initial_total_.add_scaled(c.width(), c.avg);
    }

    if (auto* mhd = dynamic_cast<MhdSystem*>(sys_.get()); mhd && !cfg_.cleaning_speed) {
        double ch = 0.0;
        for (const Cell& c : mesh_.cells)
            ch = std::max(ch, mhd->max_wave_speed_without_cleaning(c.avg));
        mhd->set_cleaning_speed(ch);
    }

    auto nominal = stencil_layout(cfg_.degree(), cfg_.weno);
    stencils_.assign(static_cast<std::size_t>(n_cells), {});
    for (int i = 0; i < n_cells; ++i) {
        for (const Stencil& s : nominal)
            if (i - s.left >= 0 && i + s.right <= n_cells - 1)
                stencils_[static_cast<std::size_t>(i)].push_back(s);
        if (stencils_[static_cast<std::size_t>(i)].empty())
            fail(ErrorCategory::config,
                 "no admissible stencil for cell " + std::to_string(i));
    }

    total_updates_ = 0;
    cycles_ = 0;
    done_count_ = 0;
    width_clamps_ = 0;
    width_floor_ = 0.05 * (hi - lo) / n_cells;
    scheme_.reset_counters();

    // The first planning step runs on the real geometry and real averages:
    // everything is synchronous at t = 0.
    if (cfg_.mode == RunMode::lts) {
        for (int i = 0; i < n_cells; ++i) replan_lts(i);
    } else {
        replan_all_gts();
    }
}

double Solver::propose_future(double t, double dt) const {
    double fut = t + dt;
    if (fut >= t_end_ - tie_tol_) return t_end_;
    return fut;
}

double Solver::virtual_node_position(int node, double t_target) const {
    const Node& nd = mesh_.nodes[static_cast<std::size_t>(node)];
    if (std::abs(t_target - nd.time) <= tie_tol_) return nd.x;

    double a = nd.time, b = t_target, sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    const int n_cells = mesh_.size();
    const bool domain_edge = node == 0 || node == n_cells;
    double displacement = 0.0;
    for (int g = 0; g < tables_.points(); ++g) {
        double t = a + (b - a) * tables_.nodes()[static_cast<std::size_t>(g)];
        double wgt = (b - a) * tables_.weights()[static_cast<std::size_t>(g)];
        if (domain_edge) {
            // matches the transmissive edge integration, which moves the
            // boundary with the element-mean velocity
            const Cell& cb = mesh_.cells[static_cast<std::size_t>(node == 0 ? 0 : n_cells - 1)];
            if (!cb.predictor || !cb.predictor->covers(t, tie_tol_))
                fail(ErrorCategory::out_of_domain,
                     "no local solution covers boundary node at t=" + std::to_string(t));
            State q = cb.predictor->average_at(tables_, cb.predictor->tau_of(t, tie_tol_));
            displacement += wgt * sys_->mesh_velocity(q, mv_);
            continue;
        }
        double v = 0.0;
        int used = 0;
        if (node - 1 >= 0) {
            const Cell& cl = mesh_.cells[static_cast<std::size_t>(node) - 1];
            if (cl.predictor && cl.predictor->covers(t, tie_tol_)) {
                v += cl.predictor
                         ->admissible_trace(tables_, *sys_, mv_, Side::right,
                                            cl.predictor->tau_of(t, tie_tol_))
                         .speed;
                ++used;
            }
        }
        if (node <= n_cells - 1) {
            const Cell& cr = mesh_.cells[static_cast<std::size_t>(node)];
            if (cr.predictor && cr.predictor->covers(t, tie_tol_)) {
                v += cr.predictor
                         ->admissible_trace(tables_, *sys_, mv_, Side::left,
                                            cr.predictor->tau_of(t, tie_tol_))
                         .speed;
                ++used;
            }
        }
        if (used == 0)
            fail(ErrorCategory::out_of_domain,
                 "no local solution covers node " + std::to_string(node) + " at t=" +
                     std::to_string(t));
        displacement += wgt * v / used;
    }
    return nd.x + sign * displacement;
}

std::optional<Solver::VirtualWindow> Solver::gather_window(int i, double t_target,
                                                           int radius) const {
    const int n_cells = mesh_.size();
    const int lo = std::max(0, i - radius);
    const int hi = std::min(n_cells - 1, i + radius);

    for (int j = lo; j <= hi; ++j) {
        const Cell& cj = mesh_.cells[static_cast<std::size_t>(j)];
        if (std::abs(cj.t - t_target) <= tie_tol_) continue;  // real data
        if (!cj.predictor) return std::nullopt;
        if (t_target < cj.predictor->t_start - tie_tol_ ||
            t_target > cj.predictor->t_end() + tie_tol_)
            return std::nullopt;  // stencil not ready at this instant
    }

    VirtualWindow win;
    win.first = lo;
    win.node_x.resize(static_cast<std::size_t>(hi - lo + 2));
    win.averages.resize(static_cast<std::size_t>(hi - lo + 1));
    for (int k = lo; k <= hi + 1; ++k)
        win.node_x[static_cast<std::size_t>(k - lo)] = virtual_node_position(k, t_target);
    for (int j = lo; j <= hi; ++j) {
        double width = win.node_x[static_cast<std::size_t>(j - lo + 1)] -
                       win.node_x[static_cast<std::size_t>(j - lo)];
        if (width < width_floor_) {
            // same guard as the update path, applied to the interpolated
            // geometry so the reconstruction intervals stay well posed
            double mid = 0.5 * (win.node_x[static_cast<std::size_t>(j - lo + 1)] +
                                win.node_x[static_cast<std::size_t>(j - lo)]);
            win.node_x[static_cast<std::size_t>(j - lo)] = mid - 0.5 * width_floor_;
            win.node_x[static_cast<std::size_t>(j - lo + 1)] = mid + 0.5 * width_floor_;
            ++width_clamps_;
            width = width_floor_;
        }
        if (!(width > 0.0)) {
            std::ostringstream os;
            os << "mesh tangled: virtual width of cell " << j << " at t=" << t_target
               << " is " << width;
            fail(ErrorCategory::mesh_tangling, os.str());
        }
        const Cell& cj = mesh_.cells[static_cast<std::size_t>(j)];
        if (std::abs(cj.t - t_target) <= tie_tol_) {
            win.averages[static_cast<std::size_t>(j - lo)] = cj.avg;
        } else {
            double tau = cj.predictor->tau_of(t_target, tie_tol_);
            win.averages[static_cast<std::size_t>(j - lo)] =
                cj.predictor->average_at(tables_, tau);
        }
        // note: a finished neighbor serves this from its final window
    }
    return win;
}

double Solver::local_cfl_step(int i, double t_now, const VirtualWindow& win) const {
    const int n_cells = mesh_.size();
    double dt = std::numeric_limits<double>::infinity();
    for (int j = std::max(0, i - 1); j <= std::min(n_cells - 1, i + 1); ++j) {
        double width = win.node_x[static_cast<std::size_t>(j - win.first + 1)] -
                       win.node_x[static_cast<std::size_t>(j - win.first)];
        double lam = sys_->max_signal_speed(win.averages[static_cast<std::size_t>(j - win.first)], 0.0);
        dt = std::min(dt, cfg_.cfl * width / lam);
    }
    dt = std::min(dt, t_end_ - t_now);
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        std::ostringstream os;
        os << "no admissible time step for cell " << i << " at t=" << t_now
           << " (dt=" << dt << ")";
        fail(ErrorCategory::mesh_tangling, os.str());
    }
    return dt;
}

ReconstructionPolynomial Solver::reconstruct_cell(int i, double t,
                                                  const VirtualWindow& win) const {
    const double xl = win.node_x[static_cast<std::size_t>(i - win.first)];
    const double xr = win.node_x[static_cast<std::size_t>(i - win.first + 1)];
    const double dx = xr - xl;

    std::vector<std::vector<State>> candidates;
    std::vector<double> lambdas;
    const int n = tables_.points();
    std::vector<double> xi(static_cast<std::size_t>(n) + 1);
    for (const Stencil& s : stencils_[static_cast<std::size_t>(i)]) {
        int first = i - s.left;
        for (int k = 0; k <= n; ++k)
            xi[static_cast<std::size_t>(k)] =
                (win.node_x[static_cast<std::size_t>(first + k - win.first)] - xl) / dx;
        candidates.push_back(solve_candidate(
            tables_, xi,
            std::span<const State>(&win.averages[static_cast<std::size_t>(first - win.first)],
                                   static_cast<std::size_t>(n))));
        lambdas.push_back(s.lambda);
    }

    ReconstructionPolynomial r;
    r.modal = weno_combine(tables_, candidates, lambdas, cfg_.weno);
    r.cell_index = i;
    r.time = t;
    r.x_left = xl;
    r.dx = dx;
    return r;
}

void Solver::build_predictor(int i) {
    Cell& c = mesh_.cells[static_cast<std::size_t>(i)];
    c.predictor = run_predictor(c.recon, c.x_left, c.x_right, c.t, c.t_future - c.t,
                                *sys_, mv_, tables_, i);
}

void Solver::replan_lts(int i) {
    Cell& c = mesh_.cells[static_cast<std::size_t>(i)];
    try {
        auto win = gather_window(i, c.t, cfg_.degree());
        if (!win)
            fail(ErrorCategory::deadlock,
                 "stencil window unavailable right after the cell's own update (criterion bug)");
        c.recon = reconstruct_cell(i, c.t, *win);
        double dt = local_cfl_step(i, c.t, *win);
        if (!horizon_.empty()) {
            double h = horizon_[static_cast<std::size_t>(i)];
            if (h > c.t + tie_tol_) dt = std::min(dt, h - c.t);
        }
        c.t_future = propose_future(c.t, dt);
        build_predictor(i);
    } catch (const SolverError& e) {
        std::ostringstream os;
        os << "planning cell " << i << " at t=" << c.t << ": " << e.what();
        fail(e.category(), os.str());
    }
}

void Solver::replan_all_gts() {
    const int n_cells = mesh_.size();
    double dt_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_cells; ++i) {
        Cell& c = mesh_.cells[static_cast<std::size_t>(i)];
        auto win = gather_window(i, c.t, cfg_.degree());
        if (!win)
            fail(ErrorCategory::deadlock,
                 "global-step planning found a non-synchronous cell " + std::to_string(i));
        c.recon = reconstruct_cell(i, c.t, *win);
        dt_min = std::min(dt_min, local_cfl_step(i, c.t, *win));
    }
    double fut = propose_future(mesh_.cells[0].t, dt_min);
    for (int i = 0; i < n_cells; ++i) {
        mesh_.cells[static_cast<std::size_t>(i)].t_future = fut;
        build_predictor(i);
    }
}

bool Solver::is_updatable(int i) const {
    const Cell& c = mesh_.cells[static_cast<std::size_t>(i)];
    if (c.done) return false;
    const int n_cells = mesh_.size();
    const int radius = cfg_.degree();
    const double fut = c.t_future;
    for (int j = std::max(0, i - radius); j <= std::min(n_cells - 1, i + radius); ++j) {
        if (j == i) continue;
        const Cell& cj = mesh_.cells[static_cast<std::size_t>(j)];
        // the step must end under every stencil window ...
        if (fut > cj.t_future + tie_tol_) return false;
        // ... and start after every stencil window opens (a finished cell's
        // last window still serves its whole final step)
        double start = cj.predictor ? cj.predictor->t_start : cj.t;
        if (start > fut + tie_tol_) return false;
    }
    return true;
}

void Solver::update_cell(int i) {
    const int n_cells = mesh_.size();
    const int nu = sys_->components();
    Cell& c = mesh_.cells[static_cast<std::size_t>(i)];
    const double t_new = c.t_future;

    UpdateEvent ev;
    ev.cell = i;
    ev.t_old = c.t;
    ev.t_new = t_new;
    ev.xl_old = c.x_left;
    ev.xr_old = c.x_right;

    auto edge_flux = [&](int node_idx, bool is_left) {
        EdgeRecord r;
        r.node = node_idx;
        r.flux_integral = State(nu);
        const Node& nd = mesh_.nodes[static_cast<std::size_t>(node_idx)];
        r.t0 = nd.time;
        r.t1 = t_new;
        r.x_old = nd.x;
        r.x_new = nd.x;
        if (t_new - nd.time <= tie_tol_) return r;  // interval already covered

        EdgeFluxResult res;
        int nb = is_left ? i - 1 : i + 1;
        if (nb < 0) {
            res = integrate_boundary_edge(tables_, *sys_, mv_, scheme_, *c.predictor,
                                          Side::left, nd.time, t_new, nd.x);
        } else if (nb > n_cells - 1) {
            res = integrate_boundary_edge(tables_, *sys_, mv_, scheme_, *c.predictor,
                                          Side::right, nd.time, t_new, nd.x);
        } else {
            const Cell& other = mesh_.cells[static_cast<std::size_t>(nb)];
            const SpaceTimePredictor& pl = is_left ? *other.predictor : *c.predictor;
            const SpaceTimePredictor& pr = is_left ? *c.predictor : *other.predictor;
            res = integrate_edge(tables_, *sys_, mv_, scheme_, pl, pr, nd.time, t_new, nd.x);
        }
        r.active = true;
        r.flux_integral = res.flux_integral;
        r.x_new = res.x_new;
        return r;
    };

    EdgeRecord left = edge_flux(i, true);
    EdgeRecord right = edge_flux(i + 1, false);

    // Minimum-width guard: a cell caught between converging interfaces is
    // held at a small positive width instead of collapsing to a degenerate
    // sliver whose average would be content/0.  Activations are counted;
    // regular compression stays far above the floor.
    if (right.x_new - left.x_new < width_floor_) {
        double mid = 0.5 * (left.x_new + right.x_new);
        left.x_new = mid - 0.5 * width_floor_;
        right.x_new = mid + 0.5 * width_floor_;
        ++width_clamps_;
    }

    const double dx_new = right.x_new - left.x_new;
    if (!(dx_new > 0.0)) {
        std::ostringstream os;
        os << "mesh tangled: cell " << i << " has width " << dx_new << " at t=" << t_new;
        fail(ErrorCategory::mesh_tangling, os.str());
    }

    State total = c.avg * c.width();
    if (left.active) total += left.flux_integral;
    if (right.active) total -= right.flux_integral;
    total += c.memory;
    State q_new = total * (1.0 / dx_new);
    try {
        sys_->validate(q_new);
    } catch (const SolverError& e) {
        std::ostringstream os;
        os << "cell " << i << " at t=" << t_new << ": " << e.what();
        fail(e.category(), os.str());
    }

    // Bank the freshly integrated fluxes with the neighbors; their future
    // updates pick them up instead of re-integrating the shared interval.
    if (left.active) {
        if (i > 0)
            mesh_.cells[static_cast<std::size_t>(i) - 1].memory -= left.flux_integral;
        else
            boundary_outflow_ -= left.flux_integral;
    }
    if (right.active) {
        if (i < n_cells - 1)
            mesh_.cells[static_cast<std::size_t>(i) + 1].memory += right.flux_integral;
        else
            boundary_outflow_ += right.flux_integral;
    }

    c.memory = State(nu);
    c.avg = q_new;
    c.x_left = left.x_new;
    c.x_right = right.x_new;
    c.t = t_new;
    if (left.active) {
        mesh_.nodes[static_cast<std::size_t>(i)].x = left.x_new;
        mesh_.nodes[static_cast<std::size_t>(i)].time = t_new;
    }
    if (right.active) {
        mesh_.nodes[static_cast<std::size_t>(i) + 1].x = right.x_new;
        mesh_.nodes[static_cast<std::size_t>(i) + 1].time = t_new;
    }
    ++c.updates;
    ++total_updates_;

    ev.left = left;
    ev.right = right;
    ev.xl_new = c.x_left;
    ev.xr_new = c.x_right;
    if (observer_) observer_(ev);

    if (t_new >= t_end_) {
        c.done = true;
        ++done_count_;  // the last predictor stays available to the neighbors
    } else if (cfg_.mode == RunMode::lts) {
        replan_lts(i);
    }
}

void Solver::refresh_horizon() {
    // Disturbances not yet captured by a neighbor's local solution can only
    // exist beyond that neighbor's planned window; they need travel time to
    // arrive here.  The earliest such instant bounds how far ahead a cell
    // may commit its own window: without the bound, quiet cells next to a
    // strong wave would integrate fluxes from data the wave is about to
    // invalidate.
    const int n_cells = mesh_.size();
    horizon_.assign(static_cast<std::size_t>(n_cells),
                    std::numeric_limits<double>::infinity());
    double lam = 0.0;
    for (const Cell& c : mesh_.cells) {
        if (!sys_->admissible(c.avg)) continue;
        lam = std::max(lam, sys_->max_signal_speed(c.avg, 0.0));
    }
    if (!(lam > 0.0)) return;
    auto center = [&](int i) {
        return 0.5 * (mesh_.nodes[static_cast<std::size_t>(i)].x +
                      mesh_.nodes[static_cast<std::size_t>(i) + 1].x);
    };
    double run = std::numeric_limits<double>::infinity();
    for (int i = 1; i < n_cells; ++i) {
        double transit = std::abs(center(i) - center(i - 1)) / lam;
        run = std::min(run, mesh_.cells[static_cast<std::size_t>(i) - 1].t_future) + transit;
        horizon_[static_cast<std::size_t>(i)] = run;
    }
    run = std::numeric_limits<double>::infinity();
    for (int i = n_cells - 2; i >= 0; --i) {
        double transit = std::abs(center(i + 1) - center(i)) / lam;
        run = std::min(run, mesh_.cells[static_cast<std::size_t>(i) + 1].t_future) + transit;
        horizon_[static_cast<std::size_t>(i)] = std::min(horizon_[static_cast<std::size_t>(i)], run);
    }
}

void Solver::shrink_stale_steps() {
    // A pending cell may have planned its step from conditions that a fast
    // neighbor has since overrun (a shock arriving into quiescent gas).  Its
    // window is then cut down to a fresh estimate so it can react, but never
    // below the flux already banked on its edges by the neighbors nor below
    // any stencil mate's current time, which keeps conservation and the
    // progress invariant intact.  The predictor is rebuilt from the same
    // reconstruction on the shorter window.
    const int n_cells = mesh_.size();
    const int radius = cfg_.degree();
    for (int i = 0; i < n_cells; ++i) {
        Cell& c = mesh_.cells[static_cast<std::size_t>(i)];
        if (c.done) continue;

        double dt_est = std::numeric_limits<double>::infinity();
        for (int j = std::max(0, i - 1); j <= std::min(n_cells - 1, i + 1); ++j) {
            double width = mesh_.nodes[static_cast<std::size_t>(j) + 1].x -
                           mesh_.nodes[static_cast<std::size_t>(j)].x;
            width = std::max(width, width_floor_);
            double lam = sys_->max_signal_speed(mesh_.cells[static_cast<std::size_t>(j)].avg, 0.0);
            dt_est = std::min(dt_est, cfg_.cfl * width / lam);
        }
        double target = c.t + dt_est;
        double h = horizon_[static_cast<std::size_t>(i)];
        if (h > c.t + tie_tol_) target = std::min(target, h);
        // hysteresis: rebuild only when the window would shrink by 20%+
        if (target >= c.t + 0.8 * (c.t_future - c.t)) continue;

        // never below flux already banked on the edges nor any stencil
        // mate's window start
        double floor_t = std::max(mesh_.nodes[static_cast<std::size_t>(i)].time,
                                  mesh_.nodes[static_cast<std::size_t>(i) + 1].time);
        for (int j = std::max(0, i - radius); j <= std::min(n_cells - 1, i + radius); ++j) {
            if (j == i) continue;
            const Cell& cj = mesh_.cells[static_cast<std::size_t>(j)];
            floor_t = std::max(floor_t, cj.predictor ? cj.predictor->t_start : cj.t);
        }
        double fut = std::max(target, floor_t);
        if (fut >= t_end_ - tie_tol_) fut = t_end_;
        if (fut >= c.t_future - tie_tol_) continue;
        if (fut <= c.t + tie_tol_) continue;
        c.t_future = fut;
        build_predictor(i);
    }
}

int Solver::sweep_cycle() {
    ++cycles_;
    if (cfg_.mode == RunMode::lts) {
        refresh_horizon();
        shrink_stale_steps();
    }
    int updated = 0;
    const int n_cells = mesh_.size();
    for (int i = 0; i < n_cells; ++i) {
        if (!mesh_.cells[static_cast<std::size_t>(i)].done && is_updatable(i)) {
            update_cell(i);
            ++updated;
        }
    }
    if (cfg_.mode == RunMode::gts && !all_done()) replan_all_gts();
    return updated;
}

bool Solver::all_done() const { return done_count_ == mesh_.size(); }

void Solver::finalize() {
    // every cell ends exactly at t_end; rebuild the output polynomials there
    const int n_cells = mesh_.size();
    for (int i = 0; i < n_cells; ++i) {
        Cell& c = mesh_.cells[static_cast<std::size_t>(i)];
        auto win = gather_window(i, t_end_, cfg_.degree());
        if (!win)
            fail(ErrorCategory::deadlock, "final reconstruction found a cell away from t_end");
        c.recon = reconstruct_cell(i, t_end_, *win);
    }
}

RunReport Solver::make_report(double wall_seconds) const {
    const int nu = sys_->components();
    RunReport rep;
    rep.total_updates = total_updates_;
    rep.cycles = cycles_;
    rep.wall_seconds = wall_seconds;
    rep.osher_fallbacks = scheme_.osher_fallbacks();
    rep.width_clamps = width_clamps_;
    rep.initial_total = initial_total_;
    rep.boundary_outflow = boundary_outflow_;
    rep.final_total = State(nu);
    for (const Cell& c : mesh_.cells) rep.final_total.add_scaled(c.width(), c.avg);
    rep.conservation_abs = State(nu);
    rep.conservation_rel = State(nu);
    for (int k = 0; k < nu; ++k) {
        double defect = rep.final_total[k] - rep.initial_total[k] + rep.boundary_outflow[k];
        double scale = std::max({std::abs(rep.initial_total[k]), std::abs(rep.final_total[k]),
                                 std::abs(rep.boundary_outflow[k]), 1e-300});
        rep.conservation_abs[k] = std::abs(defect);
        rep.conservation_rel[k] = std::abs(defect) / scale;
    }
    return rep;
}

RunReport Solver::run() {
    auto start = std::chrono::steady_clock::now();
    initialize();
    const long max_cycles = 1000000000L;
    while (!all_done()) {
        int updated = sweep_cycle();
        if (updated == 0) {
            std::ostringstream os;
            os << "no cell was updatable in cycle " << cycles_ << " with "
               << mesh_.size() - done_count_ << " cells pending";
            fail(ErrorCategory::deadlock, os.str());
        }
        if (cycles_ > max_cycles)
            fail(ErrorCategory::deadlock, "cycle limit exceeded");
    }
    finalize();
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return make_report(wall);
}

std::vector<CellSnapshot> Solver::snapshot() const {
    std::vector<CellSnapshot> out;
    out.reserve(mesh_.cells.size());
    for (const Cell& c : mesh_.cells) {
        CellSnapshot s;
        s.x_left = c.x_left;
        s.x_right = c.x_right;
        s.t = c.t;
        s.avg = c.avg;
        s.recon = c.recon;
        out.push_back(std::move(s));
    }
    return out;
}

RunOutcome run_solver(const RunConfig& cfg, UpdateObserver observer) {
    Solver solver(cfg);
    if (observer) solver.set_observer(std::move(observer));
    RunOutcome out;
    out.report = solver.run();
    out.cells = solver.snapshot();
    out.t_final = solver.end_time();
    return out;
}

} // namespace ale1d
