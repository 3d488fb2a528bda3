#include "ale1d/predictor.hpp"

#include <cmath>
#include <sstream>

namespace ale1d {

double SpaceTimePredictor::tau_of(double t, double tol) const {
    double tau = (t - t_start) / dt;
    double tau_tol = tol / dt;
    if (tau < -tau_tol || tau > 1.0 + tau_tol) {
        std::ostringstream os;
        os << "time " << t << " outside predictor window [" << t_start << ", "
           << t_end() << "] of cell " << cell_index;
        fail(ErrorCategory::out_of_domain, os.str());
    }
    return std::clamp(tau, 0.0, 1.0);
}

TraceSample SpaceTimePredictor::trace(const BasisTables& tables, const System& sys,
                                      MeshVelocityKind mv, Side side, double tau) const {
    if (tau < -1e-12 || tau > 1.0 + 1e-12)
        fail(ErrorCategory::out_of_domain,
             "trace outside the predictor window: tau=" + std::to_string(tau));
    tau = std::clamp(tau, 0.0, 1.0);
    const auto s = static_cast<std::size_t>(side);
    TraceSample out;
    out.q = tables.interpolate_states(q_edge_[s].data(), 1, tau);
    out.x = tables.interpolate(x_edge_[s].data(), 1, tau);
    out.speed = sys.mesh_velocity(out.q, mv);
    return out;
}

TraceSample SpaceTimePredictor::admissible_trace(const BasisTables& tables,
                                                 const System& sys, MeshVelocityKind mv,
                                                 Side side, double tau) const {
    if (tau < -1e-12 || tau > 1.0 + 1e-12)
        fail(ErrorCategory::out_of_domain,
             "trace outside the predictor window: tau=" + std::to_string(tau));
    tau = std::clamp(tau, 0.0, 1.0);
    const auto s = static_cast<std::size_t>(side);
    TraceSample out;
    out.q = tables.interpolate_states(q_edge_[s].data(), 1, tau);
    out.x = tables.interpolate(x_edge_[s].data(), 1, tau);
    if (!sys.admissible(out.q)) out.q = average_at(tables, tau);
    out.speed = sys.mesh_velocity(out.q, mv);
    return out;
}

State SpaceTimePredictor::average_at(const BasisTables& tables, double tau) const {
    const int n = tables.points();
    std::array<State, 6> q_line;
    std::array<double, 6> x_line{};
    for (int a = 0; a < n; ++a) {
        q_line[static_cast<std::size_t>(a)] =
            tables.interpolate_states(&q[static_cast<std::size_t>(a * n)], 1, tau);
        x_line[static_cast<std::size_t>(a)] =
            tables.interpolate(&x[static_cast<std::size_t>(a * n)], 1, tau);
    }
    State num(q[0].size());
    double den = 0.0;
    for (int a = 0; a < n; ++a) {
        double x_xi = 0.0;
        for (int c = 0; c < n; ++c) x_xi += tables.diff()(a, c) * x_line[static_cast<std::size_t>(c)];
        double t = tables.weights()[static_cast<std::size_t>(a)] * x_xi;
        num.add_scaled(t, q_line[static_cast<std::size_t>(a)]);
        den += t;
    }
    num *= 1.0 / den;
    return num;
}

double SpaceTimePredictor::edge_position(const BasisTables& tables, Side side,
                                         double tau) const {
    return tables.interpolate(x_edge_[static_cast<std::size_t>(side)].data(), 1, tau);
}

double SpaceTimePredictor::width_at(const BasisTables& tables, double tau) const {
    return edge_position(tables, Side::right, tau) - edge_position(tables, Side::left, tau);
}

SpaceTimePredictor run_predictor(const ReconstructionPolynomial& w, double x_left,
                                 double x_right, double t_start, double dt,
                                 const System& sys, MeshVelocityKind mv,
                                 const BasisTables& tables, int cell_index) {
    if (!(dt > 0.0))
        fail(ErrorCategory::interval, "predictor needs a positive local step");
    if (!(x_right > x_left))
        fail(ErrorCategory::mesh_tangling, "predictor needs a positive cell width");

    const int n = tables.points();
    const int nn = n * n;
    const int nu = sys.components();
    const double dx = x_right - x_left;
    const auto& wq = tables.weights();
    const auto& nodes = tables.nodes();
    const auto& diff = tables.diff();
    const auto& t_inv = tables.time_lhs_inv();
    const auto& phi0 = tables.phi_left();

    SpaceTimePredictor pred;
    pred.cell_index = cell_index;
    pred.t_start = t_start;
    pred.dt = dt;
    pred.x0.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) pred.x0[static_cast<std::size_t>(a)] = x_left + dx * nodes[static_cast<std::size_t>(a)];

    std::vector<State>& qh = pred.q;
    std::vector<double>& xh = pred.x;
    std::vector<State> w_at_node(static_cast<std::size_t>(n), State(nu));
    std::vector<State> rhs_q0(static_cast<std::size_t>(nn), State(nu));
    std::vector<double> rhs_x0(static_cast<std::size_t>(nn), 0.0);
    std::vector<State> fh(static_cast<std::size_t>(nn), State(nu));
    std::vector<State> q_new(static_cast<std::size_t>(nn), State(nu));
    std::vector<double> x_new(static_cast<std::size_t>(nn), 0.0);
    std::vector<double> x_xi(static_cast<std::size_t>(nn)), x_tau(static_cast<std::size_t>(nn));

    // Initial guess: the reconstruction sampled at the spatial nodes, held
    // constant in time; nodes advected with the initial velocities.  When a
    // strong-shock reconstruction leaves the admissible set, or an iterate
    // does, restart once from the flat (cell-mean) polynomial: the mean is
    // always admissible and the cell average is unchanged.
    auto setup = [&](bool flat) {
        for (int a = 0; a < n; ++a) {
            if (flat) {
                w_at_node[static_cast<std::size_t>(a)] = w.modal[0];
            } else {
                State v(nu);
                for (int m = 0; m < n; ++m)
                    v.add_scaled(tables.psi_at_nodes()(a, m), w.modal[static_cast<std::size_t>(m)]);
                w_at_node[static_cast<std::size_t>(a)] = v;
            }
        }
        for (int a = 0; a < n; ++a) {
            double v0 = sys.mesh_velocity(w_at_node[static_cast<std::size_t>(a)], mv);
            for (int b = 0; b < n; ++b) {
                int k = a * n + b;
                qh[static_cast<std::size_t>(k)] = w_at_node[static_cast<std::size_t>(a)];
                xh[static_cast<std::size_t>(k)] =
                    pred.x0[static_cast<std::size_t>(a)] + v0 * dt * nodes[static_cast<std::size_t>(b)];
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int k = a * n + b;
                double s = wq[static_cast<std::size_t>(a)] * phi0(b);
                rhs_q0[static_cast<std::size_t>(k)] = s * w_at_node[static_cast<std::size_t>(a)];
                rhs_x0[static_cast<std::size_t>(k)] = s * pred.x0[static_cast<std::size_t>(a)];
            }
    };

    qh.assign(static_cast<std::size_t>(nn), State(nu));
    xh.assign(static_cast<std::size_t>(nn), 0.0);

    bool flat = false;
    for (int a = 0; a < n && !flat; ++a) {
        State v(nu);
        for (int m = 0; m < n; ++m)
            v.add_scaled(tables.psi_at_nodes()(a, m), w.modal[static_cast<std::size_t>(m)]);
        if (!sys.admissible(v)) flat = true;
    }
    setup(flat);

    const double tol = 1e-11;
    const int max_iter = 100;
    bool converged = false;
    int it = 0;
    for (; it < max_iter; ++it) {
        bool inverted = false;
        bool bad_iterate = false;
        for (int k = 0; k < nn && !bad_iterate; ++k)
            if (!sys.admissible(qh[static_cast<std::size_t>(k)])) bad_iterate = true;
        if (bad_iterate) {
            if (flat) {
                std::ostringstream os;
                os << "predictor iterate left the admissible set in cell " << cell_index
                   << " at t=" << t_start << " even from flat data";
                fail(ErrorCategory::predictor_divergence, os.str());
            }
            flat = true;
            setup(true);
        }
        for (int k = 0; k < nn; ++k) fh[static_cast<std::size_t>(k)] = sys.flux(qh[static_cast<std::size_t>(k)]);

        // interface-trajectory solve from the current nodal velocities
        for (int a = 0; a < n; ++a) {
            double wa = wq[static_cast<std::size_t>(a)];
            for (int b = 0; b < n; ++b) {
                int k = a * n + b;
                double v = sys.mesh_velocity(qh[static_cast<std::size_t>(k)], mv);
                x_new[static_cast<std::size_t>(k)] =
                    rhs_x0[static_cast<std::size_t>(k)] / wa + dt * wq[static_cast<std::size_t>(b)] * v;
            }
            for (int b = 0; b < n; ++b) {
                double s = 0.0;
                for (int d = 0; d < n; ++d) s += t_inv(b, d) * x_new[static_cast<std::size_t>(a * n + d)];
                x_xi[static_cast<std::size_t>(a * n + b)] = s;  // reuse as scratch
            }
            for (int b = 0; b < n; ++b) x_new[static_cast<std::size_t>(a * n + b)] = x_xi[static_cast<std::size_t>(a * n + b)];
        }

        // metric terms of the fresh map
        for (int a = 0; a < n && !inverted; ++a)
            for (int b = 0; b < n && !inverted; ++b) {
                int k = a * n + b;
                double sx = 0.0, st = 0.0;
                for (int c = 0; c < n; ++c) sx += diff(a, c) * x_new[static_cast<std::size_t>(c * n + b)];
                for (int d = 0; d < n; ++d) st += diff(b, d) * x_new[static_cast<std::size_t>(a * n + d)];
                x_xi[static_cast<std::size_t>(k)] = sx;
                x_tau[static_cast<std::size_t>(k)] = st;
                if (!(sx > 0.0)) {
                    if (!flat) {
                        // uniform node velocities keep a flat element rigid
                        flat = true;
                        setup(true);
                        inverted = true;
                        break;
                    }
                    std::ostringstream os;
                    os << "element inversion in cell " << cell_index << " at t=" << t_start
                       << " (x_xi=" << sx << ")";
                    fail(ErrorCategory::element_inversion, os.str());
                }
            }

        if (inverted) continue;  // restart the sweep from flat data

        // solution solve with the geometry terms collocated pointwise
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int k = a * n + b;
                State dfdxi(nu), dqdxi(nu);
                for (int c = 0; c < n; ++c) {
                    dfdxi.add_scaled(diff(a, c), fh[static_cast<std::size_t>(c * n + b)]);
                    dqdxi.add_scaled(diff(a, c), qh[static_cast<std::size_t>(c * n + b)]);
                }
                State r = rhs_q0[static_cast<std::size_t>(k)];
                double wk = wq[static_cast<std::size_t>(a)] * wq[static_cast<std::size_t>(b)];
                r.add_scaled(-wk * dt / x_xi[static_cast<std::size_t>(k)], dfdxi);
                r.add_scaled(wk * x_tau[static_cast<std::size_t>(k)] / x_xi[static_cast<std::size_t>(k)], dqdxi);
                q_new[static_cast<std::size_t>(k)] = r;  // un-inverted rhs
            }
        for (int a = 0; a < n; ++a) {
            double wa = wq[static_cast<std::size_t>(a)];
            std::array<State, 6> line;
            for (int b = 0; b < n; ++b) {
                State s(nu);
                for (int d = 0; d < n; ++d)
                    s.add_scaled(t_inv(b, d), q_new[static_cast<std::size_t>(a * n + d)]);
                s *= 1.0 / wa;
                line[static_cast<std::size_t>(b)] = s;
            }
            for (int b = 0; b < n; ++b) q_new[static_cast<std::size_t>(a * n + b)] = line[static_cast<std::size_t>(b)];
        }

        converged = true;
        for (int k = 0; k < nn; ++k) {
            const auto ks = static_cast<std::size_t>(k);
            if (std::abs(x_new[ks] - xh[ks]) > tol * (1.0 + std::abs(x_new[ks]))) converged = false;
            for (int c = 0; c < nu; ++c)
                if (std::abs(q_new[ks][c] - qh[ks][c]) > tol * (1.0 + std::abs(q_new[ks][c])))
                    converged = false;
        }
        qh.swap(q_new);
        xh.swap(x_new);
        if (converged) break;
    }
    if (!converged) {
        double res = 0.0;
        for (int k = 0; k < nn; ++k)
            res = std::max(res, max_abs_diff(qh[static_cast<std::size_t>(k)], q_new[static_cast<std::size_t>(k)]));
        std::ostringstream os;
        os << "predictor failed to converge in cell " << cell_index << " at t=" << t_start
           << " (residual " << res << " after " << max_iter << " sweeps)";
        fail(ErrorCategory::predictor_divergence, os.str());
    }
    pred.iterations = it + 1;

    // Collapse the spatial direction at the two faces through the barycentric
    // value form, which reproduces constant states exactly.
    for (int side = 0; side < 2; ++side) {
        double xi = side == 0 ? 0.0 : 1.0;
        auto& qe = pred.q_edge_[static_cast<std::size_t>(side)];
        auto& xe = pred.x_edge_[static_cast<std::size_t>(side)];
        qe.assign(static_cast<std::size_t>(n), State(nu));
        xe.assign(static_cast<std::size_t>(n), 0.0);
        for (int b = 0; b < n; ++b) {
            qe[static_cast<std::size_t>(b)] = tables.interpolate_states(&qh[static_cast<std::size_t>(b)], n, xi);
            xe[static_cast<std::size_t>(b)] = tables.interpolate(&xh[static_cast<std::size_t>(b)], n, xi);
        }
    }
    return pred;
}

} // namespace ale1d
