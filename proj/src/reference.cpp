#include "ale1d/reference.hpp"

#include <cmath>
#include <sstream>

namespace ale1d {

namespace {

// Contribution of one side to the pressure function and its derivative.
void side_function(double p, double rho_k, double p_k, double c_k, double gamma,
                   double& f, double& df) {
    if (p > p_k) {  // shock branch
        double a_k = 2.0 / ((gamma + 1.0) * rho_k);
        double b_k = (gamma - 1.0) / (gamma + 1.0) * p_k;
        double root = std::sqrt(a_k / (p + b_k));
        f = (p - p_k) * root;
        df = root * (1.0 - 0.5 * (p - p_k) / (p + b_k));
    } else {  // rarefaction branch
        double pr = p / p_k;
        f = 2.0 * c_k / (gamma - 1.0) * (std::pow(pr, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
        df = std::pow(pr, -(gamma + 1.0) / (2.0 * gamma)) / (rho_k * c_k);
    }
}

} // namespace

ExactRiemannEuler::ExactRiemannEuler(const State& prim_left, const State& prim_right,
                                     double gamma)
    : gamma_(gamma), left_(prim_left), right_(prim_right) {
    double rho_l = left_[0], u_l = left_[1], p_l = left_[2];
    double rho_r = right_[0], u_r = right_[1], p_r = right_[2];
    if (!(rho_l > 0.0 && p_l > 0.0 && rho_r > 0.0 && p_r > 0.0))
        fail(ErrorCategory::invalid_state, "riemann: states need positive density and pressure");

    c_left_ = std::sqrt(gamma * p_l / rho_l);
    c_right_ = std::sqrt(gamma * p_r / rho_r);

    if (2.0 * (c_left_ + c_right_) / (gamma - 1.0) <= u_r - u_l)
        fail(ErrorCategory::invalid_state,
             "riemann: vacuum generation is not supported by this solver");

    // Two-rarefaction estimate; robust even for very large pressure ratios.
    double z = (gamma - 1.0) / (2.0 * gamma);
    double p0 = std::pow((c_left_ + c_right_ - 0.5 * (gamma - 1.0) * (u_r - u_l)) /
                             (c_left_ / std::pow(p_l, z) + c_right_ / std::pow(p_r, z)),
                         1.0 / z);
    p0 = std::max(p0, 1e-14 * std::min(p_l, p_r));

    double p = p0;
    for (int it = 0; it < 200; ++it) {
        double fl, dfl, fr, dfr;
        side_function(p, rho_l, p_l, c_left_, gamma, fl, dfl);
        side_function(p, rho_r, p_r, c_right_, gamma, fr, dfr);
        double f = fl + fr + (u_r - u_l);
        double step = f / (dfl + dfr);
        double p_new = p - step;
        if (p_new <= 0.0) p_new = 0.5 * p;
        double change = std::abs(p_new - p) / (0.5 * (p_new + p));
        p = p_new;
        if (change < 1e-14) break;
    }
    p_star_ = p;

    double fl, dfl, fr, dfr;
    side_function(p, rho_l, p_l, c_left_, gamma, fl, dfl);
    side_function(p, rho_r, p_r, c_right_, gamma, fr, dfr);
    u_star_ = 0.5 * (u_l + u_r) + 0.5 * (fr - fl);

    double gm = (gamma - 1.0) / (gamma + 1.0);
    left_shock_ = p_star_ > p_l;
    right_shock_ = p_star_ > p_r;
    rho_star_l_ = left_shock_
                      ? rho_l * ((p_star_ / p_l + gm) / (gm * p_star_ / p_l + 1.0))
                      : rho_l * std::pow(p_star_ / p_l, 1.0 / gamma);
    rho_star_r_ = right_shock_
                      ? rho_r * ((p_star_ / p_r + gm) / (gm * p_star_ / p_r + 1.0))
                      : rho_r * std::pow(p_star_ / p_r, 1.0 / gamma);
}

double ExactRiemannEuler::left_shock_speed() const {
    double u_l = left_[1], p_l = left_[2];
    return u_l - c_left_ * std::sqrt((gamma_ + 1.0) / (2.0 * gamma_) * p_star_ / p_l +
                                     (gamma_ - 1.0) / (2.0 * gamma_));
}

double ExactRiemannEuler::right_shock_speed() const {
    double u_r = right_[1], p_r = right_[2];
    return u_r + c_right_ * std::sqrt((gamma_ + 1.0) / (2.0 * gamma_) * p_star_ / p_r +
                                      (gamma_ - 1.0) / (2.0 * gamma_));
}

State ExactRiemannEuler::sample_primitive(double xi) const {
    double rho_l = left_[0], u_l = left_[1], p_l = left_[2];
    double rho_r = right_[0], u_r = right_[1], p_r = right_[2];
    State out(3);

    if (xi <= u_star_) {
        if (left_shock_) {
            double s = left_shock_speed();
            if (xi <= s) { out = left_; return out; }
            out[0] = rho_star_l_; out[1] = u_star_; out[2] = p_star_;
            return out;
        }
        double c_star = c_left_ * std::pow(p_star_ / p_l, (gamma_ - 1.0) / (2.0 * gamma_));
        double head = u_l - c_left_;
        double tail = u_star_ - c_star;
        if (xi <= head) { out = left_; return out; }
        if (xi >= tail) {
            out[0] = rho_star_l_; out[1] = u_star_; out[2] = p_star_;
            return out;
        }
        double g = 2.0 / (gamma_ + 1.0) + (gamma_ - 1.0) / ((gamma_ + 1.0) * c_left_) * (u_l - xi);
        out[0] = rho_l * std::pow(g, 2.0 / (gamma_ - 1.0));
        out[1] = 2.0 / (gamma_ + 1.0) * (c_left_ + 0.5 * (gamma_ - 1.0) * u_l + xi);
        out[2] = p_l * std::pow(g, 2.0 * gamma_ / (gamma_ - 1.0));
        return out;
    }

    if (right_shock_) {
        double s = right_shock_speed();
        if (xi >= s) { out = right_; return out; }
        out[0] = rho_star_r_; out[1] = u_star_; out[2] = p_star_;
        return out;
    }
    double c_star = c_right_ * std::pow(p_star_ / p_r, (gamma_ - 1.0) / (2.0 * gamma_));
    double head = u_r + c_right_;
    double tail = u_star_ + c_star;
    if (xi >= head) { out = right_; return out; }
    if (xi <= tail) {
        out[0] = rho_star_r_; out[1] = u_star_; out[2] = p_star_;
        return out;
    }
    double g = 2.0 / (gamma_ + 1.0) - (gamma_ - 1.0) / ((gamma_ + 1.0) * c_right_) * (u_r - xi);
    out[0] = rho_r * std::pow(g, 2.0 / (gamma_ - 1.0));
    out[1] = 2.0 / (gamma_ + 1.0) * (-c_right_ + 0.5 * (gamma_ - 1.0) * u_r + xi);
    out[2] = p_r * std::pow(g, 2.0 * gamma_ / (gamma_ - 1.0));
    return out;
}

State ExactRiemannEuler::sample_conserved(double xi) const {
    State p = sample_primitive(xi);
    State q(3);
    q[0] = p[0];
    q[1] = p[0] * p[1];
    q[2] = p[2] / (gamma_ - 1.0) + 0.5 * p[0] * p[1] * p[1];
    return q;
}

State alfven_exact(double x, double t, const AlfvenParams& params) {
    if (params.amplitude > 1.0)
        fail(ErrorCategory::config, "wave amplitude above 1 leaves the admissible branch");
    double root4pi = std::sqrt(4.0 * M_PI);
    double arg = x - params.speed * t;
    double v = 1.0 - params.amplitude * std::exp(-0.5 * arg * arg / (params.halfwidth * params.halfwidth));
    double w = -std::sqrt(2.0 - v * v);

    State prim(9);
    prim[0] = 1.0;
    prim[1] = 0.0;
    prim[2] = v;
    prim[3] = w;
    prim[4] = 1.0;
    prim[5] = root4pi;
    prim[6] = -root4pi * v;
    prim[7] = root4pi * std::sqrt(2.0 - v * v);
    prim[8] = 0.0;
    MhdSystem sys(params.gamma, 0.0);
    return sys.conserved(prim);
}

NormKind norm_from_name(const std::string& name) {
    if (name == "l1") return NormKind::l1;
    if (name == "l2") return NormKind::l2;
    if (name == "linf") return NormKind::linf;
    fail(ErrorCategory::config, "unknown norm '" + name + "' (valid: l1, l2, linf)");
}

double error_norm(const BasisTables& tables,
                  std::span<const ReconstructionPolynomial> cells,
                  const std::function<State(double)>& exact, int component,
                  NormKind kind) {
    double acc = 0.0;
    for (const auto& cell : cells) {
        for (int g = 0; g < tables.points(); ++g) {
            double xi = tables.nodes()[static_cast<std::size_t>(g)];
            double x = cell.x_left + cell.dx * xi;
            double diff = cell.value(tables, xi)[component] - exact(x)[component];
            double w = tables.weights()[static_cast<std::size_t>(g)] * cell.dx;
            switch (kind) {
                case NormKind::l1: acc += w * std::abs(diff); break;
                case NormKind::l2: acc += w * diff * diff; break;
                case NormKind::linf: acc = std::max(acc, std::abs(diff)); break;
            }
        }
    }
    return kind == NormKind::l2 ? std::sqrt(acc) : acc;
}

double observed_order(double err_coarse, double err_fine, int n_coarse, int n_fine) {
    return std::log(err_coarse / err_fine) /
           std::log(static_cast<double>(n_fine) / static_cast<double>(n_coarse));
}

} // namespace ale1d
