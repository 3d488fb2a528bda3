#include "ale1d/basis.hpp"

#include <algorithm>
#include <cmath>

namespace ale1d {

namespace {

// Legendre P_n and its derivative on [-1,1] by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) { p = p0; dp = 0.0; return; }
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

std::vector<double> poly_derive(std::vector<double> c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
    return d;
}

std::vector<double> poly_integrate(const std::vector<double>& c) {
    std::vector<double> d(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) d[i + 1] = c[i] / static_cast<double>(i + 1);
    return d;
}

// Exact integral over [0,1] of the product of two polynomials.
double poly_product_integral01(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            s += a[i] * b[j] / static_cast<double>(i + j + 1);
    return s;
}

} // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) fail(ErrorCategory::config, "quadrature needs at least one point");
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            double step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        legendre(n, x, p, dp);
        // roots come out descending in x; store ascending on [0,1]
        nodes[static_cast<std::size_t>(n - 1 - k)] = 0.5 * (x + 1.0);
        weights[static_cast<std::size_t>(n - 1 - k)] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

BasisTables::BasisTables(int degree) : degree_(degree), n_(degree + 1) {
    if (degree < 1 || degree > 5)
        fail(ErrorCategory::config,
             "unsupported polynomial degree " + std::to_string(degree) + " (valid: 1..5)");

    gauss_legendre(n_, nodes_, weights_);

    bary_.assign(static_cast<std::size_t>(n_), 1.0);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (b != a) bary_[static_cast<std::size_t>(a)] /= (nodes_[static_cast<std::size_t>(a)] - nodes_[static_cast<std::size_t>(b)]);

    diff_.resize(n_, n_);
    for (int a = 0; a < n_; ++a) {
        double rowsum = 0.0;
        for (int b = 0; b < n_; ++b) {
            if (b == a) continue;
            double d = bary_[static_cast<std::size_t>(b)] / bary_[static_cast<std::size_t>(a)] /
                       (nodes_[static_cast<std::size_t>(a)] - nodes_[static_cast<std::size_t>(b)]);
            diff_(a, b) = d;
            rowsum += d;
        }
        diff_(a, a) = -rowsum;  // constants differentiate to zero exactly
    }

    phi0_.resize(n_);
    phi1_.resize(n_);
    for (int a = 0; a < n_; ++a) {
        phi0_(a) = phi_value(a, 0.0);
        phi1_(a) = phi_value(a, 1.0);
    }

    // Temporal LHS factor: collocated integral of phi_b * phi_d' plus the
    // initial-face product.  Equal, through integration by parts, to the
    // top-face product minus the transposed integral.
    time_lhs_.resize(n_, n_);
    for (int b = 0; b < n_; ++b)
        for (int d = 0; d < n_; ++d)
            time_lhs_(b, d) = weights_[static_cast<std::size_t>(b)] * diff_(b, d) + phi0_(b) * phi0_(d);
    time_lhs_inv_ = time_lhs_.inverse();

    // Modal basis: Legendre rescaled to [0,1], monomial coefficients per mode.
    psi_coeff_.resize(static_cast<std::size_t>(n_));
    psi_coeff_[0] = {1.0};
    if (n_ > 1) psi_coeff_[1] = {-1.0, 2.0};
    for (int m = 2; m < n_; ++m) {
        const auto& pm = psi_coeff_[static_cast<std::size_t>(m - 1)];
        const auto& pmm = psi_coeff_[static_cast<std::size_t>(m - 2)];
        std::vector<double> c(static_cast<std::size_t>(m + 1), 0.0);
        // (2x - 1) * pm
        for (std::size_t i = 0; i < pm.size(); ++i) {
            c[i + 1] += 2.0 * pm[i];
            c[i] -= pm[i];
        }
        for (auto& v : c) v *= (2.0 * m - 1.0);
        for (std::size_t i = 0; i < pmm.size(); ++i) c[i] -= (m - 1.0) * pmm[i];
        for (auto& v : c) v /= static_cast<double>(m);
        psi_coeff_[static_cast<std::size_t>(m)] = std::move(c);
    }
    psi_anti_.resize(static_cast<std::size_t>(n_));
    for (int m = 0; m < n_; ++m) psi_anti_[static_cast<std::size_t>(m)] = poly_integrate(psi_coeff_[static_cast<std::size_t>(m)]);

    psi_at_nodes_.resize(n_, n_);
    for (int a = 0; a < n_; ++a)
        for (int m = 0; m < n_; ++m)
            psi_at_nodes_(a, m) = psi_value(m, nodes_[static_cast<std::size_t>(a)]);

    oscillation_ = Eigen::MatrixXd::Zero(n_, n_);
    for (int l = 0; l < n_; ++l) {
        for (int m = 0; m < n_; ++m) {
            auto dl = psi_coeff_[static_cast<std::size_t>(l)];
            auto dm = psi_coeff_[static_cast<std::size_t>(m)];
            double s = 0.0;
            for (int alpha = 1; alpha <= degree_; ++alpha) {
                dl = poly_derive(dl);
                dm = poly_derive(dm);
                s += poly_product_integral01(dl, dm);
            }
            oscillation_(l, m) = s;
        }
    }

    // Full space-time matrices, indexed k = a * (M+1) + b.
    int nn = n_ * n_;
    k1_ = Eigen::MatrixXd::Zero(nn, nn);
    m1_ = Eigen::MatrixXd::Zero(nn, nn);
    mass_ = Eigen::MatrixXd::Zero(nn, nn);
    f0_ = Eigen::MatrixXd::Zero(nn, n_);
    x0proj_ = Eigen::MatrixXd::Zero(nn, n_);
    for (int a = 0; a < n_; ++a) {
        double wa = weights_[static_cast<std::size_t>(a)];
        for (int b = 0; b < n_; ++b) {
            int k = node_index(a, b);
            for (int d = 0; d < n_; ++d) {
                k1_(k, node_index(a, d)) = wa * time_lhs_(b, d);
                m1_(k, node_index(a, d)) = wa * phi1_(b) * phi1_(d);
            }
            mass_(k, k) = wa * weights_[static_cast<std::size_t>(b)];
            for (int m = 0; m < n_; ++m)
                f0_(k, m) = wa * psi_at_nodes_(a, m) * phi0_(b);
            x0proj_(k, a) = wa * phi0_(b);
        }
    }
}

double BasisTables::phi_value(int a, double x) const {
    const double tol = 1e-14;
    for (int b = 0; b < n_; ++b)
        if (std::abs(x - nodes_[static_cast<std::size_t>(b)]) < tol) return a == b ? 1.0 : 0.0;
    double den = 0.0;
    for (int b = 0; b < n_; ++b) den += bary_[static_cast<std::size_t>(b)] / (x - nodes_[static_cast<std::size_t>(b)]);
    return bary_[static_cast<std::size_t>(a)] / (x - nodes_[static_cast<std::size_t>(a)]) / den;
}

double BasisTables::interpolate(const double* values, int stride, double x) const {
    const double tol = 1e-14;
    for (int b = 0; b < n_; ++b)
        if (std::abs(x - nodes_[static_cast<std::size_t>(b)]) < tol) return values[b * stride];
    double num = 0.0, den = 0.0;
    for (int b = 0; b < n_; ++b) {
        double w = bary_[static_cast<std::size_t>(b)] / (x - nodes_[static_cast<std::size_t>(b)]);
        num += w * values[b * stride];
        den += w;
    }
    return num / den;
}

State BasisTables::interpolate_states(const State* values, int stride, double x) const {
    const double tol = 1e-14;
    for (int b = 0; b < n_; ++b)
        if (std::abs(x - nodes_[static_cast<std::size_t>(b)]) < tol) return values[b * stride];
    State num(values[0].size());
    double den = 0.0;
    for (int b = 0; b < n_; ++b) {
        double w = bary_[static_cast<std::size_t>(b)] / (x - nodes_[static_cast<std::size_t>(b)]);
        num.add_scaled(w, values[b * stride]);
        den += w;
    }
    num *= 1.0 / den;
    return num;
}

double BasisTables::psi_value(int m, double xi) const {
    return poly_eval(psi_coeff_[static_cast<std::size_t>(m)], xi);
}

double BasisTables::psi_derivative(int m, double xi, int order) const {
    auto c = psi_coeff_[static_cast<std::size_t>(m)];
    for (int k = 0; k < order; ++k) c = poly_derive(c);
    return poly_eval(c, xi);
}

double BasisTables::psi_antiderivative(int m, double xi) const {
    return poly_eval(psi_anti_[static_cast<std::size_t>(m)], xi);
}

double BasisTables::theta_value(int k, double xi, double tau) const {
    return phi_value(k / n_, xi) * phi_value(k % n_, tau);
}

double BasisTables::theta_dxi(int k, double xi, double tau) const {
    // derivative of the interpolant = interpolant of the differentiated values
    int a = k / n_, b = k % n_;
    std::vector<double> dvals(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) dvals[static_cast<std::size_t>(i)] = diff_(i, a);
    return interpolate(dvals.data(), 1, xi) * phi_value(b, tau);
}

double BasisTables::theta_dtau(int k, double xi, double tau) const {
    int a = k / n_, b = k % n_;
    std::vector<double> dvals(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) dvals[static_cast<std::size_t>(i)] = diff_(i, b);
    return phi_value(a, xi) * interpolate(dvals.data(), 1, tau);
}

BasisTables build_tables(int degree) { return BasisTables(degree); }

State evaluate_spacetime(const BasisTables& tables, std::span<const State> coeffs,
                         double xi, double tau) {
    const double tol = 1e-12;
    if (xi < -tol || xi > 1.0 + tol || tau < -tol || tau > 1.0 + tol)
        fail(ErrorCategory::out_of_domain,
             "space-time evaluation outside the reference element: xi=" +
                 std::to_string(xi) + " tau=" + std::to_string(tau));
    if (static_cast<int>(coeffs.size()) != tables.spacetime_dofs())
        fail(ErrorCategory::config, "coefficient count does not match basis size");
    xi = std::clamp(xi, 0.0, 1.0);
    tau = std::clamp(tau, 0.0, 1.0);

    int n = tables.points();
    std::array<State, 6> line;
    for (int a = 0; a < n; ++a)
        line[static_cast<std::size_t>(a)] = tables.interpolate_states(&coeffs[static_cast<std::size_t>(a * n)], 1, tau);
    return tables.interpolate_states(line.data(), 1, xi);
}

} // namespace ale1d
