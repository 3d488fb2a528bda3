#include "ale1d/reconstruction.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace ale1d {

std::vector<Stencil> stencil_layout(int degree, const WenoParams& params) {
    std::vector<Stencil> s;
    if (degree % 2 == 0) {
        s.push_back({degree / 2, degree / 2, params.lambda_central});
    } else {
        s.push_back({degree / 2 + 1, degree / 2, params.lambda_central});
        s.push_back({degree / 2, degree / 2 + 1, params.lambda_central});
    }
    s.push_back({degree, 0, params.lambda_sided});
    s.push_back({0, degree, params.lambda_sided});
    return s;
}

State ReconstructionPolynomial::value(const BasisTables& tables, double xi) const {
    State v(modal[0].size());
    for (std::size_t m = 0; m < modal.size(); ++m)
        v.add_scaled(tables.psi_value(static_cast<int>(m), xi), modal[m]);
    return v;
}

std::vector<State> solve_candidate(const BasisTables& tables,
                                   std::span<const double> xi_nodes,
                                   std::span<const State> averages) {
    const int n = tables.points();
    if (static_cast<int>(averages.size()) != n ||
        static_cast<int>(xi_nodes.size()) != n + 1)
        fail(ErrorCategory::config, "stencil needs exactly degree+1 cells");

    Eigen::MatrixXd a(n, n);
    for (int j = 0; j < n; ++j) {
        double lo = xi_nodes[static_cast<std::size_t>(j)];
        double hi = xi_nodes[static_cast<std::size_t>(j + 1)];
        double len = hi - lo;
        if (!(len > 0.0))
            fail(ErrorCategory::mesh_tangling,
                 "collapsed stencil interval in reconstruction (width " +
                     std::to_string(len) + ")");
        for (int m = 0; m < n; ++m)
            a(j, m) = (tables.psi_antiderivative(m, hi) - tables.psi_antiderivative(m, lo)) / len;
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    // guard against a numerically singular conservation system
    double det = std::abs(lu.determinant());
    if (!(det > 1e-300))
        fail(ErrorCategory::mesh_tangling, "singular reconstruction system");

    const int nu = averages[0].size();
    Eigen::MatrixXd rhs(n, nu);
    for (int j = 0; j < n; ++j)
        for (int c = 0; c < nu; ++c) rhs(j, c) = averages[static_cast<std::size_t>(j)][c];
    Eigen::MatrixXd sol = lu.solve(rhs);

    std::vector<State> modal(static_cast<std::size_t>(n), State(nu));
    for (int m = 0; m < n; ++m)
        for (int c = 0; c < nu; ++c) modal[static_cast<std::size_t>(m)][c] = sol(m, c);
    return modal;
}

std::vector<State> weno_combine(const BasisTables& tables,
                                const std::vector<std::vector<State>>& candidates,
                                const std::vector<double>& lambdas,
                                const WenoParams& params) {
    const int n = tables.points();
    const int nu = candidates[0][0].size();
    const std::size_t ns = candidates.size();
    const Eigen::MatrixXd& osc = tables.oscillation();

    std::vector<State> blended(static_cast<std::size_t>(n), State(nu));
    for (int c = 0; c < nu; ++c) {
        double omega[8];
        double total = 0.0;
        for (std::size_t s = 0; s < ns; ++s) {
            double sigma = 0.0;
            for (int l = 1; l < n; ++l)
                for (int m = 1; m < n; ++m)
                    sigma += osc(l, m) * candidates[s][static_cast<std::size_t>(l)][c] *
                             candidates[s][static_cast<std::size_t>(m)][c];
            sigma = std::max(sigma, 0.0);  // PSD form; negatives are roundoff
            omega[s] = lambdas[s] / std::pow(sigma + params.epsilon, params.exponent);
            total += omega[s];
        }
        for (std::size_t s = 0; s < ns; ++s) {
            double w = omega[s] / total;
            for (int m = 0; m < n; ++m)
                blended[static_cast<std::size_t>(m)][c] += w * candidates[s][static_cast<std::size_t>(m)][c];
        }
    }
    return blended;
}

} // namespace ale1d
