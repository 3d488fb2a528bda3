#ifndef ALE1D_BASIS_HPP
#define ALE1D_BASIS_HPP

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "ale1d/errors.hpp"
#include "ale1d/state.hpp"

namespace ale1d {

/// Gauss-Legendre quadrature with n points mapped to [0,1]; exact for
/// polynomials up to degree 2n-1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Precomputed reference-element data for polynomial degree M:
/// Gauss-Legendre nodes, the nodal Lagrange basis phi_a collocated at them
/// (used tensorially in space-time), the modal rescaled-Legendre basis psi_m
/// used for reconstruction, and every geometry-independent matrix of the
/// predictor and the smoothness indicator.
///
/// Immutable after construction; shareable across threads.
class BasisTables {
public:
    explicit BasisTables(int degree);

    int degree() const { return degree_; }
    int points() const { return n_; }                 // M+1
    int spacetime_dofs() const { return n_ * n_; }    // (M+1)^2

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Flat space-time index of (spatial node a, temporal node b).
    int node_index(int a, int b) const { return a * n_ + b; }

    // --- nodal Lagrange basis -------------------------------------------

    /// phi_a evaluated at an arbitrary point (barycentric form).
    double phi_value(int a, double x) const;

    /// Interpolate nodal values at x through the shared-denominator
    /// barycentric formula; reproduces constant data bit-exactly.
    double interpolate(const double* values, int stride, double x) const;
    State interpolate_states(const State* values, int stride, double x) const;

    /// Differentiation matrix: diff(a,b) = phi_b'(node_a).
    const Eigen::MatrixXd& diff() const { return diff_; }
    const Eigen::VectorXd& phi_left() const { return phi0_; }     // phi_a(0)
    const Eigen::VectorXd& phi_right() const { return phi1_; }    // phi_a(1)

    /// Temporal factor of the predictor's left-hand matrix and its inverse.
    const Eigen::MatrixXd& time_lhs() const { return time_lhs_; }
    const Eigen::MatrixXd& time_lhs_inv() const { return time_lhs_inv_; }

    // --- modal reconstruction basis (rescaled Legendre on [0,1]) --------

    double psi_value(int m, double xi) const;
    double psi_derivative(int m, double xi, int order) const;
    /// Antiderivative with psi_antiderivative(m, 0) = 0.
    double psi_antiderivative(int m, double xi) const;
    /// psi_at_nodes(a, m) = psi_m(node_a).
    const Eigen::MatrixXd& psi_at_nodes() const { return psi_at_nodes_; }

    /// Smoothness quadratic form: sum over derivative orders 1..M of the
    /// L2 products of psi derivatives.  Symmetric PSD, constant mode excluded.
    const Eigen::MatrixXd& oscillation() const { return oscillation_; }

    // --- full space-time matrices (tensor products of the above) --------

    double theta_value(int k, double xi, double tau) const;
    double theta_dxi(int k, double xi, double tau) const;
    double theta_dtau(int k, double xi, double tau) const;

    const Eigen::MatrixXd& k1() const { return k1_; }       // time-upwinded LHS
    const Eigen::MatrixXd& m1() const { return m1_; }       // top-face product
    const Eigen::MatrixXd& mass() const { return mass_; }   // space-time mass
    const Eigen::MatrixXd& f0() const { return f0_; }       // initial projection of psi
    const Eigen::MatrixXd& x0proj() const { return x0proj_; } // initial projection of phi

private:
    int degree_;
    int n_;
    std::vector<double> nodes_, weights_;
    std::vector<double> bary_;                      // barycentric weights
    Eigen::MatrixXd diff_;
    Eigen::VectorXd phi0_, phi1_;
    Eigen::MatrixXd time_lhs_, time_lhs_inv_;
    std::vector<std::vector<double>> psi_coeff_;    // monomial coefficients
    std::vector<std::vector<double>> psi_anti_;     // antiderivative coefficients
    Eigen::MatrixXd psi_at_nodes_;
    Eigen::MatrixXd oscillation_;
    Eigen::MatrixXd k1_, m1_, mass_, f0_, x0proj_;
};

BasisTables build_tables(int degree);

/// Evaluate a space-time nodal expansion at reference coordinates.
/// Throws out_of_domain when (xi, tau) leaves the unit square beyond a
/// 1e-12 tolerance: the local solution is never extrapolated.
State evaluate_spacetime(const BasisTables& tables, std::span<const State> coeffs,
                         double xi, double tau);

} // namespace ale1d

#endif
