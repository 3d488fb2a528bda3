#ifndef ALE1D_STATE_HPP
#define ALE1D_STATE_HPP

#include <array>
#include <cassert>
#include <cmath>

namespace ale1d {

/// Fixed-capacity vector of conserved (or primitive) components.
/// Euler carries 3 components, MHD with divergence cleaning carries 9.
class State {
public:
    static constexpr int max_components = 9;

    State() = default;
    explicit State(int n, double fill = 0.0) : n_(n) {
        assert(n >= 0 && n <= max_components);
        v_.fill(0.0);
        for (int i = 0; i < n; ++i) v_[i] = fill;
    }

    int size() const { return n_; }

    double& operator[](int i) {
        assert(i >= 0 && i < n_);
        return v_[static_cast<std::size_t>(i)];
    }
    double operator[](int i) const {
        assert(i >= 0 && i < n_);
        return v_[static_cast<std::size_t>(i)];
    }

    State& operator+=(const State& o) {
        assert(o.n_ == n_);
        for (int i = 0; i < n_; ++i) v_[i] += o.v_[i];
        return *this;
    }
    State& operator-=(const State& o) {
        assert(o.n_ == n_);
        for (int i = 0; i < n_; ++i) v_[i] -= o.v_[i];
        return *this;
    }
    State& operator*=(double s) {
        for (int i = 0; i < n_; ++i) v_[i] *= s;
        return *this;
    }

    friend State operator+(State a, const State& b) { return a += b; }
    friend State operator-(State a, const State& b) { return a -= b; }
    friend State operator*(State a, double s) { return a *= s; }
    friend State operator*(double s, State a) { return a *= s; }

    /// this += s * o, without a temporary.
    void add_scaled(double s, const State& o) {
        assert(o.n_ == n_);
        for (int i = 0; i < n_; ++i) v_[i] += s * o.v_[i];
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < n_; ++i) m = std::max(m, std::abs(v_[i]));
        return m;
    }

    bool all_finite() const {
        for (int i = 0; i < n_; ++i)
            if (!std::isfinite(v_[i])) return false;
        return true;
    }

private:
    std::array<double, max_components> v_{};
    int n_ = 0;
};

inline double max_abs_diff(const State& a, const State& b) {
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace ale1d

#endif
