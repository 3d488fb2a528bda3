#ifndef ALE1D_TESTS_SUPPORT_HPP
#define ALE1D_TESTS_SUPPORT_HPP

#include <cmath>

#include "ale1d/reconstruction.hpp"
#include "ale1d/system.hpp"

namespace ale1d::testing {

/// Scalar linear advection f = a q, for exercising the generic machinery
/// where the exact evolution is known in closed form.
class LinearAdvection final : public System {
public:
    explicit LinearAdvection(double speed) : a_(speed) {}

    int components() const override { return 1; }
    const char* name() const override { return "linear"; }
    double heat_ratio() const override { return 1.4; }
    void validate(const State& q) const override {
        if (!q.all_finite()) fail(ErrorCategory::invalid_state, "linear: non-finite");
    }
    double pressure(const State&) const override { return 1.0; }
    State flux(const State& q) const override {
        State f(1);
        f[0] = a_ * q[0];
        return f;
    }
    double max_signal_speed(const State&, double wall) const override {
        return std::abs(a_ - wall);
    }
    State abs_ale_jacobian_times(const State&, double wall, const State& dq) const override {
        State r(1);
        r[0] = std::abs(a_ - wall) * dq[0];
        return r;
    }
    State primitive(const State& q) const override { return q; }
    State conserved(const State& p) const override { return p; }
    std::vector<std::string> conserved_names() const override { return {"q"}; }
    std::vector<std::string> primitive_names() const override { return {"q"}; }

private:
    double a_;
};

/// Modal polynomial with prescribed coefficients on [x_left, x_left + dx].
inline ReconstructionPolynomial make_poly(std::vector<State> modal, double x_left,
                                          double dx, double t = 0.0, int cell = 0) {
    ReconstructionPolynomial r;
    r.modal = std::move(modal);
    r.x_left = x_left;
    r.dx = dx;
    r.time = t;
    r.cell_index = cell;
    return r;
}

inline ReconstructionPolynomial constant_poly(const State& value, int degree,
                                              double x_left, double dx) {
    std::vector<State> modal(static_cast<std::size_t>(degree) + 1, State(value.size()));
    modal[0] = value;
    return make_poly(std::move(modal), x_left, dx);
}

} // namespace ale1d::testing

#endif
