#include "doctest.h"

#include <cmath>

#include "ale1d/reference.hpp"

using namespace ale1d;

namespace {

State prim3(double rho, double u, double p) {
    State s(3);
    s[0] = rho;
    s[1] = u;
    s[2] = p;
    return s;
}

} // namespace

TEST_CASE("sod star state matches the textbook value") {
    ExactRiemannEuler rp(prim3(1.0, 0.0, 1.0), prim3(0.125, 0.0, 0.1), 1.4);
    CHECK(rp.star_pressure() == doctest::Approx(0.30313).epsilon(2e-5));
    CHECK(rp.star_velocity() == doctest::Approx(0.92745).epsilon(2e-5));
    CHECK_FALSE(rp.left_is_shock());
    CHECK(rp.right_is_shock());
}

TEST_CASE("strong riemann problems reproduce the textbook star values") {
    // left rarefaction, right shock through five orders of magnitude in p
    ExactRiemannEuler rp3(prim3(1.0, 0.0, 1000.0), prim3(1.0, 0.0, 0.01), 1.4);
    CHECK(rp3.star_pressure() == doctest::Approx(460.894).epsilon(1e-4));
    CHECK(rp3.star_velocity() == doctest::Approx(19.5975).epsilon(1e-4));

    // colliding shocks
    ExactRiemannEuler rp4(prim3(5.99924, 19.5975, 460.894),
                          prim3(5.99242, -6.19633, 46.0950), 1.4);
    CHECK(rp4.star_pressure() == doctest::Approx(1691.64).epsilon(1e-4));
    CHECK(rp4.star_velocity() == doctest::Approx(8.68975).epsilon(1e-4));
    CHECK(rp4.left_is_shock());
    CHECK(rp4.right_is_shock());
}

TEST_CASE("degenerate and symmetric cases") {
    ExactRiemannEuler same(prim3(0.8, 0.3, 1.7), prim3(0.8, 0.3, 1.7), 1.4);
    CHECK(same.star_pressure() == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(same.star_velocity() == doctest::Approx(0.3).epsilon(1e-12));

    ExactRiemannEuler mirror(prim3(1.0, 2.0, 1.0), prim3(1.0, -2.0, 1.0), 1.4);
    CHECK(std::abs(mirror.star_velocity()) < 1e-12);
}

TEST_CASE("vacuum generation is rejected") {
    CHECK_THROWS_AS(ExactRiemannEuler(prim3(1.0, -10.0, 1.0), prim3(1.0, 10.0, 1.0), 1.4),
                    SolverError);
}

TEST_CASE("sampler limits and jump conditions") {
    ExactRiemannEuler rp(prim3(1.0, 0.0, 1.0), prim3(0.125, 0.0, 0.1), 1.4);

    SUBCASE("far-field limits are the input states") {
        State l = rp.sample_primitive(-100.0);
        CHECK(l[0] == doctest::Approx(1.0));
        CHECK(l[2] == doctest::Approx(1.0));
        State r = rp.sample_primitive(100.0);
        CHECK(r[0] == doctest::Approx(0.125));
        CHECK(r[2] == doctest::Approx(0.1));
    }

    SUBCASE("self-similarity: only x/t matters") {
        for (double xi : {-0.9, 0.2, 0.95, 1.6}) {
            State a = rp.sample_primitive(xi);
            State b = rp.sample_primitive(xi);
            CHECK(max_abs_diff(a, b) == 0.0);
        }
    }

    SUBCASE("rankine-hugoniot holds across the right shock") {
        double s = rp.right_shock_speed();
        State pre = rp.sample_primitive(s + 1e-9);
        State post = rp.sample_primitive(s - 1e-9);
        auto cons = [&](const State& p) {
            State q(3);
            q[0] = p[0];
            q[1] = p[0] * p[1];
            q[2] = p[2] / 0.4 + 0.5 * p[0] * p[1] * p[1];
            return q;
        };
        auto fl = [&](const State& p) {
            State f(3);
            f[0] = p[0] * p[1];
            f[1] = p[0] * p[1] * p[1] + p[2];
            f[2] = p[1] * (p[2] / 0.4 + 0.5 * p[0] * p[1] * p[1] + p[2]);
            return f;
        };
        State dq = cons(post) - cons(pre);
        State df = fl(post) - fl(pre);
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(df[k] - s * dq[k]) < 1e-10);
    }

    SUBCASE("rarefaction fan is continuous at head and tail") {
        double head = -std::sqrt(1.4);
        State a = rp.sample_primitive(head - 1e-12);
        State b = rp.sample_primitive(head + 1e-12);
        CHECK(max_abs_diff(a, b) < 1e-9);
    }
}

TEST_CASE("traveling-wave exact solution") {
    AlfvenParams p;

    SUBCASE("pinned values at the pulse center") {
        State q = alfven_exact(0.0, 0.0, p);
        double root4pi = std::sqrt(4.0 * M_PI);
        CHECK(q[0] == doctest::Approx(1.0));
        CHECK(q[1] == doctest::Approx(0.0));
        CHECK(q[2] / q[0] == doctest::Approx(0.9).epsilon(1e-14));
        CHECK(q[3] / q[0] == doctest::Approx(-std::sqrt(1.19)).epsilon(1e-12));
        CHECK(q[3] / q[0] == doctest::Approx(-1.0908712).epsilon(1e-7));
        CHECK(q[6] == doctest::Approx(-0.9 * root4pi).epsilon(1e-13));
    }

    SUBCASE("tails approach the uniform background") {
        State q = alfven_exact(10.0, 0.0, p);
        CHECK(q[2] / q[0] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(q[3] / q[0] == doctest::Approx(-1.0).epsilon(1e-13));
    }

    SUBCASE("pure translation at the wave speed") {
        for (double x : {-0.7, 0.1, 1.3}) {
            State a = alfven_exact(x, 0.37, p);
            State b = alfven_exact(x - p.speed * 0.37, 0.0, p);
            CHECK(max_abs_diff(a, b) < 1e-14);
        }
    }

    SUBCASE("transverse magnetic energy is constant") {
        for (double x : {-1.0, 0.0, 0.42}) {
            State q = alfven_exact(x, 0.05, p);
            CHECK(q[6] * q[6] + q[7] * q[7] == doctest::Approx(8.0 * M_PI).epsilon(1e-13));
            CHECK(q[4] == doctest::Approx(4.0).epsilon(1e-13));  // constant total energy
        }
    }
}

TEST_CASE("error norms") {
    BasisTables t(2);
    // three smooth-ish polynomial cells on [0, 0.3]
    std::vector<ReconstructionPolynomial> cells;
    for (int i = 0; i < 3; ++i) {
        ReconstructionPolynomial r;
        r.x_left = 0.1 * i;
        r.dx = 0.1;
        r.modal.assign(3, State(1));
        r.modal[0][0] = 1.0 + 0.2 * i;
        r.modal[1][0] = 0.05 * (i - 1);
        r.modal[2][0] = 0.01;
        cells.push_back(r);
    }
    // reference sampler that evaluates the same piecewise polynomial
    auto self = [&](double x) {
        for (const auto& c : cells)
            if (x <= c.x_left + c.dx + 1e-14 && x >= c.x_left - 1e-14)
                return c.value(t, (x - c.x_left) / c.dx);
        return State(1);
    };

    SUBCASE("exact data fed back gives zero") {
        CHECK(error_norm(t, cells, self, 0, NormKind::l2) < 1e-13);
        CHECK(error_norm(t, cells, self, 0, NormKind::l1) < 1e-13);
        CHECK(error_norm(t, cells, self, 0, NormKind::linf) < 1e-13);
    }

    SUBCASE("constant offset integrates to delta * sqrt(length)") {
        double delta = 1e-3;
        auto shifted = [&](double x) {
            State s = self(x);
            s[0] -= delta;
            return s;
        };
        double l2 = error_norm(t, cells, shifted, 0, NormKind::l2);
        CHECK(l2 == doctest::Approx(delta * std::sqrt(0.3)).epsilon(1e-9));
        double l1 = error_norm(t, cells, shifted, 0, NormKind::l1);
        CHECK(l1 == doctest::Approx(delta * 0.3).epsilon(1e-9));
        double linf = error_norm(t, cells, shifted, 0, NormKind::linf);
        CHECK(linf == doctest::Approx(delta).epsilon(1e-9));

        // homogeneity: halving the offset halves the integral norms
        auto half = [&](double x) {
            State s = self(x);
            s[0] -= 0.5 * delta;
            return s;
        };
        CHECK(error_norm(t, cells, half, 0, NormKind::l1) == doctest::Approx(0.5 * l1).epsilon(1e-9));
        CHECK(error_norm(t, cells, half, 0, NormKind::l2) == doctest::Approx(0.5 * l2).epsilon(1e-9));
    }
}

TEST_CASE("observed order recovers synthetic rates") {
    // errors made from e = C N^-p
    double p = 3.7, c = 2.0;
    double e1 = c * std::pow(100.0, -p), e2 = c * std::pow(250.0, -p);
    CHECK(observed_order(e1, e2, 100, 250) == doctest::Approx(p).epsilon(1e-12));
}
