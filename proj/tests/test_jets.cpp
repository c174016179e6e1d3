#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>

#include "curlkit/jet.hpp"

using namespace curlkit;

namespace {

// Central finite differences of a scalar closure; the independent oracle for
// jet gradients. Hessians are cross-checked by differencing exact gradients.
double fd_value(const std::function<double(const Point&)>& f, Point p, int i, double h) {
    Point pp = p, pm = p;
    pp[i] += h;
    pm[i] -= h;
    return (f(pp) - f(pm)) / (2.0 * h);
}

}  // namespace

TEST_CASE("coordinate seeds") {
    Jet j = Jet::variable(0, {3.0, 0.0, 0.0}, 2);
    CHECK(j.value() == 3.0);
    CHECK(j.d(0) == 1.0);
    CHECK(j.d(1) == 0.0);
    CHECK(j.d2(0, 0) == 0.0);

    Jet k = Jet::variable(2, {0.0, 0.0, 5.0}, 1);
    CHECK(k.value() == 5.0);
    CHECK(k.d(2) == 1.0);

    CHECK_THROWS_AS(Jet::variable(3, {0.0, 0.0, 5.0}, 1), DomainError);
}

TEST_CASE("product rule on x*y") {
    // Hand product rule at (2,3): value 6, gradient (3,2), mixed second derivative 1.
    Point p = {2.0, 3.0};
    JetVec s = seed_point(p, 2);
    Jet f = s[0] * s[1];
    CHECK(f.value() == 6.0);
    CHECK(f.d(0) == 3.0);
    CHECK(f.d(1) == 2.0);
    CHECK(f.d2(0, 1) == 1.0);
    CHECK(f.d2(0, 0) == 0.0);

    auto closure = [](const Point& q) { return q[0] * q[1]; };
    CHECK(std::fabs(fd_value(closure, p, 0, 1e-5) - f.d(0)) < 1e-9);
    CHECK(std::fabs(fd_value(closure, p, 1, 1e-5) - f.d(1)) < 1e-9);
}

TEST_CASE("square and quotient") {
    Point p = {4.0};
    JetVec s = seed_point(p, 2);
    Jet sq = s[0] * s[0];
    CHECK(sq.value() == 16.0);
    CHECK(sq.d(0) == 8.0);
    CHECK(sq.d2(0, 0) == 2.0);

    // 1/(1+x²) at x = 1: value 1/2, derivative −1/2 (hand differentiation).
    Point q = {1.0};
    JetVec t = seed_point(q, 2);
    Jet r = 1.0 / (1.0 + t[0] * t[0]);
    CHECK(r.value() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.d(0) == doctest::Approx(-0.5).epsilon(1e-14));
    auto closure = [](const Point& x) { return 1.0 / (1.0 + x[0] * x[0]); };
    CHECK(std::fabs(fd_value(closure, q, 0, 1e-5) - r.d(0)) < 1e-9);

    Jet zero = t[0] - 1.0;
    CHECK_THROWS_AS(t[0] / zero, DomainError);
}

TEST_CASE("additive inverse cancels") {
    JetVec s = seed_point({2.0, -1.0}, 2);
    Jet f = s[0] * s[1] + exp(s[0]);
    Jet g = f + (-f);
    CHECK(g.value() == 0.0);
    for (int i = 0; i < 2; ++i) {
        CHECK(g.d(i) == 0.0);
        for (int j = 0; j < 2; ++j) CHECK(g.d2(i, j) == 0.0);
    }
}

TEST_CASE("elementary functions") {
    // sqrt at value 4 with unit derivative: value 2, derivative 1/4.
    JetVec s = seed_point({4.0}, 2);
    Jet r = sqrt(s[0]);
    CHECK(r.value() == 2.0);
    CHECK(r.d(0) == doctest::Approx(0.25).epsilon(1e-14));

    JetVec z = seed_point({0.0}, 2);
    Jet sn = sin(z[0]);
    CHECK(sn.value() == 0.0);
    CHECK(sn.d(0) == 1.0);
    CHECK(sn.d2(0, 0) == 0.0);

    Jet bad = z[0] - 1.0;
    CHECK_THROWS_AS(sqrt(bad), DomainError);

    // cos² + sin² is the constant 1 for any jet.
    JetVec w = seed_point({0.7, -0.3}, 2);
    Jet any = w[0] * exp(w[1]) + w[1];
    Jet one = cos(any) * cos(any) + sin(any) * sin(any);
    CHECK(one.value() == doctest::Approx(1.0).epsilon(1e-14));
    for (int i = 0; i < 2; ++i) {
        CHECK(std::fabs(one.d(i)) < 1e-14);
        for (int j = 0; j < 2; ++j) CHECK(std::fabs(one.d2(i, j)) < 1e-14);
    }
}

TEST_CASE("integer powers") {
    JetVec s = seed_point({1.5}, 2);
    Jet p = powi(s[0], 3);
    CHECK(p.value() == doctest::Approx(3.375).epsilon(1e-14));
    CHECK(p.d(0) == doctest::Approx(3 * 1.5 * 1.5).epsilon(1e-14));
    CHECK(p.d2(0, 0) == doctest::Approx(6 * 1.5).epsilon(1e-14));

    Jet inv = powi(s[0], -2);
    CHECK(inv.value() == doctest::Approx(std::pow(1.5, -2)).epsilon(1e-14));
    CHECK(inv.d(0) == doctest::Approx(-2 * std::pow(1.5, -3)).epsilon(1e-14));

    JetVec z = seed_point({0.0}, 2);
    CHECK(powi(z[0], 2).d2(0, 0) == 2.0);
    CHECK_THROWS_AS(powi(z[0], -1), DomainError);
}

TEST_CASE("hessian symmetry is structural") {
    JetVec s = seed_point({0.3, -0.8, 1.2}, 2);
    Jet f = sin(s[0] * s[1]) * exp(s[2]) + powi(s[0] + s[2], 3) / (2.0 + cos(s[1]));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(f.d2(i, j) == f.d2(j, i));
}

TEST_CASE("order-1 operations never read hessian storage") {
    const double poison = std::numeric_limits<double>::quiet_NaN();
    JetVec s = seed_point({1.2, 0.4}, 1);
    for (auto& jet : s)
        for (auto& slot : jet.hessian_storage()) slot = poison;

    Jet f = sqrt(1.0 + s[0] * s[0]) * sin(s[1]) + s[0] / (2.0 + s[1]) - exp(s[0] * s[1]);
    CHECK(std::isfinite(f.value()));
    for (int i = 0; i < 2; ++i) CHECK(std::isfinite(f.d(i)));
    for (double slot : f.hessian_storage()) CHECK(slot == 0.0);
}

TEST_CASE("gradient and hessian match finite differences at second order") {
    auto closure = [](const Point& q) {
        return std::sin(q[0]) * std::exp(q[1] * q[2]) / (1.0 + q[0] * q[0]);
    };
    auto jet_eval = [](const JetVec& s) {
        return sin(s[0]) * exp(s[1] * s[2]) / (1.0 + s[0] * s[0]);
    };
    Point p = {0.4, -0.2, 0.9};
    Jet f = jet_eval(seed_point(p, 2));

    double err4 = 0.0, err5 = 0.0;
    for (int i = 0; i < 3; ++i) {
        err4 = std::max(err4, std::fabs(fd_value(closure, p, i, 1e-4) - f.d(i)));
        err5 = std::max(err5, std::fabs(fd_value(closure, p, i, 1e-5) - f.d(i)));
    }
    CHECK(err4 < 10.0 * 1e-8);
    CHECK(err5 < 10.0 * 1e-10);
    const double order = std::log10(err4 / err5);
    CHECK(order > 1.5);
    CHECK(order < 2.5);

    // Hessian against differenced exact gradients.
    for (int i = 0; i < 3; ++i) {
        Point pp = p, pm = p;
        pp[i] += 1e-5;
        pm[i] -= 1e-5;
        Jet gp = jet_eval(seed_point(pp, 1));
        Jet gm = jet_eval(seed_point(pm, 1));
        for (int j = 0; j < 3; ++j) {
            const double fd = (gp.d(j) - gm.d(j)) / 2e-5;
            CHECK(std::fabs(fd - f.d2(i, j)) < 1e-8);
        }
    }
}

TEST_CASE("second-order composition") {
    // h(x) = G(f(x)) with G(u, v) = u·v², f(x, y) = (x+y, x·y).
    JetVec s = seed_point({0.7, -0.4}, 2);
    JetVec f = {s[0] + s[1], s[0] * s[1]};
    Point fp = {f[0].value(), f[1].value()};
    JetVec u = seed_point(fp, 2);
    Jet G = u[0] * u[1] * u[1];
    Jet h = compose(G, f);

    Jet direct = (s[0] + s[1]) * (s[0] * s[1]) * (s[0] * s[1]);
    CHECK(h.value() == doctest::Approx(direct.value()).epsilon(1e-14));
    for (int i = 0; i < 2; ++i) {
        CHECK(h.d(i) == doctest::Approx(direct.d(i)).epsilon(1e-13));
        for (int j = 0; j < 2; ++j)
            CHECK(h.d2(i, j) == doctest::Approx(direct.d2(i, j)).epsilon(1e-12));
    }
}
