#include <doctest.h>

#include <cmath>

#include "curlkit/catalog.hpp"
#include "curlkit/geometry.hpp"
#include "curlkit/rng.hpp"

using namespace curlkit;

namespace {

MetricField flat_metric(const Chart& chart) {
    const int n = chart.dim;
    return MetricField(chart, [n](const JetVec& s) {
        JetMat g(n, Jet::constant(0.0, s[0].dim(), s[0].order()));
        for (int i = 0; i < n; ++i) g(i, i) = Jet::constant(1.0, s[0].dim(), s[0].order());
        return g;
    });
}

MetricField conformal_2d(const Chart& chart) {
    // g = e^{2x} δ on the plane.
    return MetricField(chart, [](const JetVec& s) {
        Jet f = exp(2.0 * s[0]);
        JetMat g(2, Jet::constant(0.0, s[0].dim(), s[0].order()));
        g(0, 0) = f;
        g(1, 1) = f;
        return g;
    });
}

}  // namespace

TEST_CASE("metric inverse on constant metrics") {
    Chart chart = make_chart({"x", "y", "z"});
    MetricField flat = flat_metric(chart);
    Point p = {0.2, -0.4, 0.9};
    JetMat inv = metric_inverse(flat.components(p, 2), p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(inv(i, j).value() == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
            for (int k = 0; k < 3; ++k) CHECK(std::fabs(inv(i, j).d(k)) < 1e-14);
        }

    MetricField diag(chart, [](const JetVec& s) {
        JetMat g(3, Jet::constant(0.0, s[0].dim(), s[0].order()));
        g(0, 0) = Jet::constant(4.0, s[0].dim(), s[0].order());
        g(1, 1) = Jet::constant(1.0, s[0].dim(), s[0].order());
        g(2, 2) = Jet::constant(1.0, s[0].dim(), s[0].order());
        return g;
    });
    JetMat dinv = metric_inverse(diag.components(p, 1), p);
    CHECK(dinv(0, 0).value() == doctest::Approx(0.25));
    CHECK(dinv(1, 1).value() == doctest::Approx(1.0));
}

TEST_CASE("metric inverse is a two-sided inverse on curved metrics") {
    CatalogGeometry round = instantiate("s3-round");
    SplitMix64 rng(5);
    for (int t = 0; t < 5; ++t) {
        Point p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        JetMat g = round.metric.components(p, 1);
        JetMat inv = metric_inverse(g, p);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double prod = 0.0;
                for (int k = 0; k < 3; ++k) prod += g(i, k).value() * inv(k, j).value();
                CHECK(std::fabs(prod - (i == j ? 1.0 : 0.0)) < 1e-12);
            }
    }
}

TEST_CASE("singular metric raises with the offending determinant") {
    Chart chart = make_chart({"x", "y"});
    MetricField degenerate(chart, [](const JetVec& s) {
        JetMat g(2, Jet::constant(0.0, s[0].dim(), s[0].order()));
        g(0, 0) = Jet::constant(1.0, s[0].dim(), s[0].order());
        g(1, 1) = Jet::constant(0.0, s[0].dim(), s[0].order());
        return g;
    });
    Point p = {0.0, 0.0};
    CHECK_THROWS_AS(metric_inverse(degenerate.components(p, 1), p), SingularMetricError);
}

TEST_CASE("christoffel symbols of a flat metric vanish") {
    Chart chart = make_chart({"x", "y", "z"});
    MetricField flat = flat_metric(chart);
    Point p = {0.1, 0.2, 0.3};
    Ten3<Jet> gamma = christoffel(flat.components(p, 2), p);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(gamma(k, i, j).value() == 0.0);
}

TEST_CASE("conformally flat christoffel symbols match the hand formula") {
    Chart chart = make_chart({"u", "v"});
    MetricField g = conformal_2d(chart);
    Point p = {0.37, -0.8};
    Ten3<Jet> gamma = christoffel(g.components(p, 2), p);
    CHECK(gamma(0, 0, 0).value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma(0, 1, 1).value() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(gamma(1, 0, 1).value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(gamma(0, 0, 1).value()) < 1e-13);
    CHECK(std::fabs(gamma(1, 0, 0).value()) < 1e-13);
}

TEST_CASE("levi-civita connection is metric compatible") {
    CatalogGeometry round = instantiate("s3-round");
    SplitMix64 rng(11);
    for (int t = 0; t < 5; ++t) {
        Point p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        JetMat g = round.metric.components(p, 2);
        Ten3<Jet> gamma = christoffel(g, p);
        double worst = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    double v = g(i, j).d(k);
                    for (int l = 0; l < 3; ++l)
                        v -= gamma(l, k, i).value() * g(l, j).value() +
                             gamma(l, k, j).value() * g(i, l).value();
                    worst = std::max(worst, std::fabs(v));
                }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("projective symbols are trace free and perturbation invariant") {
    CatalogGeometry round = instantiate("s3-round");
    ConnectionField lc = levi_civita(round.metric);
    SplitMix64 rng(13);

    CovectorField beta(round.chart, [](const JetVec& s) {
        JetVec b(3);
        b[0] = 0.3 + s[1] * 0.7;
        b[1] = s[0] * s[2];
        b[2] = Jet::constant(-0.4, s[0].dim(), s[0].order()) + s[1];
        return b;
    });
    ConnectionField perturbed = connection_perturb(lc, beta);

    for (int t = 0; t < 10; ++t) {
        Point p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        Ten3<double> pi0 = projective_symbols(tensor_values(lc.christoffels(p, 0)));
        Ten3<double> pi1 = projective_symbols(tensor_values(perturbed.christoffels(p, 0)));
        for (int j = 0; j < 3; ++j) {
            double trace = 0.0;
            for (int k = 0; k < 3; ++k) trace += pi0(k, k, j);
            CHECK(std::fabs(trace) < 1e-12);
        }
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    CHECK(std::fabs(pi0(k, i, j) - pi1(k, i, j)) < 1e-12);
    }
}

TEST_CASE("perturbed connection matches the displayed formula and stays symmetric") {
    Chart chart = make_chart({"x", "y", "z"});
    MetricField flat = flat_metric(chart);
    ConnectionField lc = levi_civita(flat);
    CovectorField dx1(chart, [](const JetVec& s) {
        JetVec b(3, Jet::constant(0.0, s[0].dim(), s[0].order()));
        b[0] = Jet::constant(1.0, s[0].dim(), s[0].order());
        return b;
    });
    ConnectionField tilde = connection_perturb(lc, dx1);
    Point p = {0.5, 0.5, 0.5};
    Ten3<Jet> gamma = tilde.christoffels(p, 0);
    CHECK(gamma(0, 0, 0).value() == doctest::Approx(2.0));
    CHECK(gamma(0, 0, 1).value() == doctest::Approx(0.0));
    CHECK(gamma(1, 0, 1).value() == doctest::Approx(1.0));
    CHECK(gamma(1, 1, 0).value() == doctest::Approx(1.0));
    CHECK(gamma(2, 0, 2).value() == doctest::Approx(1.0));
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(gamma(k, i, j).value() == gamma(k, j, i).value());
}

TEST_CASE("curvature of flat space vanishes and spheres have constant positive curvature") {
    Chart chart = make_chart({"x", "y", "z"});
    MetricField flat = flat_metric(chart);
    CurvatureResult flat_curv = curvature(flat, {0.3, 0.1, -0.2});
    CHECK(flat_curv.scalar == doctest::Approx(0.0));
    for (int l = 0; l < 3; ++l)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) CHECK(flat_curv.riemann(l, i, j, k) == 0.0);

    CatalogGeometry round = instantiate("s3-round");
    SplitMix64 rng(17);
    for (int t = 0; t < 5; ++t) {
        Point p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        CHECK(curvature(round.metric, p).scalar == doctest::Approx(6.0).epsilon(1e-10));
    }

    // 2D round sphere of radius r has scalar curvature 2/r².
    for (double r : {1.0, 1.7}) {
        BaseGeometry base = sphere_base(r);
        Point p = {0.3, -0.5};
        CHECK(std::fabs(curvature(base.metric, p).scalar - 2.0 / (r * r)) < 1e-8);
    }
}

TEST_CASE("lowered riemann tensor is antisymmetric in its first pair") {
    CatalogGeometry round = instantiate("s3-round");
    SplitMix64 rng(23);
    for (int t = 0; t < 5; ++t) {
        Point p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        CurvatureResult curv = curvature(round.metric, p);
        Mat<double> g = matrix_values(round.metric.components(p, 1));
        Ten4<double> lowered = lower_riemann(curv.riemann, g);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        CHECK(std::fabs(lowered(a, b, i, j) + lowered(b, a, i, j)) < 1e-9);
                        CHECK(std::fabs(lowered(a, b, i, j) + lowered(a, b, j, i)) < 1e-9);
                    }
    }
}

TEST_CASE("pullback by the identity and by linear maps") {
    CatalogGeometry round = instantiate("s3-round");
    ChartMap id = ChartMap::identity(round.chart);
    Point p = {0.4, -0.3, 0.2};
    JetMat pulled = pullback_metric(id, round.metric, p);
    JetMat direct = round.metric.components(p, 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(pulled(i, j).value() == doctest::Approx(direct(i, j).value()).epsilon(1e-13));

    Chart chart = make_chart({"x", "y", "z"});
    MetricField flat = flat_metric(chart);
    double A[3][3] = {{1.0, 0.5, 0.0}, {-0.3, 1.2, 0.1}, {0.2, 0.0, 0.9}};
    ChartMap linear(chart, chart, [&A](const JetVec& s) {
        JetVec out(3, Jet::constant(0.0, s[0].dim(), s[0].order()));
        for (int a = 0; a < 3; ++a) {
            Jet v = Jet::constant(0.0, s[0].dim(), s[0].order());
            for (int j = 0; j < 3; ++j) v = v + A[a][j] * s[j];
            out[a] = v;
        }
        return out;
    });
    JetMat ata = pullback_metric(linear, flat, p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double expected = 0.0;
            for (int a = 0; a < 3; ++a) expected += A[a][i] * A[a][j];
            CHECK(ata(i, j).value() == doctest::Approx(expected).epsilon(1e-13));
            for (int k = 0; k < 3; ++k) CHECK(std::fabs(ata(i, j).d(k)) < 1e-13);
        }
}

TEST_CASE("pullback is functorial on composed maps") {
    CatalogGeometry round = instantiate("s3-round");
    SplitMix64 rng(31);
    auto perturbation = [&rng]() {
        double c[3][4];
        for (auto& row : c)
            for (double& v : row) v = rng.uniform(-0.05, 0.05);
        return [c](const JetVec& s) {
            JetVec out(3);
            for (int a = 0; a < 3; ++a)
                out[a] = s[a] + c[a][0] * s[0] * s[1] + c[a][1] * s[1] * s[2] +
                         c[a][2] * s[0] * s[0] + c[a][3] * s[2];
            return out;
        };
    };
    ChartMap f(round.chart, round.chart, perturbation());
    ChartMap h(round.chart, round.chart, perturbation());

    for (int t = 0; t < 5; ++t) {
        Point p = {rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)};

        // (f∘h)*g at p via composed jets.
        JetVec hj = h.components(p, 2);
        Point hp(3);
        for (int i = 0; i < 3; ++i) hp[i] = hj[i].value();
        JetVec fj = f.components(hp, 2);
        JetVec fhj(3);
        for (int a = 0; a < 3; ++a) fhj[a] = compose(fj[a], hj);
        JetMat left = pullback_metric(fhj, round.metric);

        // h*(f*g) at value level: contract (f*g)(h(p)) with the Jacobian of h.
        JetMat inner = pullback_metric(f, round.metric, hp);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double v = 0.0;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        v += hj[a].d(i) * hj[b].d(j) * inner(a, b).value();
                CHECK(std::fabs(left(i, j).value() - v) < 1e-9);
            }
    }
}
