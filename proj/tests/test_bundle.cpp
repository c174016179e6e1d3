#include <doctest.h>

#include <cmath>

#include "curlkit/bundle.hpp"
#include "curlkit/catalog.hpp"
#include "curlkit/contact.hpp"
#include "curlkit/curl.hpp"
#include "curlkit/rng.hpp"

using namespace curlkit;

namespace {

BaseGeometry random_spd_base(SplitMix64& rng) {
    const double a = rng.uniform(0.5, 2.0);
    const double b = rng.uniform(-0.4, 0.4);
    const double c = rng.uniform(0.5, 2.0);
    Chart chart = make_chart({"x1", "x2"});
    MetricField metric(chart, [a, b, c](const JetVec& s) {
        Jet e = exp(0.3 * s[0] - 0.2 * s[1]);
        JetMat g(2, Jet::constant(0.0, s[0].dim(), s[0].order()));
        g(0, 0) = (a + s[1] * s[1] * 0.1) * e;
        g(1, 1) = (c + s[0] * s[0] * 0.1) * e;
        g(0, 1) = g(1, 0) = b * e;
        return g;
    });
    return {chart, metric};
}

}  // namespace

TEST_CASE("orthonormal frames") {
    BaseGeometry flat = flat_base();
    JetVec seeds = seed_point({0.2, -0.3, 0.9}, 2);
    JetMat g = flat.metric.components(seeds);
    JetVec e1, e2;
    orthonormal_frame(g, e1, e2);
    CHECK(e1[0].value() == doctest::Approx(1.0));
    CHECK(e1[1].value() == 0.0);
    CHECK(e2[0].value() == 0.0);
    CHECK(e2[1].value() == doctest::Approx(1.0));

    Chart chart = make_chart({"x1", "x2"});
    MetricField diag(chart, [](const JetVec& s) {
        JetMat m(2, Jet::constant(0.0, s[0].dim(), s[0].order()));
        m(0, 0) = Jet::constant(4.0, s[0].dim(), s[0].order());
        m(1, 1) = Jet::constant(1.0, s[0].dim(), s[0].order());
        return m;
    });
    JetMat gd = diag.components(seeds);
    orthonormal_frame(gd, e1, e2);
    CHECK(e1[0].value() == doctest::Approx(0.5));
    CHECK(e2[1].value() == doctest::Approx(1.0));

    // Random SPD metrics: orthonormality holds including propagated jets.
    SplitMix64 rng(5);
    for (int t = 0; t < 5; ++t) {
        BaseGeometry base = random_spd_base(rng);
        JetVec s = seed_point({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0, 6.2)}, 2);
        JetMat gb = base.metric.components(s);
        orthonormal_frame(gb, e1, e2);
        const JetVec* frames[2] = {&e1, &e2};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Jet dot = Jet::constant(0.0, 3, 2);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        dot = dot + gb(i, j) * (*frames[a])[i] * (*frames[b])[j];
                CHECK(std::fabs(dot.value() - (a == b ? 1.0 : 0.0)) < 1e-12);
                for (int k = 0; k < 3; ++k) CHECK(std::fabs(dot.d(k)) < 1e-11);
            }
    }

    MetricField negative(chart, [](const JetVec& s) {
        JetMat m(2, Jet::constant(0.0, s[0].dim(), s[0].order()));
        m(0, 0) = Jet::constant(-1.0, s[0].dim(), s[0].order());
        m(1, 1) = Jet::constant(1.0, s[0].dim(), s[0].order());
        return m;
    });
    JetMat gneg = negative.components(seeds);
    CHECK_THROWS_AS(orthonormal_frame(gneg, e1, e2), DomainError);
}

TEST_CASE("fiber direction is the unit circle in the frame") {
    BaseGeometry flat = flat_base();
    JetVec seeds0 = seed_point({0.0, 0.0, 0.0}, 2);
    JetMat g0 = flat.metric.components(seeds0);
    JetVec y0 = fiber_direction(g0, seeds0[2]);
    CHECK(y0[0].value() == doctest::Approx(1.0));
    CHECK(y0[1].value() == doctest::Approx(0.0));

    const double half_pi = std::acos(-1.0) / 2.0;
    JetVec seeds1 = seed_point({0.0, 0.0, half_pi}, 2);
    JetVec y1 = fiber_direction(flat.metric.components(seeds1), seeds1[2]);
    CHECK(y1[0].value() == doctest::Approx(0.0));
    CHECK(y1[1].value() == doctest::Approx(1.0));

    // ∂_u y is g-orthogonal to y, and g(y,y) = 1 identically.
    SplitMix64 rng(9);
    for (int t = 0; t < 5; ++t) {
        BaseGeometry base = random_spd_base(rng);
        Point p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.0, 6.2)};
        JetVec s = seed_point(p, 2);
        JetMat g = base.metric.components(s);
        JetVec y = fiber_direction(g, s[2]);
        Jet norm = Jet::constant(0.0, 3, 2);
        Jet ortho = Jet::constant(0.0, 3, 1);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                norm = norm + g(i, j) * y[i] * y[j];
                ortho = ortho + g(i, j).truncated(1) * y[i].partial(2) * y[j].truncated(1);
            }
        CHECK(std::fabs(norm.value() - 1.0) < 1e-12);
        for (int k = 0; k < 3; ++k) CHECK(std::fabs(norm.d(k)) < 1e-12);
        CHECK(std::fabs(ortho.value()) < 1e-12);
    }
}

TEST_CASE("lifted contact form") {
    BaseGeometry flat = flat_base();
    JetVec seeds = seed_point({0.7, -0.4, 0.0}, 2);
    JetVec th = lifted_contact_form(flat, seeds);
    CHECK(th[0].value() == doctest::Approx(1.0));
    CHECK(th[1].value() == doctest::Approx(0.0));
    CHECK(th[2].value() == 0.0);

    // General fiber angle: (cos u, sin u, 0) with unit contact volume.
    STMGeometry stm = make_stm(flat);
    SplitMix64 rng(11);
    for (int t = 0; t < 5; ++t) {
        Point p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.0, 6.2)};
        JetVec thp = stm.theta.components(p, 2);
        CHECK(thp[0].value() == doctest::Approx(std::cos(p[2])));
        CHECK(thp[1].value() == doctest::Approx(std::sin(p[2])));
        CHECK(std::fabs(std::fabs(contact_volume_coeff(stm.theta, p)) - 1.0) < 1e-12);
    }

    // Curved base: the Liouville restriction stays contact on the box.
    STMGeometry sphere = make_stm(sphere_base(1.0));
    for (int t = 0; t < 20; ++t) {
        Point p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.0, 6.2)};
        CHECK(std::fabs(contact_volume_coeff(sphere.theta, p)) > 0.1);
    }
}

TEST_CASE("lifted metric blocks") {
    BaseGeometry flat = flat_base();
    JetVec seeds = seed_point({0.4, 0.2, 1.3}, 2);
    JetMat gbar = lifted_metric(flat, seeds);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(gbar(i, j).value() == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));

    SplitMix64 rng(13);
    for (int t = 0; t < 5; ++t) {
        BaseGeometry base = random_spd_base(rng);
        Point p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.0, 6.2)};
        JetMat gb = lifted_metric(base, seed_point(p, 2));
        CHECK(gb(2, 2).value() == doctest::Approx(1.0).epsilon(1e-12));  // unit fiber speed
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(gb(i, j).value() == doctest::Approx(gb(j, i).value()).epsilon(1e-14));
        CHECK(metric_det(gb) > 0.0);
    }
}

TEST_CASE("liouville form pairs to one against the fiber direction") {
    SplitMix64 rng(17);
    for (const char* id : {"stm-flat", "stm-sphere", "stm-ellipse"}) {
        CatalogGeometry geo = instantiate(id);
        STMGeometry stm = make_stm(id == std::string("stm-flat")     ? flat_base()
                                   : id == std::string("stm-sphere") ? sphere_base(1.0)
                                                                     : ellipse_base(1.6));
        for (int t = 0; t < 5; ++t) {
            Point p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.0, 6.2)};
            JetVec s = seed_point(p, 2);
            JetMat g = stm.base.metric.components(s);
            JetVec y = fiber_direction(g, s[2]);
            JetVec th = geo.theta.components(p, 2);
            double pairing = th[0].value() * y[0].value() + th[1].value() * y[1].value();
            CHECK(std::fabs(pairing - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("sphere bundle curl vanishes for every base") {
    SplitMix64 rng(19);
    struct Case {
        const char* name;
        BaseGeometry base;
        double tol;
    };
    std::vector<Case> cases;
    cases.push_back({"flat", flat_base(), 1e-10});
    cases.push_back({"sphere", sphere_base(1.0), 1e-8});
    cases.push_back({"ellipse", ellipse_base(1.6), 1e-8});
    for (auto& c : cases) {
        STMGeometry stm = make_stm(c.base);
        std::vector<Point> pts;
        for (int t = 0; t < 20; ++t)
            pts.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.0, 6.2)});
        CHECK(stm_curl_check(stm, pts) < c.tol);
    }
}
