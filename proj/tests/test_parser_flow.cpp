#include <doctest.h>

#include <cmath>

#include "curlkit/catalog.hpp"
#include "curlkit/contact.hpp"
#include "curlkit/flow.hpp"
#include "curlkit/parser.hpp"
#include "curlkit/rng.hpp"

using namespace curlkit;

TEST_CASE("parser builds exact polynomials") {
    Poly p = parse_hamiltonian("x1*y1 - 1/2*z^2", 1);
    CHECK(p.terms().size() == 2);
    Poly::Exponents xy = {1, 1, 0};
    Poly::Exponents zz = {0, 0, 2};
    CHECK(p.coefficient(xy) == Rational(1));
    CHECK(p.coefficient(zz) == Rational(-1, 2));

    // Aliases for the first pair and nested expressions.
    Poly q = parse_hamiltonian("(x + y)^2 - (x^2 + 2*x*y + y^2)", 1);
    CHECK(q.is_zero());

    Poly r = parse_hamiltonian("-3/4", 2);
    CHECK(r.coefficient(Poly::Exponents(5, 0)) == Rational(-3, 4));
}

TEST_CASE("parser reports error positions") {
    try {
        parse_hamiltonian("x1^", 1);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.column() == 4);
    }
    CHECK_THROWS_AS(parse_hamiltonian("x3 + 1", 1), ParseError);
    CHECK_THROWS_AS(parse_hamiltonian("q + 1", 1), ParseError);
    CHECK_THROWS_AS(parse_hamiltonian("1/0", 1), ParseError);
    CHECK_THROWS_AS(parse_hamiltonian("(x1 + ", 1), ParseError);
    CHECK_THROWS_AS(parse_hamiltonian("x1 x1", 1), ParseError);
}

TEST_CASE("printing round-trips through the parser") {
    SplitMix64 rng(23);
    for (int ell : {1, 2}) {
        const int n = 2 * ell + 1;
        for (int t = 0; t < 25; ++t) {
            Poly p(n);
            for (int term = 0; term < 5; ++term) {
                Poly::Exponents e(n, 0);
                int deg = static_cast<int>(rng.uniform_int(0, 4));
                for (int d = 0; d < deg; ++d) e[rng.uniform_int(0, n - 1)] += 1;
                p.add_term(e, Rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 5)));
            }
            Poly back = parse_hamiltonian(print_poly(p, ell), ell);
            CHECK(back == p);
        }
    }
}

TEST_CASE("reeb flow translates the vertical coordinate exactly") {
    DarbouxChart chart{1, Rational(1)};
    FlowSpec spec{parse_hamiltonian("1", 1), chart, 0.37, 10};
    Point p = {0.2, -0.1, 0.4};
    JetVec img = contact_flow(spec, p);
    CHECK(img[0].value() == doctest::Approx(0.2));
    CHECK(img[1].value() == doctest::Approx(-0.1));
    CHECK(img[2].value() == doctest::Approx(0.77));
    // The flow map of a translation is the identity on jets.
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i)
            CHECK(img[a].d(i) == doctest::Approx(a == i ? 1.0 : 0.0));
}

TEST_CASE("vertical hamiltonian flows by scaling") {
    DarbouxChart chart{1, Rational(1)};
    FlowSpec spec{parse_hamiltonian("z", 1), chart, 0.1, 100};
    Point p = {0.3, -0.2, 0.5};
    JetVec img = contact_flow(spec, p);
    const double eh = std::exp(0.05), e1 = std::exp(0.1);
    CHECK(std::fabs(img[0].value() - eh * p[0]) < 1e-8);
    CHECK(std::fabs(img[1].value() - eh * p[1]) < 1e-8);
    CHECK(std::fabs(img[2].value() - e1 * p[2]) < 1e-8);
    CHECK(std::fabs(img[0].d(0) - eh) < 1e-8);
    CHECK(std::fabs(img[2].d(2) - e1) < 1e-8);
}

TEST_CASE("flow maps preserve the contact structure at integrator order") {
    // Contact defect of the time-t map: components of (f*θ) ∧ θ at a point;
    // zero exactly for a true contactomorphism, O(h⁴) for the integrator.
    CatalogGeometry round = instantiate("s3-round");
    DarbouxChart chart{1, Rational(1)};
    Poly ham = parse_hamiltonian("2*z + 4*x^2*y + 3*x*y*z", 1);

    auto defect = [&](int steps) {
        FlowSpec spec{ham, chart, 0.1, steps};
        ChartMap f = contact_flow_map(spec, round.chart);
        SplitMix64 rng(29);
        double worst = 0.0;
        for (int t = 0; t < 5; ++t) {
            Point p = {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
            JetVec fj = f.components(p, 2);
            Point q = {fj[0].value(), fj[1].value(), fj[2].value()};
            JetVec theta_q = round.theta.components(q, 1);
            JetVec theta_p = round.theta.components(p, 1);
            std::vector<double> pulled(3, 0.0);
            for (int i = 0; i < 3; ++i)
                for (int a = 0; a < 3; ++a) pulled[i] += theta_q[a].value() * fj[a].d(i);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    worst = std::max(worst, std::fabs(pulled[i] * theta_p[j].value() -
                                                      pulled[j] * theta_p[i].value()));
        }
        return worst;
    };

    const double coarse = defect(10);    // h = 1e-2
    const double fine = defect(100);     // h = 1e-3
    CHECK(fine < 1e-9);
    CHECK(std::log10(coarse / fine) > 3.8);
}

TEST_CASE("flows reject bad requests") {
    DarbouxChart chart{1, Rational(1)};
    FlowSpec bad_steps{parse_hamiltonian("z", 1), chart, 0.1, 0};
    CHECK_THROWS_AS(contact_flow(bad_steps, {0, 0, 0}), DomainError);

    // The scaling flow escapes the chart box for large times.
    FlowSpec escape{parse_hamiltonian("z", 1), chart, 40.0, 400};
    CHECK_THROWS_AS(contact_flow(escape, {0.5, 0.5, 0.5}), DomainError);
}
