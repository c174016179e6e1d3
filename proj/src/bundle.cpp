#include "curlkit/bundle.hpp"

#include <cmath>

#include "curlkit/curl.hpp"

namespace curlkit {

void orthonormal_frame(const JetMat& g, JetVec& e1, JetVec& e2) {
    const Jet g11 = g(0, 0);
    if (g11.value() <= 0.0) throw DomainError("frame requires a positive definite metric");
    const int dim = g11.dim();
    const int order = g11.order();
    const Jet zero = Jet::constant(0.0, dim, order);
    const Jet one = Jet::constant(1.0, dim, order);

    e1 = {one / sqrt(g11), zero};

    // w = ∂_2 − g(∂_2, e1) e1, then normalize.
    Jet ge1 = g(0, 1) * e1[0];  // g(∂_2, e1) = g_21 e1^1
    JetVec w = {zero - ge1 * e1[0], one};
    Jet norm2 = zero;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) norm2 = norm2 + g(a, b) * w[a] * w[b];
    if (norm2.value() <= 0.0) throw DomainError("frame requires a positive definite metric");
    Jet inv_norm = one / sqrt(norm2);
    e2 = {w[0] * inv_norm, w[1] * inv_norm};
}

JetVec fiber_direction(const JetMat& g, const Jet& u) {
    JetVec e1, e2;
    orthonormal_frame(g, e1, e2);
    Jet cu = cos(u), su = sin(u);
    return {cu * e1[0] + su * e2[0], cu * e1[1] + su * e2[1]};
}

namespace {

struct LiftParts {
    JetMat g;        // base metric components at the base point (jets over 3 vars)
    JetVec y;        // fiber direction
    Ten3<Jet> gamma; // base Christoffels (2x2x2 block of a dim-3 tensor)
};

LiftParts lift_parts(const BaseGeometry& base, const JetVec& seeds) {
    LiftParts parts;
    parts.g = base.metric.components(seeds);
    Point p2 = {seeds[0].value(), seeds[1].value()};
    parts.gamma = christoffel(parts.g, p2);
    parts.y = fiber_direction(parts.g, seeds[2]);
    return parts;
}

}  // namespace

JetVec lifted_contact_form(const BaseGeometry& base, const JetVec& seeds) {
    JetMat g = base.metric.components(seeds);
    JetVec y = fiber_direction(g, seeds[2]);
    const Jet zero = Jet::constant(0.0, seeds[0].dim(), seeds[0].order());
    JetVec th(3, zero);
    for (int i = 0; i < 2; ++i) {
        Jet v = zero;
        for (int j = 0; j < 2; ++j) v = v + g(i, j) * y[j];
        th[i] = v;
    }
    th[2] = zero;
    return th;
}

JetMat lifted_metric(const BaseGeometry& base, const JetVec& seeds) {
    LiftParts parts = lift_parts(base, seeds);
    const int dim = seeds[0].dim();
    const int in_order = seeds[0].order();
    const int jo = in_order - 1 < 1 ? 1 : in_order - 1;  // ∂y and Γ live one order down
    const Jet zero = Jet::constant(0.0, dim, jo);

    // ∇_i y^s = ∂_i y^s + Γ^s_ik y^k and ∂_u y^s, all order jo.
    JetVec grad_y[2];  // grad_y[s][i] = ∇_i y^s
    JetVec du_y(2, zero);
    for (int s = 0; s < 2; ++s) {
        grad_y[s] = JetVec(2, zero);
        for (int i = 0; i < 2; ++i) {
            Jet v = parts.y[s].partial(i);
            for (int k = 0; k < 2; ++k)
                v = v + parts.gamma(s, i, k) * parts.y[k].truncated(jo);
            grad_y[s][i] = v;
        }
        du_y[s] = parts.y[s].partial(2);
    }

    JetMat gbar(3, zero);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            Jet v = parts.g(j, i).truncated(jo);
            for (int t = 0; t < 2; ++t)
                for (int s = 0; s < 2; ++s)
                    v = v + parts.g(t, s).truncated(jo) * grad_y[t][j] * grad_y[s][i];
            gbar(j, i) = v;
        }
    for (int i = 0; i < 2; ++i) {
        Jet v = zero;
        for (int t = 0; t < 2; ++t)
            for (int s = 0; s < 2; ++s)
                v = v + parts.g(t, s).truncated(jo) * du_y[t] * grad_y[s][i];
        gbar(2, i) = v;
        gbar(i, 2) = v;
    }
    {
        Jet v = zero;
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i)
                v = v + parts.g(j, i).truncated(jo) * du_y[j] * du_y[i];
        gbar(2, 2) = v;
    }
    return gbar;
}

STMGeometry make_stm(const BaseGeometry& base) {
    STMGeometry stm;
    stm.base = base;
    stm.chart = make_chart({base.chart.names[0], base.chart.names[1], "u"});
    stm.metric = MetricField(stm.chart, [base](const JetVec& seeds) {
        return lifted_metric(base, seeds);
    });
    stm.theta = ContactFormField(stm.chart, [base](const JetVec& seeds) {
        return lifted_contact_form(base, seeds);
    });
    return stm;
}

double stm_curl_check(const STMGeometry& stm, const std::vector<Point>& samples) {
    double max_abs = 0.0;
    for (const Point& p : samples) {
        JetMat gbar = stm.metric.components(p, 2);  // order-1 jets (seeds order 2)
        CurlResult res = curl_from_metric_jets(gbar, stm.theta, p);
        max_abs = std::max(max_abs, std::fabs(res.density.coefficient));
    }
    return max_abs;
}

BaseGeometry flat_base() {
    Chart chart = make_chart({"x1", "x2"});
    MetricField metric(chart, [](const JetVec& seeds) {
        const Jet one = Jet::constant(1.0, seeds[0].dim(), seeds[0].order());
        const Jet zero = Jet::constant(0.0, seeds[0].dim(), seeds[0].order());
        JetMat g(2, zero);
        g(0, 0) = one;
        g(1, 1) = one;
        return g;
    });
    return {chart, metric};
}

BaseGeometry sphere_base(double radius) {
    Chart chart = make_chart({"x1", "x2"});
    const double r2 = radius * radius;
    MetricField metric(chart, [r2](const JetVec& seeds) {
        const Jet zero = Jet::constant(0.0, seeds[0].dim(), seeds[0].order());
        Jet s = 1.0 + seeds[0] * seeds[0] + seeds[1] * seeds[1];
        Jet f = (4.0 * r2) / (s * s);
        JetMat g(2, zero);
        g(0, 0) = f;
        g(1, 1) = f;
        return g;
    });
    return {chart, metric};
}

BaseGeometry ellipse_base(double c) {
    Chart chart = make_chart({"x1", "x2"});
    const double c2 = c * c;
    MetricField metric(chart, [c2](const JetVec& seeds) {
        // Induced metric of (x, y) ↦ (2x/s, 2y/s, c(1 − 2/s)), s = 1 + x² + y².
        const Jet& x = seeds[0];
        const Jet& y = seeds[1];
        Jet s = 1.0 + x * x + y * y;
        Jet s4 = powi(s, 4);
        Jet ax = 1.0 + y * y - x * x;  // s − 2x²
        Jet ay = 1.0 + x * x - y * y;
        Jet gxx = (4.0 * ax * ax + 16.0 * x * x * y * y + (16.0 * c2) * (x * x)) / s4;
        Jet gyy = (4.0 * ay * ay + 16.0 * x * x * y * y + (16.0 * c2) * (y * y)) / s4;
        Jet gxy = (16.0 * (c2 - 1.0)) * x * y / s4;
        JetMat g(2, Jet::constant(0.0, x.dim(), x.order()));
        g(0, 0) = gxx;
        g(1, 1) = gyy;
        g(0, 1) = gxy;
        g(1, 0) = gxy;
        return g;
    });
    return {chart, metric};
}

}  // namespace curlkit
