#include "curlkit/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <set>

namespace curlkit {

Chart make_chart(std::vector<std::string> names) {
    Chart c;
    c.dim = static_cast<int>(names.size());
    c.names = std::move(names);
    if (c.dim < 2) throw DomainError("chart dimension must be at least 2");
    std::set<std::string> unique(c.names.begin(), c.names.end());
    if (static_cast<int>(unique.size()) != c.dim)
        throw DomainError("chart coordinate names must be pairwise distinct");
    return c;
}

std::string SingularMetricError::format(double det, const std::vector<double>& point) {
    std::string s = "singular metric (det = " + std::to_string(det) + ") at point (";
    for (size_t i = 0; i < point.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(point[i]);
    }
    return s + ")";
}

std::string NonContactPointError::format(double vol_coeff, const std::vector<double>& point) {
    std::string s = "contact condition fails (volume coefficient = " + std::to_string(vol_coeff) +
                    ") at point (";
    for (size_t i = 0; i < point.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(point[i]);
    }
    return s + ")";
}

Point ChartMap::image(const Point& p) const {
    JetVec f = components(p, 1);
    Point q(f.size());
    for (size_t a = 0; a < f.size(); ++a) q[a] = f[a].value();
    return q;
}

ChartMap ChartMap::identity(const Chart& chart) {
    return ChartMap(chart, chart, [](const JetVec& x) { return x; });
}

double metric_det(const JetMat& g) {
    // Value-level determinant by LU with partial pivoting.
    const int n = g.dim();
    std::vector<double> a(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[size_t(i) * n + j] = g(i, j).value();
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(a[size_t(r) * n + c]) > std::fabs(a[size_t(piv) * n + c])) piv = r;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(a[size_t(piv) * n + j], a[size_t(c) * n + j]);
            det = -det;
        }
        const double pivot = a[size_t(c) * n + c];
        if (pivot == 0.0) return 0.0;
        det *= pivot;
        for (int r = c + 1; r < n; ++r) {
            const double f = a[size_t(r) * n + c] / pivot;
            for (int j = c; j < n; ++j) a[size_t(r) * n + j] -= f * a[size_t(c) * n + j];
        }
    }
    return det;
}

JetMat metric_inverse(const JetMat& g, const Point& p, double det_floor) {
    const int n = g.dim();
    const double det = metric_det(g);
    if (std::fabs(det) < det_floor) throw SingularMetricError(det, p);

    // Gauss-Jordan on [g | I] with partial pivoting by jet value.
    std::vector<Jet> a(size_t(n) * 2 * n);
    const Jet zero = Jet::constant(0.0, g(0, 0).dim(), g(0, 0).order());
    const Jet one = Jet::constant(1.0, g(0, 0).dim(), g(0, 0).order());
    auto at = [&](int i, int j) -> Jet& { return a[size_t(i) * 2 * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 2 * n; ++j)
            at(i, j) = (j < n) ? g(i, j) : ((j - n == i) ? one : zero);

    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(at(r, c).value()) > std::fabs(at(piv, c).value())) piv = r;
        if (piv != c)
            for (int j = 0; j < 2 * n; ++j) std::swap(at(piv, j), at(c, j));
        const Jet pivot = at(c, c);
        if (pivot.value() == 0.0) throw SingularMetricError(det, p);
        for (int j = 0; j < 2 * n; ++j) at(c, j) = at(c, j) / pivot;
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            const Jet f = at(r, c);
            for (int j = 0; j < 2 * n; ++j) at(r, j) = at(r, j) - f * at(c, j);
        }
    }
    JetMat inv(n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = at(i, n + j);
    return inv;
}

Ten3<Jet> christoffel(const JetMat& g, const Point& p) {
    const int n = g.dim();
    const int out_order = g(0, 0).order() - 1;
    if (out_order < 0) throw DomainError("christoffel requires order >= 1 metric jets");
    JetMat ginv = metric_inverse(g, p);

    // ∂_i g_jl as jets one order down.
    std::vector<Jet> dg(size_t(n) * n * n);
    auto dgat = [&](int i, int j, int l) -> Jet& { return dg[(size_t(i) * n + j) * n + l]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                dgat(i, j, l) = (g(0, 0).order() >= 2)
                                    ? g(j, l).partial(i)
                                    : Jet::constant(g(j, l).d(i), g(0, 0).dim(), 1).truncated(1);

    Ten3<Jet> gamma(n, Jet::constant(0.0, g(0, 0).dim(), out_order == 0 ? 1 : out_order));
    const int jo = out_order == 0 ? 1 : out_order;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Jet sum = Jet::constant(0.0, g(0, 0).dim(), jo);
                for (int l = 0; l < n; ++l) {
                    Jet term = dgat(i, j, l) + dgat(j, i, l) - dgat(l, i, j);
                    sum = sum + ginv(k, l).truncated(jo) * term.truncated(jo);
                }
                Jet v = 0.5 * sum;
                gamma(k, i, j) = v;
                gamma(k, j, i) = v;
            }
    return gamma;
}

ConnectionField levi_civita(const MetricField& g) {
    return ConnectionField(g.chart(), [g](const JetVec& seeds) {
        Point p(seeds.size());
        for (size_t i = 0; i < seeds.size(); ++i) p[i] = seeds[i].value();
        return christoffel(g.components(seeds), p);
    });
}

ConnectionField connection_perturb(const ConnectionField& conn, const CovectorField& beta) {
    Chart chart = conn.chart();
    return ConnectionField(chart, [conn, beta, chart](const JetVec& seeds) {
        Point p(seeds.size());
        for (size_t i = 0; i < seeds.size(); ++i) p[i] = seeds[i].value();
        const int order = seeds.front().order();
        Ten3<Jet> gamma = conn.christoffels(p, order - 1);
        JetVec b = beta.components(p, order);
        const int jo = gamma(0, 0, 0).order();
        const int n = chart.dim;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Jet v = gamma(k, i, j);
                    if (k == j) v = v + b[i].truncated(jo);
                    if (k == i) v = v + b[j].truncated(jo);
                    gamma(k, i, j) = v;
                }
        return gamma;
    });
}

Ten3<double> tensor_values(const Ten3<Jet>& jets) {
    const int n = jets.dim();
    Ten3<double> out(n, 0.0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(k, i, j) = jets(k, i, j).value();
    return out;
}

Mat<double> matrix_values(const JetMat& jets) {
    const int n = jets.dim();
    Mat<double> out(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = jets(i, j).value();
    return out;
}

CurvatureResult curvature(const MetricField& g, const Point& p) {
    const int n = g.chart().dim;
    JetMat gj = g.components(p, 2);
    Ten3<Jet> gamma = christoffel(gj, p);  // order-1 jets
    CurvatureResult res;
    res.riemann = Ten4<double>(n, 0.0);
    res.ricci = Mat<double>(n, 0.0);

    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double v = gamma(l, j, k).d(i) - gamma(l, i, k).d(j);
                    for (int m = 0; m < n; ++m)
                        v += gamma(l, i, m).value() * gamma(m, j, k).value() -
                             gamma(l, j, m).value() * gamma(m, i, k).value();
                    res.riemann(l, i, j, k) = v;
                }

    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double v = 0.0;
            for (int i = 0; i < n; ++i) v += res.riemann(i, i, j, k);
            res.ricci(j, k) = v;
        }

    JetMat ginv = metric_inverse(gj, p);
    double scalar = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) scalar += ginv(j, k).value() * res.ricci(j, k);
    res.scalar = scalar;
    return res;
}

Ten4<double> lower_riemann(const Ten4<double>& riemann, const Mat<double>& g) {
    // R_{abij} = g_am R^m_ijb: antisymmetric in the first pair (a,b) and in
    // the derivative pair (i,j).
    const int n = riemann.dim();
    Ten4<double> out(n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double v = 0.0;
                    for (int m = 0; m < n; ++m) v += g(a, m) * riemann(m, i, j, b);
                    out(a, b, i, j) = v;
                }
    return out;
}

JetMat pullback_metric(const JetVec& f_jets, const MetricField& g) {
    const int n = static_cast<int>(f_jets.front().dim());
    const int m = static_cast<int>(f_jets.size());
    Point q(m);
    for (int a = 0; a < m; ++a) q[a] = f_jets[a].value();
    JetMat g_at_q = g.components(q, 2);

    // g_ab ∘ f as jets in source coordinates, then contract with ∂f.
    const int order = f_jets.front().order() - 1;
    const int jo = order < 1 ? 1 : order;
    JetMat out(n, Jet::constant(0.0, n, jo));
    Mat<Jet> gab(m, Jet::constant(0.0, n, jo));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) gab(a, b) = compose(g_at_q(a, b), f_jets).truncated(jo);

    std::vector<Jet> df(size_t(n) * m, Jet::constant(0.0, n, jo));
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < m; ++a) df[size_t(i) * m + a] = f_jets[a].partial(i).truncated(jo);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet sum = Jet::constant(0.0, n, jo);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    sum = sum + df[size_t(i) * m + a] * df[size_t(j) * m + b] * gab(a, b);
            out(i, j) = sum;
        }
    return out;
}

JetMat pullback_metric(const ChartMap& f, const MetricField& g, const Point& p) {
    return pullback_metric(f.components(p, 2), g);
}

Mat<double> jacobian_values(const JetVec& f_jets) {
    const int m = static_cast<int>(f_jets.size());
    Mat<double> J(m, 0.0);
    for (int a = 0; a < m; ++a)
        for (int i = 0; i < m; ++i) J(a, i) = f_jets[a].d(i);
    return J;
}

bool jacobian_invertible(const JetVec& f_jets, double floor) {
    const int m = static_cast<int>(f_jets.size());
    JetMat J(m, Jet::constant(0.0, 1, 1));
    for (int a = 0; a < m; ++a)
        for (int i = 0; i < m; ++i) J(a, i) = Jet::constant(f_jets[a].d(i), 1, 1);
    return std::fabs(metric_det(J)) > floor;
}

}  // namespace curlkit
