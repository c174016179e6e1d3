#include "curlkit/laplace.hpp"

#include <cmath>

namespace curlkit {

OperatorCoeffField laplace_coeffs(const MetricField& g, const Rational& lambda, const Point& p) {
    const int n = g.chart().dim;
    OperatorCoeffField out;
    out.lambda = lambda;
    out.ell = g.chart().contact_rank();

    JetMat gj = g.components(p, 2);
    JetMat ginv = metric_inverse(gj, p);       // order-2 jets
    Ten3<Jet> gamma = christoffel(gj, p);      // order-1 jets
    const double lam = lambda.to_double();

    out.second = Mat<Jet>(n, Jet::constant(0.0, n, 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.second(i, j) = ginv(i, j).truncated(1);

    out.first = JetVec(n, Jet::constant(0.0, n, 1));
    for (int i = 0; i < n; ++i) {
        Jet v = Jet::constant(0.0, n, 1);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                v = v + ginv(j, k).truncated(1) * gamma(i, j, k);
        Jet trace_term = Jet::constant(0.0, n, 1);
        for (int j = 0; j < n; ++j) {
            Jet tr = Jet::constant(0.0, n, 1);
            for (int k = 0; k < n; ++k) tr = tr + gamma(k, j, k);
            trace_term = trace_term + ginv(i, j).truncated(1) * tr;
        }
        out.first[i] = -(v + (2.0 * lam) * trace_term);
    }

    const double scalar = curvature(g, p).scalar;
    const double nn = double(n);
    out.zeroth = Jet::constant(nn * nn * lam * (lam - 1.0) / ((nn - 1.0) * (nn + 2.0)) * scalar,
                               n, 1);
    return out;
}

double apply_operator_value(const OperatorCoeffField& coeffs,
                            const std::function<Jet(const JetVec&)>& density, const Point& p) {
    const int n = coeffs.second.dim();
    Jet phi = density(seed_point(p, 2));
    double out = coeffs.zeroth.value() * phi.value();
    for (int i = 0; i < n; ++i) {
        out += coeffs.first[i].value() * phi.d(i);
        for (int j = 0; j < n; ++j) out += coeffs.second(i, j).value() * phi.d2(i, j);
    }
    return out;
}

namespace {

/// Components of a Darboux-type form θ = dz + κΣ(x_i dy_i − y_i dx_i) at p;
/// throws unless the sampled form has exactly that shape.
struct DarbouxShape {
    double kappa = 0.0;
    int ell = 0;
};

DarbouxShape require_darboux_shape(const ContactFormField& theta, const Point& p) {
    const int n = theta.chart().dim;
    const int ell = theta.chart().contact_rank();
    JetVec th = theta.components(p, 1);
    const double tol = 1e-12;

    if (std::fabs(th[2 * ell].value() - 1.0) > tol)
        throw DomainError("subsymbol requires a Darboux-type chart form (z component)");
    double kappa = 0.0;
    for (int i = 0; i < ell; ++i) {
        const double k1 = th[ell + i].d(i);  // ∂_{x_i} θ_{y_i}
        if (i == 0) kappa = k1;
        if (std::fabs(k1 - kappa) > tol || kappa <= 0.0)
            throw DomainError("subsymbol requires a Darboux-type chart form");
    }
    // θ components must be exactly (−κ y_i, κ x_i, 1) with constant slopes.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double expected = 0.0;
            if (i < ell && j == ell + i) expected = -kappa;        // ∂_{y_i} θ_{x_i}
            if (i >= ell && i < 2 * ell && j == i - ell) expected = kappa;  // ∂_{x_i} θ_{y_i}
            if (std::fabs(th[i].d(j) - expected) > tol)
                throw DomainError("subsymbol requires a Darboux-type chart form");
        }
        double expected_value = 0.0;
        if (i < ell) expected_value = -kappa * p[ell + i];
        else if (i < 2 * ell) expected_value = kappa * p[i - ell];
        else expected_value = 1.0;
        if (std::fabs(th[i].value() - expected_value) > tol)
            throw DomainError("subsymbol requires a Darboux-type chart form");
    }
    return {kappa, ell};
}

}  // namespace

DensityValue subsymbol_numeric(const OperatorCoeffField& coeffs, const ContactFormField& theta,
                               const Point& p) {
    const int n = coeffs.second.dim();
    const DarbouxShape shape = require_darboux_shape(theta, p);
    const int ell = shape.ell;
    JetVec th = theta.components(p, 1);

    const double lam = coeffs.lambda.to_double();
    const double c = (1.0 + 2.0 * lam * double(ell + 1)) / double(ell + 2);

    // Σ_a ∂_a(S^{ab} θ_b) from the coefficient jets.
    double divergence = 0.0;
    for (int a = 0; a < n; ++a) {
        Jet va = Jet::constant(0.0, n, 1);
        for (int b = 0; b < n; ++b) va = va + coeffs.second(a, b) * th[b];
        divergence += va.d(a);
    }
    double p_pairing = 0.0;
    for (int a = 0; a < n; ++a) p_pairing += coeffs.first[a].value() * th[a].value();

    return DensityValue(p_pairing - c * divergence, Rational(-1, ell + 1),
                        VolumeRef::ChartContact);
}

DensityValue subsymbol_contraction_path(const MetricField& g, const Rational& lambda,
                                        const ContactFormField& theta, const Point& p) {
    const int n = g.chart().dim;
    const int ell = theta.chart().contact_rank();
    require_darboux_shape(theta, p);

    JetMat gj = g.components(p, 1);
    JetMat ginv = metric_inverse(gj, p);
    Ten3<Jet> gamma = christoffel(g.components(p, 2), p);
    JetVec th = theta.components(p, 1);

    const double lam = lambda.to_double();
    const double c = (1.0 + 2.0 * lam * double(ell + 1)) / double(ell + 2);

    double gjk_gamma_theta = 0.0;  // g^{jk} Γ^t_jk θ_t
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int t = 0; t < n; ++t)
                gjk_gamma_theta += ginv(j, k).value() * gamma(t, j, k).value() * th[t].value();

    double trace_gamma_theta = 0.0;  // Γ^j_ij g^{it} θ_t
    for (int i = 0; i < n; ++i) {
        double tr = 0.0;
        for (int j = 0; j < n; ++j) tr += gamma(j, i, j).value();
        for (int t = 0; t < n; ++t) trace_gamma_theta += tr * ginv(i, t).value() * th[t].value();
    }

    const double phi = (c - 1.0) * gjk_gamma_theta + (c - 2.0 * lam) * trace_gamma_theta;
    return DensityValue(phi, Rational(-1, ell + 1), VolumeRef::ChartContact);
}

double laplace_subsymbol_residual(const MetricField& g, const ContactFormField& theta,
                                  const Rational& lambda, const Point& p) {
    const int ell = theta.chart().contact_rank();
    OperatorCoeffField coeffs = laplace_coeffs(g, lambda, p);
    DensityValue sub = subsymbol_numeric(coeffs, theta, p);

    ConnectionField lc = levi_civita(g);
    CurlResult curl = curl_density(g, lc, theta, p);

    const double lam = lambda.to_double();
    const double factor = double(ell + 1) / double(ell + 2) * (2.0 * lam - 1.0);
    return std::fabs(sub.coefficient - factor * curl.density.coefficient);
}

}  // namespace curlkit
