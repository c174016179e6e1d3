#include "curlkit/curl.hpp"

#include <cmath>

namespace curlkit {

NablaTheta nabla_theta(const Ten3<double>& pi, const JetVec& theta, double vol_ratio, int ell) {
    const int n = static_cast<int>(theta.size());
    if (vol_ratio == 0.0) throw NonContactPointError(0.0, {});
    const double scale = std::pow(std::fabs(vol_ratio), -1.0 / double(ell + 1));
    const double w = -1.0 / double(ell + 1);

    // The covariant derivative of Θ = θ ⊗ vol^w picks up w·∂_a ln|Ω| when the
    // volume coefficient Ω of vol(θ) varies across the chart; the trace part
    // of the connection is absorbed into Π.
    Jet omega = contact_volume_jet(theta);
    if (omega.value() == 0.0) throw NonContactPointError(0.0, {});
    std::vector<double> dlog(n, 0.0);
    for (int a = 0; a < n; ++a) dlog[a] = omega.d(a) / omega.value();

    NablaTheta out;
    out.matrix = Mat<double>(n, 0.0);
    out.weight = Rational(-1, ell + 1);
    out.reference = VolumeRef::ChartContact;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = theta[j].d(i) + w * dlog[i] * theta[j].value();
            for (int k = 0; k < n; ++k) v -= pi(k, i, j) * theta[k].value();
            out.matrix(i, j) = v * scale;
        }
    return out;
}

namespace {

// Curl orientation: the catalog's closed-form reference curls and the
// subsymbol proportionality fix the overall sign as minus the raw
// ⟨g, ∇Θ⟩ contraction.
CurlResult contract_curl(const JetMat& ginv, const Ten3<double>& pi, const JetVec& theta_jets,
                         double vol_ratio, const Point& p, int ell) {
    NablaTheta nt = nabla_theta(pi, theta_jets, vol_ratio, ell);
    const int n = nt.matrix.dim();
    double coeff = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) coeff += ginv(i, j).value() * nt.matrix(i, j);
    CurlResult res;
    res.density = DensityValue(-coeff, nt.weight, nt.reference);
    res.nabla_theta = nt.matrix;
    res.point = p;
    return res;
}

double checked_vol_ratio(const ContactFormField& theta, const ContactFormField* theta_ref,
                         const Point& p) {
    const double vol = contact_volume_coeff(theta, p);
    if (std::fabs(vol) <= kContactFloor) throw NonContactPointError(vol, p);
    if (theta_ref == nullptr) return 1.0;
    return vol / contact_volume_coeff(*theta_ref, p);
}

}  // namespace

CurlResult curl_density(const MetricField& g_contract, const ConnectionField& gamma_source,
                        const ContactFormField& theta, const Point& p,
                        const ContactFormField* theta_ref) {
    const int ell = theta.chart().contact_rank();
    JetMat gj = g_contract.components(p, 1);
    JetMat ginv = metric_inverse(gj, p);
    Ten3<double> gamma = tensor_values(gamma_source.christoffels(p, 0));
    Ten3<double> pi = projective_symbols(gamma);
    JetVec th = theta.components(p, 2);
    return contract_curl(ginv, pi, th, checked_vol_ratio(theta, theta_ref, p), p, ell);
}

CurlResult curl_from_metric_jets(const JetMat& g_jets, const ContactFormField& theta,
                                 const Point& p, const ContactFormField* theta_ref) {
    const int ell = theta.chart().contact_rank();
    JetMat ginv = metric_inverse(g_jets, p);
    Ten3<Jet> gamma_jets = christoffel(g_jets, p);
    Ten3<double> pi = projective_symbols(tensor_values(gamma_jets));
    JetVec th = theta.components(p, 2);
    return contract_curl(ginv, pi, th, checked_vol_ratio(theta, theta_ref, p), p, ell);
}

Mat<double> killing_defect(const MetricField& g, const CovectorField& beta, const Point& p) {
    const int n = g.chart().dim;
    JetMat gj = g.components(p, 2);
    Ten3<Jet> gamma = christoffel(gj, p);
    JetVec b = beta.components(p, 1);
    Mat<double> out(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = b[j].d(i) + b[i].d(j);
            for (int k = 0; k < n; ++k) v -= 2.0 * gamma(k, i, j).value() * b[k].value();
            out(i, j) = v;
        }
    return out;
}

std::vector<double> lower_index(const MetricField& g, const std::vector<double>& v,
                                const Point& p) {
    const int n = g.chart().dim;
    JetMat gj = g.components(p, 1);
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += gj(i, j).value() * v[j];
    return out;
}

std::vector<double> raise_index(const MetricField& g, const std::vector<double>& beta,
                                const Point& p) {
    const int n = g.chart().dim;
    JetMat ginv = metric_inverse(g.components(p, 1), p);
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += ginv(i, j).value() * beta[j];
    return out;
}

namespace {

Mat<double> inverse_values(const Mat<double>& m) {
    const int n = m.dim();
    JetMat jm(n, Jet::constant(0.0, 1, 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) jm(i, j) = Jet::constant(m(i, j), 1, 1);
    JetMat inv = metric_inverse(jm, {}, 1e-14);
    Mat<double> out(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = inv(i, j).value();
    return out;
}

}  // namespace

Ten3<double> pullback_tensor21(const JetVec& f_jets, const Ten3<double>& t_at_image) {
    const int n = static_cast<int>(f_jets.size());
    Mat<double> J = jacobian_values(f_jets);
    Mat<double> Jinv = inverse_values(J);
    Ten3<double> out(n, 0.0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0.0;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c)
                            v += Jinv(k, a) * t_at_image(a, b, c) * J(b, i) * J(c, j);
                out(k, i, j) = v;
            }
    return out;
}

Ten3<double> cocycle_T(const JetVec& f_jets, const ConnectionField& conn, const Point& p) {
    const int n = static_cast<int>(f_jets.size());
    if (!jacobian_invertible(f_jets)) throw DomainError("cocycle requires an invertible Jacobian");

    Point q(n);
    for (int a = 0; a < n; ++a) q[a] = f_jets[a].value();

    // Pull back Π as a representative connection: add the inhomogeneous
    // Jacobian term, then re-project to trace-free symbols.
    Ten3<double> pi_q = projective_symbols(tensor_values(conn.christoffels(q, 0)));
    Mat<double> J = jacobian_values(f_jets);
    Mat<double> Jinv = inverse_values(J);

    Ten3<double> pulled(n, 0.0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0.0;
                for (int a = 0; a < n; ++a) {
                    double inner = f_jets[a].d2(i, j);
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c) inner += pi_q(a, b, c) * J(b, i) * J(c, j);
                    v += Jinv(k, a) * inner;
                }
                pulled(k, i, j) = v;
            }
    Ten3<double> pulled_pi = projective_symbols(pulled);

    // Re-project the base symbols too, so both sides go through the same
    // arithmetic and the identity map comes out as an exact zero.
    Ten3<double> pi_p =
        projective_symbols(projective_symbols(tensor_values(conn.christoffels(p, 0))));
    Ten3<double> out(n, 0.0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(k, i, j) = pulled_pi(k, i, j) - pi_p(k, i, j);
    return out;
}

Ten3<double> cocycle_T(const ChartMap& f, const ConnectionField& conn, const Point& p) {
    return cocycle_T(f.components(p, 2), conn, p);
}

EquivarianceResiduals equivariance_residual(const ChartMap& f, const MetricField& g,
                                            const ContactFormField& theta, const Point& p) {
    const int n = g.chart().dim;
    const int ell = theta.chart().contact_rank();
    EquivarianceResiduals out;

    JetVec fj = f.components(p, 2);
    Point q(n);
    for (int a = 0; a < n; ++a) q[a] = fj[a].value();

    // Curl of the pulled-back metric at p (its own Levi-Civita connection).
    JetMat fg = pullback_metric(fj, g);
    CurlResult curl_fg = curl_from_metric_jets(fg, theta, p);

    // f*(A_{g,Θ}): transport the density from q with the weight's power of
    // the volume ratio vol(f*θ)/vol(θ) at p.
    ConnectionField lc = levi_civita(g);
    CurlResult curl_at_q = curl_density(g, lc, theta, q);

    JetVec theta_q = theta.components(q, 1);
    JetVec pulled_theta(n);
    {
        // (f*θ)_i = (θ_a ∘ f) ∂_i f^a with enough orders for d(f*θ).
        std::vector<Jet> theta_comp(n);
        for (int a = 0; a < n; ++a) theta_comp[a] = compose(theta_q[a], fj).truncated(1);
        for (int i = 0; i < n; ++i) {
            Jet sum = Jet::constant(0.0, n, 1);
            for (int a = 0; a < n; ++a) sum = sum + theta_comp[a] * fj[a].partial(i).truncated(1);
            pulled_theta[i] = sum;
        }
    }
    const double vol_pulled = contact_volume_coeff(pulled_theta);
    const double vol_here = contact_volume_coeff(theta, p);
    if (std::fabs(vol_pulled) <= kContactFloor) throw NonContactPointError(vol_pulled, p);
    const double rho = vol_pulled / vol_here;
    const double pulled_density =
        curl_at_q.density.coefficient * std::pow(std::fabs(rho), -1.0 / double(ell + 1));

    out.eq_pullback = std::fabs(curl_fg.density.coefficient - pulled_density);

    // Identity valid for arbitrary f (in the raw ⟨·,·⟩ orientation):
    //   ⟨f*g, ∇(f*Θ-connection)⟩ = ⟨f*g, ∇Θ⟩ − ⟨f*g ⊗ Θ, 𝔗(f)⟩,
    // with ∇Θ and 𝔗 taken from g's Levi-Civita projective symbols at p. The
    // curl carries the opposite global orientation, hence the sign below.
    Ten3<double> pi_p = projective_symbols(tensor_values(lc.christoffels(p, 0)));
    JetVec theta_p = theta.components(p, 2);
    NablaTheta nt = nabla_theta(pi_p, theta_p, 1.0, ell);
    JetMat fginv = metric_inverse(fg, p);
    double contraction = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) contraction += fginv(i, j).value() * nt.matrix(i, j);

    Ten3<double> coc = cocycle_T(fj, lc, p);
    double cocycle_term = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                cocycle_term += fginv(i, j).value() * coc(k, i, j) * theta_p[k].value();

    out.eq_cocycle = std::fabs(curl_fg.density.coefficient + (contraction - cocycle_term));
    return out;
}

}  // namespace curlkit
