#pragma once

#include "curlkit/contact.hpp"
#include "curlkit/geometry.hpp"

namespace curlkit {

/// The (0,2) part of ∇Θ at a point together with its density bookkeeping.
struct NablaTheta {
    Mat<double> matrix;
    Rational weight;
    VolumeRef reference = VolumeRef::ChartContact;
};

struct CurlResult {
    DensityValue density;      // ⟨g, ∇Θ⟩ as a weight −1/(ℓ+1) density
    Mat<double> nabla_theta;   // the contracted tensor at the point
    Point point;
};

/// (∇Θ)_ij = (∂_iθ_j − Π^k_ij θ_k − (∂_i ln|Ω|) θ_j/(ℓ+1)) scaled into the
/// chart-contact reference, with Ω the volume coefficient of vol(θ). The
/// log-volume term vanishes in charts whose contact volume is constant and
/// makes the tensor honest where it is not (lifted sphere-bundle charts).
/// Depends on the connection only through its projective symbols. Needs
/// order-2 form jets; vol_ratio is vol(θ)/vol(θ_ref) at the point.
NablaTheta nabla_theta(const Ten3<double>& pi, const JetVec& theta, double vol_ratio, int ell);

/// Contact Riemannian curl data: contraction metric and connection source are
/// separate so mixed contractions and projective-equivalence checks are
/// one-liners; pass the same metric's Levi-Civita connection for the curl of g.
CurlResult curl_density(const MetricField& g_contract, const ConnectionField& gamma_source,
                        const ContactFormField& theta, const Point& p,
                        const ContactFormField* theta_ref = nullptr);

/// Curl from pre-evaluated order-1 metric jets (pulled-back or lifted metrics
/// whose closures are only once differentiable).
CurlResult curl_from_metric_jets(const JetMat& g_jets, const ContactFormField& theta,
                                 const Point& p, const ContactFormField* theta_ref = nullptr);

/// Symmetrized covariant derivative ∇_iβ_j + ∇_jβ_i; zero iff β is Killing at p.
Mat<double> killing_defect(const MetricField& g, const CovectorField& beta, const Point& p);

/// β_i = g_ij V^j.
std::vector<double> lower_index(const MetricField& g, const std::vector<double>& v,
                                const Point& p);

std::vector<double> raise_index(const MetricField& g, const std::vector<double>& beta,
                                const Point& p);

/// Projective cocycle 𝔗(f)^k_ij = (f*Π)^k_ij − Π^k_ij at p: pull back a
/// representative connection (inhomogeneous Jacobian term included), re-project,
/// subtract. Traceless and symmetric in the lower pair.
Ten3<double> cocycle_T(const JetVec& f_jets, const ConnectionField& conn, const Point& p);

Ten3<double> cocycle_T(const ChartMap& f, const ConnectionField& conn, const Point& p);

/// Tensor pullback of a (2,1) tensor field sample under a map with the given jets.
Ten3<double> pullback_tensor21(const JetVec& f_jets, const Ten3<double>& t_at_image);

struct EquivarianceResiduals {
    double eq_pullback = 0.0;   // |A_{f*g,Θ} − f*(A_{g,Θ})| for contact f
    double eq_cocycle = 0.0;    // violation of the cocycle identity for arbitrary f
};

/// Both equivariance residuals at p, chart-contact reference. The first is
/// meaningful for (approximate) contactomorphisms; the second holds for any
/// diffeomorphism with invertible Jacobian.
EquivarianceResiduals equivariance_residual(const ChartMap& f, const MetricField& g,
                                            const ContactFormField& theta, const Point& p);

}  // namespace curlkit
