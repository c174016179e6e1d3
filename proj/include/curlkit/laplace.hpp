#pragma once

#include "curlkit/contact.hpp"
#include "curlkit/curl.hpp"
#include "curlkit/geometry.hpp"
#include "curlkit/rational.hpp"

namespace curlkit {

/// Point sample of a second-order operator on weight-λ densities: jet-valued
/// coefficients (the coordinate subsymbol formula differentiates them).
struct OperatorCoeffField {
    Mat<Jet> second;  // symmetric S^{ab}
    JetVec first;     // P^a
    Jet zeroth;       // value-only; the subsymbol never differentiates it
    Rational lambda;
    int ell = 1;
};

/// Local coefficients of the generalized Laplace–Beltrami operator on F_λ:
///   second = g^{ij},
///   first  = −(g^{jk}Γ^i_jk + 2λ g^{ij}Γ^k_jk),
///   zeroth = n²λ(λ−1)/((n−1)(n+2)) · R.
/// The zeroth-order curvature term is carried for completeness even though
/// the coordinate subsymbol formula never reads it — keep it.
OperatorCoeffField laplace_coeffs(const MetricField& g, const Rational& lambda, const Point& p);

/// Apply a sampled operator to a density closure at the sample point
/// (values only). Useful as an application oracle.
double apply_operator_value(const OperatorCoeffField& coeffs,
                            const std::function<Jet(const JetVec&)>& density, const Point& p);

/// Numeric coordinate subsymbol at p, chart-contact reference:
///   sσ(T) = P^aθ_a − (1+2λ(ℓ+1))/(ℓ+2) · Σ_a ∂_a(S^{ab}θ_b).
/// Requires a Darboux-type chart form θ = dz + κΣ(x_i dy_i − y_i dx_i);
/// anything else is rejected.
DensityValue subsymbol_numeric(const OperatorCoeffField& coeffs, const ContactFormField& theta,
                               const Point& p);

/// Independent route through the same result, assembled from Christoffel
/// contractions at value level:
///   φ = (c − 1)·g^{jk}Γ^t_jk θ_t + (c − 2λ)·Γ^j_ij g^{it} θ_t,
/// with c the prefactor above.
DensityValue subsymbol_contraction_path(const MetricField& g, const Rational& lambda,
                                        const ContactFormField& theta, const Point& p);

/// |sσ(Δ^λ_g) − ((ℓ+1)/(ℓ+2))(2λ−1)·A_{g,Θ}| at Hamiltonian level.
double laplace_subsymbol_residual(const MetricField& g, const ContactFormField& theta,
                                  const Rational& lambda, const Point& p);

}  // namespace curlkit
