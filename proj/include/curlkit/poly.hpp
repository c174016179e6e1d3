#pragma once

#include <map>
#include <string>
#include <vector>

#include "curlkit/jet.hpp"
#include "curlkit/rational.hpp"

namespace curlkit {

/// Exact rational-coefficient polynomial in a fixed set of chart variables.
/// Terms map exponent multi-indices to coefficients; zero coefficients are
/// never stored.
class Poly {
public:
    using Exponents = std::vector<int>;

    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rational& c);
    static Poly variable(int nvars, int i);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    void add_term(const Exponents& e, const Rational& c);

    Poly partial(int i) const;
    Rational coefficient(const Exponents& e) const;
    Rational eval_rational(const std::vector<Rational>& x) const;
    double eval(const Point& x) const;
    Jet eval_jets(const JetVec& x) const;

    std::string to_string(const std::vector<std::string>& names) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    int nvars_;
    std::map<Exponents, Rational> terms_;
};

/// Darboux chart bookkeeping: variables (x_1..x_ℓ, y_1..y_ℓ, z) and the
/// contact form θ = dz + κ Σ (x_i dy_i − y_i dx_i). κ = 1/2 is the normalized
/// form; κ = 1 covers charts declared with θ = dz + x dy − y dx.
struct DarbouxChart {
    int ell = 1;
    Rational kappa = Rational(1, 2);

    int nvars() const { return 2 * ell + 1; }
    int x(int i) const { return i; }
    int y(int i) const { return ell + i; }
    int z() const { return 2 * ell; }

    std::vector<std::string> names() const;

    /// θ components as polynomials: θ_{x_i} = −κ y_i, θ_{y_i} = κ x_i, θ_z = 1.
    std::vector<Poly> theta() const;
};

using PolyVec = std::vector<Poly>;  // vector field components

Poly divergence(const PolyVec& X);
PolyVec commutator(const PolyVec& X, const PolyVec& Y);

/// θ(X) for the chart's contact form.
Poly theta_pairing(const PolyVec& X, const DarbouxChart& chart);

/// Whether θ(Y) = 0 identically.
bool is_tangent(const PolyVec& Y, const DarbouxChart& chart);

/// Euler field E = Σ (x_i ∂_{x_i} + y_i ∂_{y_i}).
PolyVec euler_field(const DarbouxChart& chart);

/// Tangent frame fields U_i = ∂_{x_i} + κ y_i ∂_z and V_i = ∂_{y_i} − κ x_i ∂_z.
PolyVec tangent_u(const DarbouxChart& chart, int i);
PolyVec tangent_v(const DarbouxChart& chart, int i);

/// Contact vector field of a polynomial Hamiltonian:
///   X_φ = (1/2κ) Σ (∂_{x_i}φ ∂_{y_i} − ∂_{y_i}φ ∂_{x_i}) + ½∂_zφ·E + (φ − ½E(φ))∂_z.
/// Satisfies θ(X_φ) = φ and L_{X_φ}θ = (1/(ℓ+1))Div(X_φ)·θ identically.
PolyVec darboux_contact_field(const Poly& phi, const DarbouxChart& chart);

struct WeightedDensityPoly {
    Poly poly;
    Rational weight;
};

/// L_X(φ ω^λ) = (X(φ) + λ Div(X) φ) ω^λ.
WeightedDensityPoly lie_derivative_density(const PolyVec& X, const WeightedDensityPoly& phi);

/// Components of L_X θ for a polynomial 1-form θ.
PolyVec lie_derivative_oneform(const PolyVec& X, const PolyVec& theta);

/// Poisson bracket of weighted densities; output weight is λ+μ+1/(ℓ+1).
/// In the chart's normalized Darboux coordinates:
///   {aω^λ, bω^μ} = Σ(∂_{x_i}a ∂_{y_i}b − ∂_{y_i}a ∂_{x_i}b)
///                  + ∂_z a (½E + (ℓ+1)μ) b − ∂_z b (½E + (ℓ+1)λ) a.
WeightedDensityPoly poisson_bracket(const WeightedDensityPoly& a, const WeightedDensityPoly& b,
                                    const DarbouxChart& chart);

/// Second-order differential operator on weight-λ densities with polynomial
/// coefficients, stored per derivative multi-index (total order ≤ 2).
class PolyDiffOp {
public:
    PolyDiffOp() : nvars_(0) {}
    PolyDiffOp(int nvars, Rational lambda) : nvars_(nvars), lambda_(lambda) {}

    static PolyDiffOp multiplication(const Poly& f, const Rational& lambda);

    /// Lie derivative operator on F_λ: Σ X^i ∂_i + λ Div(X).
    static PolyDiffOp lie(const PolyVec& X, const Rational& lambda);

    int nvars() const { return nvars_; }
    const Rational& lambda() const { return lambda_; }
    int order() const;
    const std::map<std::vector<int>, Poly>& coefficients() const { return coeffs_; }
    Poly coefficient(const std::vector<int>& multi) const;

    void add_coefficient(const std::vector<int>& multi, const Poly& c);

    WeightedDensityPoly apply(const WeightedDensityPoly& phi) const;

    friend PolyDiffOp operator+(const PolyDiffOp& a, const PolyDiffOp& b);
    friend PolyDiffOp operator*(const Rational& s, const PolyDiffOp& a);

private:
    int nvars_;
    Rational lambda_;
    std::map<std::vector<int>, Poly> coeffs_;
};

/// Operator composition A ∘ B on F_λ; rejects total order above 2.
PolyDiffOp compose_ops(const PolyDiffOp& a, const PolyDiffOp& b);

/// Coordinate subsymbol of a second-order operator in normalized Darboux
/// coordinates. With T = S^{ab}∂_a∂_b + P^a∂_a + Q and prefactor
/// c = (1+2λ(ℓ+1))/(ℓ+2):
///   sσ(T) = P^a θ_a − c · Σ_a ∂_a(S^{ab} θ_b),
/// a weight −1/(ℓ+1) density in the chart-contact reference.
Poly subsymbol_eq13(const PolyDiffOp& T, const DarbouxChart& chart);

/// Contact decomposition of a second-order operator:
///   T = L_{X_{φ1}}∘L_{X_{φ2}} + L_{X_{φ3}}∘L_{Y1} + L_{Y2}∘L_{Y3}
///       + L_{X_{φ4}} + L_{Y4} + F.
struct ContactDecomposition {
    Poly phi1, phi2, phi3, phi4;
    PolyVec y1, y2, y3, y4;
    Poly f;
};

PolyDiffOp build_operator(const ContactDecomposition& d, const DarbouxChart& chart,
                          const Rational& lambda);

/// Structural subsymbol of a contact decomposition, matching subsymbol_eq13
/// of the composed operator exactly:
///   sσ = ½ θ([X_{φ1},X_{φ2}]) − ((ℓ+1)/(ℓ+2))(λ−½) L_{Y1}(φ3)
///        + ½ θ([Y2,Y3]) + φ4.
Poly subsymbol_eq11(const ContactDecomposition& d, const DarbouxChart& chart,
                    const Rational& lambda);

}  // namespace curlkit
