#pragma once

#include "curlkit/geometry.hpp"
#include "curlkit/rational.hpp"

namespace curlkit {

/// Trivializing volume a density coefficient is expressed against.
/// ChartContact: vol(θ_chart) of the chart's declared contact form.
/// Coordinate:   dx¹∧…∧dxⁿ.
enum class VolumeRef { ChartContact, Coordinate };

inline const char* to_string(VolumeRef r) {
    return r == VolumeRef::ChartContact ? "chart-contact" : "coordinate";
}

/// A weighted density sample: coefficient times (reference volume)^weight.
/// Arithmetic only combines matching weights and references.
struct DensityValue {
    double coefficient = 0.0;
    Rational weight;
    VolumeRef reference = VolumeRef::ChartContact;

    DensityValue() = default;
    DensityValue(double c, Rational w, VolumeRef r) : coefficient(c), weight(w), reference(r) {}

    friend DensityValue operator+(const DensityValue& a, const DensityValue& b) {
        a.check_compatible(b);
        return {a.coefficient + b.coefficient, a.weight, a.reference};
    }
    friend DensityValue operator-(const DensityValue& a, const DensityValue& b) {
        a.check_compatible(b);
        return {a.coefficient - b.coefficient, a.weight, a.reference};
    }
    friend DensityValue operator*(double s, const DensityValue& a) {
        return {s * a.coefficient, a.weight, a.reference};
    }

private:
    void check_compatible(const DensityValue& b) const {
        if (weight != b.weight || reference != b.reference)
            throw DomainError("density arithmetic with mismatched weight or reference");
    }
};

/// Contact Hamiltonian: the weight −1/(ℓ+1) density encoding a contact field.
struct ContactHamiltonian {
    DensityValue density;

    ContactHamiltonian() = default;
    ContactHamiltonian(double coefficient, int ell, VolumeRef ref = VolumeRef::ChartContact)
        : density(coefficient, Rational(-1, ell + 1), ref) {}
};

/// dθ as the matrix W_ij = ∂_iθ_j − ∂_jθ_i (antisymmetric).
Mat<double> exterior_derivative(const JetVec& theta);

/// Coefficient of θ∧(dθ)^ℓ relative to dx¹∧…∧dxⁿ at the evaluation point.
/// Closed antisymmetrized expansions for ℓ ≤ 2; permutation sum otherwise.
double contact_volume_coeff(const JetVec& theta);

double contact_volume_coeff(const ContactFormField& theta, const Point& p);

/// Volume coefficient with its first derivatives, from order-2 form jets.
/// Needed wherever the trivializing volume varies across the chart.
Jet contact_volume_jet(const JetVec& theta);

inline constexpr double kContactFloor = 1e-10;

bool contact_check(const ContactFormField& theta, const Point& p, double floor = kContactFloor);

/// Ratio vol(θ)/vol(θ_ref) at a point; used to convert density coefficients
/// computed against θ's own volume into the chart-contact reference.
double volume_ratio(const ContactFormField& theta, const ContactFormField& theta_ref,
                    const Point& p);

/// Invariant projection of a vector field to its contact component, returned
/// as the contact Hamiltonian θ(X)·vol^{−1/(ℓ+1)} in the chart-contact
/// reference of theta_ref (defaults to theta itself).
ContactHamiltonian project_pi(const std::vector<double>& X, const ContactFormField& theta,
                              const Point& p, const ContactFormField* theta_ref = nullptr,
                              double floor = kContactFloor);

/// Convert a chart-contact referenced density to the coordinate reference.
/// Uses |vol coefficient|^weight; sign_flip reports when the coefficient was
/// negative and the weight is not an integer (branch choice recorded).
DensityValue to_coordinate_reference(const DensityValue& d, double vol_coeff, bool* sign_flag = nullptr);

}  // namespace curlkit
