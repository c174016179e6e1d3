#pragma once

#include "curlkit/contact.hpp"
#include "curlkit/geometry.hpp"

namespace curlkit {

/// 2D Riemannian base of a unit sphere bundle.
struct BaseGeometry {
    Chart chart;         // dim 2
    MetricField metric;  // positive definite on the sampling box
};

/// Unit sphere bundle over a 2D base: chart (x¹, x², u) with the Liouville
/// contact form and the lifted metric. ℓ = 1, density weight −1/2.
struct STMGeometry {
    Chart chart;
    MetricField metric;      // ḡ, once differentiable
    ContactFormField theta;  // θ̄
    BaseGeometry base;
};

/// Gram–Schmidt orthonormal frame of the base metric; jets propagate so the
/// frame is differentiable along with everything built from it. The seeds may
/// live in a larger chart (the STM chart) whose first two coordinates are the
/// base point.
void orthonormal_frame(const JetMat& g_base, JetVec& e1, JetVec& e2);

/// Unit vector y = cos(u)·e1 + sin(u)·e2; g(y,y) = 1 identically.
JetVec fiber_direction(const JetMat& g_base, const Jet& u);

/// θ̄ components (g_1j y^j, g_2j y^j, 0) at seeded STM coordinates.
JetVec lifted_contact_form(const BaseGeometry& base, const JetVec& stm_seeds);

/// Lifted metric components:
///   ḡ_ji = g_ji + g_ts (∇_j y^t)(∇_i y^s),
///   ḡ_ui = g_ts (∂_u y^t)(∇_i y^s),
///   ḡ_uu = g_ji (∂_u y^j)(∂_u y^i),
/// with ∇_i y^s = ∂_i y^s + Γ^s_ik y^k.
JetMat lifted_metric(const BaseGeometry& base, const JetVec& stm_seeds);

STMGeometry make_stm(const BaseGeometry& base);

/// Max |A_{ḡ,Θ̄}| over the samples via the generic curl pipeline.
double stm_curl_check(const STMGeometry& stm, const std::vector<Point>& samples);

BaseGeometry flat_base();
BaseGeometry sphere_base(double radius);
/// Ellipsoid of revolution (axis scale c) in the rational chart covering the
/// whole plane; induced metric from the embedding.
BaseGeometry ellipse_base(double c);

}  // namespace curlkit
