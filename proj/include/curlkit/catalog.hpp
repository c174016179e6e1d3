#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "curlkit/bundle.hpp"
#include "curlkit/contact.hpp"
#include "curlkit/geometry.hpp"

namespace curlkit {

/// A closed-form geometry with its declared contact form. For the affine
/// 3-sphere charts the form is θ = dz + x dy − y dx; the flat model uses the
/// normalized θ = dz + (x dy − y dx)/2.
struct CatalogGeometry {
    std::string id;
    std::map<std::string, double> params;
    Chart chart;
    MetricField metric;
    ContactFormField theta;
    std::string description;
    /// Statement tag the geometry's verified claims are keyed to in reports.
    std::string reference;
    /// κ of the declared Darboux-type form (θ = dz + κ(x dy − y dx)); zero for
    /// lifted sphere-bundle geometries whose form is not of that shape.
    double theta_kappa = 0.0;
    /// Set for stm-* entries; metric closures are only once differentiable there.
    bool lifted_bundle = false;
};

std::vector<std::string> catalog_ids();

/// Build a catalog entry. Known ids: darboux-flat, s3-round, s3-tabachnikov,
/// ellipsoid-3d, stm-flat, stm-sphere, stm-ellipse. Parameters default to 1.
CatalogGeometry instantiate(const std::string& id,
                            const std::map<std::string, double>& params = {});

/// Deterministic sample points in the geometry's box with near-singular
/// metrics rejected.
std::vector<Point> sample_points(const CatalogGeometry& geo, int count, unsigned long long seed);

/// Parameter schema and descriptive metadata for one catalog id.
nlohmann::ordered_json catalog_schema(const std::string& id);

/// Closed-form polynomial the curl of s3-tabachnikov should match:
/// (5/2)((1/b − 1/a)xy + (1/c − 1)z).
double tabachnikov_curl_reference(double a, double b, double c, const Point& p);

/// Closed-form polynomial the curl of ellipsoid-3d should match.
double ellipsoid_curl_reference(double a, double b, double c, const Point& p);

}  // namespace curlkit
