#include "curlkit/catalog.hpp"

#include <cmath>

#include "curlkit/rng.hpp"

namespace curlkit {

namespace {

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

ContactFormField affine_sphere_theta(const Chart& chart) {
    // θ = dz + x dy − y dx on the affine chart (x, y, z).
    return ContactFormField(chart, [](const JetVec& s) {
        JetVec th(3, Jet::constant(0.0, s[0].dim(), s[0].order()));
        th[0] = -s[1];
        th[1] = s[0];
        th[2] = Jet::constant(1.0, s[0].dim(), s[0].order());
        return th;
    });
}

ContactFormField darboux_half_theta(const Chart& chart) {
    // θ = dz + (x dy − y dx)/2.
    return ContactFormField(chart, [](const JetVec& s) {
        JetVec th(3, Jet::constant(0.0, s[0].dim(), s[0].order()));
        th[0] = -0.5 * s[1];
        th[1] = 0.5 * s[0];
        th[2] = Jet::constant(1.0, s[0].dim(), s[0].order());
        return th;
    });
}

JetMat round_s3_components(const JetVec& s) {
    const Jet& x = s[0];
    const Jet& y = s[1];
    const Jet& z = s[2];
    Jet sum = x * x + y * y + z * z + 1.0;
    Jet f = 1.0 / (sum * sum);
    JetMat g(3, Jet::constant(0.0, x.dim(), x.order()));
    g(0, 0) = f * (y * y + z * z + 1.0);
    g(1, 1) = f * (x * x + z * z + 1.0);
    g(2, 2) = f * (x * x + y * y + 1.0);
    g(0, 1) = g(1, 0) = -(f * x * y);
    g(0, 2) = g(2, 0) = -(f * x * z);
    g(1, 2) = g(2, 1) = -(f * y * z);
    return g;
}

// The 3D-ellipsoid metric components. Cross terms are written as symmetric
// products (g_xy dx dy contributes half to each off-diagonal matrix slot),
// and the common denominator is the cube of the quadric: with those two
// conventions the a = b = c = 1 case reduces exactly to the round metric.
constexpr int kEllipsoidDenomPower = 3;

JetMat ellipsoid_components(const JetVec& s, double a, double b, double c) {
    const Jet& x = s[0];
    const Jet& y = s[1];
    const Jet& z = s[2];
    const double a2 = a * a, b2 = b * b, c2 = c * c;
    const double a4 = a2 * a2, b4 = b2 * b2, c4 = c2 * c2;
    Jet x2 = x * x, y2 = y * y, z2 = z * z;
    Jet d = a2 * x2 + b2 * y2 + c2 * z2 + 1.0;
    Jet denom = powi(d, kEllipsoidDenomPower);

    JetMat g(3, Jet::constant(0.0, x.dim(), x.order()));
    Jet nxx = powi(b2 * y2 + c2 * z2 + 1.0, 2) + a4 * x2 * (y2 + z2 + 1.0);
    Jet nyy = powi(a2 * x2 + c2 * z2 + 1.0, 2) + b4 * y2 * (x2 + z2 + 1.0);
    Jet nzz = powi(a2 * x2 + b2 * y2 + 1.0, 2) + c4 * z2 * (x2 + y2 + 1.0);
    Jet nxy = -x * y * (a4 * x2 - a2 * (z2 * (b2 - c2) + b2 - 1.0) +
                        b2 * (b2 * y2 + c2 * z2 + 1.0));
    Jet nxz = -x * z * (a4 * x2 - a2 * (y2 * (c2 - b2) + c2 - 1.0) +
                        c2 * (b2 * y2 + c2 * z2 + 1.0));
    Jet nyz = -y * z * (b4 * y2 - b2 * (x2 * (c2 - a2) + c2 - 1.0) +
                        c2 * (a2 * x2 + c2 * z2 + 1.0));
    g(0, 0) = nxx / denom;
    g(1, 1) = nyy / denom;
    g(2, 2) = nzz / denom;
    g(0, 1) = g(1, 0) = nxy / denom;
    g(0, 2) = g(2, 0) = nxz / denom;
    g(1, 2) = g(2, 1) = nyz / denom;
    return g;
}

}  // namespace

std::vector<std::string> catalog_ids() {
    return {"darboux-flat", "s3-round",  "s3-tabachnikov", "ellipsoid-3d",
            "stm-flat",     "stm-sphere", "stm-ellipse"};
}

CatalogGeometry instantiate(const std::string& id, const std::map<std::string, double>& params) {
    CatalogGeometry geo;
    geo.id = id;

    if (id == "darboux-flat") {
        geo.chart = make_chart({"x", "y", "z"});
        geo.metric = MetricField(geo.chart, [](const JetVec& s) {
            JetMat g(3, Jet::constant(0.0, s[0].dim(), s[0].order()));
            for (int i = 0; i < 3; ++i) g(i, i) = Jet::constant(1.0, s[0].dim(), s[0].order());
            return g;
        });
        geo.theta = darboux_half_theta(geo.chart);
        geo.theta_kappa = 0.5;
        geo.description = "Flat metric with the normalized Darboux contact form";
        geo.reference = "Ex-2.3.3";
        return geo;
    }
    if (id == "s3-round") {
        geo.chart = make_chart({"x", "y", "z"});
        geo.metric = MetricField(geo.chart, round_s3_components);
        geo.theta = affine_sphere_theta(geo.chart);
        geo.theta_kappa = 1.0;
        geo.description = "Round 3-sphere metric in affine coordinates";
        geo.reference = "Prop-6.1.1(i)";
        return geo;
    }
    if (id == "s3-tabachnikov") {
        const double a = param_or(params, "a", 1.0);
        const double b = param_or(params, "b", 1.0);
        const double c = param_or(params, "c", 1.0);
        if (a <= 0 || b <= 0 || c <= 0) throw DomainError("parameters a, b, c must be positive");
        geo.params = {{"a", a}, {"b", b}, {"c", c}};
        geo.chart = make_chart({"x", "y", "z"});
        geo.metric = MetricField(geo.chart, [a, b, c](const JetVec& s) {
            JetMat g = round_s3_components(s);
            Jet num = s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + 1.0;
            Jet den = s[0] * s[0] / a + s[1] * s[1] / b + s[2] * s[2] / c + 1.0;
            Jet factor = num / den;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) g(i, j) = factor * g(i, j);
            return g;
        });
        geo.theta = affine_sphere_theta(geo.chart);
        geo.theta_kappa = 1.0;
        geo.description = "Conformally round 3-sphere metric with parameters (a, b, c)";
        geo.reference = "Prop-6.1.1(ii)";
        return geo;
    }
    if (id == "ellipsoid-3d") {
        const double a = param_or(params, "a", 1.0);
        const double b = param_or(params, "b", 1.0);
        const double c = param_or(params, "c", 1.0);
        if (a <= 0 || b <= 0 || c <= 0) throw DomainError("parameters a, b, c must be positive");
        geo.params = {{"a", a}, {"b", b}, {"c", c}};
        geo.chart = make_chart({"x", "y", "z"});
        geo.metric = MetricField(geo.chart, [a, b, c](const JetVec& s) {
            return ellipsoid_components(s, a, b, c);
        });
        geo.theta = affine_sphere_theta(geo.chart);
        geo.theta_kappa = 1.0;
        geo.description = "3D ellipsoid with the induced metric, affine chart";
        geo.reference = "Prop-6.2.1";
        return geo;
    }
    if (id == "stm-flat" || id == "stm-sphere" || id == "stm-ellipse") {
        BaseGeometry base;
        if (id == "stm-flat") {
            base = flat_base();
            geo.description = "Unit sphere bundle over the flat plane";
            geo.reference = "Thm-5.1.1";
        } else if (id == "stm-sphere") {
            const double r = param_or(params, "radius", 1.0);
            if (r <= 0) throw DomainError("radius must be positive");
            geo.params = {{"radius", r}};
            base = sphere_base(r);
            geo.description = "Unit sphere bundle over the round 2-sphere";
            geo.reference = "Thm-5.1.1";
        } else {
            const double c = param_or(params, "c", 1.6);
            if (c <= 0) throw DomainError("parameter c must be positive");
            geo.params = {{"c", c}};
            base = ellipse_base(c);
            geo.description = "Unit sphere bundle over an ellipsoid of revolution";
            geo.reference = "Thm-5.1.1";
        }
        STMGeometry stm = make_stm(base);
        geo.chart = stm.chart;
        geo.metric = stm.metric;
        geo.theta = stm.theta;
        geo.lifted_bundle = true;
        return geo;
    }
    throw DomainError("unknown catalog geometry id: " + id);
}

std::vector<Point> sample_points(const CatalogGeometry& geo, int count,
                                 unsigned long long seed) {
    SplitMix64 rng(seed);
    std::vector<Point> out;
    out.reserve(count);
    const double two_pi = 2.0 * std::acos(-1.0);
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 100 * count) throw DomainError("sampling failed to find regular points");
        Point p(3);
        p[0] = rng.uniform(-1.0, 1.0);
        p[1] = rng.uniform(-1.0, 1.0);
        p[2] = geo.lifted_bundle ? rng.uniform(0.0, two_pi) : rng.uniform(-1.0, 1.0);
        try {
            JetMat g = geo.metric.components(p, geo.lifted_bundle ? 2 : 1);
            if (std::fabs(metric_det(g)) < 1e-8) continue;
            if (!contact_check(geo.theta, p)) continue;
        } catch (const Error&) {
            continue;
        }
        out.push_back(p);
    }
    return out;
}

nlohmann::ordered_json catalog_schema(const std::string& id) {
    CatalogGeometry geo = instantiate(id);
    nlohmann::ordered_json schema;
    schema["id"] = geo.id;
    schema["description"] = geo.description;
    schema["reference"] = geo.reference;
    schema["chart"] = geo.chart.names;
    schema["lifted_bundle"] = geo.lifted_bundle;
    nlohmann::ordered_json params = nlohmann::ordered_json::array();
    auto param = [](const char* name, double fallback, const char* doc) {
        return nlohmann::ordered_json{{"name", name}, {"default", fallback}, {"doc", doc}};
    };
    if (id == "s3-tabachnikov" || id == "ellipsoid-3d") {
        params.push_back(param("a", 1.0, "first axis parameter, positive"));
        params.push_back(param("b", 1.0, "second axis parameter, positive"));
        params.push_back(param("c", 1.0, "third axis parameter, positive"));
    } else if (id == "stm-sphere") {
        params.push_back(param("radius", 1.0, "base sphere radius, positive"));
    } else if (id == "stm-ellipse") {
        params.push_back(param("c", 1.6, "axis scale of the base ellipsoid, positive"));
    }
    schema["params"] = params;
    return schema;
}

double tabachnikov_curl_reference(double a, double b, double c, const Point& p) {
    return 2.5 * ((1.0 / b - 1.0 / a) * p[0] * p[1] + (1.0 / c - 1.0) * p[2]);
}

double ellipsoid_curl_reference(double a, double b, double c, const Point& p) {
    const double a2 = a * a, b2 = b * b, c2 = c * c;
    const double a4 = a2 * a2, b4 = b2 * b2, c4 = c2 * c2;
    const double x = p[0], y = p[1], z = p[2];
    return a4 * (a2 - b2) * (b2 + 2 * c2 + 2) * x * x * x * y +
           b4 * (a2 - b2) * (a2 + 2 * c2 + 2) * x * y * y * y +
           (a2 - b2) * c4 * (2 + a2 + b2 + c2) * x * y * z * z -
           a4 * (c2 - 1) * (a2 + 2 * b2 + c2 + 1) * x * x * z -
           b4 * (c2 - 1) * (2 * a2 + b2 + c2 + 1) * y * y * z -
           c4 * (c2 - 1) * (2 * a2 + 2 * b2 + 1) * z * z * z +
           (a2 - b2) * (a2 + b2 + 2 * c2 + 1) * x * y -
           (c2 - 1) * (2 * a2 + 2 * b2 + c2) * z;
}

}  // namespace curlkit
