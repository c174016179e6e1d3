#pragma once

#include <functional>
#include <string>
#include <vector>

#include "curlkit/jet.hpp"
#include "curlkit/tensor.hpp"

namespace curlkit {

using JetMat = Mat<Jet>;

struct Chart {
    int dim = 0;
    std::vector<std::string> names;

    /// ℓ for contact charts of dimension 2ℓ+1.
    int contact_rank() const { return (dim - 1) / 2; }
};

Chart make_chart(std::vector<std::string> names);

/// Determinant floor below which a metric counts as singular.
inline constexpr double kMetricDetFloor = 1e-10;

/// Evaluation map from seeded chart coordinates to the symmetric matrix g_ij.
/// Evaluating at order 2 yields first and second derivatives of every component.
class MetricField {
public:
    MetricField() = default;
    MetricField(Chart chart, std::function<JetMat(const JetVec&)> eval)
        : chart_(std::move(chart)), eval_(std::move(eval)) {}

    const Chart& chart() const { return chart_; }

    JetMat components(const Point& p, int order) const { return eval_(seed_point(p, order)); }
    JetMat components(const JetVec& seeds) const { return eval_(seeds); }

private:
    Chart chart_;
    std::function<JetMat(const JetVec&)> eval_;
};

class ContactFormField {
public:
    ContactFormField() = default;
    ContactFormField(Chart chart, std::function<JetVec(const JetVec&)> eval)
        : chart_(std::move(chart)), eval_(std::move(eval)) {}

    const Chart& chart() const { return chart_; }

    JetVec components(const Point& p, int order) const { return eval_(seed_point(p, order)); }
    JetVec components(const JetVec& seeds) const { return eval_(seeds); }

private:
    Chart chart_;
    std::function<JetVec(const JetVec&)> eval_;
};

class CovectorField {
public:
    CovectorField() = default;
    CovectorField(Chart chart, std::function<JetVec(const JetVec&)> eval)
        : chart_(std::move(chart)), eval_(std::move(eval)) {}

    const Chart& chart() const { return chart_; }
    JetVec components(const Point& p, int order) const { return eval_(seed_point(p, order)); }

private:
    Chart chart_;
    std::function<JetVec(const JetVec&)> eval_;
};

/// Torsion-free connection given by its Christoffel symbols Γ^k_ij. Decoupled
/// from metrics so projectively-equivalent non-metric connections are expressible.
class ConnectionField {
public:
    ConnectionField() = default;
    ConnectionField(Chart chart, std::function<Ten3<Jet>(const JetVec&)> eval)
        : chart_(std::move(chart)), eval_(std::move(eval)) {}

    const Chart& chart() const { return chart_; }

    /// Christoffel jets at p. Seeds are taken one order above the requested
    /// output order, so `order` derivatives of Γ are available.
    Ten3<Jet> christoffels(const Point& p, int order) const {
        return eval_(seed_point(p, order + 1));
    }

private:
    Chart chart_;
    std::function<Ten3<Jet>(const JetVec&)> eval_;
};

/// Differentiable map between charts carried as coordinate jets of the target
/// components. Order-2 evaluation exposes the Jacobian and Hessian of the map.
class ChartMap {
public:
    ChartMap() = default;
    ChartMap(Chart source, Chart target, std::function<JetVec(const JetVec&)> eval)
        : source_(std::move(source)), target_(std::move(target)), eval_(std::move(eval)) {}

    const Chart& source() const { return source_; }
    const Chart& target() const { return target_; }

    JetVec components(const Point& p, int order) const { return eval_(seed_point(p, order)); }

    Point image(const Point& p) const;

    static ChartMap identity(const Chart& chart);

private:
    Chart source_;
    Chart target_;
    std::function<JetVec(const JetVec&)> eval_;
};

/// Gauss-Jordan inverse with partial pivoting on jet values. Throws
/// SingularMetricError when |det| falls below the floor.
JetMat metric_inverse(const JetMat& g, const Point& p, double det_floor = kMetricDetFloor);

double metric_det(const JetMat& g);

/// Levi-Civita Christoffel symbols from an order-(o+1) metric sample; the
/// returned jets carry o derivative orders. Symmetric in the lower pair.
Ten3<Jet> christoffel(const JetMat& g, const Point& p);

ConnectionField levi_civita(const MetricField& g);

/// Γ̃^k_ij = Γ^k_ij + δ^k_j β_i + δ^k_i β_j; projective symbols are unchanged.
ConnectionField connection_perturb(const ConnectionField& conn, const CovectorField& beta);

/// Π^k_ij = Γ^k_ij − (δ^k_i Γ^l_lj + δ^k_j Γ^l_il)/(n+1); traceless, symmetric.
template <typename T>
Ten3<T> projective_symbols(const Ten3<T>& gamma) {
    const int n = gamma.dim();
    Ten3<T> pi(n);
    std::vector<T> trace(n);  // Γ^l_li
    for (int i = 0; i < n; ++i) {
        T t = gamma(0, 0, i);
        for (int l = 1; l < n; ++l) t = t + gamma(l, l, i);
        trace[i] = t;
    }
    const double c = 1.0 / double(n + 1);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                T v = gamma(k, i, j);
                if (k == i) v = v - c * trace[j];
                if (k == j) v = v - c * trace[i];
                pi(k, i, j) = v;
            }
    return pi;
}

Ten3<double> tensor_values(const Ten3<Jet>& jets);
Mat<double> matrix_values(const JetMat& jets);

struct CurvatureResult {
    Ten4<double> riemann;  // R^l_ijk
    Mat<double> ricci;     // R_jk = R^i_ijk
    double scalar = 0.0;   // R = g^jk R_jk
};

/// Curvature with the sign convention
///   R^l_ijk = ∂_iΓ^l_jk − ∂_jΓ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik,
/// which makes the round sphere's scalar curvature positive.
CurvatureResult curvature(const MetricField& g, const Point& p);

/// Lowered tensor R_{abij} = g_am R^m_ijb, antisymmetric in its first pair.
Ten4<double> lower_riemann(const Ten4<double>& riemann, const Mat<double>& g);

/// (f*g)_ij(p) = ∂_i f^a ∂_j f^b g_ab(f(p)) with jets propagated through the
/// composition; the result carries one derivative order less than f.
JetMat pullback_metric(const ChartMap& f, const MetricField& g, const Point& p);

JetMat pullback_metric(const JetVec& f_jets, const MetricField& g);

/// Whether the Jacobian of the map jets is invertible (|det| above floor).
bool jacobian_invertible(const JetVec& f_jets, double floor = 1e-12);

Mat<double> jacobian_values(const JetVec& f_jets);

}  // namespace curlkit
