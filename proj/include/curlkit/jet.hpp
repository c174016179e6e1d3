#pragma once

#include <cmath>
#include <vector>

#include "curlkit/errors.hpp"

namespace curlkit {

/// Order-2 truncated Taylor record of a chart function at a point: value,
/// gradient and symmetric Hessian with respect to the chart coordinates.
///
/// Only the upper triangle of the Hessian is stored, so symmetry is exact by
/// construction. Order-1 jets keep the (zero-filled) storage but no operation
/// on them ever reads or writes it.
class Jet {
public:
    Jet() = default;

    static Jet constant(double value, int dim, int order) {
        Jet j(dim, order);
        j.value_ = value;
        return j;
    }

    /// Seed the i-th coordinate function at a point: value x[i], gradient e_i.
    static Jet variable(int i, const std::vector<double>& x, int order) {
        const int n = static_cast<int>(x.size());
        if (i < 0 || i >= n) throw DomainError("jet seed index out of range");
        Jet j(n, order);
        j.value_ = x[i];
        j.grad_[i] = 1.0;
        return j;
    }

    /// Assemble a jet from explicit derivative data. hess is a full row-major
    /// n-by-n matrix; the upper triangle is taken, ignored for order 1.
    static Jet from_parts(double value, const std::vector<double>& grad,
                          const std::vector<double>& hess, int order) {
        const int n = static_cast<int>(grad.size());
        Jet j(n, order);
        j.value_ = value;
        j.grad_ = grad;
        if (order == 2)
            for (int i = 0; i < n; ++i)
                for (int k = i; k < n; ++k) j.hess_[j.tri_index(i, k)] = hess[size_t(i) * n + k];
        return j;
    }

    double value() const { return value_; }
    int dim() const { return dim_; }
    int order() const { return order_; }

    double d(int i) const { return grad_[i]; }

    /// Symmetric Hessian entry; zero for order-1 jets.
    double d2(int i, int j) const {
        if (order_ < 2) return 0.0;
        return hess_[tri_index(i, j)];
    }

    /// The i-th partial derivative as an order-1 jet (value = gradient entry,
    /// gradient = Hessian row). Requires an order-2 input.
    Jet partial(int i) const {
        if (order_ < 2) throw DomainError("jet partial() requires an order-2 jet");
        Jet r(dim_, 1);
        r.value_ = grad_[i];
        for (int j = 0; j < dim_; ++j) r.grad_[j] = hess_[tri_index(i, j)];
        return r;
    }

    Jet truncated(int order) const {
        if (order >= order_) return *this;
        Jet r(dim_, order);
        r.value_ = value_;
        r.grad_ = grad_;
        return r;
    }

    /// Raw triangular Hessian storage. Exposed so tests can poison the
    /// storage of order-1 jets and detect accidental reads.
    std::vector<double>& hessian_storage() { return hess_; }
    const std::vector<double>& hessian_storage() const { return hess_; }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r = like(a, b);
        r.value_ = a.value_ + b.value_;
        for (int i = 0; i < r.dim_; ++i) r.grad_[i] = a.grad_[i] + b.grad_[i];
        if (r.order_ == 2)
            for (size_t k = 0; k < r.hess_.size(); ++k) r.hess_[k] = a.hess_[k] + b.hess_[k];
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r = like(a, b);
        r.value_ = a.value_ - b.value_;
        for (int i = 0; i < r.dim_; ++i) r.grad_[i] = a.grad_[i] - b.grad_[i];
        if (r.order_ == 2)
            for (size_t k = 0; k < r.hess_.size(); ++k) r.hess_[k] = a.hess_[k] - b.hess_[k];
        return r;
    }

    friend Jet operator-(const Jet& a) {
        Jet r(a.dim_, a.order_);
        r.value_ = -a.value_;
        for (int i = 0; i < a.dim_; ++i) r.grad_[i] = -a.grad_[i];
        if (a.order_ == 2)
            for (size_t k = 0; k < a.hess_.size(); ++k) r.hess_[k] = -a.hess_[k];
        return r;
    }

    // Leibniz rule on value, gradient and Hessian.
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r = like(a, b);
        r.value_ = a.value_ * b.value_;
        for (int i = 0; i < r.dim_; ++i) r.grad_[i] = a.value_ * b.grad_[i] + b.value_ * a.grad_[i];
        if (r.order_ == 2) {
            for (int i = 0; i < r.dim_; ++i)
                for (int j = i; j < r.dim_; ++j) {
                    const int t = r.tri_index(i, j);
                    r.hess_[t] = a.value_ * b.hess_[t] + b.value_ * a.hess_[t] +
                                 a.grad_[i] * b.grad_[j] + a.grad_[j] * b.grad_[i];
                }
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.value_ == 0.0) throw DomainError("division by a zero-valued jet");
        const double inv = 1.0 / b.value_;
        return a * b.chain(inv, -inv * inv, 2.0 * inv * inv * inv);
    }

    friend Jet operator+(const Jet& a, double s) { Jet r = a; r.value_ += s; return r; }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { Jet r = a; r.value_ -= s; return r; }
    friend Jet operator-(double s, const Jet& a) { return (-a) + s; }
    friend Jet operator*(const Jet& a, double s) {
        Jet r(a.dim_, a.order_);
        r.value_ = a.value_ * s;
        for (int i = 0; i < a.dim_; ++i) r.grad_[i] = a.grad_[i] * s;
        if (a.order_ == 2)
            for (size_t k = 0; k < a.hess_.size(); ++k) r.hess_[k] = a.hess_[k] * s;
        return r;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
    friend Jet operator/(double s, const Jet& b) {
        if (b.value_ == 0.0) throw DomainError("division by a zero-valued jet");
        const double inv = 1.0 / b.value_;
        return b.chain(s * inv, -s * inv * inv, 2.0 * s * inv * inv * inv);
    }

    friend Jet sqrt(const Jet& a) {
        if (a.value_ <= 0.0) throw DomainError("jet sqrt of a non-positive value");
        const double s = std::sqrt(a.value_);
        return a.chain(s, 0.5 / s, -0.25 / (s * a.value_));
    }

    friend Jet sin(const Jet& a) {
        const double s = std::sin(a.value_), c = std::cos(a.value_);
        return a.chain(s, c, -s);
    }

    friend Jet cos(const Jet& a) {
        const double s = std::sin(a.value_), c = std::cos(a.value_);
        return a.chain(c, -s, -c);
    }

    friend Jet exp(const Jet& a) {
        const double e = std::exp(a.value_);
        return a.chain(e, e, e);
    }

    /// Integer power; negative exponents require a nonzero value.
    friend Jet powi(const Jet& a, int k) {
        if (k == 0) return Jet::constant(1.0, a.dim_, a.order_);
        if (k == 1) return a;
        if (k < 0 && a.value_ == 0.0) throw DomainError("jet powi: negative power of zero");
        if (k >= 2 && a.value_ == 0.0)
            return a.chain(0.0, 0.0, k == 2 ? 2.0 : 0.0);
        const double pkm2 = ipow(a.value_, k - 2);
        const double pkm1 = pkm2 * a.value_;
        return a.chain(pkm1 * a.value_, k * pkm1, double(k) * double(k - 1) * pkm2);
    }

private:
    Jet(int dim, int order)
        : dim_(dim), order_(order), grad_(dim, 0.0), hess_(size_t(dim) * (dim + 1) / 2, 0.0) {}

    static Jet like(const Jet& a, const Jet& b) {
        if (a.dim_ != b.dim_ || a.order_ != b.order_)
            throw DomainError("jet arithmetic on mismatched dimension or order");
        return Jet(a.dim_, a.order_);
    }

    int tri_index(int i, int j) const {
        if (i > j) std::swap(i, j);
        return i * dim_ - i * (i - 1) / 2 + (j - i);
    }

    static double ipow(double v, int k) {
        if (k < 0) return 1.0 / ipow(v, -k);
        double r = 1.0;
        for (int t = 0; t < k; ++t) r *= v;
        return r;
    }

    // Chain rule through a scalar function with derivatives f0, f1, f2 at value().
    Jet chain(double f0, double f1, double f2) const {
        Jet r(dim_, order_);
        r.value_ = f0;
        for (int i = 0; i < dim_; ++i) r.grad_[i] = f1 * grad_[i];
        if (order_ == 2) {
            for (int i = 0; i < dim_; ++i)
                for (int j = i; j < dim_; ++j)
                    r.hess_[tri_index(i, j)] = f1 * hess_[tri_index(i, j)] + f2 * grad_[i] * grad_[j];
        }
        return r;
    }

    double value_ = 0.0;
    int dim_ = 0;
    int order_ = 1;
    std::vector<double> grad_;
    std::vector<double> hess_;
};

using JetVec = std::vector<Jet>;
using Point = std::vector<double>;

/// Seed all chart coordinates at a point.
inline JetVec seed_point(const Point& p, int order) {
    JetVec out;
    out.reserve(p.size());
    for (size_t i = 0; i < p.size(); ++i) out.push_back(Jet::variable(static_cast<int>(i), p, order));
    return out;
}

/// Second-order composition h = G ∘ f in chart coordinates: G is a jet at
/// f(p) in target coordinates, f holds the map's coordinate jets at p.
inline Jet compose(const Jet& G, const JetVec& f) {
    const int m = static_cast<int>(f.size());  // target dimension
    const int n = f.front().dim();             // source dimension
    const int order = std::min(G.order(), f.front().order());
    std::vector<double> grad(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < m; ++a) grad[i] += G.d(a) * f[a].d(i);
    std::vector<double> hess;
    if (order == 2) {
        hess.assign(size_t(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double hij = 0.0;
                for (int a = 0; a < m; ++a) {
                    hij += G.d(a) * f[a].d2(i, j);
                    for (int b = 0; b < m; ++b) hij += G.d2(a, b) * f[a].d(i) * f[b].d(j);
                }
                hess[size_t(i) * n + j] = hij;
                hess[size_t(j) * n + i] = hij;
            }
    }
    return Jet::from_parts(G.value(), grad, hess, order);
}

}  // namespace curlkit
