#pragma once

#include <vector>

namespace curlkit {

/// Dense square matrix with runtime dimension (chart dims stay <= 5).
template <typename T>
class Mat {
public:
    Mat() : n_(0) {}
    explicit Mat(int n, const T& fill = T{}) : n_(n), a_(size_t(n) * n, fill) {}

    int dim() const { return n_; }
    T& operator()(int i, int j) { return a_[size_t(i) * n_ + j]; }
    const T& operator()(int i, int j) const { return a_[size_t(i) * n_ + j]; }

private:
    int n_;
    std::vector<T> a_;
};

/// Rank-3 tensor laid out as T(k, i, j), used for connection coefficients Γ^k_ij.
template <typename T>
class Ten3 {
public:
    Ten3() : n_(0) {}
    explicit Ten3(int n, const T& fill = T{}) : n_(n), a_(size_t(n) * n * n, fill) {}

    int dim() const { return n_; }
    T& operator()(int k, int i, int j) { return a_[(size_t(k) * n_ + i) * n_ + j]; }
    const T& operator()(int k, int i, int j) const { return a_[(size_t(k) * n_ + i) * n_ + j]; }

private:
    int n_;
    std::vector<T> a_;
};

/// Rank-4 tensor laid out as T(l, i, j, k), used for the curvature R^l_ijk.
template <typename T>
class Ten4 {
public:
    Ten4() : n_(0) {}
    explicit Ten4(int n, const T& fill = T{}) : n_(n), a_(size_t(n) * n * n * n, fill) {}

    int dim() const { return n_; }
    T& operator()(int l, int i, int j, int k) {
        return a_[((size_t(l) * n_ + i) * n_ + j) * n_ + k];
    }
    const T& operator()(int l, int i, int j, int k) const {
        return a_[((size_t(l) * n_ + i) * n_ + j) * n_ + k];
    }

private:
    int n_;
    std::vector<T> a_;
};

}  // namespace curlkit
