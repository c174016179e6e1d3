#pragma once

#include <gmpxx.h>

#include <string>

namespace curlkit {

/// Exact rational scalar used by the polynomial backend and for density weights.
/// Backed by GMP; always stored in canonical (reduced, positive-denominator) form.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long num) : v_(num) {}
    Rational(long num, long den) : v_(num, den) { v_.canonicalize(); }
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    static Rational from_string(const std::string& s) {
        mpq_class v(s);
        v.canonicalize();
        return Rational(v);
    }

    double to_double() const { return v_.get_d(); }
    std::string to_string() const { return v_.get_str(); }
    bool is_zero() const { return v_ == 0; }
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ / b.v_)); }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
    Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
    Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }
    Rational& operator/=(const Rational& b) { v_ /= b.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }

private:
    mpq_class v_;
};

}  // namespace curlkit
