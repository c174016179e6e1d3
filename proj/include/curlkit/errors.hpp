#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace curlkit {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Arithmetic outside the domain of an elementary function (sqrt of a
/// non-positive value, division by a zero-valued jet, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Metric not invertible at an evaluation point.
class SingularMetricError : public Error {
public:
    SingularMetricError(double det, const std::vector<double>& point)
        : Error(format(det, point)), det_(det), point_(point) {}

    double det() const { return det_; }
    const std::vector<double>& point() const { return point_; }

private:
    static std::string format(double det, const std::vector<double>& point);

    double det_;
    std::vector<double> point_;
};

/// Contact condition fails at an evaluation point (volume coefficient below floor).
class NonContactPointError : public Error {
public:
    NonContactPointError(double vol_coeff, const std::vector<double>& point)
        : Error(format(vol_coeff, point)), vol_coeff_(vol_coeff), point_(point) {}

    double vol_coeff() const { return vol_coeff_; }
    const std::vector<double>& point() const { return point_; }

private:
    static std::string format(double vol_coeff, const std::vector<double>& point);

    double vol_coeff_;
    std::vector<double> point_;
};

/// Expression parse failure; carries a 1-based column.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int column)
        : Error(what + " (column " + std::to_string(column) + ")"), column_(column) {}

    int column() const { return column_; }

private:
    int column_;
};

}  // namespace curlkit
