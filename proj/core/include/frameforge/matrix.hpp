#pragma once

#include <Eigen/Dense>
#include <complex>

namespace frameforge {

enum class FieldTag { Real, Complex };

// Dense matrix over R or C.  Real-tagged matrices keep every imaginary part
// exactly zero; operations preserve the tag whenever they can do so exactly.
struct Matrix {
    Eigen::MatrixXcd values;
    FieldTag field = FieldTag::Complex;

    Eigen::Index rows() const { return values.rows(); }
    Eigen::Index cols() const { return values.cols(); }
};

// Wraps a real matrix; the result is Real-tagged.
Matrix make_real(const Eigen::MatrixXd& values);

// Wraps a complex matrix with the given tag (default Complex).  A Real tag
// demands exactly-zero imaginary parts.
Matrix make_complex(const Eigen::MatrixXcd& values, FieldTag field = FieldTag::Complex);

// True when every imaginary part is exactly zero.
bool is_real_valued(const Eigen::MatrixXcd& values);

// Thresholds shared by all rank and stabilization decisions.
struct TolerancePolicy {
    double rank_rtol = 1e-10;          // relative cutoff against the largest singular value
    double abs_floor = 1e-12;          // absolute cutoff for near-zero spectra
    double stabilization_rtol = 1e-3;  // relative settling requirement across scan steps
};

// Throws InvalidInput unless all thresholds are positive and rank_rtol < 1.
void validate(const TolerancePolicy& tol);

}  // namespace frameforge
