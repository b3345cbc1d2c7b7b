#include "frameforge/matrix.hpp"

#include "frameforge/errors.hpp"

namespace frameforge {

bool is_real_valued(const Eigen::MatrixXcd& values) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
        for (Eigen::Index i = 0; i < values.rows(); ++i) {
            if (values(i, j).imag() != 0.0) return false;
        }
    }
    return true;
}

Matrix make_real(const Eigen::MatrixXd& values) {
    Matrix m;
    m.values = values.cast<std::complex<double>>();
    m.field = FieldTag::Real;
    return m;
}

Matrix make_complex(const Eigen::MatrixXcd& values, FieldTag field) {
    if (field == FieldTag::Real && !is_real_valued(values)) {
        throw InvalidInput("real-tagged matrix has nonzero imaginary parts");
    }
    return Matrix{values, field};
}

void validate(const TolerancePolicy& tol) {
    if (!(tol.rank_rtol > 0.0) || !(tol.rank_rtol < 1.0)) {
        throw InvalidInput("rank_rtol must lie in (0, 1)");
    }
    if (!(tol.abs_floor > 0.0)) throw InvalidInput("abs_floor must be positive");
    if (!(tol.stabilization_rtol > 0.0)) throw InvalidInput("stabilization_rtol must be positive");
}

}  // namespace frameforge
