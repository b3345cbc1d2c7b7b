#include "frameforge/numkernel.hpp"

#include <algorithm>
#include <cmath>

#include "frameforge/errors.hpp"

namespace frameforge {

namespace {

void check_entries(const Matrix& a) {
    if (!a.values.allFinite()) throw InvalidInput("matrix has non-finite entries");
    if (a.field == FieldTag::Real && !is_real_valued(a.values)) {
        throw InvalidInput("real-tagged matrix has nonzero imaginary parts");
    }
}

Eigen::Index argmax_abs(const Eigen::VectorXcd& v) {
    Eigen::Index best = 0;
    double best_abs = std::abs(v(0));
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    return best;
}

// Multiplies the column by the unit factor that makes its largest-magnitude
// entry real and positive.  Returns that factor.
std::complex<double> fix_column_phase(Eigen::Ref<Eigen::VectorXcd> col) {
    const Eigen::Index i = argmax_abs(col);
    const double mag = std::abs(col(i));
    if (mag == 0.0) return {1.0, 0.0};
    const std::complex<double> factor = std::conj(col(i)) / mag;
    col *= factor;
    col(i) = {std::abs(col(i)), 0.0};  // kill rounding residue in the pivot slot
    return factor;
}

template <typename MatT>
SvdResult svd_impl(const MatT& a, FieldTag tag) {
    const Eigen::Index d = a.rows();
    const Eigen::Index n = a.cols();

    SvdResult out;
    if (d == 0 || n == 0) {
        out.left_basis = Matrix{Eigen::MatrixXcd::Identity(d, d), tag};
        out.right_basis = Matrix{Eigen::MatrixXcd::Identity(n, n), tag};
        return out;
    }

    Eigen::JacobiSVD<MatT> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Index k = dec.singularValues().size();
    out.singular_values.assign(dec.singularValues().data(), dec.singularValues().data() + k);

    Eigen::MatrixXcd u = dec.matrixU().template cast<std::complex<double>>();
    Eigen::MatrixXcd v = dec.matrixV().template cast<std::complex<double>>();
    for (Eigen::Index j = 0; j < k; ++j) {
        // Paired columns share the phase factor so u * diag(s) * v^* is kept.
        const std::complex<double> factor = fix_column_phase(v.col(j));
        u.col(j) *= factor;
    }
    for (Eigen::Index j = k; j < u.cols(); ++j) fix_column_phase(u.col(j));
    for (Eigen::Index j = k; j < v.cols(); ++j) fix_column_phase(v.col(j));

    out.left_basis = Matrix{std::move(u), tag};
    out.right_basis = Matrix{std::move(v), tag};
    return out;
}

double rank_threshold(const std::vector<double>& sv, const TolerancePolicy& tol) {
    const double s_max = sv.empty() ? 0.0 : sv.front();
    return std::max(tol.rank_rtol * s_max, tol.abs_floor);
}

}  // namespace

SvdResult svd(const Matrix& a, const TolerancePolicy& tol) {
    validate(tol);
    check_entries(a);
    if (a.field == FieldTag::Real) {
        return svd_impl<Eigen::MatrixXd>(a.values.real(), FieldTag::Real);
    }
    return svd_impl<Eigen::MatrixXcd>(a.values, FieldTag::Complex);
}

int numeric_rank(const std::vector<double>& singular_values, const TolerancePolicy& tol) {
    validate(tol);
    const double cut = rank_threshold(singular_values, tol);
    int r = 0;
    for (double s : singular_values) {
        if (s > cut) ++r;
    }
    return r;
}

int numeric_rank(const SvdResult& s, const TolerancePolicy& tol) {
    return numeric_rank(s.singular_values, tol);
}

int numeric_rank(const Matrix& a, const TolerancePolicy& tol) {
    return numeric_rank(svd(a, tol), tol);
}

Matrix pseudo_inverse(const Matrix& a, const TolerancePolicy& tol) {
    const SvdResult s = svd(a, tol);
    const double cut = rank_threshold(s.singular_values, tol);
    const Eigen::Index k = static_cast<Eigen::Index>(s.singular_values.size());

    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(a.cols(), a.rows());
    for (Eigen::Index j = 0; j < k; ++j) {
        const double sv = s.singular_values[static_cast<std::size_t>(j)];
        if (sv > cut) {
            x += (1.0 / sv) * s.right_basis.values.col(j) * s.left_basis.values.col(j).adjoint();
        }
    }
    if (a.field == FieldTag::Real) return make_real(x.real());
    return Matrix{std::move(x), FieldTag::Complex};
}

Matrix orthonormal_complement_basis(const Matrix& a, const TolerancePolicy& tol) {
    const SvdResult s = svd(a, tol);
    const int r = numeric_rank(s, tol);
    const Eigen::Index d = a.rows();
    Matrix out;
    out.values = s.left_basis.values.rightCols(d - r);
    out.field = s.left_basis.field;
    return out;
}

int defect_rank(const Matrix& product, const TolerancePolicy& tol) {
    if (product.rows() != product.cols()) {
        throw InvalidInput("defect_rank expects a square product matrix");
    }
    Matrix defect;
    defect.values = product.values - Eigen::MatrixXcd::Identity(product.rows(), product.cols());
    defect.field = product.field;
    return numeric_rank(defect, tol);
}

double reduced_minimum_modulus(const SvdResult& s, const TolerancePolicy& tol) {
    const double cut = rank_threshold(s.singular_values, tol);
    double gamma = 0.0;
    for (double sv : s.singular_values) {
        if (sv > cut) gamma = sv;  // list is nonincreasing; the last survivor wins
    }
    return gamma;
}

}  // namespace frameforge
