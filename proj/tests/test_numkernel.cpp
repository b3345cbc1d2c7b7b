#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "frameforge/errors.hpp"
#include "frameforge/numkernel.hpp"
#include "frameforge/random.hpp"

using namespace frameforge;

namespace {

Matrix real_mat(std::initializer_list<std::initializer_list<double>> rows) {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        Eigen::Index c = 0;
        for (double v : row) m(r, c++) = v;
        ++r;
    }
    return Matrix{std::move(m), FieldTag::Real};
}

double reconstruction_error(const Matrix& a, const SvdResult& dec) {
    Eigen::VectorXd s(static_cast<Eigen::Index>(dec.singular_values.size()));
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        s(i) = dec.singular_values[static_cast<std::size_t>(i)];
    }
    const Eigen::MatrixXcd rebuilt = dec.left_basis.values.leftCols(s.size()) * s.asDiagonal() *
                                     dec.right_basis.values.leftCols(s.size()).adjoint();
    return (rebuilt - a.values).norm();
}

}  // namespace

TEST_CASE("singular values of a diagonal matrix") {
    const Matrix a = real_mat({{3, 0}, {0, 2}});
    const SvdResult dec = svd(a);
    REQUIRE(dec.singular_values.size() == 2);
    CHECK(dec.singular_values[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(dec.singular_values[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(dec.left_basis.field == FieldTag::Real);
    CHECK(reconstruction_error(a, dec) < 1e-12);
}

TEST_CASE("degenerate shapes decompose without spectrum") {
    for (auto [r, c] : {std::pair<int, int>{0, 0}, {2, 0}, {0, 3}}) {
        const Matrix a{Eigen::MatrixXcd::Zero(r, c), FieldTag::Complex};
        const SvdResult dec = svd(a);
        CHECK(dec.singular_values.empty());
        CHECK(dec.left_basis.rows() == r);
        CHECK(dec.right_basis.rows() == c);
        CHECK(numeric_rank(a) == 0);
    }
}

TEST_CASE("duplicated first column window has the frozen spectrum") {
    // Columns e1, e1, e3, e4 of a 4-dimensional window.
    const Matrix a = real_mat({{1, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    const SvdResult dec = svd(a);
    REQUIRE(dec.singular_values.size() == 4);
    CHECK(dec.singular_values[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(dec.singular_values[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dec.singular_values[2] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dec.singular_values[3] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(numeric_rank(a) == 3);
    CHECK(reduced_minimum_modulus(dec) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("decomposition is deterministic across calls") {
    std::mt19937_64 rng(1234);
    const Matrix a = make_complex(random_gaussian_complex(rng, 5, 7));
    const SvdResult first = svd(a);
    const SvdResult second = svd(a);
    CHECK(first.singular_values == second.singular_values);
    CHECK(first.left_basis.values == second.left_basis.values);
    CHECK(first.right_basis.values == second.right_basis.values);
}

TEST_CASE("phase convention pins each right singular vector") {
    std::mt19937_64 rng(777);
    const Matrix a = make_complex(random_gaussian_complex(rng, 4, 4));
    const SvdResult dec = svd(a);
    for (Eigen::Index j = 0; j < dec.right_basis.cols(); ++j) {
        const Eigen::VectorXcd v = dec.right_basis.values.col(j);
        Eigen::Index pivot = 0;
        v.cwiseAbs().maxCoeff(&pivot);
        CHECK(v(pivot).imag() == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(v(pivot).real() > 0.0);
    }
    CHECK(reconstruction_error(a, dec) < 1e-12 * (1.0 + dec.singular_values[0]));
}

TEST_CASE("rank thresholds separate relative and absolute cuts") {
    CHECK(numeric_rank(real_mat({{1, 0}, {0, 1e-11}})) == 1);   // below rank_rtol * sigma_max
    CHECK(numeric_rank(real_mat({{1e-13, 0}, {0, 0}})) == 0);   // below abs_floor outright
    TolerancePolicy loose;
    loose.rank_rtol = 0.5;
    CHECK(numeric_rank(real_mat({{1, 0}, {0, 0.4}}), loose) == 1);
    CHECK(numeric_rank(real_mat({{1, 0}, {0, 0.6}}), loose) == 2);
}

TEST_CASE("pseudo-inverse satisfies the four projection identities") {
    std::mt19937_64 rng(9001);
    const std::pair<int, int> shapes[] = {{2, 2}, {3, 5}, {5, 3}, {8, 8}};
    for (const auto& [r, c] : shapes) {
        for (int rep = 0; rep < 100; ++rep) {
            const bool realcase = rep % 2 == 0;
            const Matrix a = realcase ? make_real(random_gaussian_real(rng, r, c))
                                      : make_complex(random_gaussian_complex(rng, r, c));
            const Matrix p = pseudo_inverse(a);
            REQUIRE(p.rows() == c);
            REQUIRE(p.cols() == r);
            if (realcase) CHECK(p.field == FieldTag::Real);
            const double scale = 1e-8 * std::max(1.0, svd(a).singular_values[0]);
            const Eigen::MatrixXcd apa = a.values * p.values * a.values;
            const Eigen::MatrixXcd pap = p.values * a.values * p.values;
            const Eigen::MatrixXcd ap = a.values * p.values;
            const Eigen::MatrixXcd pa = p.values * a.values;
            CHECK((apa - a.values).norm() < scale);
            CHECK((pap - p.values).norm() < scale);
            CHECK((ap - ap.adjoint()).norm() < scale);
            CHECK((pa - pa.adjoint()).norm() < scale);
        }
    }
}

TEST_CASE("complement basis spans what the columns miss") {
    std::mt19937_64 rng(31337);
    for (int rep = 0; rep < 50; ++rep) {
        const int d = 2 + static_cast<int>(rng() % 5);
        const int n = 1 + static_cast<int>(rng() % 6);
        const Matrix a = make_complex(random_gaussian_complex(rng, d, n));
        const int rank = numeric_rank(a);
        const Matrix w = orthonormal_complement_basis(a);
        REQUIRE(w.cols() == d - rank);
        // Orthonormal columns, orthogonal to the range.
        const Eigen::MatrixXcd gram = w.values.adjoint() * w.values;
        CHECK((gram - Eigen::MatrixXcd::Identity(w.cols(), w.cols())).norm() < 1e-10);
        CHECK((w.values.adjoint() * a.values).norm() < 1e-10);
    }
}

TEST_CASE("defect rank of projections and the identity") {
    const Matrix id = real_mat({{1, 0}, {0, 1}});
    CHECK(defect_rank(id) == 0);
    CHECK(defect_rank(real_mat({{1, 0}, {0, 0}})) == 1);
    CHECK(defect_rank(real_mat({{0, 0}, {0, 0}})) == 2);
    const Matrix tall{Eigen::MatrixXcd::Zero(3, 2), FieldTag::Complex};
    CHECK_THROWS_AS(defect_rank(tall), InvalidInput);
}

TEST_CASE("reduced minimum modulus skips the noise floor") {
    CHECK(reduced_minimum_modulus(svd(real_mat({{3, 0, 0}, {0, 2, 0}, {0, 0, 1e-30}}))) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(reduced_minimum_modulus(svd(real_mat({{3, 0}, {0, 2}}))) ==
          doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("field tags and tolerance policies are validated") {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = std::complex<double>(1.0, 0.5);
    CHECK_THROWS_AS(make_complex(m, FieldTag::Real), InvalidInput);

    TolerancePolicy bad;
    bad.rank_rtol = 0.0;
    CHECK_THROWS_AS(validate(bad), InvalidInput);
    bad = {};
    bad.abs_floor = -1.0;
    CHECK_THROWS_AS(validate(bad), InvalidInput);
    bad = {};
    bad.stabilization_rtol = 0.0;
    CHECK_THROWS_AS(validate(bad), InvalidInput);

    Eigen::MatrixXcd nan_mat(1, 1);
    nan_mat(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(svd(make_complex(nan_mat)), InvalidInput);
}
