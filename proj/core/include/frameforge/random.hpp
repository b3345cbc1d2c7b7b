#pragma once

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <random>

#include <Eigen/Dense>

namespace frameforge {

// Seed for randomized checks: FRAMEFORGE_SEED when set, else the fallback.
inline std::uint64_t env_seed(std::uint64_t fallback = 0) {
    if (const char* raw = std::getenv("FRAMEFORGE_SEED")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(raw, &end, 10);
        if (end != raw && *end == '\0') return static_cast<std::uint64_t>(parsed);
    }
    return fallback;
}

inline Eigen::MatrixXd random_gaussian_real(std::mt19937_64& rng, Eigen::Index rows,
                                            Eigen::Index cols) {
    std::normal_distribution<double> norm;
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = norm(rng);
    }
    return m;
}

inline Eigen::MatrixXcd random_gaussian_complex(std::mt19937_64& rng, Eigen::Index rows,
                                                Eigen::Index cols) {
    std::normal_distribution<double> norm;
    Eigen::MatrixXcd m(rows, cols);
    const double scale = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = std::complex<double>(norm(rng), norm(rng)) * scale;
        }
    }
    return m;
}

// Haar-like unitary: QR of a Gaussian matrix with the phase convention that
// makes the R diagonal real positive.
inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, Eigen::Index n) {
    const Eigen::MatrixXcd g = random_gaussian_complex(rng, n, n);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        const std::complex<double> diag = r(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) q.col(j) *= diag / mag;
    }
    return q;
}

}  // namespace frameforge
