#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "semiframe/hilbert.hpp"

namespace semiframe {

inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr int kRandomProbes = 32;

// Deterministic source of complex Gaussian vectors and matrices.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double gaussian() { return normal_(engine_); }
    cplx complex_gaussian() { return {normal_(engine_), normal_(engine_)}; }

    Vec vector(Index dim) {
        Vec v(dim);
        for (Index i = 0; i < dim; ++i) v(i) = complex_gaussian();
        return v;
    }
    Vec unit_vector(Index dim) {
        Vec v = vector(dim);
        return v / v.norm();
    }
    Mat matrix(Index rows, Index cols) {
        Mat m(rows, cols);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian();
        return m;
    }
    // Hermitian positive definite with spectrum in [lo, hi].
    Mat positive_definite(Index dim, double lo, double hi);
    // Random unitary via QR of a Gaussian matrix.
    Mat unitary(Index dim);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// Standard basis followed by `random` unit vectors drawn from `seed`.
std::vector<Vec> probe_set(Index dim, std::uint64_t seed = kDefaultSeed, int random = kRandomProbes);

}  // namespace semiframe
