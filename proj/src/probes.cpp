#include "semiframe/probes.hpp"

namespace semiframe {

Mat Rng::unitary(Index dim) {
    Eigen::HouseholderQR<Mat> qr(matrix(dim, dim));
    Mat q = qr.householderQ();
    // Fix column phases so the distribution does not depend on QR sign conventions.
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < dim; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

Mat Rng::positive_definite(Index dim, double lo, double hi) {
    const Mat u = unitary(dim);
    RVec d(dim);
    for (Index i = 0; i < dim; ++i) d(i) = uniform(lo, hi);
    if (dim > 1) {
        d(0) = lo;
        d(dim - 1) = hi;
    }
    Mat a = u * d.cast<cplx>().asDiagonal() * u.adjoint();
    return 0.5 * (a + a.adjoint());
}

std::vector<Vec> probe_set(Index dim, std::uint64_t seed, int random) {
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(dim + random));
    for (Index i = 0; i < dim; ++i) out.push_back(Vec::Unit(dim, i));
    Rng rng(seed);
    for (int k = 0; k < random; ++k) out.push_back(rng.unit_vector(dim));
    return out;
}

}  // namespace semiframe
