#include <doctest.h>

#include <cmath>

#include "semiframe/hilbert.hpp"
#include "semiframe/probes.hpp"

using namespace semiframe;

namespace {

Mat mat2(cplx a, cplx b, cplx c, cplx d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("inner product is linear in the first argument") {
    Vec e1 = Vec::Zero(2);
    e1(0) = 1.0;
    const cplx i(0.0, 1.0);
    CHECK(std::abs(inner(i * e1, e1) - i) < 1e-15);
    CHECK(std::abs(inner(e1, i * e1) + i) < 1e-15);

    Rng rng(3);
    const Vec f = rng.vector(5), g = rng.vector(5);
    const cplx a(2.0, -1.5);
    CHECK(std::abs(inner(a * f, g) - a * inner(f, g)) < 1e-12);
    CHECK(std::abs(inner(f, g) - std::conj(inner(g, f))) < 1e-12);
}

TEST_CASE("2x2 eigendecomposition by hand") {
    // [[2,1],[1,2]] has eigenvalues 1 and 3 with eigenvectors (1,-1)/sqrt2, (1,1)/sqrt2.
    const SymOp a(mat2(2, 1, 1, 2));
    CHECK(a.lambda_min() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.lambda_max() == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::abs(std::abs(a.eigenvectors()(0, 1)) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(a.orthonormality_residual() < 1e-14);
    CHECK(a.reconstruction_residual() < 1e-14);
    CHECK(a.norm() == doctest::Approx(3.0));
}

TEST_CASE("square root by hand") {
    const SymOp a(mat2(2, 1, 1, 2));
    const SymOp r = fn_calculus(a, SpectralFn::power(0.5));
    const double s3 = std::sqrt(3.0);
    const Mat expected = 0.5 * mat2(1 + s3, s3 - 1, s3 - 1, 1 + s3);
    CHECK((r.matrix() - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("complex Hermitian input") {
    const cplx i(0.0, 1.0);
    // [[1, i],[-i, 1]] has eigenvalues 0 and 2.
    const SymOp a(mat2(1, i, -i, 1));
    CHECK(std::abs(a.lambda_min()) < 1e-14);
    CHECK(a.lambda_max() == doctest::Approx(2.0));
    CHECK_THROWS_AS(SymOp(mat2(1, i, i, 1)), NotHermitian);
    CHECK_THROWS_AS(SymOp(mat2(1, 2, 0, 1)), NotHermitian);
}

TEST_CASE("diagonal input keeps exact eigenvalues") {
    RVec d(3);
    d << 5.0, 0.25, 2.0;
    const SymOp a = SymOp::diagonal(d);
    CHECK(a.eigenvalues()(0) == 0.25);
    CHECK(a.eigenvalues()(1) == 2.0);
    CHECK(a.eigenvalues()(2) == 5.0);
    const SymOp inv = fn_calculus(a, SpectralFn::power(-1.0));
    CHECK(inv.matrix()(0, 0).real() == doctest::Approx(0.2));
    CHECK(inv.matrix()(1, 1).real() == doctest::Approx(4.0));
    CHECK(inv.matrix()(0, 1) == cplx(0.0));
}

TEST_CASE("functional calculus preconditions") {
    RVec d(2);
    d << -1.0, 1.0;
    CHECK_THROWS_AS(fn_calculus(SymOp::diagonal(d), SpectralFn::power(0.5)), NotPositive);
    // fn_calculus_unchecked accepts functions defined everywhere.
    const SymOp sq = fn_calculus_unchecked(SymOp::diagonal(d), {[](double t) { return t * t; }, "t^2"});
    CHECK(sq.lambda_min() == doctest::Approx(1.0));

    d << 0.0, 1.0;
    CHECK_THROWS_AS(fn_calculus(SymOp::diagonal(d), SpectralFn::power(-1.0)), SingularCalculus);
    // t^0 is the constant 1, also at t = 0.
    const SymOp p0 = fn_calculus(SymOp::diagonal(d), SpectralFn::power(0.0));
    CHECK((p0.matrix() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("functional calculus is multiplicative") {
    Rng rng(11);
    const SymOp a(rng.positive_definite(7, 0.2, 5.0));
    const SymOp x = fn_calculus(a, SpectralFn::power(0.3));
    const SymOp y = fn_calculus(a, SpectralFn::power(0.9));
    const SymOp xy = fn_calculus(a, SpectralFn::power(0.3) * SpectralFn::power(0.9));
    CHECK((x.matrix() * y.matrix() - xy.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    const SymOp id = fn_calculus(a, SpectralFn::identity());
    CHECK((id.matrix() - a.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    const SymOp rec = fn_calculus(a, SpectralFn::identity().reciprocal());
    CHECK((rec.matrix() * a.matrix() - Mat::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("weighted inner product") {
    RVec d(2);
    d << 4.0, 9.0;
    const SymOp base = SymOp::diagonal(d);
    Vec f(2), g(2);
    f << 1.0, 1.0;
    g << 1.0, cplx(0.0, 1.0);
    // <T^{1/2} f, T^{1/2} g> = 4 * 1 + 9 * conj(i) = 4 - 9i
    CHECK(std::abs(inner_weighted(f, g, base, SpectralFn::power(0.5)) - cplx(4.0, -9.0)) < 1e-12);
}

TEST_CASE("positive definite sampler pins the spectrum") {
    Rng rng(5);
    const SymOp a(rng.positive_definite(6, 0.5, 8.0));
    CHECK(a.lambda_min() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(a.lambda_max() == doctest::Approx(8.0).epsilon(1e-10));
    const Mat u = rng.unitary(6);
    CHECK((u.adjoint() * u - Mat::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("probe set is seeded") {
    const auto a = probe_set(4, 99);
    const auto b = probe_set(4, 99);
    const auto c = probe_set(4, 100);
    REQUIRE(a.size() == 4 + kRandomProbes);
    CHECK((a[10] - b[10]).norm() == 0.0);
    CHECK((a[10] - c[10]).norm() > 0.0);
    CHECK(a[0](0) == cplx(1.0));
    CHECK(a[7].norm() == doctest::Approx(1.0));
}

TEST_CASE("ambient space") {
    CHECK_THROWS_AS(AmbientSpace(0), DimensionMismatch);
    CHECK(AmbientSpace(3).contains(Vec::Zero(3)));
    CHECK_FALSE(AmbientSpace(3).contains(Vec::Zero(2)));
}
