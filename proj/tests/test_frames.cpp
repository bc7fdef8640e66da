#include <doctest.h>

#include <cmath>

#include "semiframe/frames.hpp"

using namespace semiframe;

namespace {

VectorFamily c2_pair() {
    Mat v(2, 2);
    v << 1, 1, 1, -1;
    return VectorFamily(MeasureGrid::counting(2), v);
}

VectorFamily random_family(std::uint64_t seed, Index dim, Index n) {
    Rng rng(seed);
    std::vector<std::string> labels;
    std::vector<double> w;
    for (Index i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        w.push_back(rng.uniform(0.1, 3.0));
    }
    return VectorFamily(MeasureGrid(labels, w), rng.matrix(dim, n));
}

TruncationScan diagonal_scan(const std::function<double(Index, Index)>& entry, std::vector<Index> sizes) {
    std::vector<ScanLevel> levels;
    for (Index n : sizes) {
        Mat v = Mat::Zero(n, n);
        for (Index i = 0; i < n; ++i) v(i, i) = entry(i, n);
        levels.push_back({static_cast<double>(n), VectorFamily(MeasureGrid::counting(n), v)});
    }
    return TruncationScan(levels);
}

}  // namespace

TEST_CASE("measure grids") {
    const MeasureGrid g = MeasureGrid::midpoints(0.0, 2.0, 4);
    CHECK(g.size() == 4);
    CHECK(g.weights()[0] == doctest::Approx(0.5));
    CHECK(std::stod(g.labels()[0]) == doctest::Approx(0.25));
    CHECK(std::stod(g.labels()[3]) == doctest::Approx(1.75));
    CHECK_THROWS_AS(MeasureGrid({"a", "b"}, {1.0, 0.0}), InvalidGrid);
    CHECK_THROWS_AS(MeasureGrid({"a"}, {1.0, 2.0}), InvalidGrid);
    CHECK(g.same_as(MeasureGrid::midpoints(0.0, 2.0, 4)));
    CHECK_FALSE(g.same_as(MeasureGrid::counting(4)));
}

TEST_CASE("two vectors in C^2 have bounds (2, 2)") {
    const VectorFamily f = c2_pair();
    const SymOp s = frame_operator(f);
    CHECK((s.matrix() - 2.0 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
    const FrameBounds b = frame_bounds(f);
    CHECK(b.lower == doctest::Approx(2.0));
    CHECK(b.upper == doctest::Approx(2.0));
    CHECK(classify(f).verdict == Verdict::Frame);
}

TEST_CASE("frame operator equals the weighted rank-one sum") {
    const VectorFamily f = random_family(21, 5, 9);
    Mat naive = Mat::Zero(5, 5);
    for (Index i = 0; i < f.size(); ++i)
        for (Index r = 0; r < 5; ++r)
            for (Index c = 0; c < 5; ++c)
                naive(r, c) += f.grid().weights()[static_cast<std::size_t>(i)] * f.vectors()(r, i) *
                               std::conj(f.vectors()(c, i));
    CHECK((frame_operator(f).matrix() - naive).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("energy, analysis and synthesis") {
    const VectorFamily f = random_family(22, 4, 7);
    Rng rng(1);
    const Vec x = rng.vector(4);
    double naive = 0;
    for (Index i = 0; i < f.size(); ++i)
        naive += f.grid().weights()[static_cast<std::size_t>(i)] * std::norm(inner(x, f.vector(i)));
    CHECK(energy(f, x) == doctest::Approx(naive).epsilon(1e-12));

    const AnalysisOp c = analysis(f);
    CHECK(c(x).squaredNorm() == doctest::Approx(naive).epsilon(1e-12));
    // Synthesis is the adjoint: <C x, a> = <x, C* a>.
    const Vec a = rng.vector(7);
    CHECK(std::abs(inner(c(x), a) - inner(x, synthesis(c, a))) < 1e-12);
    CHECK_THROWS_AS(synthesis(c, rng.vector(3)), DimensionMismatch);
}

TEST_CASE("mixed operator") {
    // psi = 2 phi gives S_{psi,phi} = 2 S.
    const VectorFamily phi = random_family(23, 3, 5);
    const VectorFamily psi = phi.scaled(2.0);
    CHECK((mixed_operator(psi, phi) - 2.0 * frame_operator(phi).matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(mixed_operator(random_family(1, 3, 4), phi), GridMismatch);
    // <S f, g> = sum w <f, psi><phi, g>
    Rng rng(2);
    const VectorFamily other = phi.with_vectors(rng.matrix(3, 5));
    const Vec f = rng.vector(3), g = rng.vector(3);
    cplx sum = 0;
    for (Index i = 0; i < 5; ++i)
        sum += phi.grid().weights()[static_cast<std::size_t>(i)] * inner(f, other.vector(i)) * inner(phi.vector(i), g);
    CHECK(std::abs(inner(Vec(mixed_operator(other, phi) * f), g) - sum) < 1e-12);
}

TEST_CASE("duality of a basis with itself") {
    const VectorFamily onb(MeasureGrid::counting(4), Mat::Identity(4, 4));
    CHECK(check_duality(onb, onb) < 1e-15);
    CHECK(check_duality(onb, onb.scaled(2.0)) == doctest::Approx(1.0));
    CHECK(omega_bound(onb, onb.scaled(3.0)) == doctest::Approx(12.0));
}

TEST_CASE("divergence fits") {
    const std::vector<double> r = {10, 20, 40, 80, 160};
    std::vector<double> sq, flat;
    for (double x : r) {
        sq.push_back(x * x);
        flat.push_back(3.0 + 1.0 / x);
    }
    const DivergenceFit a = fit_divergence(r, sq, kUpperDivergence);
    CHECK(a.slope == doctest::Approx(2.0));
    CHECK(a.ratio == doctest::Approx(256.0));
    CHECK(a.diverging);
    CHECK_FALSE(fit_divergence(r, flat, kUpperDivergence).diverging);
    // Too few levels never diverge.
    CHECK_FALSE(fit_divergence({1, 10, 100}, {1, 100, 10000}, kUpperDivergence).diverging);
}

TEST_CASE("classification of diagonal scans") {
    const auto sizes = std::vector<Index>{4, 8, 16, 32, 64};
    SUBCASE("orthonormal basis") {
        const auto c = classify(diagonal_scan([](Index, Index) { return 1.0; }, sizes));
        CHECK(c.verdict == Verdict::ParsevalFrame);
        CHECK(c.trajectory.size() == 5);
    }
    SUBCASE("e_n / n") {
        const auto c = classify(diagonal_scan([](Index i, Index) { return 1.0 / double(i + 1); }, sizes));
        CHECK(c.verdict == Verdict::UpperSemiFrame);
        CHECK(c.trajectory.back().lower == doctest::Approx(1.0 / (64.0 * 64.0)));
        CHECK(c.lower_fit.slope == doctest::Approx(2.0));
    }
    SUBCASE("sqrt(n) e_n") {
        const auto c = classify(
            diagonal_scan([](Index i, Index) { return std::sqrt(double(i + 1)); }, std::vector<Index>{4, 16, 64, 256, 512}));
        CHECK(c.verdict == Verdict::ProperLowerSemiFrame);
        CHECK(c.upper_fit.slope == doctest::Approx(1.0));
    }
    SUBCASE("n e_n with 1/n e_n interleaved") {
        const auto c = classify(
            diagonal_scan([](Index i, Index) { return i % 2 ? double(i + 1) : 1.0 / double(i + 1); }, sizes));
        CHECK(c.verdict == Verdict::None);
    }
    SUBCASE("bounded above and below") {
        const auto c = classify(diagonal_scan([](Index i, Index) { return 1.0 + 1.0 / double(i + 1); }, sizes));
        CHECK(c.verdict == Verdict::Frame);
    }
}

TEST_CASE("not total yields a witness") {
    Mat v = Mat::Zero(3, 2);
    v(1, 0) = 1.0;
    v(2, 1) = 1.0;
    const Classification c = classify(VectorFamily(MeasureGrid::counting(2), v));
    CHECK(c.verdict == Verdict::NotTotal);
    REQUIRE(c.null_witness.has_value());
    CHECK(std::abs(std::abs((*c.null_witness)(0)) - 1.0) < 1e-12);
}

TEST_CASE("scans must increase") {
    const VectorFamily f = c2_pair();
    CHECK_THROWS_AS(TruncationScan({{2.0, f}, {2.0, f}}), InconsistentScan);
    CHECK_THROWS_AS(TruncationScan({{0.0, f}}), InconsistentScan);
    CHECK_THROWS_AS(TruncationScan(std::vector<ScanLevel>{}), InconsistentScan);
}

TEST_CASE("verdict names round trip") {
    for (Verdict v : {Verdict::Frame, Verdict::ParsevalFrame, Verdict::BesselOnly, Verdict::UpperSemiFrame,
                      Verdict::ProperLowerSemiFrame, Verdict::NotTotal, Verdict::None})
        CHECK(verdict_from_string(to_string(v)) == v);
    CHECK_THROWS_AS(verdict_from_string("Nope"), ConfigError);
}

TEST_CASE("spectral norm") {
    Mat m(2, 2);
    m << 3, 0, 4, 0;
    CHECK(spectral_norm(m) == doctest::Approx(5.0));
}
