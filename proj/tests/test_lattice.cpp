#include <doctest.h>

#include <cmath>

#include "semiframe/lattice.hpp"

using namespace semiframe;

namespace {

MetricOp scalar_metric(Index n, double c) { return MetricOp(SymOp::diagonal(RVec::Constant(n, c))); }

double node(const std::array<double, kLatticeNodes>& a, LatticeNode n) { return a[static_cast<std::size_t>(n)]; }

}  // namespace

TEST_CASE("metric operators are strictly positive") {
    RVec d(2);
    d << 0.0, 1.0;
    CHECK_THROWS_AS(MetricOp(SymOp::diagonal(d)), NotPositive);
    d << 1.0, 2.0;
    CHECK(MetricOp(SymOp::diagonal(d)).at_least_one());
    d << 0.5, 2.0;
    CHECK_FALSE(MetricOp(SymOp::diagonal(d)).at_least_one());
}

TEST_CASE("nine norms for G = 4 I by hand") {
    const MetricOp g = scalar_metric(3, 4.0);
    Vec f = Vec::Zero(3);
    f(0) = 1.0;
    const auto n = lattice_norms(g, f);
    CHECK(node(n, LatticeNode::H) == doctest::Approx(1.0));
    CHECK(node(n, LatticeNode::G) == doctest::Approx(2.0));
    CHECK(node(n, LatticeNode::Ginv) == doctest::Approx(0.5));
    CHECK(node(n, LatticeNode::RG) == doctest::Approx(std::sqrt(5.0)));
    CHECK(node(n, LatticeNode::RGinv) == doctest::Approx(std::sqrt(1.25)));
    CHECK(node(n, LatticeNode::Meet) == doctest::Approx(std::sqrt(4.25)));
    // Sums: (a^-1 + b^-1)^-1 for scalar grams a, b.
    CHECK(node(n, LatticeNode::RGdual) == doctest::Approx(std::sqrt(1.0 / 5.0)));
    CHECK(node(n, LatticeNode::RGinvDual) == doctest::Approx(std::sqrt(4.0 / 5.0)));
    CHECK(node(n, LatticeNode::Join) == doctest::Approx(std::sqrt(4.0 / 17.0)));
}

TEST_CASE("inductive norm matches the closed form") {
    Rng rng(41);
    const Mat a = rng.positive_definite(5, 0.2, 4.0);
    const Mat b = rng.positive_definite(5, 0.1, 9.0);
    const Mat closed = (a.inverse() + b.inverse()).inverse();
    for (int i = 0; i < 10; ++i) {
        const Vec f = rng.vector(5);
        const double expected = std::sqrt(std::abs(inner(Vec(closed * f), f)));
        CHECK(inductive_norm(a, b, f) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("grams agree with norms") {
    Rng rng(42);
    const MetricOp g(SymOp(rng.positive_definite(4, 0.1, 10.0)));
    const auto grams = lattice_grams(g);
    const Vec f = rng.vector(4);
    const auto norms = lattice_norms(g, f);
    for (std::size_t i = 0; i < kLatticeNodes; ++i)
        CHECK(std::sqrt(std::abs(inner(Vec(grams[i] * f), f))) == doctest::Approx(norms[i]).epsilon(1e-10));
}

TEST_CASE("R_G identity and edges") {
    Rng rng(43);
    const MetricOp g(SymOp(rng.positive_definite(6, 0.01, 100.0)));
    for (int i = 0; i < 20; ++i) CHECK(rg_identity_residual(g, rng.vector(6)) < 1e-12);
    const auto edges = check_lattice_edges(g);
    CHECK(edges.size() == 12);
    for (const auto& e : edges) {
        CHECK(std::isfinite(e.constant));
        CHECK(e.holds);
        CHECK(e.worst_probe <= e.constant * (1 + 1e-10));
    }
    CHECK(std::isfinite(max_pairwise_ratio(g)));
    CHECK(join_duality_residual(g, rng.vector(6)) < 1e-10);
}

TEST_CASE("edge constants for G = 9 I") {
    const MetricOp g = scalar_metric(2, 9.0);
    for (const auto& e : check_lattice_edges(g)) {
        if (e.edge.from == LatticeNode::G && e.edge.to == LatticeNode::H) CHECK(e.constant == doctest::Approx(1.0 / 3.0));
        if (e.edge.from == LatticeNode::Meet && e.edge.to == LatticeNode::RG)
            CHECK(e.constant == doctest::Approx(std::sqrt(10.0 / (9.0 + 1.0 / 9.0))));
    }
}

TEST_CASE("scale spaces") {
    Rng rng(44);
    const MetricOp g(SymOp(rng.positive_definite(5, 1.0, 6.0)));
    CHECK(scale_unitarity(g, -3, 3) < 1e-10);
    const ScaleSpace s(g, 2.0);
    CHECK(s.variant() == ScaleSpace::Variant::Power);
    const Vec f = rng.vector(5);
    CHECK(s.norm(f) == doctest::Approx((g.op().matrix() * f).norm()));
    const MetricOp small(SymOp(rng.positive_definite(5, 0.1, 6.0)));
    CHECK(ScaleSpace(small, 1.0).variant() == ScaleSpace::Variant::Graph);
}

TEST_CASE("metrics from a closed operator") {
    Rng rng(45);
    const ClosedMetrics cm = build_metric_from_closed(rng.matrix(5, 5));
    CHECK(cm.g1_lambda_min >= 1.0 - 1e-12);
    CHECK(cm.g2_norm <= 1.0 + 1e-12);
    CHECK(cm.inverse_residual < 1e-9);
    CHECK(cm.triplet_violation <= 1e-10);
}

TEST_CASE("similarity") {
    Rng rng(46);
    const Mat tm = rng.positive_definite(6, 0.5, 2.0);
    const MetricOp t(SymOp{tm});
    const Mat a = rng.matrix(6, 6);
    const SimilarityReport yes = similarity_check(a, tm * a * tm.inverse(), t);
    CHECK(yes.similar);
    CHECK(yes.spectra_match);
    CHECK(yes.spectrum_distance < 1e-9);
    const SimilarityReport no = similarity_check(a, a + Mat::Identity(6, 6), t);
    CHECK_FALSE(no.similar);
}

TEST_CASE("spectrum distance by hand") {
    Eigen::VectorXcd x(3), y(3);
    x << 1.0, 2.0, cplx(0, 1);
    y << cplx(0, 1), 2.5, 1.0;
    CHECK(spectrum_distance(x, y) == doctest::Approx(0.5));
    CHECK(spectrum_distance(x, x) == 0.0);
}
