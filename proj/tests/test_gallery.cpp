#include <doctest.h>

#include <cmath>

#include "semiframe/gallery.hpp"
#include "semiframe/genframe.hpp"

using namespace semiframe;

TEST_CASE("exponentials with g = 1, b = 1 are an orthonormal basis") {
    const VectorFamily f = exponential_family(exp_symbol("one"), 1.0, 16);
    CHECK(f.size() == 16);
    CHECK((frame_operator(f).matrix() - Mat::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
    const Mat gram = f.vectors().adjoint() * f.vectors();
    CHECK((gram - Mat::Identity(16, 16)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("exponentials with b = 1/2 give T = 2 |g|^2") {
    const NamedFn g = exp_symbol("smooth");
    const VectorFamily f = exponential_family(g, 0.5, 12);
    CHECK(f.size() == 24);
    const Mat s = frame_operator(f).matrix();
    for (Index j = 0; j < 12; ++j) {
        const double x = (j + 0.5) / 12.0;
        CHECK(s(j, j).real() == doctest::Approx(2.0 * g.f(x) * g.f(x)).epsilon(1e-12));
    }
    CHECK((s - Mat(s.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("b outside (0, 1]") {
    CHECK_THROWS_AS(exponential_family(exp_symbol("one"), 0.0, 8), InvalidB);
    CHECK_THROWS_AS(exponential_family(exp_symbol("one"), 1.5, 8), InvalidB);
    GalleryParams p;
    p.b = -1.0;
    CHECK_THROWS_AS(make_case("exp", p), InvalidB);
}

TEST_CASE("symbol error decreases with refinement") {
    for (const char* name : {"one", "smooth", "x"}) {
        const NamedFn g = exp_symbol(name);
        double prev = INFINITY;
        for (Index n : {64, 128, 256, 512}) {
            const double e = exponential_symbol_error(g, 1.0, n);
            CHECK(e < prev);
            prev = e;
        }
        CHECK(prev <= 1e-3);
    }
}

TEST_CASE("T^{-k} acts by (b / |g|^2)^k") {
    const NamedFn g = exp_symbol("smooth");
    CHECK(exponential_power_residual(g, 1.0, 32, 1.0) < 1e-10);
    CHECK(exponential_power_residual(g, 0.5, 32, 0.5) < 1e-10);
    CHECK(exponential_power_residual(exp_symbol("inv_x"), 1.0, 32, 2.0) < 1e-10);
}

TEST_CASE("kernel scale") {
    SUBCASE("weight 2, n = 1 gives T = 4 I") {
        const NamedFn m = rkhs_weight("const2");
        const RkhsLevel lv = rkhs_level(m, 1, 10);
        CHECK((frame_operator(lv.phi).matrix() - 4.0 * Mat::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-12);
        const RkhsCheck rc = check_rkhs(lv, m, 1);
        CHECK(rc.tight_bounds.lower == doctest::Approx(1.0));
        CHECK(rc.tight_bounds.upper == doctest::Approx(1.0));
    }
    SUBCASE("reproducing pair for n in -2..2") {
        const NamedFn m = rkhs_weight("one_plus_x");
        for (int n = -2; n <= 2; ++n) {
            const RkhsCheck rc = check_rkhs(rkhs_level(m, n, 24), m, n);
            CHECK(rc.reproducing_residual <= 1e-10);
            CHECK(rc.multiplication_residual <= 1e-10);
            CHECK(rc.tight_bounds.lower == doctest::Approx(1.0));
        }
    }
    SUBCASE("weight must exceed one") {
        CHECK_THROWS_AS(rkhs_level(rkhs_weight("one"), 1, 8), WeightBelowOne);
        const NamedFn low{"half", [](double) { return 0.5; }};
        CHECK_THROWS_AS(rkhs_level(low, 1, 8), WeightBelowOne);
    }
    SUBCASE("n = 0 is the reproducing kernel frame") {
        GalleryParams p;
        p.n = 0;
        const GalleryCase c = make_case("rkhs", p);
        CHECK(c.predicted == Verdict::ParsevalFrame);
        CHECK(classify(c.scan).verdict == Verdict::ParsevalFrame);
    }
}

TEST_CASE("spherical symbol") {
    const VectorFamily f = spherical_family({1.0, 2.0, 3.0});
    CHECK(f.dim() == 9);
    const SymOp s = frame_operator(f);
    CHECK(s.lambda_min() == doctest::Approx(1.0));
    CHECK(s.lambda_max() == doctest::Approx(3.0));
    // multiplicity of s(2) = 3 is 5
    int count = 0;
    for (Index i = 0; i < 9; ++i) count += std::abs(s.eigenvalues()(i) - 3.0) < 1e-12;
    CHECK(count == 5);
    CHECK_THROWS_AS(spherical_family({1.0, 0.0}), NonpositiveSymbol);
    CHECK_THROWS_AS(spherical_family({1.0, -2.0}), NonpositiveSymbol);

    Rng rng(51);
    std::vector<double> sym;
    for (int l = 0; l < 8; ++l) sym.push_back(rng.uniform(0.01, 50.0));
    const VectorFamily g = spherical_family(sym);
    const FrameBounds tb = frame_bounds(canonical_tight(build_genframe(g), g));
    CHECK(std::abs(tb.lower - 1.0) <= tol::pars);
    CHECK(std::abs(tb.upper - 1.0) <= tol::pars);
}

TEST_CASE("pathological sequences") {
    const VectorFamily a = pathological_family(Pathology::E1PlusEn, 5);
    CHECK(a.size() == 4);
    CHECK(a.has_proper_domain());
    CHECK(a.vectors()(0, 2) == cplx(1.0));
    CHECK(a.vectors()(3, 2) == cplx(1.0));

    const VectorFamily b = pathological_family(Pathology::EnFrom2, 5);
    CHECK(energy(b, Vec::Unit(5, 0)) == 0.0);

    // Energy is the midpoint sum of x^{-0.8}, creeping up to 5; pointwise norms grow.
    const VectorFamily c = pathological_family(Pathology::RankOneBessel, 2000);
    double sum = 0.0;
    for (int i = 0; i < 2000; ++i) sum += std::pow((i + 0.5) / 2000.0, -0.8) / 2000.0;
    CHECK(frame_bounds(c).upper == doctest::Approx(sum).epsilon(1e-12));
    CHECK(frame_bounds(pathological_family(Pathology::RankOneBessel, 500)).upper < sum);
    CHECK(sum < 5.0);
    CHECK(c.vectors().col(0).norm() == doctest::Approx(std::pow(4000.0, 0.4)));
    CHECK(pathological_family(Pathology::RankOneBessel, 8, 3).dim() == 3);
}

TEST_CASE("every shipped case reproduces its prediction") {
    struct Item {
        std::string name;
        GalleryParams p;
    };
    std::vector<Item> items;
    for (const char* g : {"one", "inv_x", "x", "smooth"}) {
        for (double b : {1.0, 0.5}) {
            GalleryParams p;
            p.g = g;
            p.b = b;
            items.push_back({"exp", p});
        }
    }
    for (const char* w : {"const2", "one_plus_x", "inv_x"}) {
        for (int n : {-1, 0, 1}) {
            GalleryParams p;
            p.weight = w;
            p.n = n;
            items.push_back({"rkhs", p});
        }
    }
    for (const char* s : {"one", "one_plus_l2", "inv_one_plus_l"}) {
        GalleryParams p;
        p.symbol = s;
        items.push_back({"sphere", p});
    }
    for (const char* name : {"e1_plus_en", "en_from_2", "rank_one_bessel", "onb", "en_over_n"})
        items.push_back({name, {}});
    GalleryParams amb;
    amb.ambient = 3;
    items.push_back({"rank_one_bessel", amb});

    for (const auto& it : items) {
        const GalleryCase c = make_case(it.name, it.p);
        INFO(it.name << " " << c.description);
        CHECK(classify(c.scan).verdict == c.predicted);
        if (!c.predicted_clause.empty()) CHECK(metric_transformability(c.scan).decisive == c.predicted_clause);
    }
}

TEST_CASE("registry") {
    CHECK(gallery_list().size() >= 8);
    for (const auto& e : gallery_list()) CHECK_NOTHROW(make_case(e.name));
    CHECK_THROWS_AS(make_case("nope"), UnknownGalleryCase);
    CHECK_THROWS_AS(exp_symbol("nope"), ConfigError);
    CHECK(exp_default_sizes(4) == std::vector<double>{8, 24, 72, 216});
    GalleryParams p;
    p.sizes = {10, 5};
    CHECK_THROWS_AS(make_case("onb", p), InconsistentScan);
}
