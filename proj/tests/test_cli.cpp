#include <doctest.h>

#include <cstdlib>

#include "cli.hpp"

using namespace semiframe;
using namespace semiframe::cli;

TEST_CASE("config round trip") {
    RunConfig c;
    c.gallery = "exp";
    c.params.g = "inv_x";
    c.params.b = 0.3;
    c.params.n = -2;
    c.params.sizes = {8, 24.5, 1e3};
    c.seed = 18446744073709551615ull;
    c.k_grid = {0.1, 1.0 / 3.0};
    c.m_grid = {};
    c.metric = true;
    c.fn_g = "pow:0.5";
    c.modules = {"lattice", "frames"};
    c.dim = 11;
    c.perturb = true;
    c.out = "r.json";
    CHECK(parse_config(emit_config(c)) == c);
    CHECK(parse_config(emit_config(RunConfig{})) == RunConfig{});
    CHECK_FALSE(parse_config(emit_config(c)) == RunConfig{});
}

TEST_CASE("config parsing") {
    const RunConfig c = parse_config("# comment\n\n gallery = sphere  # trailing\nlevels=3\nk = 0, 0.5\n");
    CHECK(c.gallery == "sphere");
    CHECK(c.params.levels == 3);
    CHECK(c.k_grid == std::vector<double>{0.0, 0.5});

    auto message = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("gallery = exp\nwhat = 1\n").find("line 2") != std::string::npos);
    CHECK(message("b = abc\n").find("(b)") != std::string::npos);
    CHECK(message("no equals\n").find("line 1") != std::string::npos);
    CHECK(message("sizes = 4, 2\n").find("increasing") != std::string::npos);
    CHECK(message("metric = maybe\n").find("boolean") != std::string::npos);
}

TEST_CASE("seed from the environment") {
    RunConfig c;
    setenv("SEMIFRAME_SEED", "1234", 1);
    apply_environment(c);
    unsetenv("SEMIFRAME_SEED");
    CHECK(c.seed == 1234);
}

TEST_CASE("spectral function specs") {
    CHECK(parse_spectral_fn("sqrt")(4.0) == doctest::Approx(2.0));
    CHECK(parse_spectral_fn("pow:-1")(4.0) == doctest::Approx(0.25));
    CHECK(parse_spectral_fn("one_plus_id")(4.0) == doctest::Approx(5.0));
    CHECK_THROWS_AS(parse_spectral_fn("cos"), ConfigError);
}

TEST_CASE("family files") {
    const VectorFamily f = load_family(std::string(SEMIFRAME_TEST_DATA) + "/c2_pair.json");
    CHECK(f.dim() == 2);
    CHECK(f.size() == 2);
    CHECK(f.vectors()(1, 1) == cplx(-1.0));
    const VectorFamily g = family_from_json(family_to_json(f));
    CHECK((g.vectors() - f.vectors()).norm() == 0.0);

    Mat dom = Mat::Zero(2, 1);
    dom(0, 0) = cplx(0.0, 1.0);
    const VectorFamily h(f.grid(), f.vectors(), dom);
    const VectorFamily h2 = family_from_json(family_to_json(h));
    REQUIRE(h2.domain().has_value());
    CHECK((*h2.domain() - dom).norm() == 0.0);

    CHECK_THROWS_AS(family_from_json(json::parse(R"({"dim": 2})")), ConfigError);
    CHECK_THROWS_AS(family_from_json(json::parse(R"({"dim": 1, "points": ["a"], "weights": [1],
        "vectors": [[[1, 0], [2, 0]]]})")),
                    ConfigError);
    CHECK_THROWS_AS(load_family("/nonexistent.json"), ConfigError);
}

TEST_CASE("analyze a family file") {
    RunConfig c;
    c.family = std::string(SEMIFRAME_TEST_DATA) + "/c2_pair.json";
    const Report r = cmd_analyze(c);
    CHECK(r.exit_code == kOk);
    CHECK(r.body["frame_bounds"]["lower"].get<double>() == doctest::Approx(2.0));
    CHECK(r.body["frame_bounds"]["upper"].get<double>() == doctest::Approx(2.0));
    CHECK(r.body["measured"]["verdict"] == "Frame");
    CHECK(r.body["seed"] == kDefaultSeed);
    CHECK(r.csv.count("trajectory") == 1);
}

TEST_CASE("analyze gallery cases") {
    RunConfig c;
    c.gallery = "exp";
    c.params.g = "inv_x";
    c.params.b = 0.5;
    c.params.levels = 5;
    const Report r = cmd_analyze(c);
    CHECK(r.body["measured"]["verdict"] == "ProperLowerSemiFrame");
    CHECK(r.body["measured"]["upper_fit"]["slope"].get<double>() >= 0.5);
    CHECK(r.body["agree"] == true);

    c.gallery = "nope";
    CHECK_THROWS_AS(cmd_analyze(c), UnknownGalleryCase);
    c.gallery = "";
    CHECK_THROWS_AS(cmd_analyze(c), ConfigError);
}

TEST_CASE("transform reports") {
    RunConfig c;
    c.gallery = "en_from_2";
    c.metric = true;
    const Report m = cmd_transform(c);
    CHECK(m.body["metric"]["decisive"] == "ii");
    CHECK(m.exit_code == kOk);

    c.gallery = "exp";
    c.metric = false;
    c.k_grid = {0.5 + 1e-13};
    c.m_grid = {0.0};
    const Report s = cmd_transform(c);
    REQUIRE(s.body["sweep"].size() == 1);
    CHECK(s.body["sweep"][0]["measured"]["parseval"] == true);
    CHECK(std::abs(s.body["sweep"][0]["lower"].get<double>() - 1.0) <= 1e-8);
    CHECK(std::abs(s.body["sweep"][0]["upper"].get<double>() - 1.0) <= 1e-8);
    CHECK(s.body["agreement"]["fraction"].get<double>() == 1.0);
}

TEST_CASE("verify reports") {
    RunConfig c;
    c.modules = {"lattice"};
    c.dim = 8;
    const Report a = cmd_verify(c);
    CHECK(a.exit_code == kOk);
    CHECK(deterministic_payload(a) == deterministic_payload(cmd_verify(c)));

    c.perturb = true;
    c.modules = {"frames"};
    const Report p = cmd_verify(c);
    CHECK(p.exit_code == kFailure);
    CHECK(p.body["failures"][0] == "frames.frame_operator_rank_one_sum");

    c.modules = {"nope"};
    CHECK_THROWS_AS(cmd_verify(c), ConfigError);
}

TEST_CASE("timestamp is the only nondeterministic field") {
    Report r = cmd_gallery_list();
    const std::string before = deterministic_payload(r);
    r.body["timestamp"] = "2000-01-01T00:00:00Z";
    CHECK(deterministic_payload(r) == before);
}
