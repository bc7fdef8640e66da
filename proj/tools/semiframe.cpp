// semiframe - classify families, run transform sweeps and invariant suites.
//
//   semiframe analyze   --gallery exp --g inv_x --b 0.5 --levels 5
//   semiframe analyze   --family pair.json
//   semiframe transform --gallery en_from_2 --metric
//   semiframe verify    --module lattice --dim 8
//   semiframe gallery list
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cli.hpp"
#include "semiframe/errors.hpp"

using namespace semiframe;
using namespace semiframe::cli;

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out, csv;
    std::optional<std::string> gallery, family, g, weight, symbol, fn_g, fn_h;
    std::optional<double> b;
    std::optional<int> n, levels;
    std::optional<Index> ambient, dim;
    std::optional<std::vector<double>> sizes, k, m;
    std::optional<std::vector<std::string>> modules;
    bool metric = false;
    bool perturb = false;
};

void add_case_options(CLI::App* sub, Flags& f) {
    sub->add_option("--gallery", f.gallery, "gallery case name (see `gallery list`)");
    sub->add_option("--family", f.family, "family JSON file");
    sub->add_option("--g", f.g, "exp symbol: one, inv_x, x, smooth");
    sub->add_option("--b", f.b, "exp frequency spacing in (0, 1]");
    sub->add_option("--weight", f.weight, "rkhs weight: const2, one_plus_x, inv_x");
    sub->add_option("--n", f.n, "rkhs power");
    sub->add_option("--symbol", f.symbol, "sphere symbol: one, one_plus_l2, inv_one_plus_l");
    sub->add_option("--ambient", f.ambient, "rank_one_bessel ambient dimension");
    sub->add_option("--levels", f.levels, "number of scan levels");
    sub->add_option("--sizes", f.sizes, "explicit scan level sizes")->delimiter(',');
}

template <class T, class U>
void override(const std::optional<T>& flag, U& target) {
    if (flag) target = *flag;
}

RunConfig build_config(const Flags& f) {
    RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
    apply_environment(c);
    override(f.seed, c.seed);
    override(f.out, c.out);
    override(f.csv, c.csv);
    override(f.gallery, c.gallery);
    override(f.family, c.family);
    override(f.g, c.params.g);
    override(f.b, c.params.b);
    override(f.weight, c.params.weight);
    override(f.n, c.params.n);
    override(f.symbol, c.params.symbol);
    override(f.ambient, c.params.ambient);
    override(f.levels, c.params.levels);
    override(f.sizes, c.params.sizes);
    override(f.k, c.k_grid);
    override(f.m, c.m_grid);
    override(f.fn_g, c.fn_g);
    override(f.fn_h, c.fn_h);
    override(f.modules, c.modules);
    override(f.dim, c.dim);
    if (f.metric) c.metric = true;
    if (f.perturb) c.perturb = true;
    // Re-validate the merged configuration through the parser.
    return parse_config(emit_config(c));
}

bool is_config_error(const Error& e) {
    return dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const UnknownGalleryCase*>(&e) ||
           dynamic_cast<const InconsistentScan*>(&e) || dynamic_cast<const InvalidB*>(&e) ||
           dynamic_cast<const WeightBelowOne*>(&e) || dynamic_cast<const NonpositiveSymbol*>(&e) ||
           dynamic_cast<const InvalidGrid*>(&e);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiframe: frames, semi-frames and their transforms in finite truncations"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--config", f.config, "key = value configuration file; flags override it");
    app.add_option("--seed", f.seed, "probe seed (SEMIFRAME_SEED also overrides the config file)");
    app.add_option("--out", f.out, "write the JSON report here instead of stdout");
    app.add_option("--csv", f.csv, "prefix for CSV sidecars");

    auto* analyze = app.add_subcommand("analyze", "classify a family over its truncation scan");
    add_case_options(analyze, f);

    auto* transform = app.add_subcommand("transform", "T^{-k} / g(T) sweeps and metric transformability");
    add_case_options(transform, f);
    transform->add_option("--k", f.k, "k grid")->delimiter(',');
    transform->add_option("--m", f.m, "m grid")->delimiter(',');
    transform->add_flag("--metric", f.metric, "decide metric transformability instead of the sweep");
    transform->add_option("--fn-g", f.fn_g, "g for the general transform: one, id, sqrt, one_plus_id, pow:<a>");
    transform->add_option("--fn-h", f.fn_h, "h for the general transform");

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("--module", f.modules, "suite name (repeatable)");
    verify->add_option("--dim", f.dim, "ambient dimension of the random cases");
    verify->add_flag("--perturb", f.perturb, "shift one reference entry by 1e-3 (the suite must fail)");

    auto* gallery = app.add_subcommand("gallery", "gallery cases");
    auto* list = gallery->add_subcommand("list", "list the gallery cases");
    gallery->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (list->parsed()) {
            for (const auto& e : gallery_list()) std::cout << e.name << "\t" << e.description << "\n";
            return kOk;
        }
        const RunConfig config = build_config(f);
        Report rep;
        if (analyze->parsed())
            rep = cmd_analyze(config);
        else if (transform->parsed())
            rep = cmd_transform(config);
        else
            rep = cmd_verify(config);
        const int code = rep.exit_code;
        write_report(std::move(rep), config);
        if (code != kOk) std::cerr << "semiframe: checks failed (see report)\n";
        return code;
    } catch (const Error& e) {
        std::cerr << "semiframe: " << e.what() << "\n";
        return is_config_error(e) ? kConfigError : kFailure;
    } catch (const std::exception& e) {
        std::cerr << "semiframe: " << e.what() << "\n";
        return kFailure;
    }
}
