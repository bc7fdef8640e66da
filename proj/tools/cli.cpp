#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "semiframe/errors.hpp"
#include "semiframe/genframe.hpp"
#include "semiframe/transforms.hpp"
#include "semiframe/verify.hpp"

namespace semiframe::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string num(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <class T>
T parse_number(const std::string& text, const std::string& where) {
    T v{};
    const auto t = trim(text);
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (r.ec != std::errc() || r.ptr != t.data() + t.size() || t.empty())
        throw ConfigError(where + ": '" + text + "' is not a valid number");
    return v;
}

std::vector<double> parse_doubles(const std::string& s, const std::string& where) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(parse_number<double>(item, where));
    return out;
}

bool parse_bool(const std::string& s, const std::string& where) {
    const auto t = trim(s);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError(where + ": '" + s + "' is not a boolean");
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        if constexpr (std::is_same_v<T, std::string>)
            out += v[i];
        else
            out += num(v[i]);
    }
    return out;
}

json fit_json(const DivergenceFit& f) {
    return {{"slope", f.slope}, {"ratio", f.ratio}, {"levels", f.levels}, {"diverging", f.diverging}};
}

json props_json(const FrameProperties& p) {
    return {{"bessel", p.bessel}, {"lower_semiframe", p.lower_semiframe}, {"frame", p.frame}, {"parseval", p.parseval}};
}

json config_json(const RunConfig& c) {
    json j = json::object();
    std::istringstream in(emit_config(c));
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        j[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return j;
}

json header(const std::string& command, const RunConfig& c) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["seed"] = c.seed;
    j["config"] = config_json(c);
    return j;
}

struct LoadedCase {
    std::string name;
    std::string description;
    TruncationScan scan;
    std::optional<GalleryCase> gallery;
};

LoadedCase load_case(const RunConfig& c) {
    if (!c.gallery.empty() && !c.family.empty()) throw ConfigError("give either gallery or family, not both");
    if (!c.family.empty()) {
        VectorFamily fam = load_family(c.family);
        return {c.family, "family file", TruncationScan::single(std::move(fam)), std::nullopt};
    }
    if (c.gallery.empty()) throw ConfigError("no case given: set gallery or family");
    GalleryCase gc = make_case(c.gallery, c.params);
    LoadedCase lc{gc.name, gc.description, gc.scan, std::nullopt};
    lc.gallery = std::move(gc);
    return lc;
}

json residuals_json(const RunConfig& c, const LoadedCase& lc) {
    json r = json::object();
    if (!lc.gallery) return r;
    const auto& last = lc.scan.last();
    const Index n = static_cast<Index>(last.resolution);
    if (c.gallery == "exp") {
        const NamedFn g = exp_symbol(c.params.g);
        if (c.params.g != "inv_x") r["symbol_error"] = exponential_symbol_error(g, c.params.b, n);
        r["power_residual_k1"] = exponential_power_residual(g, c.params.b, n, 1.0);
    } else if (c.gallery == "rkhs") {
        const NamedFn m = rkhs_weight(c.params.weight);
        const RkhsCheck rc = check_rkhs(rkhs_level(m, c.params.n, n), m, c.params.n);
        r["reproducing_pair"] = rc.reproducing_residual;
        r["multiplication"] = rc.multiplication_residual;
        r["tight_lower"] = rc.tight_bounds.lower;
        r["tight_upper"] = rc.tight_bounds.upper;
    } else if (c.gallery == "sphere") {
        const GenFrameOp gf = build_genframe(last.family);
        const FrameBounds tb = frame_bounds(canonical_tight(gf, last.family));
        r["tight_lower"] = tb.lower;
        r["tight_upper"] = tb.upper;
    }
    return r;
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

// ---- configuration -------------------------------------------------------------

bool RunConfig::operator==(const RunConfig& o) const { return emit_config(*this) == emit_config(o); }

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "config line " + std::to_string(line_no);
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string at = where + " (" + key + ")";

        if (key == "gallery") c.gallery = value;
        else if (key == "family") c.family = value;
        else if (key == "g") c.params.g = value;
        else if (key == "b") c.params.b = parse_number<double>(value, at);
        else if (key == "weight") c.params.weight = value;
        else if (key == "n") c.params.n = parse_number<int>(value, at);
        else if (key == "symbol") c.params.symbol = value;
        else if (key == "ambient") c.params.ambient = parse_number<Index>(value, at);
        else if (key == "levels") c.params.levels = parse_number<int>(value, at);
        else if (key == "sizes") c.params.sizes = parse_doubles(value, at);
        else if (key == "seed") c.seed = parse_number<std::uint64_t>(value, at);
        else if (key == "k") c.k_grid = parse_doubles(value, at);
        else if (key == "m") c.m_grid = parse_doubles(value, at);
        else if (key == "metric") c.metric = parse_bool(value, at);
        else if (key == "fn_g") c.fn_g = value;
        else if (key == "fn_h") c.fn_h = value;
        else if (key == "modules") c.modules = split_list(value);
        else if (key == "dim") c.dim = parse_number<Index>(value, at);
        else if (key == "perturb") c.perturb = parse_bool(value, at);
        else if (key == "out") c.out = value;
        else if (key == "csv") c.csv = value;
        else throw ConfigError(where + ": unknown key '" + key + "'");
    }
    for (std::size_t i = 1; i < c.params.sizes.size(); ++i)
        if (!(c.params.sizes[i] > c.params.sizes[i - 1]))
            throw ConfigError("config: sizes must be strictly increasing");
    if (c.params.levels < 1) throw ConfigError("config: levels must be at least 1");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const RunConfig& c) {
    std::ostringstream o;
    o << "gallery = " << c.gallery << "\n";
    o << "family = " << c.family << "\n";
    o << "g = " << c.params.g << "\n";
    o << "b = " << num(c.params.b) << "\n";
    o << "weight = " << c.params.weight << "\n";
    o << "n = " << c.params.n << "\n";
    o << "symbol = " << c.params.symbol << "\n";
    o << "ambient = " << c.params.ambient << "\n";
    o << "levels = " << c.params.levels << "\n";
    o << "sizes = " << join(c.params.sizes) << "\n";
    o << "seed = " << c.seed << "\n";
    o << "k = " << join(c.k_grid) << "\n";
    o << "m = " << join(c.m_grid) << "\n";
    o << "metric = " << (c.metric ? "true" : "false") << "\n";
    o << "fn_g = " << c.fn_g << "\n";
    o << "fn_h = " << c.fn_h << "\n";
    o << "modules = " << join(c.modules) << "\n";
    o << "dim = " << c.dim << "\n";
    o << "perturb = " << (c.perturb ? "true" : "false") << "\n";
    o << "out = " << c.out << "\n";
    o << "csv = " << c.csv << "\n";
    return o.str();
}

void apply_environment(RunConfig& c) {
    if (const char* s = std::getenv("SEMIFRAME_SEED"))
        c.seed = parse_number<std::uint64_t>(s, "SEMIFRAME_SEED");
}

SpectralFn parse_spectral_fn(const std::string& spec) {
    if (spec == "one") return SpectralFn::constant(1.0);
    if (spec == "id") return SpectralFn::identity();
    if (spec == "sqrt") return SpectralFn::power(0.5);
    if (spec == "one_plus_id") return {[](double t) { return 1.0 + t; }, "1+t"};
    if (spec.rfind("pow:", 0) == 0) return SpectralFn::power(parse_number<double>(spec.substr(4), "spectral function"));
    throw ConfigError("unknown spectral function '" + spec + "' (one, id, sqrt, one_plus_id, pow:<a>)");
}

// ---- family files --------------------------------------------------------------

namespace {

Mat columns_from_json(const json& list, Index dim, const char* what) {
    if (!list.is_array()) throw ConfigError(std::string("family file: ") + what + " must be an array");
    Mat m(dim, static_cast<Index>(list.size()));
    for (std::size_t c = 0; c < list.size(); ++c) {
        const json& v = list[c];
        if (!v.is_array() || static_cast<Index>(v.size()) != dim)
            throw ConfigError(std::string("family file: ") + what + "[" + std::to_string(c) + "] must have dim entries");
        for (Index i = 0; i < dim; ++i) {
            const json& z = v[static_cast<std::size_t>(i)];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw ConfigError(std::string("family file: ") + what + "[" + std::to_string(c) + "][" +
                                  std::to_string(i) + "] must be [re, im]");
            m(i, static_cast<Index>(c)) = cplx(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

json columns_to_json(const Mat& m) {
    json list = json::array();
    for (Index c = 0; c < m.cols(); ++c) {
        json v = json::array();
        for (Index i = 0; i < m.rows(); ++i) v.push_back({m(i, c).real(), m(i, c).imag()});
        list.push_back(v);
    }
    return list;
}

}  // namespace

VectorFamily family_from_json(const json& j) {
    try {
        const Index dim = j.at("dim").get<Index>();
        if (dim < 1) throw ConfigError("family file: dim must be positive");
        auto points = j.at("points").get<std::vector<std::string>>();
        auto weights = j.at("weights").get<std::vector<double>>();
        Mat vectors = columns_from_json(j.at("vectors"), dim, "vectors");
        if (points.size() != weights.size() || static_cast<Index>(points.size()) != vectors.cols())
            throw ConfigError("family file: points, weights and vectors must have equal length");
        std::optional<Mat> domain;
        if (j.contains("domain") && !j["domain"].is_null()) domain = columns_from_json(j["domain"], dim, "domain");
        return VectorFamily(MeasureGrid(std::move(points), std::move(weights)), std::move(vectors), std::move(domain));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("family file: ") + e.what());
    } catch (const InvalidGrid& e) {
        throw ConfigError(std::string("family file: ") + e.what());
    }
}

VectorFamily load_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read family file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("family file '" + path + "': " + e.what());
    }
    return family_from_json(j);
}

json family_to_json(const VectorFamily& f) {
    json j;
    j["dim"] = f.dim();
    j["points"] = f.grid().labels();
    j["weights"] = f.grid().weights();
    j["vectors"] = columns_to_json(f.vectors());
    if (f.domain()) j["domain"] = columns_to_json(*f.domain());
    return j;
}

// ---- commands ------------------------------------------------------------------

Report cmd_analyze(const RunConfig& c) {
    const LoadedCase lc = load_case(c);
    const Classification cls = classify(lc.scan);

    Report rep;
    json& j = rep.body;
    j = header("analyze", c);
    j["case"] = {{"name", lc.name}, {"description", lc.description}};
    if (lc.gallery) j["case"]["notes"] = lc.gallery->notes;

    j["measured"] = {{"verdict", to_string(cls.verdict)},
                     {"upper_fit", fit_json(cls.upper_fit)},
                     {"lower_fit", fit_json(cls.lower_fit)},
                     {"notes", cls.notes}};
    if (lc.gallery) {
        const bool agree = lc.gallery->predicted == cls.verdict;
        j["predicted"] = to_string(lc.gallery->predicted);
        j["agree"] = agree;
        if (!agree) rep.exit_code = kFailure;
    } else {
        j["predicted"] = nullptr;
        j["agree"] = nullptr;
    }

    json traj = json::array();
    std::ostringstream csv;
    csv << "resolution,size,dim,lower,upper,total\n";
    for (const auto& l : cls.trajectory) {
        traj.push_back({{"resolution", l.resolution},
                        {"size", l.size},
                        {"dim", l.dim},
                        {"lower", l.lower},
                        {"upper", l.upper},
                        {"total", l.total}});
        csv << num(l.resolution) << "," << l.size << "," << l.dim << "," << num(l.lower) << "," << num(l.upper)
            << "," << (l.total ? 1 : 0) << "\n";
    }
    j["trajectory"] = traj;
    rep.csv["trajectory"] = csv.str();

    const auto& last = lc.scan.last().family;
    const FrameBounds fb = frame_bounds(last);
    j["frame_bounds"] = {{"lower", fb.lower}, {"upper", fb.upper}};

    const double m = fb.lower > 0 ? 0.5 * fb.lower : 1e-3 * std::max(fb.upper, 1.0);
    const LowerBoundReport p = lower_bound_certificate(last, m, c.seed);
    j["lower_bound_certificate"] = {{"m", p.m},
                                    {"lower", p.lower},
                                    {"frame_bound", p.lower_bound},
                                    {"form", p.form_bound},
                                    {"analysis", p.analysis_bound},
                                    {"operator", p.operator_bound},
                                    {"inverse", p.inverse_bound},
                                    {"consistent", p.consistent}};
    if (!p.consistent) rep.exit_code = kFailure;

    j["residuals"] = residuals_json(c, lc);
    return rep;
}

Report cmd_transform(const RunConfig& c) {
    const LoadedCase lc = load_case(c);
    Report rep;
    json& j = rep.body;
    j = header("transform", c);
    j["case"] = {{"name", lc.name}, {"description", lc.description}};

    if (c.metric) {
        const MetricReport r = metric_transformability(lc.scan);
        json levels = json::array();
        for (const auto& l : r.levels)
            levels.push_back({{"resolution", l.resolution},
                              {"lower", l.lower},
                              {"upper", l.upper},
                              {"parseval", l.parseval},
                              {"range_residual", l.range_residual}});
        j["metric"] = {{"total", r.total},
                       {"bessel", r.bessel},
                       {"dense_domain", r.dense_domain},
                       {"lower_semiframe", r.lower_semiframe},
                       {"in_range", r.in_range},
                       {"clauses", r.clauses},
                       {"decisive", r.decisive},
                       {"transformable", r.transformable},
                       {"levels", levels},
                       {"outside_domain_energy", r.outside_domain_energy},
                       {"open_question", r.open_question},
                       {"notes", r.notes}};
        if (lc.gallery && !lc.gallery->predicted_clause.empty()) {
            j["metric"]["predicted_clause"] = lc.gallery->predicted_clause;
            if (lc.gallery->predicted_clause != r.decisive) rep.exit_code = kFailure;
        }
        if (r.transformable)
            for (const auto& l : r.levels)
                if (!l.parseval) rep.exit_code = kFailure;
        return rep;
    }

    json sweep = json::array();
    std::ostringstream csv;
    csv << "k,m,measured_bessel,measured_lower,measured_frame,measured_parseval,"
           "predicted_bessel,predicted_lower,predicted_frame,predicted_parseval,agree\n";
    int total = 0;
    int agree = 0;
    for (double m : c.m_grid) {
        for (double k : c.k_grid) {
            if (k < m) continue;
            const TransformVerdict v = classify_transform(lc.scan, k, m);
            ++total;
            agree += v.agree ? 1 : 0;
            const auto& last = v.levels.back();
            sweep.push_back({{"k", k},
                             {"m", m},
                             {"measured", props_json(v.measured)},
                             {"predicted", props_json(v.predicted)},
                             {"agree", v.agree},
                             {"theorem_applies", v.theorem_applies},
                             {"lower", last.lower},
                             {"upper", last.upper},
                             {"notes", v.notes}});
            auto b = [](bool x) { return x ? 1 : 0; };
            csv << num(k) << "," << num(m) << "," << b(v.measured.bessel) << "," << b(v.measured.lower_semiframe)
                << "," << b(v.measured.frame) << "," << b(v.measured.parseval) << "," << b(v.predicted.bessel)
                << "," << b(v.predicted.lower_semiframe) << "," << b(v.predicted.frame) << ","
                << b(v.predicted.parseval) << "," << b(v.agree) << "\n";
        }
    }
    j["sweep"] = sweep;
    j["agreement"] = {{"agree", agree}, {"total", total}, {"fraction", total ? double(agree) / total : 1.0}};
    rep.csv["agreement"] = csv.str();
    if (agree != total) rep.exit_code = kFailure;

    if (!c.fn_g.empty() || !c.fn_h.empty()) {
        if (c.fn_g.empty() || c.fn_h.empty()) throw ConfigError("fn_g and fn_h must be given together");
        const FnTransformVerdict v =
            classify_fn_transform(lc.scan, parse_spectral_fn(c.fn_g), parse_spectral_fn(c.fn_h));
        j["fn_transform"] = {{"g", c.fn_g},
                             {"h", c.fn_h},
                             {"measured", props_json(v.measured)},
                             {"predicted", props_json(v.predicted)},
                             {"agree", v.agree},
                             {"gamma_h_g", v.gamma_h_g},
                             {"gamma_bessel", v.gamma_bessel},
                             {"gamma_lower", v.gamma_lower},
                             {"notes", v.notes}};
        if (!v.agree) rep.exit_code = kFailure;
    }
    return rep;
}

Report cmd_verify(const RunConfig& c) {
    VerifyOptions opt;
    opt.modules = c.modules;
    opt.dim = c.dim;
    opt.seed = c.seed;
    opt.perturb = c.perturb;
    const VerifyReport vr = run_verify(opt);

    Report rep;
    json& j = rep.body;
    j = header("verify", c);
    json inv = json::array();
    std::ostringstream csv;
    csv << "module,invariant,residual,tolerance,pass\n";
    for (const auto& r : vr.results) {
        inv.push_back({{"module", r.module},
                       {"invariant", r.name},
                       {"residual", r.residual},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
        csv << r.module << "," << r.name << "," << num(r.residual) << "," << num(r.tolerance) << ","
            << (r.pass ? 1 : 0) << "\n";
    }
    j["invariants"] = inv;
    j["passed"] = vr.all_pass();
    j["failures"] = vr.failures();
    rep.csv["invariants"] = csv.str();
    rep.exit_code = vr.all_pass() ? kOk : kFailure;
    return rep;
}

Report cmd_gallery_list() {
    Report rep;
    json cases = json::array();
    for (const auto& e : gallery_list()) cases.push_back({{"name", e.name}, {"description", e.description}});
    rep.body = {{"tool", kToolName}, {"version", kToolVersion}, {"command", "gallery list"}, {"cases", cases}};
    return rep;
}

std::string deterministic_payload(const Report& report) {
    json j = report.body;
    j.erase("timestamp");
    return j.dump(2);
}

void write_report(Report report, const RunConfig& c) {
    report.body["timestamp"] = timestamp_now();
    const std::string text = report.body.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.out);
        if (!out) throw ConfigError("cannot write report '" + c.out + "'");
        out << text;
    }
    if (!c.csv.empty()) {
        for (const auto& [suffix, body] : report.csv) {
            std::ofstream out(c.csv + "_" + suffix + ".csv");
            if (!out) throw ConfigError("cannot write CSV sidecar for '" + c.csv + "'");
            out << body;
        }
    }
}

}  // namespace semiframe::cli
