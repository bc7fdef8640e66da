// cli.hpp - run configuration, family files and the command implementations
// behind the semiframe executable.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semiframe/frames.hpp"
#include "semiframe/gallery.hpp"

namespace semiframe::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "semiframe";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2 };

// Every field is a key of the config file; see README for the schema.
struct RunConfig {
    std::string gallery;       // gallery case name
    std::string family;        // path of a family JSON file
    GalleryParams params;
    std::uint64_t seed = kDefaultSeed;
    std::vector<double> k_grid = {0.0, 0.5, 1.0, 1.5, 2.0};
    std::vector<double> m_grid = {0.0, 0.5, 1.0};
    bool metric = false;
    std::string fn_g;          // spectral function specs for the (g, h) transform
    std::string fn_h;
    std::vector<std::string> modules;
    Index dim = 6;
    bool perturb = false;
    std::string out;           // JSON report path; stdout when empty
    std::string csv;           // prefix of CSV sidecars; none when empty

    bool operator==(const RunConfig& o) const;
};

// key = value lines, '#' starts a comment. Throws ConfigError naming the line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& config);

// Applies SEMIFRAME_SEED when set.
void apply_environment(RunConfig& config);

// "one", "id", "sqrt", "one_plus_id", "pow:<a>".
SpectralFn parse_spectral_fn(const std::string& spec);

// {dim, points, weights, vectors: [[[re, im], ...], ...], domain?}
VectorFamily load_family(const std::string& path);
VectorFamily family_from_json(const json& j);
json family_to_json(const VectorFamily& family);

struct Report {
    json body;
    std::map<std::string, std::string> csv;  // sidecar suffix -> contents
    int exit_code = kOk;
};

Report cmd_analyze(const RunConfig& config);
Report cmd_transform(const RunConfig& config);
Report cmd_verify(const RunConfig& config);
Report cmd_gallery_list();

// The report without its timestamp, serialized; equal for identical runs.
std::string deterministic_payload(const Report& report);

// Adds the timestamp and writes JSON (to config.out or stdout) and sidecars.
void write_report(Report report, const RunConfig& config);

}  // namespace semiframe::cli
