/*
 * verify.hpp - invariant suites run by the `verify` command and the tests.
 *
 * Each suite evaluates the identities of one module on seeded random data
 * and reports the worst residual against its tolerance. With `perturb` set,
 * one matrix entry of a reference operator is shifted by 1e-3 before
 * comparison so that the named invariant fails.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semiframe/hilbert.hpp"
#include "semiframe/probes.hpp"

namespace semiframe {

struct InvariantResult {
    std::string module;
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    std::vector<std::string> modules;  // empty runs every suite
    Index dim = 6;
    std::uint64_t seed = kDefaultSeed;
    bool perturb = false;
};

struct VerifyReport {
    std::vector<InvariantResult> results;
    bool all_pass() const;
    std::vector<std::string> failures() const;
};

const std::vector<std::string>& verify_modules();

// Throws ConfigError for an unknown module name or dim < 2.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace semiframe
