/*
 * lattice.hpp - metric operators and the Hilbert spaces they generate.
 *
 * A metric operator G is strictly positive and self-adjoint. It generates
 * nine normed spaces, all carried by the same finite-dimensional vectors:
 *
 *     meet        H(G) ^ H(G^-1)       |f|^2 = <(G + G^-1) f, f>
 *     R_{G^-1}    H ^ H(G^-1)          |f|^2 = <(I + G^-1) f, f>
 *     R_G         H ^ H(G)             |f|^2 = <(I + G) f, f>
 *     G^-1        H(G^-1)              |f|^2 = |G^{-1/2} f|^2
 *     H                                |f|^2
 *     G           H(G)                 |f|^2 = |G^{1/2} f|^2
 *     R_G^-1      H + H(G^-1)          inductive (infimal splitting) norm
 *     R_{G^-1}^-1 H + H(G)             inductive
 *     join        H(G) + H(G^-1)       inductive
 *
 * Inductive norms are computed by minimizing |f1|_A^2 + |f2|_B^2 over
 * f = f1 + f2, which is a two-block quadratic problem solved through its
 * normal equations (A + B) f2 = A f.
 */
#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "semiframe/hilbert.hpp"
#include "semiframe/probes.hpp"

namespace semiframe {

class MetricOp {
public:
    // Throws NotPositive unless lambda_min > tol::null * lambda_max.
    explicit MetricOp(SymOp op);
    explicit MetricOp(const Mat& m) : MetricOp(SymOp(m)) {}

    const SymOp& op() const { return op_; }
    Index dim() const { return op_.dim(); }
    bool at_least_one() const { return op_.lambda_min() >= 1.0 - 1e-12; }

    SymOp power(double a) const { return fn_calculus(op_, SpectralFn::power(a)); }

private:
    SymOp op_;
};

// |(I + G)^{1/2} f|
double rg_norm(const MetricOp& g, const Vec& f);
// | rg_norm^2 - |f|^2 - |G^{1/2} f|^2 | / rg_norm^2
double rg_identity_residual(const MetricOp& g, const Vec& f);

enum class LatticeNode {
    Meet,
    RGinv,   // H(R_{G^-1})
    RG,      // H(R_G)
    Ginv,    // H(G^-1)
    H,
    G,       // H(G)
    RGdual,  // H(R_G^-1) = H + H(G^-1)
    RGinvDual,  // H(R_{G^-1}^-1) = H + H(G)
    Join,
};

inline constexpr std::size_t kLatticeNodes = 9;
std::string_view to_string(LatticeNode n);

struct LatticeEdge {
    LatticeNode from;
    LatticeNode to;
};

// The twelve continuous embeddings of the lattice diagram.
const std::array<LatticeEdge, 12>& lattice_edges();

// Gram matrices N with |f|^2 = <N f, f> for every node, the inductive ones
// obtained in closed form (A^-1 + B^-1)^-1.
std::array<Mat, kLatticeNodes> lattice_grams(const MetricOp& g);

// The nine norms of f; inductive norms via the least-squares splitting.
std::array<double, kLatticeNodes> lattice_norms(const MetricOp& g, const Vec& f);

// Inductive norm of f in A + B, minimizing |f1|_A^2 + |f2|_B^2 over f = f1 + f2.
double inductive_norm(const Mat& a_gram, const Mat& b_gram, const Vec& f);

struct EdgeCheck {
    LatticeEdge edge;
    double constant = 0.0;     // optimal c with |f|_to <= c |f|_from
    double worst_probe = 0.0;  // max over probes of |f|_to / |f|_from
    bool holds = false;
};

std::vector<EdgeCheck> check_lattice_edges(const MetricOp& g, std::uint64_t seed = kDefaultSeed, int probes = 100);

// Dual-pairing check: inductive norm of H + H(G^-1) against |(I + G)^{-1/2} f|.
double join_duality_residual(const MetricOp& g, const Vec& f);

// max over ordered pairs of nodes and probes of |f|_a / |f|_b.
double max_pairwise_ratio(const MetricOp& g, std::uint64_t seed = kDefaultSeed, int probes = 100);

// ---- Hilbert scale ---------------------------------------------------------

class ScaleSpace {
public:
    enum class Variant { Power, Graph };

    // Power norm |G^{alpha/2} f| when G >= 1, graph norm otherwise.
    ScaleSpace(MetricOp base, double alpha);
    ScaleSpace(MetricOp base, double alpha, Variant variant);

    double alpha() const { return alpha_; }
    Variant variant() const { return variant_; }
    double norm(const Vec& f) const;

private:
    MetricOp base_;
    double alpha_;
    Variant variant_;
    SymOp root_;
};

// Max over probes and n in [n_from, n_to] of
//   | |G^{1/2} f|_{n-1} - |f|_n | / |f|_n  and  | |G f|_{n-2} - |f|_n | / |f|_n
// with power norms.
double scale_unitarity(const MetricOp& g, int n_from, int n_to, std::uint64_t seed = kDefaultSeed);

struct ClosedMetrics {
    MetricOp g1;  // I + S*S
    MetricOp g2;  // (I + S*S)^-1
    double g1_lambda_min = 0.0;
    double g2_norm = 0.0;
    double inverse_residual = 0.0;  // max |G1 f| |G2 G1 f - f|
    double triplet_violation = 0.0; // max violation of the four triplet inequalities
};

ClosedMetrics build_metric_from_closed(const Mat& s, std::uint64_t seed = kDefaultSeed);

// ---- similarity ------------------------------------------------------------

inline constexpr double kTauSim = 1e-9;
inline constexpr double kSpectrumTol = 1e-7;

struct SimilarityReport {
    double residual = 0.0;  // |B T - T A|_F / (|A|_F |T|)
    bool similar = false;
    double spectrum_distance = 0.0;  // multiset distance of eigenvalues when similar
    bool spectra_match = false;
};

SimilarityReport similarity_check(const Mat& a, const Mat& b, const MetricOp& t);

// Greedy nearest matching of two eigenvalue multisets; returns the largest
// matched distance.
double spectrum_distance(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);

}  // namespace semiframe
