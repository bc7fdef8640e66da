/*
 * frames.hpp - discretized weakly measurable families and their operators.
 *
 * The index space (X, mu) is replaced by a finite grid of points x_i with
 * positive quadrature weights w_i, so every integral over X becomes
 *
 *     int_X F(x) dmu(x)  ~  sum_i w_i F(x_i).
 *
 * A VectorFamily stores the vectors phi_{x_i} as the columns of a dim x n
 * matrix. The analysis operator has rows sqrt(w_i) * conj(phi_i), so that
 * ||C f||^2 is exactly the quadrature form of int |<f, phi_x>|^2 dmu.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semiframe/hilbert.hpp"
#include "semiframe/probes.hpp"

namespace semiframe {

class MeasureGrid {
public:
    MeasureGrid(std::vector<std::string> labels, std::vector<double> weights);

    // n points labelled 0..n-1 with unit weights.
    static MeasureGrid counting(Index n);
    // Midpoints of n equal cells of (a, b), weight (b - a) / n each.
    static MeasureGrid midpoints(double a, double b, Index n);

    Index size() const { return static_cast<Index>(weights_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& weights() const { return weights_; }
    RVec weight_vector() const;

    bool same_as(const MeasureGrid& other) const;

private:
    std::vector<std::string> labels_;
    std::vector<double> weights_;
};

class VectorFamily {
public:
    // `vectors` is dim x grid.size(); column i is phi_{x_i}. `domain`, when
    // present, is a dim x d spanning set of the (declared) closure of D(C_phi).
    VectorFamily(MeasureGrid grid, Mat vectors, std::optional<Mat> domain = std::nullopt);

    Index size() const { return vectors_.cols(); }
    Index dim() const { return vectors_.rows(); }
    AmbientSpace space() const { return AmbientSpace(dim()); }
    const MeasureGrid& grid() const { return grid_; }
    const Mat& vectors() const { return vectors_; }
    Vec vector(Index i) const { return vectors_.col(i); }
    const std::optional<Mat>& domain() const { return domain_; }
    bool has_proper_domain() const { return domain_.has_value() && domain_->cols() < dim(); }

    // Same grid and domain, new vectors.
    VectorFamily with_vectors(Mat vectors) const;
    VectorFamily scaled(double c) const;

private:
    MeasureGrid grid_;
    Mat vectors_;
    std::optional<Mat> domain_;
};

struct AnalysisOp {
    Mat matrix;         // grid.size() x dim
    RVec sqrt_weights;  // sqrt(w_i)

    Vec operator()(const Vec& f) const;
};

AnalysisOp analysis(const VectorFamily& family);

// C* a = sum_i sqrt(w_i) a_i phi_i, the adjoint of the analysis operator.
Vec synthesis(const AnalysisOp& c, const Vec& coeff);

// sum_i w_i |<f, phi_i>|^2
double energy(const VectorFamily& family, const Vec& f);

// S = C* C = sum_i w_i phi_i phi_i*.
SymOp frame_operator(const VectorFamily& family);

// The operator of the mixed form <S f, g> = sum_i w_i <f, psi_i><phi_i, g>,
// i.e. S_{psi,phi} = Phi W Psi*.
Mat mixed_operator(const VectorFamily& psi, const VectorFamily& phi);

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
    Vec attained_low;
    Vec attained_high;
};

FrameBounds frame_bounds(const SymOp& s);
FrameBounds frame_bounds(const VectorFamily& family);

// ---- truncation scans and classification ----------------------------------

struct ScanLevel {
    double resolution;  // refinement parameter of the level (grid size, N, L, ...)
    VectorFamily family;
};

class TruncationScan {
public:
    // Throws InconsistentScan unless resolutions are strictly increasing.
    explicit TruncationScan(std::vector<ScanLevel> levels);

    static TruncationScan single(VectorFamily family);

    std::size_t size() const { return levels_.size(); }
    const std::vector<ScanLevel>& levels() const { return levels_; }
    const ScanLevel& last() const { return levels_.back(); }
    std::vector<double> resolutions() const;

private:
    std::vector<ScanLevel> levels_;
};

// A bound trajectory "diverges" when the least-squares slope of log(value)
// against log(resolution) is at least min_slope over at least min_levels
// levels and value_last / value_first >= min_ratio.
struct DivergenceRule {
    double min_slope = 0.5;
    std::size_t min_levels = 4;
    double min_ratio = 1e2;
};

inline constexpr DivergenceRule kUpperDivergence{0.5, 4, 1e2};
// Lower bounds are tested on 1 / lower with a one-decade ratio.
inline constexpr DivergenceRule kLowerDecay{0.5, 4, 1e1};

struct DivergenceFit {
    double slope = 0.0;
    double ratio = 1.0;
    std::size_t levels = 0;
    bool diverging = false;
};

DivergenceFit fit_divergence(const std::vector<double>& resolutions, const std::vector<double>& values,
                             const DivergenceRule& rule);

enum class Verdict { Frame, ParsevalFrame, BesselOnly, UpperSemiFrame, ProperLowerSemiFrame, NotTotal, None };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

struct LevelBounds {
    double resolution = 0.0;
    Index size = 0;
    Index dim = 0;
    double lower = 0.0;
    double upper = 0.0;
    bool total = false;
};

struct Classification {
    Verdict verdict = Verdict::None;
    std::vector<LevelBounds> trajectory;
    DivergenceFit upper_fit;
    DivergenceFit lower_fit;
    std::optional<Vec> null_witness;
    std::vector<std::string> notes;
};

bool is_total(const SymOp& s);

Classification classify(const VectorFamily& family);
Classification classify(const TruncationScan& scan);

// max over probe pairs of |<f,g> - sum_i w_i <f,phi_i><psi_i,g>| / (|f||g|).
double check_duality(const VectorFamily& phi, const VectorFamily& psi, std::uint64_t seed = kDefaultSeed);

// sum_i w_i ||phi_i|| ||psi_i||, a bound on ||S_{psi,phi}||.
double omega_bound(const VectorFamily& phi, const VectorFamily& psi);

// Largest singular value.
double spectral_norm(const Mat& m);

}  // namespace semiframe
