/*
 * transforms.hpp - transforms of a family by spectral functions of T_phi,
 * read in weighted Hilbert spaces built from T_phi itself.
 *
 * For psi = T^{-k} phi and the weighted norm |f|_m = |T^m f| the energy is
 *
 *     sum_i w_i |<f, psi_i>_m|^2 = |T^{2m-k+1/2} f|^2,
 *
 * so the weighted frame ratio on an eigenvector with eigenvalue t is
 * t^{2(m-k+1/2)}. When T is unbounded (its truncation spectrum diverges) and
 * bounded below, T^{-k} phi is Bessel in H(T^m) iff k >= m + 1/2, a lower
 * semi-frame iff m <= k <= m + 1/2, and a frame iff k = m + 1/2, in which
 * case it is Parseval.
 *
 * The general form replaces T^{-k} by g~(T) = 1/g(T) and T^m by h(T):
 *
 *     sum_i w_i |<f, g~(T) phi_i>_h|^2 = |(h^2 g~ i^{1/2})(T) f|^2,   i(t) = t.
 *
 * Bessel iff i^{1/2} h <= const * g, lower semi-frame iff g <= const * i^{1/2} h,
 * frame iff both. Being a frame does not force Parseval in this form: the
 * ratio is Parseval only when g = i^{1/2} h on the spectrum, so Parseval is
 * predicted from that pointwise identity instead of from the dominance alone.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semiframe/genframe.hpp"

namespace semiframe {

struct WeightSpec {
    enum class Kind { Power, Fn };
    Kind kind = Kind::Power;
    double m = 0.0;
    std::optional<SpectralFn> h;

    static WeightSpec power(double m);
    static WeightSpec fn(SpectralFn h);
    std::string label() const;
};

// T^m or h(T) on H_phi. For Fn weights both h and 1/h must be finite on the
// spectrum of T (HypothesisViolated otherwise).
SymOp weight_operator(const GenFrameOp& gf, const WeightSpec& w);

// {T^{-k} phi_x}; k = 0 returns the family unchanged.
VectorFamily power_transform(const VectorFamily& family, const GenFrameOp& gf, double k);
// {g~(T) phi_x} with g~ = 1/g.
VectorFamily fn_transform(const VectorFamily& family, const GenFrameOp& gf, const SpectralFn& g);

// sum_i w_i |<W f, W psi_i>|^2 with W the weight operator.
double weighted_energy(const VectorFamily& family, const GenFrameOp& gf, const WeightSpec& w, const Vec& f);

// Optimal frame bounds of `family` in the weighted norm |W f| on H_phi:
// eigenvalues of W S W restricted to H_phi.
FrameBounds weighted_frame_bounds(const VectorFamily& family, const GenFrameOp& gf, const WeightSpec& w);

struct FrameProperties {
    bool bessel = false;
    bool lower_semiframe = false;
    bool frame = false;
    bool parseval = false;

    bool operator==(const FrameProperties&) const = default;
};

struct TransformLevel {
    double resolution = 0.0;
    double lower = 0.0;      // measured weighted bounds
    double upper = 0.0;
    double ratio_min = 0.0;  // min / max of the spectral ratio on the spectrum of T
    double ratio_max = 0.0;
};

struct TransformVerdict {
    FrameProperties measured;   // from weighted frame bounds of the transformed family
    FrameProperties predicted;  // from the iff conditions
    bool agree = false;
    bool theorem_applies = false;  // base T bounded below and unbounded above across the scan
    std::vector<TransformLevel> levels;
    DivergenceFit measured_upper_fit;
    DivergenceFit measured_lower_fit;
    std::vector<std::string> notes;
};

// |k - m - 1/2| below this counts as equality.
inline constexpr double kTauK = 1e-12;

// Requires k >= m >= 0 (HypothesisViolated otherwise). Uses the scan to
// decide unboundedness of the weighted bounds.
TransformVerdict classify_transform(const TruncationScan& scan, double k, double m);
TransformVerdict classify_transform(const VectorFamily& family, double k, double m);

struct FnTransformVerdict : TransformVerdict {
    double gamma_h_g = 0.0;        // sup h/g (hypothesis h <= gamma g)
    double gamma_bessel = 0.0;     // sup i^{1/2} h / g
    double gamma_lower = 0.0;      // sup g / (i^{1/2} h)
};

// Requires the hypotheses h <= const * g and g~ bounded on the scanned spectra
// (HypothesisViolated otherwise).
FnTransformVerdict classify_fn_transform(const TruncationScan& scan, const SpectralFn& g, const SpectralFn& h);

// ---- metric transformability ------------------------------------------------

struct MetricLevelCheck {
    double resolution = 0.0;
    double lower = 0.0;  // frame bounds of G phi
    double upper = 0.0;
    bool parseval = false;
    double range_residual = 0.0;  // max_x |T y - phi_x| / |phi_x| for the pseudo-inverse solution
};

struct MetricReport {
    bool total = false;
    bool bessel = false;
    bool dense_domain = false;
    bool lower_semiframe = false;
    bool in_range = false;
    std::vector<std::string> clauses;  // every clause whose hypotheses hold, e.g. "ii"
    std::string decisive;              // clause that settles the question
    bool transformable = false;        // a metric operator G was constructed
    std::optional<SymOp> metric;       // G = T^{-1/2} at the last level
    std::vector<MetricLevelCheck> levels;
    std::vector<double> outside_domain_energy;  // sum w |<e, phi>|^2 for a unit e outside the domain
    DivergenceFit outside_domain_fit;
    std::string open_question;
    std::vector<std::string> notes;
};

MetricReport metric_transformability(const TruncationScan& scan);

struct BiorthogonalResult {
    VectorFamily onb;
    double gram_residual = 0.0;         // max |<u_n, u_m> - delta_nm|
    double intertwining_residual = 0.0; // max |T psi_n - phi_n|
    double biorthogonality_residual = 0.0;
};

// Counting-measure sequences only. Returns {T^{-1/2} phi_n}.
BiorthogonalResult biorthogonal_to_onb(const VectorFamily& phi, const VectorFamily& psi);

}  // namespace semiframe
