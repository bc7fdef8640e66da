#include "semiframe/frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace semiframe {

MeasureGrid::MeasureGrid(std::vector<std::string> labels, std::vector<double> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
    if (labels_.size() != weights_.size())
        throw InvalidGrid("MeasureGrid: " + std::to_string(labels_.size()) + " labels but " +
                          std::to_string(weights_.size()) + " weights");
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
            throw InvalidGrid("MeasureGrid: weight " + std::to_string(i) + " is not positive");
}

MeasureGrid MeasureGrid::counting(Index n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return MeasureGrid(std::move(labels), std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

MeasureGrid MeasureGrid::midpoints(double a, double b, Index n) {
    std::vector<std::string> labels;
    std::vector<double> weights;
    const double h = (b - a) / static_cast<double>(n);
    for (Index i = 0; i < n; ++i) {
        std::ostringstream s;
        s.precision(17);
        s << a + (static_cast<double>(i) + 0.5) * h;
        labels.push_back(s.str());
        weights.push_back(h);
    }
    return MeasureGrid(std::move(labels), std::move(weights));
}

RVec MeasureGrid::weight_vector() const {
    return Eigen::Map<const RVec>(weights_.data(), static_cast<Index>(weights_.size()));
}

bool MeasureGrid::same_as(const MeasureGrid& other) const {
    return weights_ == other.weights_ && labels_ == other.labels_;
}

VectorFamily::VectorFamily(MeasureGrid grid, Mat vectors, std::optional<Mat> domain)
    : grid_(std::move(grid)), vectors_(std::move(vectors)), domain_(std::move(domain)) {
    if (vectors_.cols() == 0 || grid_.size() == 0) throw EmptyFamily("VectorFamily: no vectors");
    if (vectors_.rows() == 0) throw DimensionMismatch("VectorFamily: ambient dimension is zero");
    if (vectors_.cols() != grid_.size())
        throw DimensionMismatch("VectorFamily: " + std::to_string(vectors_.cols()) + " vectors on a grid of " +
                                std::to_string(grid_.size()) + " points");
    if (domain_ && (domain_->rows() != vectors_.rows() || domain_->cols() == 0))
        throw DimensionMismatch("VectorFamily: domain spanning set has the wrong shape");
}

VectorFamily VectorFamily::with_vectors(Mat vectors) const { return VectorFamily(grid_, std::move(vectors), domain_); }

VectorFamily VectorFamily::scaled(double c) const { return with_vectors(c * vectors_); }

Vec AnalysisOp::operator()(const Vec& f) const {
    if (f.size() != matrix.cols()) throw DimensionMismatch("analysis: vector dimension");
    return matrix * f;
}

AnalysisOp analysis(const VectorFamily& family) {
    AnalysisOp c;
    c.sqrt_weights = family.grid().weight_vector().cwiseSqrt();
    c.matrix = c.sqrt_weights.cast<cplx>().asDiagonal() * family.vectors().adjoint();
    return c;
}

Vec synthesis(const AnalysisOp& c, const Vec& coeff) {
    if (coeff.size() != c.matrix.rows())
        throw DimensionMismatch("synthesis: " + std::to_string(coeff.size()) + " coefficients for " +
                                std::to_string(c.matrix.rows()) + " grid points");
    return c.matrix.adjoint() * coeff;
}

double energy(const VectorFamily& family, const Vec& f) {
    if (f.size() != family.dim()) throw DimensionMismatch("energy: vector dimension");
    const Vec coeff = family.vectors().adjoint() * f;
    return family.grid().weight_vector().dot(coeff.cwiseAbs2());
}

SymOp frame_operator(const VectorFamily& family) {
    const AnalysisOp c = analysis(family);
    Mat s = c.matrix.adjoint() * c.matrix;
    return SymOp(0.5 * (s + s.adjoint()));
}

Mat mixed_operator(const VectorFamily& psi, const VectorFamily& phi) {
    if (!psi.grid().same_as(phi.grid())) throw GridMismatch("mixed_operator: families live on different grids");
    if (psi.dim() != phi.dim()) throw DimensionMismatch("mixed_operator: ambient dimensions differ");
    const RVec w = phi.grid().weight_vector();
    return phi.vectors() * w.cast<cplx>().asDiagonal() * psi.vectors().adjoint();
}

FrameBounds frame_bounds(const SymOp& s) {
    FrameBounds b;
    b.lower = std::max(s.lambda_min(), 0.0);
    b.upper = std::max(s.lambda_max(), 0.0);
    b.attained_low = s.eigenvectors().col(0);
    b.attained_high = s.eigenvectors().col(s.dim() - 1);
    return b;
}

FrameBounds frame_bounds(const VectorFamily& family) { return frame_bounds(frame_operator(family)); }

TruncationScan::TruncationScan(std::vector<ScanLevel> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw InconsistentScan("TruncationScan: no levels");
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (!(levels_[i].resolution > 0.0))
            throw InconsistentScan("TruncationScan: resolution must be positive");
        if (i > 0 && !(levels_[i].resolution > levels_[i - 1].resolution))
            throw InconsistentScan("TruncationScan: resolutions must be strictly increasing");
    }
}

TruncationScan TruncationScan::single(VectorFamily family) {
    const double r = static_cast<double>(family.size());
    return TruncationScan({ScanLevel{r, std::move(family)}});
}

std::vector<double> TruncationScan::resolutions() const {
    std::vector<double> r;
    for (const auto& l : levels_) r.push_back(l.resolution);
    return r;
}

DivergenceFit fit_divergence(const std::vector<double>& resolutions, const std::vector<double>& values,
                             const DivergenceRule& rule) {
    DivergenceFit fit;
    fit.levels = values.size();
    if (values.size() != resolutions.size() || values.empty()) return fit;
    if (values.front() > 0 && std::isfinite(values.back())) fit.ratio = values.back() / values.front();
    if (values.size() < 2) return fit;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = std::log(resolutions[i]);
        const double y = std::log(std::max(values[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    fit.slope = den > 0 ? (n * sxy - sx * sy) / den : 0.0;
    fit.diverging = fit.levels >= rule.min_levels && fit.slope >= rule.min_slope && fit.ratio >= rule.min_ratio;
    return fit;
}

namespace {

constexpr std::pair<Verdict, std::string_view> kVerdictNames[] = {
    {Verdict::Frame, "Frame"},
    {Verdict::ParsevalFrame, "ParsevalFrame"},
    {Verdict::BesselOnly, "BesselOnly"},
    {Verdict::UpperSemiFrame, "UpperSemiFrame"},
    {Verdict::ProperLowerSemiFrame, "ProperLowerSemiFrame"},
    {Verdict::NotTotal, "NotTotal"},
    {Verdict::None, "None"},
};

}  // namespace

std::string_view to_string(Verdict v) {
    for (const auto& [k, name] : kVerdictNames)
        if (k == v) return name;
    return "None";
}

Verdict verdict_from_string(std::string_view s) {
    for (const auto& [k, name] : kVerdictNames)
        if (name == s) return k;
    throw ConfigError("unknown verdict '" + std::string(s) + "'");
}

bool is_total(const SymOp& s) { return s.lambda_max() > 0 && s.lambda_min() > null_threshold(s); }

Classification classify(const VectorFamily& family) { return classify(TruncationScan::single(family)); }

Classification classify(const TruncationScan& scan) {
    Classification out;
    std::vector<double> uppers, inv_lowers;
    bool any_not_total = false;
    bool parseval = true;
    std::optional<Vec> witness;

    for (const auto& level : scan.levels()) {
        const SymOp s = frame_operator(level.family);
        LevelBounds lb;
        lb.resolution = level.resolution;
        lb.size = level.family.size();
        lb.dim = level.family.dim();
        lb.lower = std::max(s.lambda_min(), 0.0);
        lb.upper = std::max(s.lambda_max(), 0.0);
        lb.total = is_total(s);
        if (!lb.total) {
            any_not_total = true;
            witness = s.eigenvectors().col(0);
        }
        parseval = parseval && std::abs(lb.lower - 1.0) <= tol::pars && std::abs(lb.upper - 1.0) <= tol::pars;
        uppers.push_back(lb.upper);
        inv_lowers.push_back(lb.lower > 0 ? 1.0 / lb.lower : 1e300);
        out.trajectory.push_back(lb);
    }

    const auto res = scan.resolutions();
    out.upper_fit = fit_divergence(res, uppers, kUpperDivergence);
    out.lower_fit = fit_divergence(res, inv_lowers, kLowerDecay);

    std::ostringstream note;
    note << "upper-bound fit: slope " << out.upper_fit.slope << ", ratio " << out.upper_fit.ratio << " over "
         << out.upper_fit.levels << " levels (diverging at slope >= " << kUpperDivergence.min_slope
         << ", ratio >= " << kUpperDivergence.min_ratio << ", levels >= " << kUpperDivergence.min_levels << ")";
    out.notes.push_back(note.str());
    note.str("");
    note << "1/lower-bound fit: slope " << out.lower_fit.slope << ", ratio " << out.lower_fit.ratio
         << " (decaying at slope >= " << kLowerDecay.min_slope << ", ratio >= " << kLowerDecay.min_ratio << ")";
    out.notes.push_back(note.str());

    if (!out.trajectory.back().total) {
        out.verdict = Verdict::NotTotal;
        out.null_witness = witness;
        out.notes.push_back("null-space witness taken from the last level");
        return out;
    }
    if (any_not_total) {
        out.null_witness = witness;
        out.notes.push_back("totality fails at an intermediate level; cannot certify a lower bound");
        out.verdict = out.upper_fit.diverging ? Verdict::None : Verdict::BesselOnly;
        return out;
    }

    const bool up = out.upper_fit.diverging;
    const bool down = out.lower_fit.diverging;
    if (up && down)
        out.verdict = Verdict::None;
    else if (up)
        out.verdict = Verdict::ProperLowerSemiFrame;
    else if (down)
        out.verdict = Verdict::UpperSemiFrame;
    else
        out.verdict = parseval ? Verdict::ParsevalFrame : Verdict::Frame;
    return out;
}

double check_duality(const VectorFamily& phi, const VectorFamily& psi, std::uint64_t seed) {
    if (!phi.grid().same_as(psi.grid())) throw GridMismatch("check_duality: families live on different grids");
    if (phi.dim() != psi.dim()) throw DimensionMismatch("check_duality: ambient dimensions differ");
    const Index d = phi.dim();
    // sum_i w_i <f, phi_i><psi_i, g> = <Psi W Phi* f, g>
    const Mat m = mixed_operator(phi, psi);
    const Mat defect = Mat::Identity(d, d) - m;
    const auto probes = probe_set(d, seed);
    Mat p(d, static_cast<Index>(probes.size()));
    for (std::size_t j = 0; j < probes.size(); ++j) p.col(static_cast<Index>(j)) = probes[j];
    const Mat r = p.adjoint() * defect * p;  // unit probes
    return r.cwiseAbs().maxCoeff();
}

double omega_bound(const VectorFamily& phi, const VectorFamily& psi) {
    if (!phi.grid().same_as(psi.grid())) throw GridMismatch("omega_bound: families live on different grids");
    if (phi.dim() != psi.dim()) throw DimensionMismatch("omega_bound: ambient dimensions differ");
    const RVec w = phi.grid().weight_vector();
    double sum = 0;
    for (Index i = 0; i < phi.size(); ++i) sum += w(i) * phi.vectors().col(i).norm() * psi.vectors().col(i).norm();
    return sum;
}

double spectral_norm(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

}  // namespace semiframe
