#include "semiframe/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace semiframe {

MetricOp::MetricOp(SymOp op) : op_(std::move(op)) {
    if (!(op_.lambda_max() > 0) || !(op_.lambda_min() > null_threshold(op_))) {
        std::ostringstream s;
        s << "MetricOp: operator is not strictly positive (lambda_min = " << op_.lambda_min() << ")";
        throw NotPositive(s.str());
    }
}

double rg_norm(const MetricOp& g, const Vec& f) {
    const SymOp shifted(Mat::Identity(g.dim(), g.dim()) + g.op().matrix());
    return semiframe::apply(fn_calculus(shifted, SpectralFn::power(0.5)), f).norm();
}

double rg_identity_residual(const MetricOp& g, const Vec& f) {
    const double rg2 = std::pow(rg_norm(g, f), 2);
    const double graph2 = f.squaredNorm() + semiframe::apply(g.power(0.5), f).squaredNorm();
    return rg2 > 0 ? std::abs(rg2 - graph2) / rg2 : 0.0;
}

std::string_view to_string(LatticeNode n) {
    switch (n) {
        case LatticeNode::Meet: return "H(G)^H(G^-1)";
        case LatticeNode::RGinv: return "H(R_G^-1)";
        case LatticeNode::RG: return "H(R_G)";
        case LatticeNode::Ginv: return "H(G^-1)";
        case LatticeNode::H: return "H";
        case LatticeNode::G: return "H(G)";
        case LatticeNode::RGdual: return "H(R_G)^x=H+H(G^-1)";
        case LatticeNode::RGinvDual: return "H(R_G^-1)^x=H+H(G)";
        case LatticeNode::Join: return "H(G)+H(G^-1)";
    }
    return "?";
}

const std::array<LatticeEdge, 12>& lattice_edges() {
    using N = LatticeNode;
    static const std::array<LatticeEdge, 12> edges = {{
        {N::Meet, N::RGinv},
        {N::Meet, N::RG},
        {N::RGinv, N::Ginv},
        {N::RGinv, N::H},
        {N::RG, N::H},
        {N::RG, N::G},
        {N::Ginv, N::RGdual},
        {N::H, N::RGdual},
        {N::H, N::RGinvDual},
        {N::G, N::RGinvDual},
        {N::RGdual, N::Join},
        {N::RGinvDual, N::Join},
    }};
    return edges;
}

namespace {

Mat inverse_hpd(const Mat& m) {
    Mat inv = m.ldlt().solve(Mat::Identity(m.rows(), m.cols()));
    return 0.5 * (inv + inv.adjoint());
}

std::size_t idx(LatticeNode n) { return static_cast<std::size_t>(n); }

}  // namespace

std::array<Mat, kLatticeNodes> lattice_grams(const MetricOp& g) {
    const Index n = g.dim();
    const Mat id = Mat::Identity(n, n);
    const Mat gm = g.op().matrix();
    const Mat ginv = g.power(-1.0).matrix();
    std::array<Mat, kLatticeNodes> out;
    out[idx(LatticeNode::Meet)] = gm + ginv;
    out[idx(LatticeNode::RGinv)] = id + ginv;
    out[idx(LatticeNode::RG)] = id + gm;
    out[idx(LatticeNode::Ginv)] = ginv;
    out[idx(LatticeNode::H)] = id;
    out[idx(LatticeNode::G)] = gm;
    // (A^-1 + B^-1)^-1
    out[idx(LatticeNode::RGdual)] = inverse_hpd(id + gm);
    out[idx(LatticeNode::RGinvDual)] = inverse_hpd(id + ginv);
    out[idx(LatticeNode::Join)] = inverse_hpd(ginv + gm);
    return out;
}

double inductive_norm(const Mat& a_gram, const Mat& b_gram, const Vec& f) {
    const Vec f2 = (a_gram + b_gram).ldlt().solve(a_gram * f);
    const Vec f1 = f - f2;
    const double v = inner(a_gram * f1, f1).real() + inner(b_gram * f2, f2).real();
    return std::sqrt(std::max(v, 0.0));
}

std::array<double, kLatticeNodes> lattice_norms(const MetricOp& g, const Vec& f) {
    const Index n = g.dim();
    const Mat id = Mat::Identity(n, n);
    const Mat gm = g.op().matrix();
    const Mat ginv = g.power(-1.0).matrix();
    const double h2 = f.squaredNorm();
    const double g2 = semiframe::apply(g.power(0.5), f).squaredNorm();
    const double gi2 = semiframe::apply(g.power(-0.5), f).squaredNorm();

    std::array<double, kLatticeNodes> out{};
    out[idx(LatticeNode::Meet)] = std::sqrt(g2 + gi2);
    out[idx(LatticeNode::RGinv)] = std::sqrt(h2 + gi2);
    out[idx(LatticeNode::RG)] = std::sqrt(h2 + g2);
    out[idx(LatticeNode::Ginv)] = std::sqrt(gi2);
    out[idx(LatticeNode::H)] = std::sqrt(h2);
    out[idx(LatticeNode::G)] = std::sqrt(g2);
    out[idx(LatticeNode::RGdual)] = inductive_norm(id, ginv, f);
    out[idx(LatticeNode::RGinvDual)] = inductive_norm(id, gm, f);
    out[idx(LatticeNode::Join)] = inductive_norm(gm, ginv, f);
    return out;
}

std::vector<EdgeCheck> check_lattice_edges(const MetricOp& g, std::uint64_t seed, int probes) {
    const auto grams = lattice_grams(g);
    const auto vecs = probe_set(g.dim(), seed, probes);
    std::vector<std::array<double, kLatticeNodes>> norms;
    norms.reserve(vecs.size());
    for (const Vec& f : vecs) norms.push_back(lattice_norms(g, f));

    std::vector<EdgeCheck> out;
    for (const auto& e : lattice_edges()) {
        EdgeCheck c;
        c.edge = e;
        const SymOp from(grams[idx(e.from)]);
        const SymOp from_inv_root = fn_calculus(from, SpectralFn::power(-0.5));
        const Mat sandwich = from_inv_root.matrix() * grams[idx(e.to)] * from_inv_root.matrix();
        c.constant = std::sqrt(std::max(SymOp(0.5 * (sandwich + sandwich.adjoint())).lambda_max(), 0.0));
        for (const auto& nv : norms)
            c.worst_probe = std::max(c.worst_probe, nv[idx(e.to)] / nv[idx(e.from)]);
        c.holds = std::isfinite(c.constant) && c.worst_probe <= c.constant * (1 + 1e-10);
        out.push_back(c);
    }
    return out;
}

double join_duality_residual(const MetricOp& g, const Vec& f) {
    const auto norms = lattice_norms(g, f);
    const SymOp shifted(Mat::Identity(g.dim(), g.dim()) + g.op().matrix());
    const double dual = semiframe::apply(fn_calculus(shifted, SpectralFn::power(-0.5)), f).norm();
    return std::abs(norms[idx(LatticeNode::RGdual)] - dual) / std::max(dual, 1e-300);
}

double max_pairwise_ratio(const MetricOp& g, std::uint64_t seed, int probes) {
    double worst = 0;
    for (const Vec& f : probe_set(g.dim(), seed, probes)) {
        const auto n = lattice_norms(g, f);
        for (std::size_t a = 0; a < kLatticeNodes; ++a)
            for (std::size_t b = 0; b < kLatticeNodes; ++b)
                if (a != b) worst = std::max(worst, n[a] / n[b]);
    }
    return worst;
}

ScaleSpace::ScaleSpace(MetricOp base, double alpha)
    : ScaleSpace(base, alpha, base.at_least_one() ? Variant::Power : Variant::Graph) {}

ScaleSpace::ScaleSpace(MetricOp base, double alpha, Variant variant)
    : base_(std::move(base)), alpha_(alpha), variant_(variant), root_(base_.power(alpha / 2.0)) {}

double ScaleSpace::norm(const Vec& f) const {
    const double p = semiframe::apply(root_, f).squaredNorm();
    return variant_ == Variant::Power ? std::sqrt(p) : std::sqrt(f.squaredNorm() + p);
}

double scale_unitarity(const MetricOp& g, int n_from, int n_to, std::uint64_t seed) {
    if (n_from > n_to) std::swap(n_from, n_to);
    const SymOp half = g.power(0.5);
    const auto probes = probe_set(g.dim(), seed);
    double worst = 0;
    for (int n = n_from; n <= n_to; ++n) {
        const ScaleSpace target(g, n, ScaleSpace::Variant::Power);
        const ScaleSpace down1(g, n - 1, ScaleSpace::Variant::Power);
        const ScaleSpace down2(g, n - 2, ScaleSpace::Variant::Power);
        for (const Vec& f : probes) {
            const double ref = target.norm(f);
            const double a = down1.norm(semiframe::apply(half, f));
            const double b = down2.norm(semiframe::apply(g.op(), f));
            worst = std::max({worst, std::abs(a - ref) / ref, std::abs(b - ref) / ref});
        }
    }
    return worst;
}

ClosedMetrics build_metric_from_closed(const Mat& s, std::uint64_t seed) {
    const Index n = s.cols();
    const Mat g1m = Mat::Identity(n, n) + s.adjoint() * s;
    MetricOp g1{SymOp(0.5 * (g1m + g1m.adjoint()))};
    MetricOp g2{SymOp(inverse_hpd(g1.op().matrix()))};
    ClosedMetrics out{g1, g2, g1.op().lambda_min(), g2.op().norm(), 0, 0};

    const SymOp g1_half = g1.power(0.5), g1_inv_half = g1.power(-0.5);
    const SymOp g2_half = g2.power(0.5), g2_inv_half = g2.power(-0.5);
    for (const Vec& f : probe_set(n, seed)) {
        const Vec g1f = semiframe::apply(g1.op(), f);
        out.inverse_residual = std::max(out.inverse_residual, g1f.norm() * (semiframe::apply(g2.op(), g1f) - f).norm());
        const double nf = f.norm();
        const double v1 = nf - semiframe::apply(g1_half, f).norm();      // H(G1) in H
        const double v2 = semiframe::apply(g1_inv_half, f).norm() - nf;  // H in H(G1^-1)
        const double v3 = nf - semiframe::apply(g2_inv_half, f).norm();  // H(G2^-1) in H
        const double v4 = semiframe::apply(g2_half, f).norm() - nf;      // H in H(G2)
        out.triplet_violation = std::max({out.triplet_violation, v1 / nf, v2 / nf, v3 / nf, v4 / nf, 0.0});
    }
    return out;
}

double spectrum_distance(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
    std::vector<bool> used(static_cast<std::size_t>(y.size()), false);
    double worst = 0;
    for (Index i = 0; i < x.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        Index arg = -1;
        for (Index j = 0; j < y.size(); ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double d = std::abs(x(i) - y(j));
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        used[static_cast<std::size_t>(arg)] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

SimilarityReport similarity_check(const Mat& a, const Mat& b, const MetricOp& t) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() || a.rows() != t.dim())
        throw DimensionMismatch("similarity_check: A, B and T must be square of the same size");
    SimilarityReport r;
    const Mat& tm = t.op().matrix();
    const double scale = std::max(a.norm(), 1e-300) * t.op().norm();
    r.residual = (b * tm - tm * a).norm() / scale;
    r.similar = r.residual <= kTauSim;
    if (r.similar) {
        const Eigen::VectorXcd ea = Eigen::ComplexEigenSolver<Mat>(a, false).eigenvalues();
        const Eigen::VectorXcd eb = Eigen::ComplexEigenSolver<Mat>(b, false).eigenvalues();
        r.spectrum_distance = spectrum_distance(ea, eb);
        r.spectra_match = r.spectrum_distance <= kSpectrumTol;
    }
    return r;
}

}  // namespace semiframe
