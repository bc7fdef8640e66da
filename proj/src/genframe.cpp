#include "semiframe/genframe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace semiframe {

namespace {

constexpr double kDependence = 1e-10;
constexpr double kCertTol = 1e-10;

// Orthonormal basis of the complement of span(q) (q has orthonormal columns).
Mat complement_basis(const Mat& q) {
    const Index n = q.rows();
    const Index d = q.cols();
    if (d == n) return Mat(n, 0);
    Eigen::HouseholderQR<Mat> qr(q);
    const Mat full = qr.householderQ();
    return full.rightCols(n - d);
}

}  // namespace

Mat orthonormalize(const Mat& spanning) {
    const Index n = spanning.rows();
    const Index d = spanning.cols();
    if (d > n) throw DependentSpanningSet("orthonormalize: more spanning vectors than the dimension");
    Mat q(n, d);
    for (Index j = 0; j < d; ++j) {
        Vec v = spanning.col(j);
        const double original = v.norm();
        if (!(original > 0)) throw DependentSpanningSet("orthonormalize: zero vector in spanning set");
        for (int pass = 0; pass < 2; ++pass)
            for (Index k = 0; k < j; ++k) v -= q.col(k).dot(v) * q.col(k);
        const double kept = v.norm();
        if (kept < kDependence * original)
            throw DependentSpanningSet("orthonormalize: vector " + std::to_string(j) + " depends on the previous ones");
        q.col(j) = v / kept;
    }
    return q;
}

GenFrameOp::GenFrameOp(Mat basis, const SymOp& frame_op)
    : basis_(std::move(basis)),
      compressed_(basis_.rows() == basis_.cols() && basis_.isIdentity(0.0)
                      ? frame_op
                      : SymOp(basis_.adjoint() * frame_op.matrix() * basis_)),
      op_(full_domain() ? compressed_ : SymOp(basis_ * compressed_.matrix() * basis_.adjoint())),
      projector_(full_domain() ? SymOp::identity(dim()) : SymOp(basis_ * basis_.adjoint())) {
    if (frame_op.dim() != basis_.rows()) throw DimensionMismatch("GenFrameOp: basis and operator dimensions differ");
}

bool GenFrameOp::invertible() const {
    return compressed_.lambda_max() > 0 && compressed_.lambda_min() > null_threshold(compressed_);
}

SymOp GenFrameOp::apply_fn(const SpectralFn& fn) const {
    const SymOp inner_fn = fn_calculus(compressed_, fn);
    if (full_domain() && basis_.isIdentity(0.0)) return inner_fn;
    const Mat comp = complement_basis(basis_);
    Mat vecs(dim(), dim());
    vecs << basis_ * inner_fn.eigenvectors(), comp;
    RVec vals = RVec::Zero(dim());
    vals.head(domain_dim()) = inner_fn.eigenvalues();
    return SymOp::from_spectrum(vecs, vals);
}

SymOp GenFrameOp::power(double a) const {
    if (a < 0 && !invertible()) throw NotInvertible("T_phi is not invertible on H_phi (lambda_min = " +
                                                    std::to_string(compressed_.lambda_min()) + ")");
    return apply_fn(SpectralFn::power(a));
}

Vec GenFrameOp::power_apply(double a, const Vec& f) const { return semiframe::apply(power(a), f); }

GenFrameOp build_genframe(const VectorFamily& family) { return build_genframe(family, family.domain()); }

GenFrameOp build_genframe(const VectorFamily& family, const std::optional<Mat>& domain) {
    const SymOp s = frame_operator(family);
    const Index n = family.dim();
    if (!domain) return GenFrameOp(Mat::Identity(n, n), s);
    if (domain->rows() != n) throw DimensionMismatch("build_genframe: domain vectors have the wrong dimension");
    Mat q = orthonormalize(*domain);
    if (q.cols() == n) q = Mat::Identity(n, n);
    return GenFrameOp(std::move(q), s);
}

cplx energy_form(const VectorFamily& family, const Vec& f, const Vec& g) {
    const RVec w = family.grid().weight_vector();
    cplx sum = 0;
    for (Index i = 0; i < family.size(); ++i) {
        const Vec phi = family.vectors().col(i);
        sum += w(i) * inner(f, phi) * inner(phi, g);
    }
    return sum;
}

namespace {

std::vector<Vec> domain_probes(const GenFrameOp& gf, std::uint64_t seed) {
    std::vector<Vec> out;
    for (const Vec& p : probe_set(gf.dim(), seed)) {
        Vec v = gf.basis() * (gf.basis().adjoint() * p);
        const double nv = v.norm();
        if (nv > 1e-8) out.push_back(v / nv);
    }
    return out;
}

}  // namespace

LowerBoundReport lower_bound_certificate(const VectorFamily& family, double m, std::uint64_t seed) {
    const GenFrameOp gf = build_genframe(family);
    const AnalysisOp c = analysis(family);
    LowerBoundReport r;
    r.m = m;
    r.lower = gf.compressed().lambda_min();

    auto probes = domain_probes(gf, seed);
    probes.push_back(gf.basis() * gf.compressed().eigenvectors().col(0));

    double form_min = std::numeric_limits<double>::infinity();
    double analysis_min = form_min;
    double op_min = form_min;
    for (const Vec& f : probes) {
        const double nf = f.norm();
        form_min = std::min(form_min, energy_form(family, f, f).real() / (nf * nf));
        analysis_min = std::min(analysis_min, c(f).norm() / nf);
        op_min = std::min(op_min, semiframe::apply(gf.op(), f).norm() / nf);
    }

    r.lower_bound = r.lower >= m * (1 - kCertTol);
    r.form_bound = form_min >= m * (1 - kCertTol);
    r.analysis_bound = analysis_min >= std::sqrt(m) * (1 - kCertTol);
    r.operator_bound = op_min >= m * (1 - kCertTol);

    if (gf.invertible()) {
        const Mat& tc = gf.compressed().matrix();
        const Mat inv = Eigen::CompleteOrthogonalDecomposition<Mat>(tc).pseudoInverse();
        r.inverse_bound = spectral_norm(inv) <= (1.0 / m) * (1 + kCertTol);
    }
    r.consistent = r.lower_bound == r.form_bound && r.form_bound == r.analysis_bound &&
                   r.analysis_bound == r.operator_bound && r.operator_bound == r.inverse_bound;
    return r;
}

VectorFamily canonical_dual(const GenFrameOp& gf, const VectorFamily& family) {
    if (!gf.invertible()) throw NotInvertible("canonical_dual: T_phi is not invertible on H_phi");
    return family.with_vectors(gf.power(-1.0).matrix() * family.vectors());
}

VectorFamily canonical_tight(const GenFrameOp& gf, const VectorFamily& family) {
    if (!gf.invertible()) throw NotInvertible("canonical_tight: T_phi is not invertible on H_phi");
    return family.with_vectors(gf.power(-0.5).matrix() * family.vectors());
}

FrameBounds restricted_bounds(const GenFrameOp& gf, const VectorFamily& family) {
    const SymOp s = frame_operator(family);
    if (gf.full_domain()) return frame_bounds(s);
    const SymOp c(gf.basis().adjoint() * s.matrix() * gf.basis());
    FrameBounds b = frame_bounds(c);
    b.attained_low = gf.basis() * b.attained_low;
    b.attained_high = gf.basis() * b.attained_high;
    return b;
}

DualCheck verify_canonical_dual(const GenFrameOp& gf, const VectorFamily& phi, const VectorFamily& psi,
                                std::uint64_t seed) {
    DualCheck out;
    const SymOp inv_root = gf.power(-0.5);
    out.bessel_bound = std::pow(inv_root.norm(), 2);
    out.measured_upper = frame_bounds(psi).upper;

    const auto in_domain = domain_probes(gf, seed);
    const auto all = probe_set(gf.dim(), seed);
    const Mat mixed = mixed_operator(phi, psi);  // f -> sum w <f,phi><psi,.>: Psi W Phi*
    for (const Vec& f : in_domain)
        for (const Vec& h : all) {
            const cplx lhs = inner(f, h);
            const cplx rhs = inner(mixed * f, h);
            out.reconstruction_residual = std::max(out.reconstruction_residual, std::abs(lhs - rhs));
        }
    for (const Vec& f : all) {
        const double lhs = energy(psi, f);
        const double rhs = semiframe::apply(inv_root, f).squaredNorm();
        const double scale = std::max(rhs, 1e-12 * out.bessel_bound * f.squaredNorm());
        out.bessel_identity_residual = std::max(out.bessel_identity_residual, std::abs(lhs - rhs) / scale);
    }
    return out;
}

Vec riesz_representer(const GenFrameOp& gf, const VectorFamily& family, Index x_index) {
    if (x_index < 0 || x_index >= family.size()) throw DimensionMismatch("riesz_representer: index out of range");
    if (!gf.invertible()) throw NotInvertible("riesz_representer: lower frame bound is not positive");
    return gf.power_apply(-1.0, family.vectors().col(x_index));
}

Vec riesz_representer(const VectorFamily& family, Index x_index) {
    return riesz_representer(build_genframe(family), family, x_index);
}

VectorFamily inverse_representer(const VectorFamily& chi, const GenFrameOp& gf) {
    if (chi.dim() != gf.dim()) throw DimensionMismatch("inverse_representer: dimensions differ");
    return chi.with_vectors(gf.op().matrix() * chi.vectors());
}

}  // namespace semiframe
