/*
 * genframe.hpp - the generalized frame operator T_phi.
 *
 * T_phi represents the energy form
 *
 *     Omega(f, g) = sum_i w_i <f, phi_i><phi_i, g>
 *
 * on the closure H_phi of the (declared) analysis domain. In a finite
 * truncation this is the compression P S P of the frame operator to H_phi.
 * T_phi is stored on the ambient space and acts as zero on the orthogonal
 * complement of H_phi; spectral functions of T_phi (inverses, roots) are
 * taken on H_phi only, i.e. in the Moore-Penrose sense.
 *
 * The invertibility certificate in lower_bound_certificate uses the bound
 * ||T^{-1}|| <= 1/m, which is the form consistent with ||T f|| >= m ||f||.
 */
#pragma once

#include <cstdint>
#include <optional>

#include "semiframe/frames.hpp"

namespace semiframe {

class GenFrameOp {
public:
    GenFrameOp(Mat basis, const SymOp& frame_op);

    Index dim() const { return basis_.rows(); }
    Index domain_dim() const { return basis_.cols(); }
    bool full_domain() const { return domain_dim() == dim(); }

    // Orthonormal basis Q of H_phi (dim x domain_dim).
    const Mat& basis() const { return basis_; }
    // T_phi on the ambient space.
    const SymOp& op() const { return op_; }
    // P_phi = Q Q*.
    const SymOp& projector() const { return projector_; }
    // Q* S Q, the operator on H_phi in coordinates of Q.
    const SymOp& compressed() const { return compressed_; }

    double lower() const { return std::max(compressed_.lambda_min(), 0.0); }
    double upper() const { return std::max(compressed_.lambda_max(), 0.0); }
    bool invertible() const;

    // Q fn(Q* S Q) Q*: zero on the complement of H_phi.
    SymOp apply_fn(const SpectralFn& fn) const;
    SymOp power(double a) const;

    // T^a f with the same convention.
    Vec power_apply(double a, const Vec& f) const;

private:
    Mat basis_;
    SymOp compressed_;
    SymOp op_;
    SymOp projector_;
};

// Orthonormalizes a spanning set by modified Gram-Schmidt with one
// re-orthogonalization pass. Throws DependentSpanningSet when a vector keeps
// less than 1e-10 of its norm.
Mat orthonormalize(const Mat& spanning);

GenFrameOp build_genframe(const VectorFamily& family);
GenFrameOp build_genframe(const VectorFamily& family, const std::optional<Mat>& domain);

// Omega(f, g) = sum_i w_i <f, phi_i><phi_i, g>
cplx energy_form(const VectorFamily& family, const Vec& f, const Vec& g);

struct LowerBoundReport {
    double m = 0.0;
    double lower = 0.0;  // lambda_min of T on H_phi
    bool lower_bound = false;      // (i)   lower frame bound >= m
    bool form_bound = false;       // (ii)  Omega(f,f) >= m |f|^2
    bool analysis_bound = false;   // (iii) |C f| >= sqrt(m) |f|
    bool operator_bound = false;   // (iv)  |T f| >= m |f|
    bool inverse_bound = false;    // (v)   T invertible on H_phi, |T^{-1}| <= 1/m
    bool consistent = false;       // all five agree
};

// Evaluates the five equivalent lower-bound statements at this truncation.
// (ii)-(iv) are checked on the probe set restricted to H_phi plus the
// extremal eigenvector of T.
LowerBoundReport lower_bound_certificate(const VectorFamily& family, double m, std::uint64_t seed = kDefaultSeed);

// psi_i = T^{-1} P phi_i. Throws NotInvertible.
VectorFamily canonical_dual(const GenFrameOp& gf, const VectorFamily& family);
// chi_i = T^{-1/2} P phi_i. Throws NotInvertible.
VectorFamily canonical_tight(const GenFrameOp& gf, const VectorFamily& family);

struct DualCheck {
    double bessel_bound = 0.0;            // ||T^{-1/2}||^2 on H_phi
    double measured_upper = 0.0;          // upper frame bound of psi
    double reconstruction_residual = 0.0; // <f,h> vs sum w <f,phi><psi,h>, f in H_phi
    double bessel_identity_residual = 0.0;// sum w |<f,psi>|^2 vs ||T^{-1/2} P f||^2
};

DualCheck verify_canonical_dual(const GenFrameOp& gf, const VectorFamily& phi, const VectorFamily& psi,
                                std::uint64_t seed = kDefaultSeed);

// Frame bounds of a family restricted to H_phi (eigenvalues of Q* S Q).
FrameBounds restricted_bounds(const GenFrameOp& gf, const VectorFamily& family);

// chi_x = T^{-1} phi_x, the representer of f -> <f, phi_x> in the norm |T^{1/2} f|.
Vec riesz_representer(const GenFrameOp& gf, const VectorFamily& family, Index x_index);
Vec riesz_representer(const VectorFamily& family, Index x_index);

// eta = T chi. At a finite truncation every chi_x lies in D(T).
VectorFamily inverse_representer(const VectorFamily& chi, const GenFrameOp& gf);

}  // namespace semiframe
