/*
 * hilbert.hpp - finite-dimensional model of the ambient Hilbert space.
 *
 * Vectors are complex coordinate vectors; the inner product is linear in the
 * first argument and conjugate-linear in the second:
 *
 *     <f, g> = sum_i f_i * conj(g_i)
 *
 * SymOp wraps a Hermitian matrix together with its eigendecomposition
 * A = V diag(lambda) V*, eigenvalues ascending. Every spectral function of an
 * operator (powers, inverse roots, weights h(T)) goes through that single
 * decomposition.
 */
#pragma once

#include <complex>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "semiframe/errors.hpp"

namespace semiframe {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tol {
inline constexpr double herm = 1e-10;   // relative Frobenius asymmetry
inline constexpr double orth = 1e-10;   // eigenvector orthonormality
inline constexpr double recon = 1e-10;  // relative reconstruction error
inline constexpr double calc = 1e-8;    // functional-calculus identities
inline constexpr double psd = 1e-10;    // smallest eigenvalue >= -psd * ||A||
inline constexpr double null = 1e-12;   // eigenvalue <= null * lambda_max counts as zero
inline constexpr double pars = 1e-8;    // Parseval bounds
inline constexpr double dual = 1e-8;    // duality / reconstruction residuals
}  // namespace tol

struct AmbientSpace {
    Index dim;

    explicit AmbientSpace(Index d) : dim(d) {
        if (d < 1) throw DimensionMismatch("AmbientSpace: dim must be >= 1");
    }
    bool contains(const Vec& v) const { return v.size() == dim; }
};

// <f, g>, linear in f.
inline cplx inner(const Vec& f, const Vec& g) { return g.dot(f); }

// Real-valued function of a spectral argument, with a label for reports.
struct SpectralFn {
    std::function<double(double)> eval;
    std::string label;

    double operator()(double t) const { return eval(t); }

    static SpectralFn identity();
    static SpectralFn constant(double c);
    static SpectralFn power(double a);
    // t -> 1 / f(t)
    SpectralFn reciprocal() const;
    SpectralFn operator*(const SpectralFn& other) const;
};

// Self-adjoint operator with cached ascending eigendecomposition.
class SymOp {
public:
    // Validates Hermiticity (relative Frobenius tolerance tol::herm), then
    // symmetrizes and decomposes. Exactly diagonal input skips the solver.
    explicit SymOp(const Mat& matrix);

    // Builds V diag(values) V* from a known orthonormal eigenbasis; values are
    // re-sorted ascending together with their eigenvectors.
    static SymOp from_spectrum(const Mat& eigvecs, const RVec& values);

    static SymOp identity(Index dim);
    static SymOp diagonal(const RVec& d);

    Index dim() const { return matrix_.rows(); }
    const Mat& matrix() const { return matrix_; }
    const RVec& eigenvalues() const { return values_; }
    const Mat& eigenvectors() const { return vectors_; }

    double lambda_min() const { return values_(0); }
    double lambda_max() const { return values_(values_.size() - 1); }
    // Largest |eigenvalue|, i.e. the operator norm.
    double norm() const;

    double orthonormality_residual() const;
    double reconstruction_residual() const;  // relative Frobenius

private:
    SymOp() = default;
    Mat matrix_;
    RVec values_;
    Mat vectors_;
};

Vec apply(const SymOp& op, const Vec& f);

// V fn(Lambda) V*. Requires op positive semi-definite up to tol::psd;
// eigenvalues at or below tol::null * lambda_max are evaluated as exact zero.
// Throws SingularCalculus when fn is not finite on an eigenvalue.
SymOp fn_calculus(const SymOp& op, const SpectralFn& fn);

// Same as fn_calculus without the positivity precondition; used for
// functions that are defined on the whole real line.
SymOp fn_calculus_unchecked(const SymOp& op, const SpectralFn& fn);

// <W f, W g> with W = fn_calculus(base, weight).
cplx inner_weighted(const Vec& f, const Vec& g, const SymOp& weight_op);
cplx inner_weighted(const Vec& f, const Vec& g, const SymOp& base, const SpectralFn& weight);

// Numerical zero threshold for the spectrum of op.
double null_threshold(const SymOp& op);

}  // namespace semiframe
