#include "semiframe/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace semiframe {

SpectralFn SpectralFn::identity() {
    return {[](double t) { return t; }, "t"};
}

SpectralFn SpectralFn::constant(double c) {
    std::ostringstream s;
    s << c;
    return {[c](double) { return c; }, s.str()};
}

SpectralFn SpectralFn::power(double a) {
    std::ostringstream s;
    s << "t^" << a;
    if (a == 0.0) return {[](double) { return 1.0; }, s.str()};
    return {[a](double t) { return std::pow(t, a); }, s.str()};
}

SpectralFn SpectralFn::reciprocal() const {
    auto f = eval;
    return {[f](double t) { return 1.0 / f(t); }, "1/(" + label + ")"};
}

SpectralFn SpectralFn::operator*(const SpectralFn& other) const {
    auto f = eval;
    auto g = other.eval;
    return {[f, g](double t) { return f(t) * g(t); }, "(" + label + ")*(" + other.label + ")"};
}

namespace {

bool is_diagonal(const Mat& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (i != j && m(i, j) != cplx(0.0)) return false;
    return true;
}

// Columns are distinct standard basis vectors.
bool is_permutation(const Mat& v) {
    for (Index j = 0; j < v.cols(); ++j) {
        Index hits = 0;
        for (Index i = 0; i < v.rows(); ++i) {
            if (v(i, j) == cplx(1.0)) ++hits;
            else if (v(i, j) != cplx(0.0)) return false;
        }
        if (hits != 1) return false;
    }
    return true;
}

}  // namespace

SymOp::SymOp(const Mat& matrix) {
    if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
        throw DimensionMismatch("SymOp: matrix must be square and non-empty");
    const double scale = matrix.norm();
    const double asym = (matrix - matrix.adjoint()).norm();
    if (asym > tol::herm * std::max(scale, 1e-300))
        throw NotHermitian("SymOp: relative asymmetry " + std::to_string(asym / scale));

    matrix_ = 0.5 * (matrix + matrix.adjoint());
    const Index n = matrix_.rows();

    if (is_diagonal(matrix_)) {
        RVec d = matrix_.diagonal().real();
        std::vector<Index> order(n);
        std::iota(order.begin(), order.end(), Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return d(a) < d(b); });
        values_.resize(n);
        vectors_ = Mat::Zero(n, n);
        for (Index k = 0; k < n; ++k) {
            values_(k) = d(order[k]);
            vectors_(order[k], k) = 1.0;
        }
        return;
    }

    Eigen::SelfAdjointEigenSolver<Mat> solver(matrix_);
    if (solver.info() != Eigen::Success) throw NotHermitian("SymOp: eigendecomposition failed");
    values_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
}

SymOp SymOp::from_spectrum(const Mat& eigvecs, const RVec& values) {
    const Index n = values.size();
    if (eigvecs.rows() != n || eigvecs.cols() != n)
        throw DimensionMismatch("SymOp::from_spectrum: eigenbasis shape");
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return values(a) < values(b); });
    SymOp op;
    op.values_.resize(n);
    op.vectors_.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        op.values_(k) = values(order[k]);
        op.vectors_.col(k) = eigvecs.col(order[k]);
    }
    if (is_permutation(op.vectors_)) {
        op.matrix_ = Mat::Zero(n, n);
        for (Index k = 0; k < n; ++k) {
            Index row = 0;
            op.vectors_.col(k).cwiseAbs().maxCoeff(&row);
            op.matrix_(row, row) = op.values_(k);
        }
        return op;
    }
    op.matrix_ = op.vectors_ * op.values_.cast<cplx>().asDiagonal() * op.vectors_.adjoint();
    op.matrix_ = 0.5 * (op.matrix_ + op.matrix_.adjoint()).eval();
    return op;
}

SymOp SymOp::identity(Index dim) { return SymOp(Mat::Identity(dim, dim)); }

SymOp SymOp::diagonal(const RVec& d) { return SymOp(Mat(d.cast<cplx>().asDiagonal())); }

double SymOp::norm() const { return std::max(std::abs(lambda_min()), std::abs(lambda_max())); }

double SymOp::orthonormality_residual() const {
    const Mat g = vectors_.adjoint() * vectors_;
    return (g - Mat::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

double SymOp::reconstruction_residual() const {
    const Mat r = vectors_ * values_.cast<cplx>().asDiagonal() * vectors_.adjoint();
    const double scale = matrix_.norm();
    return (matrix_ - r).norm() / (scale > 0 ? scale : 1.0);
}

Vec apply(const SymOp& op, const Vec& f) {
    if (f.size() != op.dim())
        throw DimensionMismatch("apply: operator dim " + std::to_string(op.dim()) + ", vector dim " +
                                std::to_string(f.size()));
    return op.matrix() * f;
}

double null_threshold(const SymOp& op) { return tol::null * std::max(op.lambda_max(), 0.0); }

SymOp fn_calculus_unchecked(const SymOp& op, const SpectralFn& fn) {
    const RVec& lam = op.eigenvalues();
    RVec out(lam.size());
    for (Index i = 0; i < lam.size(); ++i) {
        out(i) = fn(lam(i));
        if (!std::isfinite(out(i))) {
            std::ostringstream s;
            s << "fn_calculus: " << fn.label << " is not finite at eigenvalue " << lam(i);
            throw SingularCalculus(s.str());
        }
    }
    return SymOp::from_spectrum(op.eigenvectors(), out);
}

SymOp fn_calculus(const SymOp& op, const SpectralFn& fn) {
    const double floor = -tol::psd * op.norm();
    if (op.lambda_min() < floor) {
        std::ostringstream s;
        s << "fn_calculus: operator is not positive semi-definite (lambda_min = " << op.lambda_min() << ")";
        throw NotPositive(s.str());
    }
    const double zero = null_threshold(op);
    const RVec& lam = op.eigenvalues();
    RVec out(lam.size());
    for (Index i = 0; i < lam.size(); ++i) {
        const double t = lam(i) <= zero ? 0.0 : lam(i);
        out(i) = fn(t);
        if (!std::isfinite(out(i))) {
            std::ostringstream s;
            s << "fn_calculus: " << fn.label << " is not finite at eigenvalue " << lam(i);
            if (t == 0.0) s << " (numerically zero)";
            throw SingularCalculus(s.str());
        }
    }
    return SymOp::from_spectrum(op.eigenvectors(), out);
}

cplx inner_weighted(const Vec& f, const Vec& g, const SymOp& weight_op) {
    return inner(semiframe::apply(weight_op, f), semiframe::apply(weight_op, g));
}

cplx inner_weighted(const Vec& f, const Vec& g, const SymOp& base, const SpectralFn& weight) {
    return inner_weighted(f, g, fn_calculus(base, weight));
}

}  // namespace semiframe
