#include "tslab/stats/linalg.hpp"

#include "tslab/errors.hpp"

#include <cmath>
#include <string>

namespace tslab::stats {

double max_abs(const Eigen::Ref<const Matrix>& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

SpdMatrix::SpdMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw ShapeError("SpdMatrix: matrix is " + std::to_string(m_.rows()) + "x" +
                         std::to_string(m_.cols()) + ", expected square");
    }
    const double scale = max_abs(m_);
    const double asym = max_abs(m_ - m_.transpose());
    if (!(asym <= kSymmetryTolerance * scale)) {
        throw DomainError("SpdMatrix: asymmetry " + std::to_string(asym) + " exceeds tolerance");
    }
    symmetrize(m_);
}

SpdMatrix SpdMatrix::identity(std::size_t n) {
    return SpdMatrix(Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

SpdMatrix SpdMatrix::diagonal(const Vector& d) {
    Matrix m = Matrix::Zero(d.size(), d.size());
    m.diagonal() = d;
    return SpdMatrix(std::move(m));
}

Matrix cholesky(const SpdMatrix& m) { return cholesky_lower(m.matrix()); }

Matrix cholesky_lower(const Eigen::Ref<const Matrix>& m) {
    if (m.rows() != m.cols()) throw ShapeError("cholesky: matrix is not square");
    const Eigen::Index n = m.rows();
    Matrix l = Matrix::Zero(n, n);
    Vector col(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index rest = n - j;
        col.head(rest) = m.col(j).tail(rest);
        if (j > 0) {
            col.head(rest).noalias() -= l.bottomLeftCorner(rest, j) * l.row(j).head(j).transpose();
        }
        const double pivot = col(0);
        if (!(pivot > 0.0) || !std::isfinite(pivot)) {
            throw FactorizationError(static_cast<std::size_t>(j), pivot);
        }
        const double d = std::sqrt(pivot);
        l(j, j) = d;
        if (rest > 1) l.col(j).tail(rest - 1) = col.segment(1, rest - 1) / d;
    }
    return l;
}

Vector cholesky_solve(const Matrix& lower, const Vector& rhs) {
    if (lower.rows() != rhs.size()) throw ShapeError("cholesky_solve: dimension mismatch");
    Vector y = lower.triangularView<Eigen::Lower>().solve(rhs);
    return lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

Vector solve_spd(const SpdMatrix& m, const Vector& rhs) {
    if (static_cast<Eigen::Index>(m.size()) != rhs.size()) {
        throw ShapeError("solve_spd: matrix is " + std::to_string(m.size()) + "-dimensional, rhs has " +
                         std::to_string(rhs.size()) + " entries");
    }
    return cholesky_solve(cholesky(m), rhs);
}

Matrix cholesky_inverse(const Matrix& lower) {
    const Eigen::Index n = lower.rows();
    Matrix linv = Matrix::Identity(n, n);
    lower.triangularView<Eigen::Lower>().solveInPlace(linv);
    Matrix inv = linv.transpose() * linv;
    symmetrize(inv);
    return inv;
}

Matrix inverse_spd(const Eigen::Ref<const Matrix>& m) { return cholesky_inverse(cholesky_lower(m)); }

void symmetrize(Matrix& m) {
    const Matrix t = m.transpose();
    m = 0.5 * (m + t);
}

}  // namespace tslab::stats
