#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace tslab::stats {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Relative asymmetry tolerated by SpdMatrix.
inline constexpr double kSymmetryTolerance = 1e-10;
/// Relative max-norm reconstruction bound guaranteed by cholesky.
inline constexpr double kReconstructionTolerance = 1e-9;

/// Largest absolute entry (0 for empty input).
double max_abs(const Eigen::Ref<const Matrix>& m);

/// Square symmetric matrix intended for factorization.
///
/// Construction checks shape and symmetry; positive definiteness is the
/// business of cholesky, which reports the first bad pivot. The stored
/// matrix is exactly symmetrized.
class SpdMatrix {
public:
    explicit SpdMatrix(Matrix m);

    static SpdMatrix identity(std::size_t n);
    static SpdMatrix diagonal(const Vector& d);

    const Matrix& matrix() const noexcept { return m_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Matrix m_;
};

/// Lower-triangular L with L·Lᵀ = m. Throws FactorizationError on a
/// non-positive or non-finite pivot.
Matrix cholesky(const SpdMatrix& m);

/// Same factorization without the symmetry check; reads the lower triangle.
Matrix cholesky_lower(const Eigen::Ref<const Matrix>& m);

/// Solve m·x = rhs for SPD m.
Vector solve_spd(const SpdMatrix& m, const Vector& rhs);

/// Solve L·Lᵀ·x = rhs from an existing factor.
Vector cholesky_solve(const Matrix& lower, const Vector& rhs);

/// (L·Lᵀ)⁻¹ from an existing factor.
Matrix cholesky_inverse(const Matrix& lower);

/// Inverse of an SPD matrix through its Cholesky factor.
Matrix inverse_spd(const Eigen::Ref<const Matrix>& m);

/// Overwrite m with (m + mᵀ)/2.
void symmetrize(Matrix& m);

}  // namespace tslab::stats
