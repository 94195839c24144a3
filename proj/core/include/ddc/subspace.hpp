#pragma once

#include <vector>

#include "ddc/signal.hpp"

namespace ddc {

/// Orthonormal basis of a subspace of R^ambient_dim.
///
/// A zero-dimensional subspace is represented by an ambient_dim x 0 matrix.
/// Instances are only produced by orthonormal_basis() (or the zero factory),
/// so the columns are always orthonormal.
class BehaviorBasis {
public:
    explicit BehaviorBasis(Eigen::Index ambient_dim);

    [[nodiscard]] static BehaviorBasis zero(Eigen::Index ambient_dim) { return BehaviorBasis(ambient_dim); }

    [[nodiscard]] Eigen::Index ambient_dim() const noexcept { return ambient_dim_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return basis_.cols(); }
    [[nodiscard]] bool empty() const noexcept { return basis_.cols() == 0; }
    [[nodiscard]] const Matrix& matrix() const noexcept { return basis_; }
    [[nodiscard]] RankTolerance tol() const noexcept { return tol_; }

private:
    friend BehaviorBasis orthonormal_basis(const Matrix& M, RankTolerance tol, double scale);
    BehaviorBasis(Matrix basis, RankTolerance tol);

    Eigen::Index ambient_dim_;
    Matrix basis_;
    RankTolerance tol_{};
};

/// Orthogonal projector: symmetric and idempotent.
class Projector {
public:
    // Validates symmetry (1e-10) and idempotence (1e-8), relative to 1 + ||P||_F.
    // Throws NumericalDegeneracyError on violation.
    explicit Projector(Matrix P);

    [[nodiscard]] static Projector zero(Eigen::Index ambient_dim);
    [[nodiscard]] static Projector identity(Eigen::Index ambient_dim);

    [[nodiscard]] Eigen::Index ambient_dim() const noexcept { return P_.rows(); }
    [[nodiscard]] const Matrix& matrix() const noexcept { return P_; }

    [[nodiscard]] double symmetry_defect() const;
    [[nodiscard]] double idempotence_defect() const;

private:
    Matrix P_;
};

inline constexpr double kSymmetryTol = 1e-10;
inline constexpr double kIdempotenceTol = 1e-8;
inline constexpr double kAngleTol = 1e-8;

// Numerical rank uses max(sigma_max(M), scale) in the rank rule. Pass the
// size of the factors M was computed from when M may be pure roundoff.
[[nodiscard]] BehaviorBasis orthonormal_basis(const Matrix& M, RankTolerance tol = {}, double scale = 0.0);

// Moore-Penrose inverse via SVD with the rank rule.
[[nodiscard]] Matrix pinv(const Matrix& M, RankTolerance tol = {});

// Pseudoinverse of a symmetric matrix through its eigendecomposition.
// The result is exactly symmetric.
[[nodiscard]] Matrix symmetric_pinv(const Matrix& S, RankTolerance tol = {});

[[nodiscard]] Projector projector_onto(const BehaviorBasis& B);

// Image of a projector: eigenvectors with eigenvalue above 1/2.
[[nodiscard]] BehaviorBasis image_of(const Projector& P);

// Projector on the intersection of the images: 2 P_V (P_V + P_W)^+ P_W,
// re-symmetrized. Throws NumericalDegeneracyError when the result is not
// idempotent within tolerance (typically tiny but nonzero principal angles).
[[nodiscard]] Projector intersect(const Projector& PV, const Projector& PW, RankTolerance tol = {});

struct InclusionResult {
    bool included = false;
    double residual = 0.0; // ||(I - P_sup) Q_sub||_F
};

// Bsub within Bsup iff residual <= tol * (1 + ||Q_sub||_F).
[[nodiscard]] InclusionResult is_subspace_of(const BehaviorBasis& sub, const BehaviorBasis& sup, double tol = kAngleTol);

/// Principal angles in [0, pi/2], nonincreasing. There are min(dim1, dim2)
/// of them. Small angles come from sines so they stay accurate below 1e-8.
[[nodiscard]] std::vector<double> principal_angles(const BehaviorBasis& B1, const BehaviorBasis& B2);

// Largest principal angle, 0 when either subspace is zero-dimensional.
[[nodiscard]] double max_principal_angle(const BehaviorBasis& B1, const BehaviorBasis& B2);

// Equal dimension and every principal angle below tol.
[[nodiscard]] bool same_subspace(const BehaviorBasis& B1, const BehaviorBasis& B2, double tol = kAngleTol);

// Image of S * B for a linear map S, ranked relative to ||S||_F.
[[nodiscard]] BehaviorBasis map_basis(const Matrix& S, const BehaviorBasis& B, RankTolerance tol = {});

} // namespace ddc
