#include "ddc/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "ddc/errors.hpp"

namespace ddc {

BehaviorBasis::BehaviorBasis(Eigen::Index ambient_dim) : ambient_dim_(ambient_dim), basis_(ambient_dim, 0) {
    if (ambient_dim < 0) {
        throw DimensionError("negative ambient dimension");
    }
}

BehaviorBasis::BehaviorBasis(Matrix basis, RankTolerance tol)
    : ambient_dim_(basis.rows()), basis_(std::move(basis)), tol_(tol) {}

Projector::Projector(Matrix P) : P_(std::move(P)) {
    if (P_.rows() != P_.cols()) {
        throw DimensionError("projector must be square");
    }
    const double scale = 1.0 + P_.norm();
    if (symmetry_defect() > kSymmetryTol * scale) {
        throw NumericalDegeneracyError("projector is not symmetric (defect " + std::to_string(symmetry_defect()) + ")");
    }
    if (idempotence_defect() > kIdempotenceTol * scale) {
        throw NumericalDegeneracyError("projector is not idempotent (defect " + std::to_string(idempotence_defect()) +
                                       ")");
    }
}

Projector Projector::zero(Eigen::Index ambient_dim) { return Projector(Matrix::Zero(ambient_dim, ambient_dim)); }

Projector Projector::identity(Eigen::Index ambient_dim) {
    return Projector(Matrix::Identity(ambient_dim, ambient_dim));
}

double Projector::symmetry_defect() const { return (P_ - P_.transpose()).norm(); }

double Projector::idempotence_defect() const { return (P_ * P_ - P_).norm(); }

BehaviorBasis orthonormal_basis(const Matrix& M, RankTolerance tol, double scale) {
    if (M.rows() == 0) {
        throw DimensionError("orthonormal_basis of a matrix with no rows");
    }
    if (M.cols() == 0 || M.isZero(0.0)) {
        return BehaviorBasis::zero(M.rows());
    }
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    const double cutoff = tol.threshold(std::max(s(0), scale), M.rows(), M.cols());
    const Eigen::Index r = (s.array() > cutoff).count();
    return BehaviorBasis(svd.matrixU().leftCols(r), tol);
}

Matrix pinv(const Matrix& M, RankTolerance tol) {
    Matrix result = Matrix::Zero(M.cols(), M.rows());
    if (M.size() == 0) {
        return result;
    }
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) {
        return result;
    }
    const double cutoff = tol.threshold(s(0), M.rows(), M.cols());
    const Eigen::Index r = (s.array() > cutoff).count();
    const auto U = svd.matrixU().leftCols(r);
    const auto V = svd.matrixV().leftCols(r);
    result = V * s.head(r).cwiseInverse().asDiagonal() * U.transpose();
    return result;
}

Matrix symmetric_pinv(const Matrix& S, RankTolerance tol) {
    if (S.rows() != S.cols()) {
        throw DimensionError("symmetric_pinv needs a square matrix");
    }
    const Eigen::Index n = S.rows();
    if (n == 0) {
        return S;
    }
    const Matrix sym = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    const auto& lambda = eig.eigenvalues();
    const double largest = lambda.cwiseAbs().maxCoeff();
    if (largest == 0.0) {
        return Matrix::Zero(n, n);
    }
    const double cutoff = tol.threshold(largest, n, n);
    Vector inv = Vector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(lambda(i)) > cutoff) {
            inv(i) = 1.0 / lambda(i);
        }
    }
    const Matrix& V = eig.eigenvectors();
    Matrix result = V * inv.asDiagonal() * V.transpose();
    return 0.5 * (result + result.transpose());
}

Projector projector_onto(const BehaviorBasis& B) {
    const Matrix& Q = B.matrix();
    Matrix P = Q * Q.transpose();
    return Projector(0.5 * (P + P.transpose()));
}

BehaviorBasis image_of(const Projector& P) {
    const Eigen::Index n = P.ambient_dim();
    if (n == 0) {
        return BehaviorBasis::zero(0);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(P.matrix());
    const auto& lambda = eig.eigenvalues(); // ascending
    const Eigen::Index r = (lambda.array() > 0.5).count();
    return orthonormal_basis(eig.eigenvectors().rightCols(r));
}

Projector intersect(const Projector& PV, const Projector& PW, RankTolerance tol) {
    if (PV.ambient_dim() != PW.ambient_dim()) {
        throw DimensionError("intersect: ambient dimensions differ");
    }
    const Matrix sum_pinv = symmetric_pinv(PV.matrix() + PW.matrix(), tol);
    Matrix X = 2.0 * PV.matrix() * sum_pinv * PW.matrix();
    X = 0.5 * (X + X.transpose());
    return Projector(std::move(X));
}

InclusionResult is_subspace_of(const BehaviorBasis& sub, const BehaviorBasis& sup, double tol) {
    if (sub.ambient_dim() != sup.ambient_dim()) {
        throw DimensionError("is_subspace_of: ambient dimensions differ");
    }
    InclusionResult result;
    if (sub.empty()) {
        result.included = true;
        return result;
    }
    const Matrix& Qs = sub.matrix();
    const Matrix& Qp = sup.matrix();
    const Matrix outside = Qs - Qp * (Qp.transpose() * Qs);
    result.residual = outside.norm();
    result.included = result.residual <= tol * (1.0 + Qs.norm());
    return result;
}

std::vector<double> principal_angles(const BehaviorBasis& B1, const BehaviorBasis& B2) {
    if (B1.ambient_dim() != B2.ambient_dim()) {
        throw DimensionError("principal_angles: ambient dimensions differ");
    }
    if (B1.empty() || B2.empty()) {
        return {};
    }
    // Q1 spans the larger subspace so the residual of Q2 carries all sines.
    const bool swap = B1.dim() < B2.dim();
    const Matrix& Q1 = swap ? B2.matrix() : B1.matrix();
    const Matrix& Q2 = swap ? B1.matrix() : B2.matrix();
    const Eigen::Index k = Q2.cols();

    const Matrix cross = Q1.transpose() * Q2;
    Eigen::JacobiSVD<Matrix> cos_svd(cross);
    Vector cosines = cos_svd.singularValues(); // descending

    const Matrix residual = Q2 - Q1 * cross;
    Eigen::JacobiSVD<Matrix> sin_svd(residual);
    Vector sines = Vector::Zero(k);
    const auto& sv = sin_svd.singularValues();
    sines.head(sv.size()) = sv;
    std::sort(sines.data(), sines.data() + k); // ascending, pairs with descending cosines

    std::vector<double> angles(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        const double c = std::clamp(cosines(i), -1.0, 1.0);
        const double s = std::clamp(sines(i), 0.0, 1.0);
        angles[static_cast<std::size_t>(i)] = (c * c >= 0.5) ? std::asin(s) : std::acos(c);
    }
    std::sort(angles.begin(), angles.end(), std::greater<>());
    return angles;
}

double max_principal_angle(const BehaviorBasis& B1, const BehaviorBasis& B2) {
    const auto angles = principal_angles(B1, B2);
    return angles.empty() ? 0.0 : angles.front();
}

bool same_subspace(const BehaviorBasis& B1, const BehaviorBasis& B2, double tol) {
    return B1.ambient_dim() == B2.ambient_dim() && B1.dim() == B2.dim() && max_principal_angle(B1, B2) < tol;
}

BehaviorBasis map_basis(const Matrix& S, const BehaviorBasis& B, RankTolerance tol) {
    if (S.cols() != B.ambient_dim()) {
        throw DimensionError("map_basis: map does not act on the basis ambient space");
    }
    if (B.empty()) {
        return BehaviorBasis::zero(S.rows());
    }
    return orthonormal_basis(S * B.matrix(), tol, S.norm());
}

} // namespace ddc
