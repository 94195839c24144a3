#include "ddc/canonical.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include <json.hpp>

#include "ddc/csv.hpp"
#include "ddc/errors.hpp"

namespace ddc {

PermutationPlan::PermutationPlan(std::size_t q, std::size_t k, std::size_t L) : q_(q), k_(k), L_(L) {
    if (q < 1 || k < 1 || L < 1) {
        throw DimensionError("permutation plan needs q, k, L >= 1");
    }
    const std::size_t stride = q + k;
    perm_.resize(stride * L);
    for (std::size_t t = 0; t < L; ++t) {
        for (std::size_t i = 0; i < q; ++i) {
            perm_[t * q + i] = t * stride + i;
        }
        for (std::size_t j = 0; j < k; ++j) {
            perm_[q * L + t * k + j] = t * stride + q + j;
        }
    }
}

Matrix PermutationPlan::matrix() const {
    const auto n = static_cast<Eigen::Index>(perm_.size());
    Matrix Pi = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Pi(static_cast<Eigen::Index>(perm_[static_cast<std::size_t>(i)]), i) = 1.0;
    }
    return Pi;
}

Vector PermutationPlan::to_interleaved(const Vector& block) const {
    if (static_cast<std::size_t>(block.size()) != perm_.size()) {
        throw DimensionError("vector length does not match the permutation plan");
    }
    Vector out(block.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) {
        out(static_cast<Eigen::Index>(perm_[i])) = block(static_cast<Eigen::Index>(i));
    }
    return out;
}

Vector PermutationPlan::to_block(const Vector& interleaved) const {
    if (static_cast<std::size_t>(interleaved.size()) != perm_.size()) {
        throw DimensionError("vector length does not match the permutation plan");
    }
    Vector out(interleaved.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = interleaved(static_cast<Eigen::Index>(perm_[i]));
    }
    return out;
}

Matrix PermutationPlan::select_w() const { return matrix().leftCols(static_cast<Eigen::Index>(q_ * L_)).transpose(); }

Matrix PermutationPlan::select_c() const {
    return matrix().rightCols(static_cast<Eigen::Index>(k_ * L_)).transpose();
}

Trajectory canonical_plant_trajectory(const Trajectory& plant_traj, const Partition& partition) {
    if (plant_traj.channels() != partition.total()) {
        throw DimensionError("plant trajectory channel count does not match the partition");
    }
    return plant_traj.select_channels(partition.canonical_order());
}

Projector plant_projector(const Trajectory& plant_traj, const Partition& partition, std::size_t L,
                          RankTolerance tol) {
    const Matrix H = hankel(canonical_plant_trajectory(plant_traj, partition), L);
    return projector_onto(orthonormal_basis(H, tol));
}

Projector lift_projector(const BehaviorBasis& w_part, const BehaviorBasis& c_part, const PermutationPlan& plan) {
    const auto qL = static_cast<Eigen::Index>(plan.q() * plan.L());
    const auto kL = static_cast<Eigen::Index>(plan.k() * plan.L());
    if (w_part.ambient_dim() != qL || c_part.ambient_dim() != kL) {
        throw DimensionError("lift_projector: bases do not match the permutation plan");
    }
    Matrix block = Matrix::Zero(qL + kL, qL + kL);
    block.topLeftCorner(qL, qL) = projector_onto(w_part).matrix();
    block.bottomRightCorner(kL, kL) = projector_onto(c_part).matrix();
    const Matrix Pi = plan.matrix();
    return Projector(Pi * block * Pi.transpose());
}

Projector reference_lift_projector(const Trajectory& ref_traj, std::size_t k, std::size_t L,
                                   const PermutationPlan& plan, RankTolerance tol) {
    if (plan.k() != k || plan.L() != L || plan.q() != ref_traj.channels()) {
        throw DimensionError("reference_lift_projector: plan does not match q, k, L");
    }
    const auto kL = static_cast<Eigen::Index>(k * L);
    const BehaviorBasis ref = orthonormal_basis(hankel(ref_traj, L), tol);
    const BehaviorBasis all_c = orthonormal_basis(Matrix::Identity(kL, kL), tol);
    return lift_projector(ref, all_c, plan);
}

ControllerBasis controller_basis(const Projector& P_r, const Projector& P_p, const PermutationPlan& plan,
                                 RankTolerance tol) {
    if (P_r.ambient_dim() != P_p.ambient_dim() || static_cast<std::size_t>(P_r.ambient_dim()) != plan.size()) {
        throw DimensionError("controller_basis: projector sizes do not match the plan");
    }
    const Matrix X = P_r.matrix() * symmetric_pinv(P_r.matrix() + P_p.matrix(), tol) * P_p.matrix();
    const Matrix selected = plan.select_c() * X;
    return {orthonormal_basis(selected, tol, 1.0), plan.k(), plan.L()};
}

ControllerBasis controller_basis_by_intersection(const Projector& P_r, const Projector& P_p,
                                                 const PermutationPlan& plan, RankTolerance tol) {
    const Projector both = intersect(P_r, P_p, tol);
    return {map_basis(plan.select_c(), image_of(both), tol), plan.k(), plan.L()};
}

ClosedLoopReport verify_closed_loop(const BehaviorBasis& plant, const ControllerBasis& controller,
                                    const BehaviorBasis& reference, const PermutationPlan& plan, double angle_tol,
                                    RankTolerance tol) {
    const auto qL = static_cast<Eigen::Index>(plan.q() * plan.L());
    if (static_cast<std::size_t>(plant.ambient_dim()) != plan.size() ||
        controller.basis.ambient_dim() != static_cast<Eigen::Index>(plan.k() * plan.L()) ||
        reference.ambient_dim() != qL) {
        throw DimensionError("verify_closed_loop: inconsistent ambient dimensions");
    }
    const BehaviorBasis all_w = orthonormal_basis(Matrix::Identity(qL, qL), tol);
    const Projector lift = lift_projector(all_w, controller.basis, plan);
    const BehaviorBasis interconnection = image_of(intersect(lift, projector_onto(plant), tol));
    const BehaviorBasis controlled = map_basis(plan.select_w(), interconnection, tol);

    ClosedLoopReport report;
    report.interconnection_dim = interconnection.dim();
    report.controlled_dim = controlled.dim();
    report.reference_dim = reference.dim();
    report.angles = principal_angles(controlled, reference);
    // Directions present in only one of the two subspaces are orthogonal to the other.
    const auto missing = std::abs(controlled.dim() - reference.dim());
    report.angles.insert(report.angles.begin(), static_cast<std::size_t>(missing), std::numbers::pi / 2);
    report.max_angle = report.angles.empty() ? 0.0 : report.angles.front();
    report.implements = controlled.dim() == reference.dim() && report.max_angle < angle_tol;
    return report;
}

Trajectory sample_controller_trajectory(const ControllerBasis& controller, std::uint64_t seed) {
    if (controller.basis.empty()) {
        throw EmptySubspaceError("controller behavior is zero-dimensional");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector coeffs(controller.basis.dim());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        coeffs(i) = normal(rng);
    }
    return unstack(controller.basis.matrix() * coeffs, controller.k);
}

void write_controller_csv(std::ostream& out, const ControllerBasis& controller) {
    write_matrix_csv(out, controller.basis.matrix());
}

std::string controller_sidecar_json(const ControllerBasis& controller) {
    nlohmann::ordered_json doc;
    doc["k"] = controller.k;
    doc["L"] = controller.L;
    doc["rank"] = controller.basis.dim();
    doc["layout"] = "interleaved-time-major";
    return doc.dump(2);
}

} // namespace ddc
