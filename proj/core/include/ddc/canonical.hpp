#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddc/signal.hpp"
#include "ddc/subspace.hpp"

namespace ddc {

/// Coordinate permutation between block order (all w samples, then all c
/// samples) and the interleaved order ((w(1), c(1)), ..., (w(L), c(L))).
class PermutationPlan {
public:
    PermutationPlan(std::size_t q, std::size_t k, std::size_t L);

    [[nodiscard]] std::size_t q() const noexcept { return q_; }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] std::size_t L() const noexcept { return L_; }
    [[nodiscard]] std::size_t size() const noexcept { return perm_.size(); }

    // perm()[i] is the interleaved position of block coordinate i (0-based).
    [[nodiscard]] const std::vector<std::size_t>& perm() const noexcept { return perm_; }

    // Permutation matrix Pi with x_interleaved = Pi * x_block.
    [[nodiscard]] Matrix matrix() const;

    [[nodiscard]] Vector to_interleaved(const Vector& block) const;
    [[nodiscard]] Vector to_block(const Vector& interleaved) const;

    // Selections of the w and c coordinates from an interleaved vector.
    [[nodiscard]] Matrix select_w() const;
    [[nodiscard]] Matrix select_c() const;

private:
    std::size_t q_, k_, L_;
    std::vector<std::size_t> perm_;
};

// Restricted controller behavior C|_L in R^{kL}, time-major.
struct ControllerBasis {
    BehaviorBasis basis;
    std::size_t k = 0;
    std::size_t L = 0;
};

// Reorders plant channels into per-sample (w, c) order.
[[nodiscard]] Trajectory canonical_plant_trajectory(const Trajectory& plant_traj, const Partition& partition);

// Orthogonal projector onto Image H_L((w, c)) in interleaved layout.
[[nodiscard]] Projector plant_projector(const Trajectory& plant_traj, const Partition& partition, std::size_t L,
                                        RankTolerance tol = {});

// blockdiag(R R^+, I_kL) conjugated into interleaved layout: the projector
// onto R|_L x R^{kL}.
[[nodiscard]] Projector reference_lift_projector(const Trajectory& ref_traj, std::size_t k, std::size_t L,
                                                 const PermutationPlan& plan, RankTolerance tol = {});

// Same lift from a known basis of R|_L.
[[nodiscard]] Projector lift_projector(const BehaviorBasis& w_part, const BehaviorBasis& c_part,
                                       const PermutationPlan& plan);

// Image of Pi_c P_r (P_r + P_p)^+ P_p. Evaluated for any inputs.
[[nodiscard]] ControllerBasis controller_basis(const Projector& P_r, const Projector& P_p,
                                               const PermutationPlan& plan, RankTolerance tol = {});

// Pi_c applied to the image of intersect(P_r, P_p): the same subspace via
// the projector-on-intersection formula.
[[nodiscard]] ControllerBasis controller_basis_by_intersection(const Projector& P_r, const Projector& P_p,
                                                               const PermutationPlan& plan, RankTolerance tol = {});

struct ClosedLoopReport {
    bool implements = false;
    // Principal angles between Pi_w(P|_L cap (R^{qL} x C|_L)) and R|_L,
    // nonincreasing, padded with pi/2 for each dimension mismatch.
    std::vector<double> angles;
    double max_angle = 0.0;
    Eigen::Index interconnection_dim = 0;
    Eigen::Index controlled_dim = 0;
    Eigen::Index reference_dim = 0;
};

// Forms the interconnection of the plant with the controller and compares
// its w-projection against the reference.
[[nodiscard]] ClosedLoopReport verify_closed_loop(const BehaviorBasis& plant, const ControllerBasis& controller,
                                                  const BehaviorBasis& reference, const PermutationPlan& plan,
                                                  double angle_tol = kAngleTol, RankTolerance tol = {});

// Random element of C|_L as a k-channel trajectory of length L.
// Throws EmptySubspaceError for a zero-dimensional controller.
[[nodiscard]] Trajectory sample_controller_trajectory(const ControllerBasis& controller, std::uint64_t seed);

// kL rows x r columns, no header.
void write_controller_csv(std::ostream& out, const ControllerBasis& controller);
// {k, L, rank, layout: "interleaved-time-major"}
[[nodiscard]] std::string controller_sidecar_json(const ControllerBasis& controller);

} // namespace ddc
