#pragma once

#include <optional>
#include <string>

#include "ddc/lti.hpp"
#include "ddc/signal.hpp"
#include "ddc/subspace.hpp"

namespace ddc {

// Caller-supplied integer invariants (m, n) used for the GPE rank test.
struct InvariantBounds {
    std::size_t m = 0;
    std::size_t n = 0;
};

/// Measured plant and reference trajectories plus everything needed to run
/// the data-driven test at horizon L.
struct DataBundle {
    Trajectory plant_traj; // partition.total() channels
    Trajectory ref_traj;   // partition.q() channels
    std::size_t L = 1;
    Partition partition;
    // Upper bound on max{lag(P), lag(R), lag(pi_w(P))}; L must exceed it.
    std::size_t lag_bound = 0;
    std::optional<InvariantBounds> plant_bounds;
    std::optional<InvariantBounds> ref_bounds;

    // Throws DimensionError / RangeError / HorizonError.
    void validate() const;
};

struct Tolerances {
    double residual = kAngleTol;
    RankTolerance rank{};
};

struct ImplementabilityVerdict {
    // Both inclusions hold and, for data, both trajectories passed the GPE test.
    bool implementable = false;
    // Both inclusions hold, regardless of GPE.
    bool inclusions_hold = false;
    std::optional<Matrix> phi; // N = R Phi on orthonormal bases
    std::optional<Matrix> psi; // R = P_w Psi on orthonormal bases
    // ||(I - P_sup) Q_sub||_F / (1 + ||Q_sub||_F)
    double residual_hidden_in_ref = 0.0;
    double residual_ref_in_plant = 0.0;
    bool gpe_plant = false;
    bool gpe_ref = false;
    Eigen::Index rank_hidden = 0;
    Eigen::Index rank_ref = 0;
    Eigen::Index rank_uncontrolled = 0;
};

// Image of H_L(w) (I - H_L(c)^+ H_L(c)): hidden behavior N|_L.
[[nodiscard]] BehaviorBasis hidden_basis(const Trajectory& plant_traj, const Partition& partition, std::size_t L,
                                         RankTolerance tol = {});

// Image of H_L(r): R|_L.
[[nodiscard]] BehaviorBasis reference_basis(const Trajectory& ref_traj, std::size_t L, RankTolerance tol = {});

// Image of H_L(w), w channels only: pi_w(P)|_L.
[[nodiscard]] BehaviorBasis uncontrolled_basis(const Trajectory& plant_traj, const Partition& partition,
                                               std::size_t L, RankTolerance tol = {});

// Tests N|_L within R|_L within pi_w(P)|_L from data.
[[nodiscard]] ImplementabilityVerdict check_data(const DataBundle& bundle, const Tolerances& tol = {});

// Same inclusions from model oracles. Throws HorizonError unless L exceeds
// max{lag(P), lag(R), lag(pi_w(P))}.
[[nodiscard]] ImplementabilityVerdict check_model(const StateSpaceModel& plant, const DrivingVariableModel& ref,
                                                  std::size_t L, const Tolerances& tol = {});
[[nodiscard]] ImplementabilityVerdict check_model(const StateSpaceModel& plant, const StateSpaceModel& ref,
                                                  std::size_t L, const Tolerances& tol = {});

// Smallest horizon admissible for check_model minus one:
// max{lag(P), lag(R), lag(pi_w(P))}.
[[nodiscard]] std::size_t model_lag_bound(const StateSpaceModel& plant, const DrivingVariableModel& ref,
                                          RankTolerance tol = {});

// {implementable, inclusions_hold, residuals:{hidden_in_ref, ref_in_plant},
//  gpe:{plant, ref}, ranks:{N, R, Pw}}
[[nodiscard]] std::string verdict_to_json(const ImplementabilityVerdict& verdict);

} // namespace ddc
