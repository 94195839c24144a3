#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ddc/signal.hpp"
#include "ddc/subspace.hpp"

namespace ddc {

struct IntegerInvariants {
    std::size_t m_inputs = 0;
    std::size_t p_outputs = 0;
    std::size_t n_order = 0;
    std::size_t lag = 0;

    friend bool operator==(const IntegerInvariants&, const IntegerInvariants&) = default;
};

/// Input/state/output model
///
///     x(t+1) = A x(t) + B u(t),   y(t) = C x(t) + D u(t)
///
/// The full variable vector is (u, y): inputs at positions 1..m, outputs at
/// m+1..m+p. An optional Partition splits that vector into the w and c roles
/// of a plant; references and controllers carry none.
class StateSpaceModel {
public:
    StateSpaceModel(Matrix A, Matrix B, Matrix C, Matrix D, std::optional<Partition> partition = std::nullopt);

    [[nodiscard]] const Matrix& A() const noexcept { return A_; }
    [[nodiscard]] const Matrix& B() const noexcept { return B_; }
    [[nodiscard]] const Matrix& C() const noexcept { return C_; }
    [[nodiscard]] const Matrix& D() const noexcept { return D_; }
    [[nodiscard]] const std::optional<Partition>& partition() const noexcept { return partition_; }

    // Throws PartitionError when the model carries no partition.
    [[nodiscard]] const Partition& plant_partition() const;

    [[nodiscard]] std::size_t order() const noexcept { return static_cast<std::size_t>(A_.rows()); }
    [[nodiscard]] std::size_t inputs() const noexcept { return static_cast<std::size_t>(B_.cols()); }
    [[nodiscard]] std::size_t outputs() const noexcept { return static_cast<std::size_t>(C_.rows()); }
    [[nodiscard]] std::size_t variables() const noexcept { return inputs() + outputs(); }

    [[nodiscard]] bool controllable(RankTolerance tol = {}) const;
    [[nodiscard]] bool observable(RankTolerance tol = {}) const;

private:
    Matrix A_, B_, C_, D_;
    std::optional<Partition> partition_;
};

/// Driving-variable realization
///
///     x(t+1) = A x(t) + B v(t),   w(t) = C x(t) + D v(t)
///
/// with latent driving input v and manifest w. Every restricted behavior used
/// by the oracles (projections, closed loops, products) is expressed this way.
struct DrivingVariableModel {
    Matrix A;
    Matrix B;
    Matrix C;
    Matrix D;

    // Checks shape consistency; throws DimensionError.
    void validate() const;

    [[nodiscard]] std::size_t order() const noexcept { return static_cast<std::size_t>(A.rows()); }
    [[nodiscard]] std::size_t drivers() const noexcept { return static_cast<std::size_t>(B.cols()); }
    [[nodiscard]] std::size_t variables() const noexcept { return static_cast<std::size_t>(C.rows()); }
};

// Manifest (u, y), driven by u.
[[nodiscard]] DrivingVariableModel driving_variable_form(const StateSpaceModel& model);

// Manifest (w, c) in canonical partition order. Requires a partition.
[[nodiscard]] DrivingVariableModel canonical_plant_form(const StateSpaceModel& plant);

// Keeps manifest channels (0-based) in the given order.
[[nodiscard]] DrivingVariableModel select_manifest(const DrivingVariableModel& model,
                                                   std::span<const std::size_t> channels);

// Uncontrolled plant behavior pi_w(P), manifest w.
[[nodiscard]] DrivingVariableModel uncontrolled_model(const StateSpaceModel& plant);

// Product behavior with manifest (w1, w2) per sample.
[[nodiscard]] DrivingVariableModel product(const DrivingVariableModel& first, const DrivingVariableModel& second);

// Interconnection P ||_c C with manifest (w, c) in canonical order. The
// controller's manifest is c (k channels). Every control channel must be a
// plant input; otherwise PartitionError.
[[nodiscard]] DrivingVariableModel interconnect(const StateSpaceModel& plant, const DrivingVariableModel& controller);

// y(t) = C x(t) + D u(t), x(t+1) = A x(t) + B u(t), x(1) = x0. Returns the
// full (u, y) trajectory. The matrix overload takes an m x T input and also
// covers m = 0.
[[nodiscard]] Trajectory simulate(const StateSpaceModel& model, const Trajectory& u, const Vector& x0);
[[nodiscard]] Trajectory simulate(const StateSpaceModel& model, const Matrix& u, const Vector& x0);
[[nodiscard]] Trajectory simulate(const DrivingVariableModel& model, const Matrix& v, const Vector& x0);

// Observability index as lag; requires an observable model (MinimalityError).
[[nodiscard]] IntegerInvariants invariants_of(const StateSpaceModel& model, RankTolerance tol = {});

// Invariants of the manifest behavior read off dim B|_L = m L + n for L past
// the lag. Works for non-minimal realizations.
[[nodiscard]] IntegerInvariants behavior_invariants(const DrivingVariableModel& model, RankTolerance tol = {});

// Matrix whose columns are the manifest windows generated by each unit
// vector of (x0, v(1..L)), stacked time-major. Size (qL) x (n + dL).
[[nodiscard]] Matrix behavior_generator(const DrivingVariableModel& model, std::size_t L);

[[nodiscard]] BehaviorBasis restricted_behavior_basis(const DrivingVariableModel& model, std::size_t L,
                                                      RankTolerance tol = {});
// Full (u, y) layout.
[[nodiscard]] BehaviorBasis restricted_behavior_basis(const StateSpaceModel& model, std::size_t L,
                                                      RankTolerance tol = {});

// Hidden behavior N|_L = Pi_w(P|_L intersected with {c = 0}), from the plant's
// oracle basis. Valid as the restriction of N for L > lag(P).
[[nodiscard]] BehaviorBasis hidden_behavior_basis(const StateSpaceModel& plant, std::size_t L,
                                                  RankTolerance tol = {});

// Random minimal plant with q_w to-be-controlled and q_c control channels.
// The control channels are plant inputs; the remaining inputs and all
// outputs are to-be-controlled. Spectral radius of A lies in [0.5, 0.9].
// Deterministic in seed; throws GenerationError after 1000 rejected draws.
[[nodiscard]] StateSpaceModel random_minimal_model(std::size_t q_w, std::size_t q_c, std::size_t n,
                                                   std::uint64_t seed);

// Random stable driving-variable model with q manifest channels, d drivers
// and n states. Deterministic in seed.
[[nodiscard]] DrivingVariableModel random_driving_model(std::size_t q, std::size_t d, std::size_t n,
                                                        std::uint64_t seed);

} // namespace ddc
