#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "ddc/implementability.hpp"
#include "ddc/lti.hpp"

namespace ddc {

enum class ScenarioKind {
    // Reference = pi_w of the plant interconnected with a random controller.
    Implementable,
    // Unrelated random reference behavior with fewer drivers than channels.
    RandomReference,
    // Implementable reference with perturbed output maps.
    PerturbedReference,
};

[[nodiscard]] std::string_view to_string(ScenarioKind kind);

struct ScenarioDims {
    std::size_t max_q_w = 2;
    std::size_t max_q_c = 2;
    std::size_t max_plant_order = 3;
    std::size_t max_controller_order = 2;
    std::size_t max_reference_order = 3;
};

/// Random plant/reference pair with GPE data at horizon L.
struct Scenario {
    std::uint64_t seed = 0;
    ScenarioKind kind = ScenarioKind::Implementable;
    StateSpaceModel plant;
    DrivingVariableModel reference;
    std::optional<DrivingVariableModel> controller;
    IntegerInvariants plant_invariants;
    IntegerInvariants reference_invariants;
    std::size_t lag_bound = 0;
    std::size_t L = 1;
    Trajectory plant_traj;
    Trajectory ref_traj;

    [[nodiscard]] DataBundle bundle() const;
};

// Trajectory of the model whose depth-L Hankel matrix has rank m L + n.
// Length (m + 1)(L + n) + n + 5 from random x0 and driving inputs; redraws
// up to 20 times before throwing GenerationError.
[[nodiscard]] Trajectory gpe_trajectory(const DrivingVariableModel& model, const IntegerInvariants& inv,
                                        std::size_t L, std::uint64_t seed, RankTolerance tol = {});

// Plant data in the plant's own (u, y) channel order.
[[nodiscard]] Trajectory gpe_plant_trajectory(const StateSpaceModel& plant, std::size_t L, std::uint64_t seed,
                                              RankTolerance tol = {});

// L = lag_bound + extra_horizon. Deterministic in (seed, kind, dims).
[[nodiscard]] Scenario make_scenario(std::uint64_t seed, ScenarioKind kind, const ScenarioDims& dims = {},
                                     std::size_t extra_horizon = 1);

} // namespace ddc
