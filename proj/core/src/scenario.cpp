#include "ddc/scenario.hpp"

#include <random>

#include "ddc/errors.hpp"

namespace ddc {
namespace {

constexpr int kGpeAttempts = 20;

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 step, so sub-seeds of nearby seeds are unrelated
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Matrix gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix M(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            M(i, j) = normal(rng);
        }
    }
    return M;
}

} // namespace

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::Implementable:
        return "implementable";
    case ScenarioKind::RandomReference:
        return "random-reference";
    case ScenarioKind::PerturbedReference:
        return "perturbed-reference";
    }
    return "unknown";
}

DataBundle Scenario::bundle() const {
    return DataBundle{plant_traj,
                      ref_traj,
                      L,
                      plant.plant_partition(),
                      lag_bound,
                      InvariantBounds{plant_invariants.m_inputs, plant_invariants.n_order},
                      InvariantBounds{reference_invariants.m_inputs, reference_invariants.n_order}};
}

Trajectory gpe_trajectory(const DrivingVariableModel& model, const IntegerInvariants& inv, std::size_t L,
                          std::uint64_t seed, RankTolerance tol) {
    const std::size_t T = (inv.m_inputs + 1) * (L + inv.n_order) + inv.n_order + 5;
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kGpeAttempts; ++attempt) {
        const Vector x0 = gaussian(rng, model.A.rows(), 1);
        const Matrix v = gaussian(rng, model.B.cols(), static_cast<Eigen::Index>(T));
        Trajectory w = simulate(model, v, x0);
        if (is_gpe(w, L, inv.m_inputs, inv.n_order, tol).gpe) {
            return w;
        }
    }
    throw GenerationError("no GPE trajectory after " + std::to_string(kGpeAttempts) + " draws");
}

Trajectory gpe_plant_trajectory(const StateSpaceModel& plant, std::size_t L, std::uint64_t seed, RankTolerance tol) {
    const DrivingVariableModel dv = driving_variable_form(plant);
    return gpe_trajectory(dv, behavior_invariants(dv, tol), L, seed, tol);
}

Scenario make_scenario(std::uint64_t seed, ScenarioKind kind, const ScenarioDims& dims, std::size_t extra_horizon) {
    std::mt19937_64 rng(mix(seed, 0));
    const std::size_t q_w = draw(rng, 1, dims.max_q_w);
    const std::size_t q_c = draw(rng, 1, dims.max_q_c);
    const std::size_t n = draw(rng, 0, dims.max_plant_order);
    StateSpaceModel plant = random_minimal_model(q_w, q_c, n, mix(seed, 1));

    std::optional<DrivingVariableModel> controller;
    DrivingVariableModel reference;
    if (kind == ScenarioKind::RandomReference) {
        // Fewer drivers than channels, so the reference is never the whole space.
        const std::size_t d = draw(rng, 0, q_w - 1);
        const std::size_t nr = draw(rng, 0, dims.max_reference_order);
        reference = random_driving_model(q_w, d, nr, mix(seed, 2));
    } else {
        const std::size_t d = draw(rng, 0, q_c);
        const std::size_t nk = draw(rng, 0, dims.max_controller_order);
        controller = random_driving_model(q_c, d, nk, mix(seed, 3));
        std::vector<std::size_t> w(q_w);
        for (std::size_t i = 0; i < q_w; ++i) {
            w[i] = i;
        }
        reference = select_manifest(interconnect(plant, *controller), w);
        if (kind == ScenarioKind::PerturbedReference) {
            std::mt19937_64 noise(mix(seed, 4));
            constexpr double eps = 0.05;
            reference.C += eps * gaussian(noise, reference.C.rows(), reference.C.cols());
            reference.D += eps * gaussian(noise, reference.D.rows(), reference.D.cols());
        }
    }

    const DrivingVariableModel plant_dv = driving_variable_form(plant);
    const IntegerInvariants plant_inv = behavior_invariants(plant_dv);
    const IntegerInvariants ref_inv = behavior_invariants(reference);
    const std::size_t lag = model_lag_bound(plant, reference);
    const std::size_t L = lag + extra_horizon;

    Trajectory plant_traj = gpe_trajectory(plant_dv, plant_inv, L, mix(seed, 5));
    Trajectory ref_traj = gpe_trajectory(reference, ref_inv, L, mix(seed, 6));
    return Scenario{seed,    kind, std::move(plant), std::move(reference), std::move(controller),
                    plant_inv, ref_inv, lag, L, std::move(plant_traj), std::move(ref_traj)};
}

} // namespace ddc
