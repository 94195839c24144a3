#include <benchmark/benchmark.h>

#include <random>

#include "ddc/canonical.hpp"
#include "ddc/implementability.hpp"
#include "ddc/scenario.hpp"
#include "ddc/subspace.hpp"

using namespace ddc;

namespace {

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

Scenario bench_scenario(std::size_t extra) {
    ScenarioDims dims;
    dims.max_q_w = dims.max_q_c = 2;
    dims.max_plant_order = 4;
    return make_scenario(17, ScenarioKind::Implementable, dims, extra);
}

} // namespace

static void BM_Hankel(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto T = static_cast<Eigen::Index>(state.range(0));
    const Trajectory w = Trajectory::from_columns(gaussian(rng, 4, T));
    const auto L = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hankel(w, L));
    }
}
BENCHMARK(BM_Hankel)->Args({200, 5})->Args({1000, 10})->Args({5000, 20});

static void BM_Intersect(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const auto n = static_cast<Eigen::Index>(state.range(0));
    const Matrix S = gaussian(rng, n, n / 4);
    Matrix V(n, n / 2), W(n, n / 2);
    V << S, gaussian(rng, n, n / 2 - n / 4);
    W << S, gaussian(rng, n, n / 2 - n / 4);
    const Projector PV = projector_onto(orthonormal_basis(V));
    const Projector PW = projector_onto(orthonormal_basis(W));
    for (auto _ : state) {
        benchmark::DoNotOptimize(intersect(PV, PW));
    }
}
BENCHMARK(BM_Intersect)->Arg(20)->Arg(60)->Arg(120);

static void BM_CheckData(benchmark::State& state) {
    const Scenario s = bench_scenario(static_cast<std::size_t>(state.range(0)));
    const DataBundle bundle = s.bundle();
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_data(bundle));
    }
    state.counters["L"] = static_cast<double>(s.L);
}
BENCHMARK(BM_CheckData)->Arg(1)->Arg(4)->Arg(8);

static void BM_ControllerSynthesis(benchmark::State& state) {
    const Scenario s = bench_scenario(static_cast<std::size_t>(state.range(0)));
    const Partition& part = s.plant.plant_partition();
    const PermutationPlan plan(part.q(), part.k(), s.L);
    for (auto _ : state) {
        const Projector P_p = plant_projector(s.plant_traj, part, s.L);
        const Projector P_r = reference_lift_projector(s.ref_traj, part.k(), s.L, plan);
        benchmark::DoNotOptimize(controller_basis(P_r, P_p, plan));
    }
    state.counters["L"] = static_cast<double>(s.L);
}
BENCHMARK(BM_ControllerSynthesis)->Arg(1)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
