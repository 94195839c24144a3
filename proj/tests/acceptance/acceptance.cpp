// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ddc/canonical.hpp"
#include "ddc/implementability.hpp"
#include "ddc/lti.hpp"
#include "ddc/scenario.hpp"
#include "ddc/subspace.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ddc;

namespace {

constexpr double kAngle = 1e-8;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Tally {
    int cases = 0;
    int failures = 0;
    double worst = 0.0;
    std::string first_failure;

    void record(bool ok, double value, const std::string& label) {
        ++cases;
        worst = std::max(worst, value);
        if (!ok) {
            ++failures;
            if (first_failure.empty()) {
                first_failure = label;
            }
        }
    }
    std::string summary(const std::string& what) const {
        std::ostringstream s;
        s << (cases - failures) << "/" << cases << " " << what << ", worst " << worst;
        if (!first_failure.empty()) {
            s << ", first failure " << first_failure;
        }
        return s.str();
    }
};

double angle_between(const BehaviorBasis& a, const BehaviorBasis& b) {
    if (a.dim() != b.dim()) {
        return M_PI / 2;
    }
    return max_principal_angle(a, b);
}

double angle_between(const BehaviorBasis& a, const Matrix& oracle) { return angle_between(a, orthonormal_basis(oracle)); }

// Interleaves per-sample blocks of two bases: rows (w1(t), w2(t)).
Matrix interleaved_product(const Matrix& B1, std::size_t q1, const Matrix& B2, std::size_t q2, std::size_t L) {
    const auto stride = static_cast<Eigen::Index>(q1 + q2);
    Matrix out = Matrix::Zero(stride * static_cast<Eigen::Index>(L), B1.cols() + B2.cols());
    for (std::size_t t = 0; t < L; ++t) {
        const auto row = static_cast<Eigen::Index>(t) * stride;
        out.block(row, 0, static_cast<Eigen::Index>(q1), B1.cols()) =
            B1.middleRows(static_cast<Eigen::Index>(t * q1), static_cast<Eigen::Index>(q1));
        out.block(row + static_cast<Eigen::Index>(q1), B1.cols(), static_cast<Eigen::Index>(q2), B2.cols()) =
            B2.middleRows(static_cast<Eigen::Index>(t * q2), static_cast<Eigen::Index>(q2));
    }
    return out;
}

Matrix keep_rows(const Matrix& M, std::size_t stride, const std::vector<std::size_t>& picks, std::size_t L) {
    Matrix out(static_cast<Eigen::Index>(picks.size() * L), M.cols());
    Eigen::Index r = 0;
    for (std::size_t t = 0; t < L; ++t) {
        for (auto p : picks) {
            out.row(r++) = M.row(static_cast<Eigen::Index>(t * stride + p - 1));
        }
    }
    return out;
}

// v = F x + G v' keeps every trajectory inside the original behavior.
DrivingVariableModel sub_behavior(const DrivingVariableModel& b, Eigen::Index drivers, std::mt19937_64& rng) {
    const Matrix F = 0.3 * test::random_matrix(rng, b.B.cols(), b.A.rows());
    const Matrix G = test::random_matrix(rng, b.B.cols(), drivers);
    return {b.A + b.B * F, b.B * G, b.C + b.D * F, b.D * G};
}

// Parallel sum: trajectories w1 + w2.
DrivingVariableModel sum_behavior(const DrivingVariableModel& a, const DrivingVariableModel& b) {
    const auto na = a.A.rows(), nb = b.A.rows(), da = a.B.cols(), db = b.B.cols();
    DrivingVariableModel s{Matrix::Zero(na + nb, na + nb), Matrix::Zero(na + nb, da + db),
                           Matrix(a.C.rows(), na + nb), Matrix(a.D.rows(), da + db)};
    s.A.topLeftCorner(na, na) = a.A;
    s.A.bottomRightCorner(nb, nb) = b.A;
    s.B.topLeftCorner(na, da) = a.B;
    s.B.bottomRightCorner(nb, db) = b.B;
    s.C << a.C, b.C;
    s.D << a.D, b.D;
    return s;
}

Outcome fundamental_lemma() {
    Tally angles, ranks;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        const std::size_t q_w = 1 + rng() % 3;
        const std::size_t q_c = 1 + rng() % (4 - q_w);
        const std::size_t n = rng() % 5;
        const auto model = random_minimal_model(q_w, q_c, n, 10'000 + seed);
        const std::size_t m = model.inputs();
        const std::size_t lag = test::observability_index(model);
        for (std::size_t L : {lag + 1, lag + 2}) {
            const std::size_t T = (m + 1) * (L + n) + n + 5;
            const Matrix u = test::random_matrix(rng, static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(T));
            const Matrix x0 = test::random_matrix(rng, static_cast<Eigen::Index>(n), 1);
            const Trajectory w = simulate(model, u, x0.col(0));
            const Matrix H = hankel(w, L);
            const std::string label = "seed " + std::to_string(seed) + " L " + std::to_string(L);
            const auto expected = static_cast<Eigen::Index>(m * L + n);
            ranks.record(numerical_rank(H) == expected && test::lu_rank(H) == expected, 0.0, label);
            const double a = angle_between(orthonormal_basis(H), test::recursion_generator(model, L));
            angles.record(a < kAngle, a, label);
        }
    }
    return {angles.failures == 0 && ranks.failures == 0,
            angles.summary("angle < 1e-8") + "; " + ranks.summary("rank = mL+n")};
}

Outcome data_model_agreement() {
    Tally agree, residuals;
    int positives = 0, negatives = 0;
    const auto run = [&](std::uint64_t seed, ScenarioKind kind) {
        const auto s = make_scenario(seed, kind);
        const auto data = check_data(s.bundle());
        const auto model = check_model(s.plant, s.reference, s.L);
        const std::string label = "seed " + std::to_string(seed) + " " + std::string(to_string(kind));
        agree.record(data.implementable == model.implementable, 0.0, label);
        (model.implementable ? positives : negatives)++;
        if (data.implementable) {
            const double r = std::max(data.residual_hidden_in_ref, data.residual_ref_in_plant);
            residuals.record(r < kAngle, r, label);
        }
        if (kind == ScenarioKind::Implementable) {
            agree.record(data.implementable, 0.0, label + " (constructed positive)");
        }
    };
    for (std::uint64_t i = 0; i < 50; ++i) {
        run(20'000 + i, ScenarioKind::Implementable);
        run(30'000 + i, i % 2 == 0 ? ScenarioKind::RandomReference : ScenarioKind::PerturbedReference);
    }
    std::ostringstream s;
    s << agree.summary("agreements") << "; " << residuals.summary("positive residuals < 1e-8") << "; model verdicts "
      << positives << " positive / " << negatives << " negative";
    return {agree.failures == 0 && residuals.failures == 0, s.str()};
}

Outcome canonical_exactness() {
    Tally loop, routes;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const std::uint64_t seed = 40'000 + i;
        const auto s = make_scenario(seed, ScenarioKind::Implementable);
        const auto& part = s.plant.plant_partition();
        const PermutationPlan plan(part.q(), part.k(), s.L);
        const Projector P_p = plant_projector(s.plant_traj, part, s.L);
        const Projector P_r = reference_lift_projector(s.ref_traj, part.k(), s.L, plan);
        const auto C = controller_basis(P_r, P_p, plan);
        const auto report = verify_closed_loop(image_of(P_p), C, reference_basis(s.ref_traj, s.L), plan);
        const std::string label = "seed " + std::to_string(seed);
        loop.record(report.implements && report.max_angle < kAngle, report.max_angle, label);
        const auto route = controller_basis_by_intersection(P_r, P_p, plan);
        const double a = angle_between(C.basis, route.basis);
        routes.record(a < kAngle, a, label);
    }
    return {loop.failures == 0 && routes.failures == 0,
            loop.summary("closed loops within 1e-8") + "; " + routes.summary("formula/intersection images within 1e-8")};
}

Outcome projector_intersection() {
    Tally angles, invariants;
    std::mt19937_64 rng(50'000);
    constexpr Eigen::Index dim = 20;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index shared = static_cast<Eigen::Index>(rng() % 7);
        Eigen::Index a = static_cast<Eigen::Index>(rng() % 8);
        Eigen::Index b = static_cast<Eigen::Index>(rng() % 8);
        if (trial % 20 == 0) {
            a = b = 0; // identical subspaces
        } else if (trial % 20 == 1) {
            a = 0; // nested
        }
        const Matrix S = test::random_matrix(rng, dim, shared);
        Matrix V(dim, shared + a), W(dim, shared + b);
        V << S, test::random_matrix(rng, dim, a);
        W << S, test::random_matrix(rng, dim, b);
        const std::string label = "trial " + std::to_string(trial);
        const Projector P = intersect(projector_onto(orthonormal_basis(V)), projector_onto(orthonormal_basis(W)));
        const Matrix oracle = test::kernel_intersection(V, W);
        const double angle = angle_between(image_of(P), oracle);
        angles.record(angle < kAngle, angle, label);
        const Matrix& M = P.matrix();
        const double scale = 1.0 + M.norm();
        const double defect = std::max((M - M.transpose()).norm() / scale, (M * M - M).norm() / scale);
        invariants.record(defect < 1e-10, defect, label);
    }
    return {angles.failures == 0 && invariants.failures == 0,
            angles.summary("angle < 1e-8") + "; " + invariants.summary("symmetric/idempotent to 1e-10")};
}

Outcome restricted_behavior_operations() {
    Tally projection, intersection, product_t, inclusion;
    for (std::uint64_t i = 0; i < 50; ++i) {
        std::mt19937_64 rng(60'000 + i);
        const std::string label = "pair " + std::to_string(i);

        // Coordinate projection, all horizons.
        {
            const auto plant = random_minimal_model(1 + i % 2, 1 + (i / 2) % 2, i % 4, 61'000 + i);
            const auto& part = plant.plant_partition();
            const std::size_t L = 1 + i % 4;
            const PermutationPlan plan(part.q(), part.k(), L);
            const auto projected = map_basis(plan.select_w(), restricted_behavior_basis(canonical_plant_form(plant), L));
            const Matrix oracle = keep_rows(test::recursion_generator(plant, L), part.total(), part.picks_w(), L);
            const double a = angle_between(projected, oracle);
            projection.record(a < kAngle, a, label);
        }

        // Intersection past the lags, and containment at L = 1.
        {
            const std::size_t q = 2 + i % 2;
            const auto B1 = random_driving_model(q, 1, i % 3, 62'000 + i);
            const auto S = sub_behavior(B1, static_cast<Eigen::Index>(i % 2), rng);
            const auto B2 = sum_behavior(S, random_driving_model(q, 0, 1 + i % 2, 63'000 + i));
            const std::size_t lag = std::max(behavior_invariants(B1).lag, behavior_invariants(B2).lag);
            const std::size_t L = lag + 1 + i % 2;
            const std::size_t long_L = L + 8;
            const auto restricted = image_of(intersect(projector_onto(restricted_behavior_basis(B1, L)),
                                                       projector_onto(restricted_behavior_basis(B2, L))));
            const double a = angle_between(restricted, test::long_horizon_intersection(B1, B2, L, long_L));
            const auto short_restricted = image_of(intersect(projector_onto(restricted_behavior_basis(B1, 1)),
                                                             projector_onto(restricted_behavior_basis(B2, 1))));
            const auto short_oracle = orthonormal_basis(test::long_horizon_intersection(B1, B2, 1, long_L));
            const bool contained = is_subspace_of(short_oracle, short_restricted).included;
            intersection.record(a < kAngle && contained, a, label);
        }

        // Cartesian product, all horizons.
        {
            const std::size_t q1 = 1 + i % 2, q2 = 1 + (i / 2) % 2;
            const auto B1 = random_driving_model(q1, i % 2, i % 3, 64'000 + i);
            const auto B2 = random_driving_model(q2, (i / 3) % 2, (i / 2) % 3, 65'000 + i);
            const std::size_t L = 1 + i % 4;
            const auto lhs = restricted_behavior_basis(product(B1, B2), L);
            const Matrix rhs = interleaved_product(test::qr_basis(behavior_generator(B1, L)), q1,
                                                   test::qr_basis(behavior_generator(B2, L)), q2, L);
            const double a = angle_between(lhs, rhs);
            product_t.record(a < kAngle, a, label);
        }

        // Inclusion at L past the lags decides inclusion of the behaviors.
        {
            const std::size_t q = 2 + i % 2;
            const auto B = random_driving_model(q, 1, 1 + i % 3, 66'000 + i);
            auto sub = sub_behavior(B, 1, rng);
            const bool truly_included = i % 2 == 0;
            if (!truly_included) {
                sub.C += 0.05 * test::random_matrix(rng, sub.C.rows(), sub.C.cols());
                sub.D += 0.05 * test::random_matrix(rng, sub.D.rows(), sub.D.cols());
            }
            const std::size_t L = std::max(behavior_invariants(B).lag, behavior_invariants(sub).lag) + 1;
            const bool at_L =
                is_subspace_of(restricted_behavior_basis(sub, L), restricted_behavior_basis(B, L)).included;
            const bool at_long =
                is_subspace_of(restricted_behavior_basis(sub, L + 8), restricted_behavior_basis(B, L + 8)).included;
            inclusion.record(at_L == truly_included && at_long == truly_included, 0.0, label);
        }
    }
    const bool pass = projection.failures + intersection.failures + product_t.failures + inclusion.failures == 0;
    return {pass, "projection " + projection.summary("") + "; intersection " + intersection.summary("") +
                      "; product " + product_t.summary("") + "; inclusion " + inclusion.summary("")};
}

Trajectory decaying_samples(std::size_t T) {
    std::vector<double> r(T);
    for (std::size_t t = 0; t < T; ++t) {
        r[t] = std::pow(0.5, static_cast<double>(t));
    }
    return Trajectory(1, T, r);
}

Outcome counterexample() {
    const auto bundle_for = [](const StateSpaceModel& plant) {
        const auto inv = behavior_invariants(driving_variable_form(plant));
        return DataBundle{gpe_plant_trajectory(plant, 2, 70'000), decaying_samples(12), 2,
                          plant.plant_partition(), 1, InvariantBounds{inv.m_inputs, inv.n_order},
                          InvariantBounds{0, 1}};
    };
    const auto integrator = check_data(bundle_for(test::integrator_plant()));
    const auto stat_bundle = bundle_for(test::static_plant());
    const auto stat = check_data(stat_bundle);

    const PermutationPlan plan(1, 1, 2);
    const Projector P_p = plant_projector(stat_bundle.plant_traj, stat_bundle.partition, 2);
    const auto C = controller_basis(reference_lift_projector(stat_bundle.ref_traj, 1, 2, plan), P_p, plan);
    Matrix expected(2, 1);
    expected << 1.0, 0.5;
    const double angle = angle_between(C.basis, expected);

    std::ostringstream s;
    s << "integrator implementable=" << integrator.implementable << " residual " << integrator.residual_hidden_in_ref
      << "; static implementable=" << stat.implementable << ", controller angle to (1, 0.5) " << angle;
    return {!integrator.implementable && integrator.residual_hidden_in_ref > 0.1 && stat.implementable &&
                angle < kAngle,
            s.str()};
}

#ifdef DDC_CLI_PATH
struct Captured {
    int code = -1;
    std::string out;
};

Captured capture(const std::string& command) {
    Captured c;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (pipe == nullptr) {
        return c;
    }
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        c.out.append(buffer, n);
    }
    const int status = pclose(pipe);
    c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_contract() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ddc_acceptance_cli";
    fs::create_directories(dir);
    const std::string cli = DDC_CLI_PATH;
    const std::string fixtures = DDC_FIXTURE_DIR;
    const auto simulate = [&](const std::string& model, const std::string& out, int T) {
        return capture(cli + " simulate --model " + fixtures + "/" + model + " --T " + std::to_string(T) +
                       " --seed 7 --out " + (dir / out).string());
    };
    bool ok = true;
    std::ostringstream s;
    ok &= simulate("static_plant.json", "static.csv", 40).code == 0;
    ok &= simulate("static_plant.json", "static_again.csv", 40).code == 0;
    ok &= simulate("integrator_plant.json", "integrator.csv", 40).code == 0;
    ok &= simulate("decaying_reference.json", "ref.csv", 30).code == 0;
    const bool csv_identical = slurp(dir / "static.csv") == slurp(dir / "static_again.csv");

    const auto check = [&](const std::string& plant, const std::string& n_bounds) {
        return capture(cli + " check --plant " + (dir / plant).string() + " --ref " + (dir / "ref.csv").string() +
                       " --picks-w 2 --picks-c 1 --L 2 --lag-bound 1 --m-bound 1,0 --n-bound " + n_bounds);
    };
    const auto stat1 = check("static.csv", "0,1");
    const auto stat2 = check("static.csv", "0,1");
    const auto int1 = check("integrator.csv", "1,1");
    const auto int2 = check("integrator.csv", "1,1");
    const auto prop1 = capture(cli + " proptest --seeds 6 --seed 5");
    const auto prop2 = capture(cli + " proptest --seeds 6 --seed 5");
    const auto usage = capture(cli + " check --plant " + (dir / "static.csv").string());

    const bool codes = stat1.code == 0 && int1.code == 1 && usage.code == 2 && prop1.code == 0;
    const bool identical = csv_identical && stat1.out == stat2.out && int1.out == int2.out && prop1.out == prop2.out;
    s << "static exit " << stat1.code << ", integrator exit " << int1.code << ", usage exit " << usage.code
      << ", proptest exit " << prop1.code << "; repeated outputs identical=" << identical;
    fs::remove_all(dir);
    return {ok && codes && identical, s.str()};
}
#else
Outcome cli_contract() { return {false, "ddc CLI not built (configure with DDC_BUILD_TOOLS=ON)"}; }
#endif

struct Criterion {
    int id;
    std::string name;
    double limit_s; // 0: no runtime limit
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "fundamental lemma", 30.0, fundamental_lemma},
        {2, "data/model agreement", 60.0, data_model_agreement},
        {3, "canonical controller exactness", 60.0, canonical_exactness},
        {4, "projector intersection", 10.0, projector_intersection},
        {5, "restricted-behavior projection, intersection, product, inclusion", 0.0, restricted_behavior_operations},
        {6, "hand counterexample", 0.0, counterexample},
        {7, "CLI contract", 0.0, cli_contract},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.limit_s == 0.0 || secs < c.limit_s;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s [%d] %s: %s; %.2f s", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), secs);
        if (c.limit_s > 0.0) {
            std::printf(" (limit %.0f s)", c.limit_s);
        }
        std::printf("\n");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
