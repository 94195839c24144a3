#include "ddc/cli/commands.hpp"

#include <fstream>
#include <ostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddc/canonical.hpp"
#include "ddc/csv.hpp"
#include "ddc/errors.hpp"
#include "ddc/implementability.hpp"
#include "ddc/model_json.hpp"
#include "ddc/scenario.hpp"
#include "json_config.hpp"

namespace ddc::cli {
namespace {

using json = nlohmann::ordered_json;

struct SimulateOptions {
    std::string model;
    std::string out;
    std::size_t T = 100;
    std::uint64_t seed = 0;
    bool zero_x0 = false;
};

// Shared by check and synth.
struct DataOptions {
    std::string plant;
    std::string ref;
    std::vector<std::size_t> picks_w;
    std::vector<std::size_t> picks_c;
    std::size_t L = 1;
    std::size_t lag_bound = 0;
    std::vector<std::size_t> m_bound;
    std::vector<std::size_t> n_bound;
    double tol = kAngleTol;
    double rank_tol = RankTolerance{}.rel;
    std::string out;
};

struct ProptestOptions {
    std::size_t seeds = 100;
    std::uint64_t seed = 0;
    double tol = kAngleTol;
    std::size_t max_q = 2;
    std::size_t max_order = 3;
};

void add_data_options(CLI::App* cmd, DataOptions& o) {
    cmd->add_option("--plant", o.plant, "plant trajectory CSV (w and c channels)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--ref", o.ref, "reference trajectory CSV (w channels)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--picks-w", o.picks_w, "1-based plant columns of w")->required()->delimiter(',');
    cmd->add_option("--picks-c", o.picks_c, "1-based plant columns of c")->required()->delimiter(',');
    cmd->add_option("--L", o.L, "horizon")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--lag-bound", o.lag_bound, "upper bound on the lags of P, R and pi_w(P)")->required();
    cmd->add_option("--m-bound", o.m_bound, "input counts: plant,ref (one value for both)")
        ->required()
        ->delimiter(',')
        ->expected(1, 2);
    cmd->add_option("--n-bound", o.n_bound, "state orders: plant,ref (one value for both)")
        ->required()
        ->delimiter(',')
        ->expected(1, 2);
    cmd->add_option("--tol", o.tol, "residual and angle tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--rank-tol", o.rank_tol, "relative SVD rank tolerance")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
}

InvariantBounds pick_bounds(const DataOptions& o, std::size_t which) {
    const auto at = [which](const std::vector<std::size_t>& v) { return v.size() == 1 ? v[0] : v[which]; };
    return {at(o.m_bound), at(o.n_bound)};
}

DataBundle load_bundle(const DataOptions& o) {
    Trajectory plant = read_trajectory_csv(std::filesystem::path(o.plant));
    Trajectory ref = read_trajectory_csv(std::filesystem::path(o.ref));
    Partition partition(plant.channels(), o.picks_w, o.picks_c);
    DataBundle bundle{std::move(plant), std::move(ref), o.L, std::move(partition), o.lag_bound,
                      pick_bounds(o, 0), pick_bounds(o, 1)};
    bundle.validate();
    return bundle;
}

Tolerances tolerances(const DataOptions& o) { return Tolerances{o.tol, RankTolerance{o.rank_tol}}; }

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
    const StateSpaceModel model = load_model_json(std::filesystem::path(o.model));
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector x0 = Vector::Zero(static_cast<Eigen::Index>(model.order()));
    if (!o.zero_x0) {
        for (Eigen::Index i = 0; i < x0.size(); ++i) {
            x0(i) = normal(rng);
        }
    }
    Matrix u(static_cast<Eigen::Index>(model.inputs()), static_cast<Eigen::Index>(o.T));
    for (Eigen::Index t = 0; t < u.cols(); ++t) {
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            u(i, t) = normal(rng);
        }
    }
    const Trajectory w = simulate(model, u, x0);
    if (o.out.empty()) {
        write_trajectory_csv(out, w);
        return kSuccess;
    }
    write_trajectory_csv(std::filesystem::path(o.out), w);
    json doc;
    doc["out"] = o.out;
    doc["rows"] = w.length();
    doc["channels"] = w.channels();
    doc["seed"] = o.seed;
    out << doc.dump(2) << '\n';
    return kSuccess;
}

int cmd_check(const DataOptions& o, std::ostream& out) {
    const auto verdict = check_data(load_bundle(o), tolerances(o));
    out << verdict_to_json(verdict) << '\n';
    return verdict.implementable ? kSuccess : kNegative;
}

int cmd_synth(const DataOptions& o, std::ostream& out) {
    const DataBundle bundle = load_bundle(o);
    const Tolerances tol = tolerances(o);
    const auto verdict = check_data(bundle, tol);

    const Partition& part = bundle.partition;
    const PermutationPlan plan(part.q(), part.k(), bundle.L);
    const Projector P_p = plant_projector(bundle.plant_traj, part, bundle.L, tol.rank);
    const Projector P_r = reference_lift_projector(bundle.ref_traj, part.k(), bundle.L, plan, tol.rank);
    const ControllerBasis controller = controller_basis(P_r, P_p, plan, tol.rank);
    const auto report = verify_closed_loop(image_of(P_p), controller, reference_basis(bundle.ref_traj, bundle.L, tol.rank),
                                           plan, tol.residual, tol.rank);

    if (!o.out.empty()) {
        std::ofstream csv(o.out);
        std::ofstream sidecar(o.out + ".json");
        if (!csv || !sidecar) {
            throw FormatError("cannot write controller files at " + o.out);
        }
        write_controller_csv(csv, controller);
        sidecar << controller_sidecar_json(controller) << '\n';
    }

    json doc;
    doc["implements"] = report.implements;
    doc["controller"] = {{"k", controller.k}, {"L", controller.L}, {"rank", controller.basis.dim()}};
    if (!o.out.empty()) {
        doc["controller"]["out"] = o.out;
    }
    doc["closed_loop"] = {{"max_angle", report.max_angle},
                          {"angles", report.angles},
                          {"dims",
                           {{"interconnection", report.interconnection_dim},
                            {"controlled", report.controlled_dim},
                            {"reference", report.reference_dim}}}};
    doc["verdict"] = json::parse(verdict_to_json(verdict));
    out << doc.dump(2) << '\n';
    return report.implements ? kSuccess : kNegative;
}

ScenarioKind kind_for_case(std::size_t i) {
    constexpr ScenarioKind kinds[] = {ScenarioKind::Implementable, ScenarioKind::RandomReference,
                                      ScenarioKind::PerturbedReference};
    return kinds[i % 3];
}

// Empty string on pass, otherwise the reason. The model check at default
// tolerance is the ground truth; `tol` applies to the data-driven side.
std::string run_case(std::uint64_t seed, ScenarioKind kind, const ScenarioDims& dims, double tol) {
    const Scenario s = make_scenario(seed, kind, dims);
    const auto truth = check_model(s.plant, s.reference, s.L);
    if (kind == ScenarioKind::Implementable && !truth.implementable) {
        return "constructed reference not implementable by the model test";
    }
    const auto verdict = check_data(s.bundle(), Tolerances{tol, {}});
    if (verdict.implementable != truth.implementable) {
        return std::string("data test says ") + (verdict.implementable ? "implementable" : "not implementable") +
               ", model test disagrees";
    }
    if (!truth.implementable) {
        return {};
    }
    const Partition& part = s.plant.plant_partition();
    const PermutationPlan plan(part.q(), part.k(), s.L);
    const Projector P_p = plant_projector(s.plant_traj, part, s.L);
    const Projector P_r = reference_lift_projector(s.ref_traj, part.k(), s.L, plan);
    const auto report =
        verify_closed_loop(image_of(P_p), controller_basis(P_r, P_p, plan), reference_basis(s.ref_traj, s.L), plan, tol);
    if (!report.implements) {
        return "canonical controller misses the reference, max angle " + std::to_string(report.max_angle);
    }
    return {};
}

int cmd_proptest(const ProptestOptions& o, std::ostream& out) {
    ScenarioDims dims;
    dims.max_q_w = dims.max_q_c = o.max_q;
    dims.max_plant_order = o.max_order;

    json failures = json::array();
    std::size_t passes = 0;
    for (std::size_t i = 0; i < o.seeds; ++i) {
        const std::uint64_t seed = o.seed + i;
        const ScenarioKind kind = kind_for_case(i);
        std::string reason;
        try {
            reason = run_case(seed, kind, dims, o.tol);
        } catch (const std::exception& e) {
            reason = std::string("error: ") + e.what();
        }
        if (reason.empty()) {
            ++passes;
        } else {
            failures.push_back({{"seed", seed}, {"kind", std::string(to_string(kind))}, {"reason", reason}});
        }
    }
    json doc;
    doc["cases"] = o.seeds;
    doc["passes"] = passes;
    doc["first_seed"] = o.seed;
    doc["tol"] = o.tol;
    doc["failures"] = failures;
    out << doc.dump(2) << '\n';
    return failures.empty() ? kSuccess : kNegative;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Data-driven controller implementability and canonical controller synthesis", "ddc"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.set_config("--config", "", "JSON file of option values for the subcommand");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.fallthrough();

    SimulateOptions sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "simulate a state-space model from random inputs");
    simulate_cmd->add_option("--model", sim.model, "model JSON")->required()->check(CLI::ExistingFile);
    simulate_cmd->add_option("--out", sim.out, "output CSV (default: stdout)");
    simulate_cmd->add_option("--T", sim.T, "number of samples")->capture_default_str()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", sim.seed, "random seed")->capture_default_str();
    simulate_cmd->add_flag("--zero-x0", sim.zero_x0, "start from the zero state");

    DataOptions check_opts;
    auto* check_cmd = app.add_subcommand("check", "test implementability from data");
    add_data_options(check_cmd, check_opts);

    DataOptions synth_opts;
    auto* synth_cmd = app.add_subcommand("synth", "synthesize and verify the canonical controller");
    add_data_options(synth_cmd, synth_opts);
    synth_cmd->add_option("--out", synth_opts.out, "controller basis CSV; sidecar written to <out>.json");

    ProptestOptions prop;
    auto* proptest_cmd = app.add_subcommand("proptest", "batch agreement and closed-loop checks on random seeds");
    proptest_cmd->add_option("--seeds", prop.seeds, "number of cases")->capture_default_str()->check(CLI::PositiveNumber);
    proptest_cmd->add_option("--seed", prop.seed, "first seed")->capture_default_str();
    proptest_cmd->add_option("--tol", prop.tol, "data-side tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    proptest_cmd->add_option("--max-q", prop.max_q, "largest w and c channel counts")
        ->capture_default_str()
        ->check(CLI::Range(1, 3));
    proptest_cmd->add_option("--max-order", prop.max_order, "largest plant order")
        ->capture_default_str()
        ->check(CLI::Range(0, 4));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (simulate_cmd->parsed()) {
            return cmd_simulate(sim, out);
        }
        if (check_cmd->parsed()) {
            if (check_opts.m_bound.size() != check_opts.n_bound.size()) {
                throw DimensionError("--m-bound and --n-bound need the same number of values");
            }
            return cmd_check(check_opts, out);
        }
        if (synth_cmd->parsed()) {
            if (synth_opts.m_bound.size() != synth_opts.n_bound.size()) {
                throw DimensionError("--m-bound and --n-bound need the same number of values");
            }
            return cmd_synth(synth_opts, out);
        }
        return cmd_proptest(prop, out);
    } catch (const std::exception& e) {
        err << "ddc: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace ddc::cli
