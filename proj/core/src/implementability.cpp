#include "ddc/implementability.hpp"

#include <algorithm>

#include <json.hpp>

#include "ddc/errors.hpp"

namespace ddc {
namespace {

double relative_residual(const InclusionResult& r, const BehaviorBasis& sub) {
    return r.residual / (1.0 + sub.matrix().norm());
}

// Fills the inclusion part of a verdict from the three subspaces.
void decide(ImplementabilityVerdict& v, const BehaviorBasis& hidden, const BehaviorBasis& ref,
            const BehaviorBasis& uncontrolled, double tol) {
    const auto hidden_in_ref = is_subspace_of(hidden, ref, tol);
    const auto ref_in_plant = is_subspace_of(ref, uncontrolled, tol);
    v.residual_hidden_in_ref = relative_residual(hidden_in_ref, hidden);
    v.residual_ref_in_plant = relative_residual(ref_in_plant, ref);
    v.rank_hidden = hidden.dim();
    v.rank_ref = ref.dim();
    v.rank_uncontrolled = uncontrolled.dim();
    v.inclusions_hold = hidden_in_ref.included && ref_in_plant.included;
    if (v.inclusions_hold) {
        // Least-squares certificates on orthonormal bases: Phi = R^T N, Psi = Pw^T R.
        v.phi = ref.matrix().transpose() * hidden.matrix();
        v.psi = uncontrolled.matrix().transpose() * ref.matrix();
    }
}

// A bound the Hankel matrix cannot reach counts as a failed excitation test.
bool excited(const Trajectory& w, std::size_t L, const std::optional<InvariantBounds>& bounds, RankTolerance tol) {
    if (!bounds) {
        return false;
    }
    try {
        return is_gpe(w, L, bounds->m, bounds->n, tol).gpe;
    } catch (const InfeasibleRankError&) {
        return false;
    }
}

} // namespace

void DataBundle::validate() const {
    if (plant_traj.channels() != partition.total()) {
        throw DimensionError("plant trajectory has " + std::to_string(plant_traj.channels()) +
                             " channels, partition expects " + std::to_string(partition.total()));
    }
    if (ref_traj.channels() != partition.q()) {
        throw DimensionError("reference trajectory has " + std::to_string(ref_traj.channels()) +
                             " channels, partition has " + std::to_string(partition.q()) + " w channels");
    }
    if (L < 1 || L > std::min(plant_traj.length(), ref_traj.length())) {
        throw RangeError("horizon L exceeds the trajectory lengths");
    }
    if (L <= lag_bound) {
        throw HorizonError("horizon L = " + std::to_string(L) + " must exceed the lag bound " +
                           std::to_string(lag_bound));
    }
}

BehaviorBasis hidden_basis(const Trajectory& plant_traj, const Partition& partition, std::size_t L,
                           RankTolerance tol) {
    const Matrix Hw = hankel(plant_traj.select_channels(partition.picks_w()), L);
    const Matrix Hc = hankel(plant_traj.select_channels(partition.picks_c()), L);
    const Matrix annihilator = Matrix::Identity(Hc.cols(), Hc.cols()) - pinv(Hc, tol) * Hc;
    const double scale = Hw.size() == 0 ? 0.0 : Eigen::JacobiSVD<Matrix>(Hw).singularValues()(0);
    return orthonormal_basis(Hw * annihilator, tol, scale);
}

BehaviorBasis reference_basis(const Trajectory& ref_traj, std::size_t L, RankTolerance tol) {
    return orthonormal_basis(hankel(ref_traj, L), tol);
}

BehaviorBasis uncontrolled_basis(const Trajectory& plant_traj, const Partition& partition, std::size_t L,
                                 RankTolerance tol) {
    return orthonormal_basis(hankel(plant_traj.select_channels(partition.picks_w()), L), tol);
}

ImplementabilityVerdict check_data(const DataBundle& bundle, const Tolerances& tol) {
    bundle.validate();
    ImplementabilityVerdict v;
    v.gpe_plant = excited(bundle.plant_traj, bundle.L, bundle.plant_bounds, tol.rank);
    v.gpe_ref = excited(bundle.ref_traj, bundle.L, bundle.ref_bounds, tol.rank);
    const auto hidden = hidden_basis(bundle.plant_traj, bundle.partition, bundle.L, tol.rank);
    const auto ref = reference_basis(bundle.ref_traj, bundle.L, tol.rank);
    const auto uncontrolled = uncontrolled_basis(bundle.plant_traj, bundle.partition, bundle.L, tol.rank);
    decide(v, hidden, ref, uncontrolled, tol.residual);
    v.implementable = v.inclusions_hold && v.gpe_plant && v.gpe_ref;
    return v;
}

std::size_t model_lag_bound(const StateSpaceModel& plant, const DrivingVariableModel& ref, RankTolerance tol) {
    const auto lp = behavior_invariants(canonical_plant_form(plant), tol).lag;
    const auto lr = behavior_invariants(ref, tol).lag;
    const auto lw = behavior_invariants(uncontrolled_model(plant), tol).lag;
    return std::max({lp, lr, lw});
}

ImplementabilityVerdict check_model(const StateSpaceModel& plant, const DrivingVariableModel& ref, std::size_t L,
                                    const Tolerances& tol) {
    const Partition& part = plant.plant_partition();
    if (ref.variables() != part.q()) {
        throw DimensionError("reference has " + std::to_string(ref.variables()) + " variables, plant has " +
                             std::to_string(part.q()) + " w channels");
    }
    const auto bound = model_lag_bound(plant, ref, tol.rank);
    if (L <= bound) {
        throw HorizonError("horizon L = " + std::to_string(L) + " must exceed max lag " + std::to_string(bound));
    }
    ImplementabilityVerdict v;
    v.gpe_plant = true;
    v.gpe_ref = true;
    const auto hidden = hidden_behavior_basis(plant, L, tol.rank);
    const auto reference = restricted_behavior_basis(ref, L, tol.rank);
    const auto uncontrolled = restricted_behavior_basis(uncontrolled_model(plant), L, tol.rank);
    decide(v, hidden, reference, uncontrolled, tol.residual);
    v.implementable = v.inclusions_hold;
    return v;
}

ImplementabilityVerdict check_model(const StateSpaceModel& plant, const StateSpaceModel& ref, std::size_t L,
                                    const Tolerances& tol) {
    return check_model(plant, driving_variable_form(ref), L, tol);
}

std::string verdict_to_json(const ImplementabilityVerdict& verdict) {
    nlohmann::ordered_json doc;
    doc["implementable"] = verdict.implementable;
    doc["inclusions_hold"] = verdict.inclusions_hold;
    doc["residuals"] = {{"hidden_in_ref", verdict.residual_hidden_in_ref},
                        {"ref_in_plant", verdict.residual_ref_in_plant}};
    doc["gpe"] = {{"plant", verdict.gpe_plant}, {"ref", verdict.gpe_ref}};
    doc["ranks"] = {{"N", verdict.rank_hidden}, {"R", verdict.rank_ref}, {"Pw", verdict.rank_uncontrolled}};
    return doc.dump(2);
}

} // namespace ddc
