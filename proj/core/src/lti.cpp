#include "ddc/lti.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "ddc/errors.hpp"

namespace ddc {
namespace {

Matrix controllability_matrix(const Matrix& A, const Matrix& B) {
    const Eigen::Index n = A.rows();
    Matrix K(n, n * B.cols());
    Matrix block = B;
    for (Eigen::Index i = 0; i < n; ++i) {
        K.middleCols(i * B.cols(), B.cols()) = block;
        block = A * block;
    }
    return K;
}

Matrix observability_matrix(const Matrix& A, const Matrix& C, Eigen::Index blocks) {
    const Eigen::Index n = A.rows();
    Matrix O(blocks * C.rows(), n);
    Matrix block = C;
    for (Eigen::Index i = 0; i < blocks; ++i) {
        O.middleRows(i * C.rows(), C.rows()) = block;
        block = block * A;
    }
    return O;
}

Matrix standard_normal(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix M(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            M(i, j) = normal(rng);
        }
    }
    return M;
}

// Random n x n matrix rescaled to a spectral radius drawn from [0.5, 0.9].
Matrix random_stable_matrix(std::mt19937_64& rng, Eigen::Index n) {
    Matrix A = standard_normal(rng, n, n);
    if (n == 0) {
        return A;
    }
    std::uniform_real_distribution<double> radius(0.5, 0.9);
    const double target = radius(rng);
    const double current = Eigen::EigenSolver<Matrix>(A, false).eigenvalues().cwiseAbs().maxCoeff();
    if (current > 0.0) {
        A *= target / current;
    }
    return A;
}

// Stricter rank rule for rejection sampling, so generated systems are not
// close to losing minimality.
constexpr RankTolerance kGenerationTol{1e-6};
constexpr int kMaxDraws = 1000;

} // namespace

StateSpaceModel::StateSpaceModel(Matrix A, Matrix B, Matrix C, Matrix D, std::optional<Partition> partition)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)), partition_(std::move(partition)) {
    const auto n = A_.rows();
    if (A_.cols() != n || B_.rows() != n || C_.cols() != n || D_.rows() != C_.rows() || D_.cols() != B_.cols()) {
        throw DimensionError("state-space matrices have inconsistent dimensions (A " + std::to_string(A_.rows()) +
                             "x" + std::to_string(A_.cols()) + ", B " + std::to_string(B_.rows()) + "x" +
                             std::to_string(B_.cols()) + ", C " + std::to_string(C_.rows()) + "x" +
                             std::to_string(C_.cols()) + ", D " + std::to_string(D_.rows()) + "x" +
                             std::to_string(D_.cols()) + ")");
    }
    if (variables() == 0) {
        throw DimensionError("model has no variables");
    }
    if (partition_ && partition_->total() != variables()) {
        throw PartitionError("partition covers " + std::to_string(partition_->total()) + " variables, model has " +
                             std::to_string(variables()));
    }
}

const Partition& StateSpaceModel::plant_partition() const {
    if (!partition_) {
        throw PartitionError("model has no w/c partition");
    }
    return *partition_;
}

bool StateSpaceModel::controllable(RankTolerance tol) const {
    if (order() == 0) {
        return true;
    }
    if (inputs() == 0) {
        return false;
    }
    return numerical_rank(controllability_matrix(A_, B_), tol) == A_.rows();
}

bool StateSpaceModel::observable(RankTolerance tol) const {
    if (order() == 0) {
        return true;
    }
    if (outputs() == 0) {
        return false;
    }
    return numerical_rank(observability_matrix(A_, C_, A_.rows()), tol) == A_.rows();
}

void DrivingVariableModel::validate() const {
    const auto n = A.rows();
    if (A.cols() != n || B.rows() != n || C.cols() != n || D.rows() != C.rows() || D.cols() != B.cols()) {
        throw DimensionError("driving-variable matrices have inconsistent dimensions");
    }
    if (C.rows() == 0) {
        throw DimensionError("driving-variable model has no manifest variables");
    }
}

DrivingVariableModel driving_variable_form(const StateSpaceModel& model) {
    const auto n = static_cast<Eigen::Index>(model.order());
    const auto m = static_cast<Eigen::Index>(model.inputs());
    const auto p = static_cast<Eigen::Index>(model.outputs());
    DrivingVariableModel dv{model.A(), model.B(), Matrix::Zero(m + p, n), Matrix::Zero(m + p, m)};
    dv.C.bottomRows(p) = model.C();
    dv.D.topRows(m) = Matrix::Identity(m, m);
    dv.D.bottomRows(p) = model.D();
    return dv;
}

DrivingVariableModel select_manifest(const DrivingVariableModel& model, std::span<const std::size_t> channels) {
    model.validate();
    DrivingVariableModel out{model.A, model.B, Matrix(static_cast<Eigen::Index>(channels.size()), model.A.rows()),
                             Matrix(static_cast<Eigen::Index>(channels.size()), model.B.cols())};
    for (std::size_t i = 0; i < channels.size(); ++i) {
        if (channels[i] >= model.variables()) {
            throw RangeError("manifest channel out of range");
        }
        const auto src = static_cast<Eigen::Index>(channels[i]);
        out.C.row(static_cast<Eigen::Index>(i)) = model.C.row(src);
        out.D.row(static_cast<Eigen::Index>(i)) = model.D.row(src);
    }
    out.validate();
    return out;
}

DrivingVariableModel canonical_plant_form(const StateSpaceModel& plant) {
    std::vector<std::size_t> order = plant.plant_partition().canonical_order();
    for (auto& i : order) {
        --i;
    }
    return select_manifest(driving_variable_form(plant), order);
}

DrivingVariableModel uncontrolled_model(const StateSpaceModel& plant) {
    std::vector<std::size_t> w(plant.plant_partition().q());
    std::iota(w.begin(), w.end(), std::size_t{0});
    return select_manifest(canonical_plant_form(plant), w);
}

DrivingVariableModel product(const DrivingVariableModel& first, const DrivingVariableModel& second) {
    first.validate();
    second.validate();
    const auto n1 = first.A.rows(), n2 = second.A.rows();
    const auto d1 = first.B.cols(), d2 = second.B.cols();
    const auto q1 = first.C.rows(), q2 = second.C.rows();
    DrivingVariableModel out{Matrix::Zero(n1 + n2, n1 + n2), Matrix::Zero(n1 + n2, d1 + d2),
                             Matrix::Zero(q1 + q2, n1 + n2), Matrix::Zero(q1 + q2, d1 + d2)};
    out.A.topLeftCorner(n1, n1) = first.A;
    out.A.bottomRightCorner(n2, n2) = second.A;
    out.B.topLeftCorner(n1, d1) = first.B;
    out.B.bottomRightCorner(n2, d2) = second.B;
    out.C.topLeftCorner(q1, n1) = first.C;
    out.C.bottomRightCorner(q2, n2) = second.C;
    out.D.topLeftCorner(q1, d1) = first.D;
    out.D.bottomRightCorner(q2, d2) = second.D;
    return out;
}

DrivingVariableModel interconnect(const StateSpaceModel& plant, const DrivingVariableModel& controller) {
    controller.validate();
    const Partition& part = plant.plant_partition();
    const auto n = static_cast<Eigen::Index>(plant.order());
    const auto m = static_cast<Eigen::Index>(plant.inputs());
    const auto p = static_cast<Eigen::Index>(plant.outputs());
    const auto k = static_cast<Eigen::Index>(part.k());
    if (static_cast<Eigen::Index>(controller.variables()) != k) {
        throw DimensionError("controller manifest size differs from the number of control channels");
    }
    // Input positions fed by the controller and the remaining free inputs.
    Matrix Ec = Matrix::Zero(m, k);
    std::vector<bool> is_control(static_cast<std::size_t>(m), false);
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto var = static_cast<Eigen::Index>(part.picks_c()[static_cast<std::size_t>(j)]) - 1;
        if (var >= m) {
            throw PartitionError("interconnect requires every control channel to be a plant input");
        }
        Ec(var, j) = 1.0;
        is_control[static_cast<std::size_t>(var)] = true;
    }
    const auto free_count = static_cast<Eigen::Index>(std::count(is_control.begin(), is_control.end(), false));
    Matrix Ef = Matrix::Zero(m, free_count);
    for (Eigen::Index i = 0, col = 0; i < m; ++i) {
        if (!is_control[static_cast<std::size_t>(i)]) {
            Ef(i, col++) = 1.0;
        }
    }

    const auto nk = controller.A.rows();
    const auto dk = controller.B.cols();
    const Eigen::Index ns = n + nk;
    const Eigen::Index nd = dk + free_count;

    // u = U_x z + U_v (v, u_free), z = (x, xi).
    Matrix Ux = Matrix::Zero(m, ns);
    Ux.rightCols(nk) = Ec * controller.C;
    Matrix Uv(m, nd);
    Uv << Ec * controller.D, Ef;

    DrivingVariableModel closed{Matrix::Zero(ns, ns), Matrix::Zero(ns, nd), Matrix(m + p, ns), Matrix(m + p, nd)};
    closed.A.topLeftCorner(n, n) = plant.A();
    closed.A.topRows(n) += plant.B() * Ux;
    closed.A.bottomRightCorner(nk, nk) = controller.A;
    closed.B.topRows(n) = plant.B() * Uv;
    closed.B.bottomLeftCorner(nk, dk) = controller.B;

    Matrix Xsel = Matrix::Zero(n, ns);
    Xsel.leftCols(n) = Matrix::Identity(n, n);
    closed.C.topRows(m) = Ux;
    closed.C.bottomRows(p) = plant.C() * Xsel + plant.D() * Ux;
    closed.D.topRows(m) = Uv;
    closed.D.bottomRows(p) = plant.D() * Uv;

    std::vector<std::size_t> order = part.canonical_order();
    for (auto& i : order) {
        --i;
    }
    return select_manifest(closed, order);
}

namespace {

Matrix run(const Matrix& A, const Matrix& B, const Matrix& C, const Matrix& D, const Matrix& v, const Vector& x0) {
    if (v.rows() != B.cols()) {
        throw DimensionError("input has " + std::to_string(v.rows()) + " channels, model expects " +
                             std::to_string(B.cols()));
    }
    if (x0.size() != A.rows()) {
        throw DimensionError("initial state has wrong dimension");
    }
    Matrix w(C.rows(), v.cols());
    Vector x = x0;
    for (Eigen::Index t = 0; t < v.cols(); ++t) {
        w.col(t) = C * x + D * v.col(t);
        x = A * x + B * v.col(t);
    }
    return w;
}

} // namespace

Trajectory simulate(const StateSpaceModel& model, const Trajectory& u, const Vector& x0) {
    if (u.channels() != model.inputs()) {
        throw DimensionError("input trajectory has " + std::to_string(u.channels()) + " channels, model has " +
                             std::to_string(model.inputs()) + " inputs");
    }
    return simulate(model, u.as_columns(), x0);
}

Trajectory simulate(const StateSpaceModel& model, const Matrix& u, const Vector& x0) {
    if (u.cols() < 1) {
        throw DimensionError("simulation needs at least one sample");
    }
    const DrivingVariableModel dv = driving_variable_form(model);
    return Trajectory::from_columns(run(dv.A, dv.B, dv.C, dv.D, u, x0));
}

Trajectory simulate(const DrivingVariableModel& model, const Matrix& v, const Vector& x0) {
    model.validate();
    if (v.cols() < 1) {
        throw DimensionError("simulation needs at least one sample");
    }
    return Trajectory::from_columns(run(model.A, model.B, model.C, model.D, v, x0));
}

IntegerInvariants invariants_of(const StateSpaceModel& model, RankTolerance tol) {
    if (!model.observable(tol)) {
        throw MinimalityError("model is not observable, so the state is not minimal");
    }
    IntegerInvariants inv;
    inv.m_inputs = model.inputs();
    inv.p_outputs = model.outputs();
    inv.n_order = model.order();
    const auto n = model.A().rows();
    for (Eigen::Index l = 0; l <= n; ++l) {
        const Eigen::Index r = l == 0 ? 0 : numerical_rank(observability_matrix(model.A(), model.C(), l), tol);
        if (r == n) {
            inv.lag = static_cast<std::size_t>(l);
            break;
        }
    }
    return inv;
}

Matrix behavior_generator(const DrivingVariableModel& model, std::size_t L) {
    model.validate();
    if (L < 1) {
        throw RangeError("horizon must be positive");
    }
    const auto n = model.A.rows();
    const auto d = model.B.cols();
    const auto q = model.C.rows();
    const auto depth = static_cast<Eigen::Index>(L);
    const Eigen::Index columns = n + d * depth;
    Matrix G(q * depth, columns);
    for (Eigen::Index j = 0; j < columns; ++j) {
        Vector x0 = Vector::Zero(n);
        Matrix v = Matrix::Zero(d, depth);
        if (j < n) {
            x0(j) = 1.0;
        } else {
            const Eigen::Index idx = j - n;
            v(idx % d, idx / d) = 1.0;
        }
        const Matrix w = run(model.A, model.B, model.C, model.D, v, x0);
        G.col(j) = w.reshaped();
    }
    return G;
}

BehaviorBasis restricted_behavior_basis(const DrivingVariableModel& model, std::size_t L, RankTolerance tol) {
    const Matrix G = behavior_generator(model, L);
    if (G.cols() == 0) {
        return BehaviorBasis::zero(G.rows());
    }
    return orthonormal_basis(G, tol);
}

BehaviorBasis restricted_behavior_basis(const StateSpaceModel& model, std::size_t L, RankTolerance tol) {
    return restricted_behavior_basis(driving_variable_form(model), L, tol);
}

IntegerInvariants behavior_invariants(const DrivingVariableModel& model, RankTolerance tol) {
    model.validate();
    const std::size_t n = model.order();
    auto dim = [&](std::size_t L) -> std::size_t {
        return L == 0 ? 0 : static_cast<std::size_t>(restricted_behavior_basis(model, L, tol).dim());
    };
    const std::size_t d1 = dim(n + 1);
    const std::size_t d2 = dim(n + 2);
    IntegerInvariants inv;
    inv.m_inputs = d2 - d1;
    inv.p_outputs = model.variables() - inv.m_inputs;
    inv.n_order = d1 - inv.m_inputs * (n + 1);
    for (std::size_t L = 0; L <= n + 1; ++L) {
        const std::size_t d = L == n + 1 ? d1 : dim(L);
        if (d == inv.m_inputs * L + inv.n_order) {
            inv.lag = L;
            break;
        }
    }
    return inv;
}

BehaviorBasis hidden_behavior_basis(const StateSpaceModel& plant, std::size_t L, RankTolerance tol) {
    const Partition& part = plant.plant_partition();
    const BehaviorBasis full = restricted_behavior_basis(canonical_plant_form(plant), L, tol);
    const auto total = part.total();
    const auto ambient = full.ambient_dim();

    std::vector<std::size_t> w_channels(part.q());
    std::iota(w_channels.begin(), w_channels.end(), std::size_t{0});
    Matrix mask = Matrix::Zero(ambient, ambient);
    for (auto row : channel_rows(total, L, w_channels)) {
        mask(row, row) = 1.0;
    }
    const Projector c_zero(std::move(mask));
    const Projector both = intersect(projector_onto(full), c_zero, tol);
    return map_basis(channel_selector(total, L, w_channels), image_of(both), tol);
}

StateSpaceModel random_minimal_model(std::size_t q_w, std::size_t q_c, std::size_t n, std::uint64_t seed) {
    if (q_w < 1 || q_c < 1) {
        throw DimensionError("random_minimal_model needs q_w >= 1 and q_c >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> extra_inputs(0, q_w - 1);
    const std::size_t m = q_c + extra_inputs(rng);
    const std::size_t p = q_w + q_c - m;

    std::vector<std::size_t> inputs(m);
    std::iota(inputs.begin(), inputs.end(), std::size_t{1});
    std::shuffle(inputs.begin(), inputs.end(), rng);
    std::vector<std::size_t> picks_c(inputs.begin(), inputs.begin() + static_cast<std::ptrdiff_t>(q_c));
    std::sort(picks_c.begin(), picks_c.end());
    std::vector<std::size_t> picks_w;
    for (std::size_t i = 1; i <= m + p; ++i) {
        if (std::find(picks_c.begin(), picks_c.end(), i) == picks_c.end()) {
            picks_w.push_back(i);
        }
    }
    Partition partition(m + p, picks_w, picks_c);

    const auto ni = static_cast<Eigen::Index>(n);
    const auto mi = static_cast<Eigen::Index>(m);
    const auto pi = static_cast<Eigen::Index>(p);
    for (int draw = 0; draw < kMaxDraws; ++draw) {
        StateSpaceModel model(random_stable_matrix(rng, ni), standard_normal(rng, ni, mi),
                              standard_normal(rng, pi, ni), standard_normal(rng, pi, mi), partition);
        if (model.controllable(kGenerationTol) && model.observable(kGenerationTol)) {
            return model;
        }
    }
    throw GenerationError("no minimal model found after " + std::to_string(kMaxDraws) + " draws");
}

DrivingVariableModel random_driving_model(std::size_t q, std::size_t d, std::size_t n, std::uint64_t seed) {
    if (q < 1) {
        throw DimensionError("random_driving_model needs q >= 1");
    }
    std::mt19937_64 rng(seed);
    const auto ni = static_cast<Eigen::Index>(n);
    const auto di = static_cast<Eigen::Index>(d);
    const auto qi = static_cast<Eigen::Index>(q);
    for (int draw = 0; draw < kMaxDraws; ++draw) {
        DrivingVariableModel model{random_stable_matrix(rng, ni), standard_normal(rng, ni, di),
                                   standard_normal(rng, qi, ni), standard_normal(rng, qi, di)};
        const StateSpaceModel check(model.A, Matrix(ni, 0), model.C, Matrix(qi, 0));
        if (check.observable(kGenerationTol)) {
            return model;
        }
    }
    throw GenerationError("no observable driving-variable model found after " + std::to_string(kMaxDraws) +
                          " draws");
}

} // namespace ddc
