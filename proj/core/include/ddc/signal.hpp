#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ddc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Numerical rank rule: a singular value counts when it exceeds
// rel * sigma_max * max(rows, cols).
struct RankTolerance {
    double rel = 1e-10;

    [[nodiscard]] double threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols) const {
        return rel * sigma_max * static_cast<double>(std::max(rows, cols));
    }
};

// Numerical rank of M under the tolerance rule. Empty matrices have rank 0.
[[nodiscard]] Eigen::Index numerical_rank(const Matrix& M, RankTolerance tol = {});

/// A q-channel real time series of length T.
///
/// Samples are stored time-major: the q values of sample t are contiguous.
/// Public accessors use 1-based time and channel indices.
class Trajectory {
public:
    Trajectory(std::size_t q, std::size_t T, std::vector<double> data);

    // Build from a q x T matrix whose column t-1 is sample t.
    static Trajectory from_columns(const Matrix& samples);

    [[nodiscard]] std::size_t channels() const noexcept { return q_; }
    [[nodiscard]] std::size_t length() const noexcept { return T_; }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    [[nodiscard]] double at(std::size_t t, std::size_t channel) const;
    [[nodiscard]] std::span<const double> sample(std::size_t t) const;

    // q x T copy, column t-1 = sample t.
    [[nodiscard]] Matrix as_columns() const;

    // Keeps the listed channels (1-based) in the given order.
    [[nodiscard]] Trajectory select_channels(std::span<const std::size_t> channels) const;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;

private:
    std::size_t q_;
    std::size_t T_;
    std::vector<double> data_;
};

/// Split of a variable vector into to-be-controlled channels (w) and
/// control channels (c). Indices are 1-based positions in the full vector.
class Partition {
public:
    Partition(std::size_t total, std::vector<std::size_t> picks_w, std::vector<std::size_t> picks_c);

    [[nodiscard]] std::size_t total() const noexcept { return total_; }
    [[nodiscard]] std::size_t q() const noexcept { return picks_w_.size(); }
    [[nodiscard]] std::size_t k() const noexcept { return picks_c_.size(); }
    [[nodiscard]] const std::vector<std::size_t>& picks_w() const noexcept { return picks_w_; }
    [[nodiscard]] const std::vector<std::size_t>& picks_c() const noexcept { return picks_c_; }

    // picks_w followed by picks_c: the per-sample (w, c) order used by all
    // finite-horizon plant objects.
    [[nodiscard]] std::vector<std::size_t> canonical_order() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::size_t total_;
    std::vector<std::size_t> picks_w_;
    std::vector<std::size_t> picks_c_;
};

// First L samples.
[[nodiscard]] Trajectory cut(const Trajectory& w, std::size_t L);

// Samples tau..T.
[[nodiscard]] Trajectory shift(const Trajectory& w, std::size_t tau);

// Depth-L Hankel matrix, (qL) x (T-L+1). Column j stacks samples j..j+L-1,
// channels contiguous within each sample.
[[nodiscard]] Matrix hankel(const Trajectory& w, std::size_t L);

struct GpeResult {
    bool gpe = false;
    Eigen::Index rank = 0;
    Eigen::Index expected = 0;
};

// Rank test rank H_L(w) == m_bound * L + n_bound.
[[nodiscard]] GpeResult is_gpe(const Trajectory& w, std::size_t L, std::size_t m_bound, std::size_t n_bound,
                               RankTolerance tol = {});

// Row indices (0-based) of the listed channels (0-based) in a stacked
// time-major vector of `total` channels over L samples.
[[nodiscard]] std::vector<Eigen::Index> channel_rows(std::size_t total, std::size_t L,
                                                     std::span<const std::size_t> channels);

// Selection matrix built from channel_rows.
[[nodiscard]] Matrix channel_selector(std::size_t total, std::size_t L, std::span<const std::size_t> channels);

// Inverse of the stacking convention: a (qL)-vector to a q-channel trajectory.
[[nodiscard]] Trajectory unstack(const Vector& v, std::size_t q);

} // namespace ddc
