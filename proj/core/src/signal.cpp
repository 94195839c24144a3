#include "ddc/signal.hpp"

#include <algorithm>
#include <string>

#include "ddc/errors.hpp"

namespace ddc {

Eigen::Index numerical_rank(const Matrix& M, RankTolerance tol) {
    if (M.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<Matrix> svd(M);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) {
        return 0;
    }
    const double cutoff = tol.threshold(s(0), M.rows(), M.cols());
    return (s.array() > cutoff).count();
}

Trajectory::Trajectory(std::size_t q, std::size_t T, std::vector<double> data)
    : q_(q), T_(T), data_(std::move(data)) {
    if (q_ < 1 || T_ < 1) {
        throw DimensionError("trajectory needs q >= 1 and T >= 1");
    }
    if (data_.size() != q_ * T_) {
        throw DimensionError("trajectory data has " + std::to_string(data_.size()) + " values, expected " +
                             std::to_string(q_ * T_));
    }
}

Trajectory Trajectory::from_columns(const Matrix& samples) {
    const auto q = static_cast<std::size_t>(samples.rows());
    const auto T = static_cast<std::size_t>(samples.cols());
    std::vector<double> data(samples.data(), samples.data() + samples.size());
    return Trajectory(q, T, std::move(data));
}

double Trajectory::at(std::size_t t, std::size_t channel) const {
    if (t < 1 || t > T_ || channel < 1 || channel > q_) {
        throw RangeError("trajectory index out of range");
    }
    return data_[(t - 1) * q_ + (channel - 1)];
}

std::span<const double> Trajectory::sample(std::size_t t) const {
    if (t < 1 || t > T_) {
        throw RangeError("sample index out of range");
    }
    return std::span<const double>(data_).subspan((t - 1) * q_, q_);
}

Matrix Trajectory::as_columns() const {
    return Eigen::Map<const Matrix>(data_.data(), static_cast<Eigen::Index>(q_), static_cast<Eigen::Index>(T_));
}

Trajectory Trajectory::select_channels(std::span<const std::size_t> channels) const {
    if (channels.empty()) {
        throw DimensionError("channel selection is empty");
    }
    std::vector<double> out;
    out.reserve(channels.size() * T_);
    for (std::size_t t = 0; t < T_; ++t) {
        for (auto ch : channels) {
            if (ch < 1 || ch > q_) {
                throw RangeError("channel " + std::to_string(ch) + " out of range");
            }
            out.push_back(data_[t * q_ + ch - 1]);
        }
    }
    return Trajectory(channels.size(), T_, std::move(out));
}

Partition::Partition(std::size_t total, std::vector<std::size_t> picks_w, std::vector<std::size_t> picks_c)
    : total_(total), picks_w_(std::move(picks_w)), picks_c_(std::move(picks_c)) {
    if (picks_w_.empty() || picks_c_.empty()) {
        throw PartitionError("partition needs at least one w channel and one c channel");
    }
    if (picks_w_.size() + picks_c_.size() != total_) {
        throw PartitionError("partition picks do not cover all " + std::to_string(total_) + " channels");
    }
    std::vector<bool> seen(total_, false);
    for (const auto* picks : {&picks_w_, &picks_c_}) {
        for (auto i : *picks) {
            if (i < 1 || i > total_) {
                throw PartitionError("partition index " + std::to_string(i) + " out of range");
            }
            if (seen[i - 1]) {
                throw PartitionError("partition index " + std::to_string(i) + " picked twice");
            }
            seen[i - 1] = true;
        }
    }
}

std::vector<std::size_t> Partition::canonical_order() const {
    std::vector<std::size_t> order = picks_w_;
    order.insert(order.end(), picks_c_.begin(), picks_c_.end());
    return order;
}

Trajectory cut(const Trajectory& w, std::size_t L) {
    if (L < 1 || L > w.length()) {
        throw RangeError("cut length out of range");
    }
    const auto data = w.data().first(L * w.channels());
    return Trajectory(w.channels(), L, {data.begin(), data.end()});
}

Trajectory shift(const Trajectory& w, std::size_t tau) {
    if (tau < 1 || tau > w.length()) {
        throw RangeError("shift offset out of range");
    }
    const auto data = w.data().subspan((tau - 1) * w.channels());
    return Trajectory(w.channels(), w.length() - tau + 1, {data.begin(), data.end()});
}

Matrix hankel(const Trajectory& w, std::size_t L) {
    if (L < 1 || L > w.length()) {
        throw RangeError("Hankel depth out of range");
    }
    const auto q = static_cast<Eigen::Index>(w.channels());
    const auto depth = static_cast<Eigen::Index>(L);
    const auto cols = static_cast<Eigen::Index>(w.length() - L + 1);
    const Matrix X = w.as_columns();
    Matrix H(q * depth, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index t = 0; t < depth; ++t) {
            H.block(t * q, j, q, 1) = X.col(j + t);
        }
    }
    return H;
}

GpeResult is_gpe(const Trajectory& w, std::size_t L, std::size_t m_bound, std::size_t n_bound, RankTolerance tol) {
    const Matrix H = hankel(w, L);
    const auto expected = static_cast<Eigen::Index>(m_bound * L + n_bound);
    if (expected > std::min(H.rows(), H.cols())) {
        throw InfeasibleRankError("expected rank " + std::to_string(expected) + " exceeds Hankel dimensions " +
                                  std::to_string(H.rows()) + "x" + std::to_string(H.cols()));
    }
    GpeResult result;
    result.rank = numerical_rank(H, tol);
    result.expected = expected;
    result.gpe = result.rank == expected;
    return result;
}

std::vector<Eigen::Index> channel_rows(std::size_t total, std::size_t L, std::span<const std::size_t> channels) {
    std::vector<Eigen::Index> rows;
    rows.reserve(channels.size() * L);
    for (std::size_t t = 0; t < L; ++t) {
        for (auto ch : channels) {
            if (ch >= total) {
                throw RangeError("channel index out of range");
            }
            rows.push_back(static_cast<Eigen::Index>(t * total + ch));
        }
    }
    return rows;
}

Matrix channel_selector(std::size_t total, std::size_t L, std::span<const std::size_t> channels) {
    const auto rows = channel_rows(total, L, channels);
    Matrix S = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(total * L));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        S(static_cast<Eigen::Index>(i), rows[i]) = 1.0;
    }
    return S;
}

Trajectory unstack(const Vector& v, std::size_t q) {
    if (q == 0 || v.size() == 0 || static_cast<std::size_t>(v.size()) % q != 0) {
        throw DimensionError("vector length is not a positive multiple of the channel count");
    }
    return Trajectory(q, static_cast<std::size_t>(v.size()) / q, std::vector<double>(v.data(), v.data() + v.size()));
}

} // namespace ddc
