#pragma once

#include <filesystem>
#include <iosfwd>

#include "ddc/signal.hpp"

namespace ddc {

// One row per sample, one column per channel, optional `ch1,...,chq` header.
// Ragged rows and non-numeric fields raise FormatError.
[[nodiscard]] Trajectory read_trajectory_csv(std::istream& in);
[[nodiscard]] Trajectory read_trajectory_csv(const std::filesystem::path& path);

// Writes the header and full round-trip precision values.
void write_trajectory_csv(std::ostream& out, const Trajectory& w);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& w);

// Plain numeric matrix, one CSV row per matrix row, no header.
void write_matrix_csv(std::ostream& out, const Matrix& M);
[[nodiscard]] Matrix read_matrix_csv(std::istream& in);

} // namespace ddc
