#include "ddc/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "ddc/errors.hpp"

namespace ddc {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                 : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

bool parse_double(std::string_view field, double& value) {
    if (field.empty()) {
        return false;
    }
    if (field.front() == '+') {
        field.remove_prefix(1);
    }
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    return ec == std::errc() && ptr == end;
}

bool is_header(const std::vector<std::string_view>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] != "ch" + std::to_string(i + 1)) {
            return false;
        }
    }
    return true;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Reads numeric rows; returns the row width.
std::size_t read_rows(std::istream& in, std::vector<double>& values, bool allow_header, std::size_t& row_count) {
    std::string line;
    std::size_t width = 0;
    std::size_t line_no = 0;
    row_count = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        const auto view = trim(line);
        if (view.empty()) {
            continue;
        }
        const auto fields = split_fields(view);
        if (first && allow_header && is_header(fields)) {
            width = fields.size();
            first = false;
            continue;
        }
        if (width == 0) {
            width = fields.size();
        } else if (fields.size() != width) {
            throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                              " fields, found " + std::to_string(fields.size()));
        }
        first = false;
        for (auto f : fields) {
            double v = 0.0;
            if (!parse_double(f, v)) {
                throw FormatError("line " + std::to_string(line_no) + ": not a number: '" + std::string(f) + "'");
            }
            values.push_back(v);
        }
        ++row_count;
    }
    return width;
}

} // namespace

Trajectory read_trajectory_csv(std::istream& in) {
    std::vector<double> values;
    std::size_t rows = 0;
    const auto width = read_rows(in, values, true, rows);
    if (rows == 0) {
        throw FormatError("trajectory CSV has no samples");
    }
    return Trajectory(width, rows, std::move(values));
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    return read_trajectory_csv(in);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& w) {
    for (std::size_t i = 1; i <= w.channels(); ++i) {
        out << (i > 1 ? "," : "") << "ch" << i;
    }
    out << '\n';
    for (std::size_t t = 1; t <= w.length(); ++t) {
        const auto s = w.sample(t);
        for (std::size_t i = 0; i < s.size(); ++i) {
            out << (i > 0 ? "," : "") << format_double(s[i]);
        }
        out << '\n';
    }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& w) {
    std::ofstream out(path);
    if (!out) {
        throw FormatError("cannot write " + path.string());
    }
    write_trajectory_csv(out, w);
}

void write_matrix_csv(std::ostream& out, const Matrix& M) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            out << (j > 0 ? "," : "") << format_double(M(i, j));
        }
        out << '\n';
    }
}

Matrix read_matrix_csv(std::istream& in) {
    std::vector<double> values;
    std::size_t rows = 0;
    const auto width = read_rows(in, values, false, rows);
    Matrix M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < width; ++j) {
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * width + j];
        }
    }
    return M;
}

} // namespace ddc
