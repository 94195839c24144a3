#include "ddc/model_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ddc/errors.hpp"

namespace ddc {
namespace {

using nlohmann::json;

Matrix read_matrix(const json& doc, const char* name, Eigen::Index rows, Eigen::Index cols) {
    if (!doc.contains(name)) {
        throw FormatError(std::string("model JSON is missing '") + name + "'");
    }
    const json& node = doc.at(name);
    if (!node.is_array()) {
        throw FormatError(std::string("'") + name + "' must be an array of rows");
    }
    Matrix M(rows, cols);
    // An n x 0 or 0 x m matrix may be written as [] or as empty rows.
    if (rows * cols == 0) {
        if (!node.empty() && static_cast<Eigen::Index>(node.size()) != rows) {
            throw FormatError(std::string("'") + name + "' has the wrong number of rows");
        }
        return M;
    }
    if (static_cast<Eigen::Index>(node.size()) != rows) {
        throw FormatError(std::string("'") + name + "' has " + std::to_string(node.size()) + " rows, expected " +
                          std::to_string(rows));
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = node.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw FormatError(std::string("row ") + std::to_string(i + 1) + " of '" + name + "' must have " +
                              std::to_string(cols) + " entries");
        }
        for (Eigen::Index j = 0; j < cols; ++j) {
            const json& v = row.at(static_cast<std::size_t>(j));
            if (!v.is_number()) {
                throw FormatError(std::string("non-numeric entry in '") + name + "'");
            }
            M(i, j) = v.get<double>();
        }
    }
    return M;
}

std::vector<std::size_t> read_picks(const json& doc, const char* name) {
    const json& node = doc.at(name);
    if (!node.is_array()) {
        throw FormatError(std::string("'") + name + "' must be an array");
    }
    std::vector<std::size_t> picks;
    for (const auto& v : node) {
        if (!v.is_number_integer() || v.get<long long>() < 1) {
            throw FormatError(std::string("'") + name + "' entries must be positive integers");
        }
        picks.push_back(v.get<std::size_t>());
    }
    return picks;
}

json matrix_to_json(const Matrix& M) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            row.push_back(M(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

StateSpaceModel parse_model_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid model JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw FormatError("model JSON must be an object");
    }
    try {
        const auto n = static_cast<Eigen::Index>(doc.value("A", json::array()).size());
        Eigen::Index p = 0;
        Eigen::Index m = 0;
        const json& D = doc.value("D", json::array());
        if (doc.contains("p")) {
            p = doc.at("p").get<Eigen::Index>();
        } else {
            p = static_cast<Eigen::Index>(D.size());
        }
        if (doc.contains("m")) {
            m = doc.at("m").get<Eigen::Index>();
        } else if (!D.empty() && D.at(0).is_array()) {
            m = static_cast<Eigen::Index>(D.at(0).size());
        } else {
            throw FormatError("cannot infer the input count; give a non-empty 'D' or an explicit 'm'");
        }
        Matrix A = read_matrix(doc, "A", n, n);
        Matrix B = read_matrix(doc, "B", n, m);
        Matrix C = read_matrix(doc, "C", p, n);
        Matrix Dm = read_matrix(doc, "D", p, m);
        std::optional<Partition> partition;
        if (doc.contains("picks_w") || doc.contains("picks_c")) {
            if (!doc.contains("picks_w") || !doc.contains("picks_c")) {
                throw FormatError("'picks_w' and 'picks_c' must be given together");
            }
            partition.emplace(static_cast<std::size_t>(m + p), read_picks(doc, "picks_w"),
                              read_picks(doc, "picks_c"));
        }
        return StateSpaceModel(std::move(A), std::move(B), std::move(C), std::move(Dm), std::move(partition));
    } catch (const json::exception& e) {
        throw FormatError(std::string("invalid model JSON: ") + e.what());
    }
}

StateSpaceModel load_model_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_json(buf.str());
}

std::string model_to_json(const StateSpaceModel& model) {
    json doc;
    doc["A"] = matrix_to_json(model.A());
    doc["B"] = matrix_to_json(model.B());
    doc["C"] = matrix_to_json(model.C());
    doc["D"] = matrix_to_json(model.D());
    doc["m"] = model.inputs();
    doc["p"] = model.outputs();
    if (model.partition()) {
        doc["picks_w"] = model.partition()->picks_w();
        doc["picks_c"] = model.partition()->picks_c();
    }
    return doc.dump(2);
}

} // namespace ddc
