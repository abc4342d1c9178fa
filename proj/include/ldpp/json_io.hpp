#pragma once

// JSON file formats and report serialization. All rationals travel as
// canonical "p/q" strings; row/column indices in reports are 1-based;
// constraint indices are 0-based positions in the documented system order.
// Serialization uses insertion-ordered JSON so identical inputs produce
// byte-identical output.
//
// Schemas (versioned via the "schema" field):
//   ldpp-matrix/1    {"schema", "n", "t", "matrix": [[p/q, ...], ...]}
//   ldpp-utility/1   {"schema", "n", "matrix"} (entries unrestricted)
//   ldpp-analysis/1, ldpp-vertices/1, ldpp-optimize/1, ldpp-probe/1,
//   ldpp-check/1, ldpp-verify/1 are produced, never consumed.

#include "ldpp/analysis.hpp"
#include "ldpp/enumeration.hpp"
#include "ldpp/optimize.hpp"
#include "ldpp/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ldpp {

using Json = nlohmann::ordered_json;

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& j, std::size_t expected_n) {
    if (!j.is_array() || j.size() != expected_n)
        throw std::invalid_argument("field 'matrix' must be an array of n rows");
    Matrix m(expected_n, expected_n);
    for (std::size_t i = 0; i < expected_n; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != expected_n)
            throw std::invalid_argument("matrix row " + std::to_string(i + 1) +
                                        " must hold n entries");
        for (std::size_t c = 0; c < expected_n; ++c) {
            if (!row[c].is_string())
                throw std::invalid_argument("matrix entries must be rational strings");
            try {
                m(i, c) = parse_rational(row[c].get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("matrix entry (" + std::to_string(i + 1) + "," +
                                            std::to_string(c + 1) + "): " + e.what());
            }
        }
    }
    return m;
}

struct MatrixFile {
    std::size_t n;
    Rational t;
    Matrix matrix;
};

inline MatrixFile parse_matrix_file(const std::string& text) {
    const Json j = Json::parse(text);  // throws with byte position on bad JSON
    if (!j.is_object()) throw std::invalid_argument("matrix file must be a JSON object");
    if (j.value("schema", "") != "ldpp-matrix/1")
        throw std::invalid_argument("expected schema 'ldpp-matrix/1'");
    if (!j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0)
        throw std::invalid_argument("field 'n' must be a positive integer");
    const std::size_t n = j["n"].get<std::size_t>();
    if (!j.contains("t") || !j["t"].is_string())
        throw std::invalid_argument("field 't' must be a rational string");
    if (!j.contains("matrix")) throw std::invalid_argument("field 'matrix' is required");
    return {n, parse_rational(j["t"].get<std::string>()), matrix_from_json(j["matrix"], n)};
}

inline Json matrix_file_to_json(const MatrixFile& f) {
    Json j;
    j["schema"] = "ldpp-matrix/1";
    j["n"] = f.n;
    j["t"] = to_string(f.t);
    j["matrix"] = matrix_to_json(f.matrix);
    return j;
}

/// Utility files carry no t and allow arbitrary rational entries.
inline std::pair<std::size_t, Matrix> parse_utility_file(const std::string& text) {
    const Json j = Json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("utility file must be a JSON object");
    if (j.value("schema", "") != "ldpp-utility/1")
        throw std::invalid_argument("expected schema 'ldpp-utility/1'");
    if (!j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0)
        throw std::invalid_argument("field 'n' must be a positive integer");
    const std::size_t n = j["n"].get<std::size_t>();
    if (!j.contains("matrix")) throw std::invalid_argument("field 'matrix' is required");
    return {n, matrix_from_json(j["matrix"], n)};
}

inline Json analysis_to_json(const AnalysisReport& rep, std::size_t n, const Rational& t) {
    Json j;
    j["schema"] = "ldpp-analysis/1";
    j["n"] = n;
    j["t"] = to_string(t);
    Json gamma = Json::array();
    for (std::size_t c : rep.gamma) gamma.push_back(c + 1);
    j["gamma"] = std::move(gamma);
    Json lambda = Json::array();
    for (const auto& [r, c] : rep.lambda) lambda.push_back(Json::array({r + 1, c + 1}));
    j["lambda"] = std::move(lambda);
    j["rank"] = rep.rank;
    j["isExtreme"] = rep.is_extreme;
    j["familyTag"] = to_string(rep.family);
    j["tightCount"] = rep.tight_indices.size();
    j["tightIndices"] = rep.tight_indices;
    return j;
}

inline Json vertex_set_to_json(const VertexSet& v, const std::string& mode, bool canonical,
                               bool complete, std::uint64_t bases_examined) {
    Json j;
    j["schema"] = "ldpp-vertices/1";
    j["n"] = v.n();
    j["t"] = to_string(v.t());
    j["mode"] = mode;
    j["canonical"] = canonical;
    j["complete"] = complete;
    if (mode == "oracle") j["basesExamined"] = bases_examined;
    j["count"] = v.size();
    Json verts = Json::array();
    for (std::size_t i = 0; i < v.size(); ++i) {
        Json entry;
        entry["provenance"] = v.provenance(i) == Provenance::Generator ? "Generator" : "Oracle";
        entry["matrix"] = matrix_to_json(v[i].mat());
        verts.push_back(std::move(entry));
    }
    j["vertices"] = std::move(verts);
    return j;
}

inline Json optimization_to_json(const OptimizationResult& r, std::size_t n, const Rational& t) {
    Json j;
    j["schema"] = "ldpp-optimize/1";
    j["n"] = n;
    j["t"] = to_string(t);
    j["method"] = r.method == OptMethod::Simplex ? "Simplex" : "VertexScan";
    j["value"] = to_string(r.value);
    j["argmax"] = matrix_to_json(r.argmax.mat());
    j["tightIndices"] = r.certificate;
    return j;
}

inline Json probe_to_json(const ProbeReport& rep) {
    Json j;
    j["schema"] = "ldpp-probe/1";
    j["n"] = rep.n;
    j["t"] = to_string(rep.t);
    j["seed"] = rep.seed;
    j["trialsRun"] = rep.trials_run;
    Json counters = Json::array();
    for (std::size_t i = 0; i < rep.counters_found.size(); ++i) {
        Json entry;
        entry["trial"] = rep.counter_trials[i];
        entry["matrix"] = matrix_to_json(rep.counters_found[i].mat());
        counters.push_back(std::move(entry));
    }
    j["countersFound"] = std::move(counters);
    return j;
}

/// Writes each counterexample candidate as a standalone ldpp-matrix file
/// ("<base>.counter-<trial>.json") so `check` and `analyze` can re-verify
/// it independently of the probe. Returns the written paths.
inline std::vector<std::filesystem::path> write_probe_counter_files(
    const ProbeReport& rep, const std::filesystem::path& base) {
    std::vector<std::filesystem::path> written;
    for (std::size_t i = 0; i < rep.counters_found.size(); ++i) {
        std::filesystem::path p = base;
        p.replace_extension("");
        p += ".counter-" + std::to_string(rep.counter_trials[i]) + ".json";
        std::ofstream out(p);
        if (!out) throw std::invalid_argument("cannot write counter file: " + p.string());
        const MatrixFile f{rep.n, rep.t, rep.counters_found[i].mat()};
        out << matrix_file_to_json(f).dump(2) << "\n";
        written.push_back(std::move(p));
    }
    return written;
}

inline Json check_results_to_json(const std::vector<CheckResult>& results, std::size_t n,
                                  const Rational& t) {
    Json j;
    j["schema"] = "ldpp-verify/1";
    j["n"] = n;
    j["t"] = to_string(t);
    bool all = true;
    Json checks = Json::array();
    for (const auto& r : results) {
        all = all && r.pass;
        Json entry;
        entry["name"] = r.name;
        entry["pass"] = r.pass;
        entry["checked"] = r.checked;
        if (!r.detail.empty()) entry["detail"] = r.detail;
        checks.push_back(std::move(entry));
    }
    j["allPass"] = all;
    j["checks"] = std::move(checks);
    return j;
}

}  // namespace ldpp
