#include "pfd/serialize.hpp"

#include <fstream>

namespace pfd {

namespace {

const Json& require_field(const Json& j, const char* name, const char* what) {
    const auto it = j.find(name);
    if (it == j.end()) {
        throw validation_error(std::string(what) + ": missing field '" + name + "'");
    }
    return *it;
}

} // namespace

Json matrix_to_json(const Matrix& m) {
    Json entries = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
    try {
        const long long rows = require_field(j, "rows", "matrix").get<long long>();
        const long long cols = require_field(j, "cols", "matrix").get<long long>();
        if (rows < 1 || cols < 1) throw validation_error("matrix: dimensions must be positive");
        check_dense_dim(rows, "matrix_from_json");
        check_dense_dim(cols, "matrix_from_json");
        const Json& entries = require_field(j, "entries", "matrix");
        if (!entries.is_array() || static_cast<long long>(entries.size()) != rows * cols) {
            throw validation_error("matrix: entries count does not equal rows*cols");
        }
        Matrix m(rows, cols);
        long long n = 0;
        for (const auto& e : entries) {
            if (!e.is_array() || e.size() != 2) {
                throw validation_error("matrix: entry " + std::to_string(n) +
                                       " is not an [re, im] pair");
            }
            m(n / cols, n % cols) = Complex(e[0].get<double>(), e[1].get<double>());
            ++n;
        }
        return m;
    } catch (const Json::exception& ex) {
        throw validation_error(std::string("matrix: ") + ex.what());
    }
}

Json ensemble_to_json(const Ensemble& e) {
    Json points = Json::array();
    for (const auto& p : e.points) points.push_back(matrix_to_json(p));
    return Json{{"kind", to_string(e.kind)}, {"weights", e.weights}, {"points", std::move(points)}};
}

Ensemble ensemble_from_json(const Json& j) {
    Ensemble e;
    try {
        e.kind = ensemble_kind_from_string(require_field(j, "kind", "ensemble").get<std::string>());
        e.weights = require_field(j, "weights", "ensemble").get<std::vector<double>>();
        const Json& points = require_field(j, "points", "ensemble");
        if (!points.is_array()) throw validation_error("ensemble: points must be an array");
        for (const auto& p : points) e.points.push_back(matrix_from_json(p));
    } catch (const Json::exception& ex) {
        throw validation_error(std::string("ensemble: ") + ex.what());
    }
    e.validate();
    return e;
}

Json moment_to_json(const MomentOperator& m) {
    Json j = matrix_to_json(m.matrix);
    j["space"] = to_string(m.space);
    j["dims"] = m.local_dims.dims();
    j["t"] = m.t;
    return j;
}

MomentOperator moment_from_json(const Json& j) {
    MomentOperator m;
    try {
        m.space = space_from_string(require_field(j, "space", "moment operator").get<std::string>());
        m.local_dims = FactorShape(require_field(j, "dims", "moment operator").get<std::vector<int>>());
        m.t = require_field(j, "t", "moment operator").get<int>();
        m.matrix = matrix_from_json(j);
    } catch (const Json::exception& ex) {
        throw validation_error(std::string("moment operator: ") + ex.what());
    }
    validate_moment_operator(m);
    return m;
}

Json bound_report_to_json(const BoundReport& r) {
    Json bounds = Json::object();
    for (const auto& [name, v] : r.bounds) bounds[name] = v;
    Json satisfied = Json::object();
    for (const auto& [name, s] : r.satisfied) satisfied[name] = s;
    return Json{{"p", r.p.str()},
                {"delta_source_p", r.delta_source_p},
                {"delta_source_inf", r.delta_source_inf},
                {"delta_pushed", r.delta_pushed},
                {"bounds", std::move(bounds)},
                {"satisfied", std::move(satisfied)}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& ex) {
        throw io_error("parse error in '" + path + "': " + ex.what());
    }
}

void save_json_file(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw io_error("write to '" + path + "' failed");
}

Ensemble load_ensemble(const std::string& path) {
    return ensemble_from_json(load_json_file(path));
}

void save_ensemble(const Ensemble& e, const std::string& path) {
    save_json_file(ensemble_to_json(e), path);
}

MomentOperator load_moment(const std::string& path) {
    return moment_from_json(load_json_file(path));
}

void save_moment(const MomentOperator& m, const std::string& path) {
    save_json_file(moment_to_json(m), path);
}

} // namespace pfd
