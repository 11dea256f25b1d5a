#include "json_io.hpp"

namespace qtw {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond)
        fail(Status::ParseError, what);
}

double num(const json& j, const char* what) {
    require(j.is_number(), std::string(what) + " must be a number");
    return j.get<double>();
}

} // namespace

json to_json(const Quaternion& q) {
    return json::array({q.w, q.x, q.y, q.z});
}

Quaternion quaternion_from_json(const json& j) {
    require(j.is_array() && j.size() == 4, "quaternion must be a 4-element array");
    return {num(j[0], "component"), num(j[1], "component"), num(j[2], "component"),
            num(j[3], "component")};
}

json to_json(const HVector& x) {
    json rows = json::array();
    for (const auto& q : x.entries)
        rows.push_back(to_json(q));
    return rows;
}

HVector hvector_from_json(const json& j) {
    require(j.is_array() && !j.empty(), "quaternion vector must be a nonempty array");
    HVector x(static_cast<int>(j.size()));
    for (int k = 0; k < x.size(); ++k)
        x[k] = quaternion_from_json(j[static_cast<size_t>(k)]);
    return x;
}

json to_json(const HMatrix& a) {
    json entries = json::array();
    for (int r = 0; r < a.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < a.cols; ++c)
            row.push_back(to_json(a.at(r, c)));
        entries.push_back(std::move(row));
    }
    return json{{"rows", a.rows}, {"cols", a.cols}, {"entries", std::move(entries)}};
}

HMatrix hmatrix_from_json(const json& j) {
    require(j.is_object() && j.contains("rows") && j.contains("cols") &&
                j.contains("entries"),
            "HMatrix must have rows, cols and entries");
    const int rows = j["rows"].get<int>();
    const int cols = j["cols"].get<int>();
    require(rows >= 1 && cols >= 1, "HMatrix dimensions must be >= 1");
    const json& entries = j["entries"];
    require(entries.is_array() && static_cast<int>(entries.size()) == rows,
            "entries row count mismatch");
    HMatrix a(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const json& row = entries[static_cast<size_t>(r)];
        require(row.is_array() && static_cast<int>(row.size()) == cols,
                "entries column count mismatch");
        for (int c = 0; c < cols; ++c)
            a.at(r, c) = quaternion_from_json(row[static_cast<size_t>(c)]);
    }
    return a;
}

json to_json(const RealLinearMap& t) {
    json data = json::array();
    for (int r = 0; r < t.matrix().rows(); ++r)
        for (int c = 0; c < t.matrix().cols(); ++c)
            data.push_back(t.matrix()(r, c));
    return json{{"m", t.source_dim()}, {"n", t.target_dim()}, {"data", std::move(data)}};
}

RealLinearMap realmap_from_json(const json& j) {
    require(j.is_object() && j.contains("m") && j.contains("n") && j.contains("data"),
            "RealLinearMap must have m, n and data");
    const int m = j["m"].get<int>();
    const int n = j["n"].get<int>();
    require(m >= 1 && n >= 1, "RealLinearMap dimensions must be >= 1");
    const json& data = j["data"];
    require(data.is_array() && static_cast<int>(data.size()) == 16 * m * n,
            "data must hold 16*m*n doubles");
    RealLinearMap t(m, n);
    for (int r = 0; r < 4 * m; ++r)
        for (int c = 0; c < 4 * n; ++c)
            t.matrix()(r, c) = num(data[static_cast<size_t>(r) * 4 * n + c], "data");
    return t;
}

json to_json(const Rotation3& r) {
    json out = json::array();
    for (double v : r.data())
        out.push_back(v);
    return out;
}

Rotation3 rotation_from_json(const json& j) {
    require(j.is_array() && j.size() == 9, "rotation must be a 9-element array");
    std::array<double, 9> m{};
    for (size_t i = 0; i < 9; ++i)
        m[i] = num(j[i], "rotation entry");
    return Rotation3(m);
}

json to_json(const Decomposition& d) {
    return json{{"a", to_json(d.a.value())},
                {"A", to_json(d.A)},
                {"T", to_json(d.T)},
                {"residual", d.residual}};
}

json to_json(const FueterSuiteReport& r) {
    return json{{"m", r.m},
                {"n", r.n},
                {"minpoly_residual", r.minpoly_residual},
                {"dim_Q", r.dim_q},
                {"dim_F", r.dim_f},
                {"span_dim", r.span_dim},
                {"axis_span_dim", r.axis_span_dim},
                {"basis_independence", r.basis_independence},
                {"trials", r.trials},
                {"failures", r.failures},
                {"ok", r.ok}};
}

json to_json(const ProjectiveSample& s) {
    json out = json::array();
    for (const auto& [x, y] : s.pairs)
        out.push_back(json{{"x", to_json(x)}, {"y", to_json(y)}});
    return out;
}

ProjectiveSample samples_from_json(const json& j) {
    require(j.is_array() && !j.empty(), "samples must be a nonempty array");
    ProjectiveSample s;
    for (const json& item : j) {
        require(item.is_object() && item.contains("x") && item.contains("y"),
                "each sample needs x and y");
        s.pairs.emplace_back(hvector_from_json(item["x"]), hvector_from_json(item["y"]));
    }
    return s;
}

json to_json(const Recovery& r) {
    return json{{"A", to_json(r.A)},
                {"residual", r.residual},
                {"second_singular_value", r.second_singular}};
}

json to_json(const LinesCheckReport& r) {
    return json{{"maps_lines", r.maps_lines},
                {"cross_check", r.cross_check},
                {"trials", r.trials},
                {"failures", r.failures},
                {"max_containment_residual", r.max_containment_residual}};
}

json to_json(const TwistorReport& r) {
    json rows = json::array();
    for (const TwistorRow& row : r.rows) {
        json jr{{"x", json::array()},
                {"zero_differential", row.zero_differential},
                {"quaternionic", row.quaternionic},
                {"quaternionic_residual", row.quaternionic_residual},
                {"hessian_norm", row.hessian_norm}};
        for (Eigen::Index i = 0; i < row.x.size(); ++i)
            jr["x"].push_back(row.x[i]);
        if (row.quaternionic) {
            jr["dir"] = json::array({row.j_dir.value().x, row.j_dir.value().y,
                                     row.j_dir.value().z});
            jr["tau"] = row.tau;
            jr["tau_prime"] = row.tau_prime;
            jr["T"] = to_json(row.lift);
        }
        rows.push_back(std::move(jr));
    }
    return json{{"map", r.map_name},
                {"m", r.m},
                {"n", r.n},
                {"h", r.h},
                {"seed", r.seed},
                {"tol", r.tol},
                {"points", r.points},
                {"rows", std::move(rows)},
                {"summary",
                 json{{"quaternionic_points", r.quaternionic_points},
                      {"zero_differential_points", r.zero_differential_points},
                      {"tau_max", r.tau_max},
                      {"tau_median", r.tau_median},
                      {"tau_prime_max", r.tau_prime_max},
                      {"tau_prime_median", r.tau_prime_median},
                      {"geodesic_max", r.geodesic_max},
                      {"tau_twistorial", r.tau_twistorial}}}};
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(Status::ParseError, "malformed JSON input");
    return j;
}

} // namespace qtw
