#include "lrtriple/json_io.hpp"

namespace lrt {

namespace {

Json vector_json(const Vector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

Json entries_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i)));
    return rows;
}

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw InvalidSpec(where + " is missing \"" + key + "\"");
    return j.at(key);
}

}  // namespace

Json context_to_json(const Field& f) {
    Json j;
    switch (f.kind()) {
        case FieldKind::rationals: j["kind"] = "rationals"; break;
        case FieldKind::prime_field: j["kind"] = "prime"; break;
        case FieldKind::rational_functions: j["kind"] = "ratfunc"; break;
    }
    j["p"] = f.characteristic();
    j["var"] = f.is_function_field() ? Json(f.variable_name()) : Json(nullptr);
    return j;
}

Field context_from_json(const Json& j) {
    const Json& kind = member(j, "kind", "context");
    if (!kind.is_string()) throw InvalidSpec("context \"kind\" must be a string");
    auto prime_of = [&]() -> std::uint64_t {
        if (!j.contains("p") || j.at("p").is_null()) return 0;
        if (!j.at("p").is_number_unsigned()) throw InvalidSpec("context \"p\" must be a nonnegative integer");
        return j.at("p").get<std::uint64_t>();
    };
    const std::string k = kind.get<std::string>();
    try {
        if (k == "rationals") return Field::rationals();
        if (k == "prime") return Field::prime(prime_of());
        if (k == "ratfunc") {
            const Json& v = member(j, "var", "ratfunc context");
            if (!v.is_string()) throw InvalidSpec("context \"var\" must be a string");
            const std::uint64_t p = prime_of();
            return Field::rational_functions(p == 0 ? Field::rationals() : Field::prime(p), v.get<std::string>());
        }
    } catch (const InvalidContext& e) {
        throw InvalidSpec(std::string("context: ") + e.what());
    }
    throw InvalidSpec("unknown context kind '" + k + "'");
}

Json matrix_to_json(const Matrix& m) {
    Json j;
    j["context"] = context_to_json(m.field());
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = entries_json(m);
    return j;
}

Matrix matrix_from_json(const Json& j, const Field& f) {
    const Json* entries = &j;
    if (j.is_object()) {
        if (j.contains("context") && context_from_json(j.at("context")) != f) {
            throw InvalidSpec("matrix context differs from the declared context");
        }
        entries = &member(j, "entries", "matrix");
    }
    if (!entries->is_array()) throw InvalidSpec("matrix entries must be an array of rows");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < entries->size(); ++i) {
        const Json& r = (*entries)[i];
        if (!r.is_array()) throw InvalidSpec("matrix row " + std::to_string(i) + " is not an array");
        Vector row;
        for (std::size_t c = 0; c < r.size(); ++c) {
            const Json& e = r[c];
            if (e.is_number_integer()) {
                row.push_back(f.from_int(e.get<long long>()));
            } else if (e.is_string()) {
                try {
                    row.push_back(f.parse(e.get<std::string>()));
                } catch (const ParseError& pe) {
                    throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(c) + "): " + pe.what(),
                                     pe.position());
                }
            } else {
                throw InvalidSpec("entry (" + std::to_string(i) + "," + std::to_string(c) + ") must be a string");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ShapeMismatch("matrix row " + std::to_string(i) + " has " + std::to_string(row.size()) + " entries, expected " +
                                std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidSpec("matrix has no rows");
    Matrix m = Matrix::from_rows(f, rows);
    if (j.is_object()) {
        if ((j.contains("rows") && j.at("rows") != m.rows()) || (j.contains("cols") && j.at("cols") != m.cols())) {
            throw ShapeMismatch("matrix \"rows\"/\"cols\" disagree with its entries");
        }
    }
    return m;
}

Json triple_to_json(const Field& f, const std::array<Matrix, 3>& abc) {
    Json j;
    j["context"] = context_to_json(f);
    const char* names[3] = {"A", "B", "C"};
    for (int k = 0; k < 3; ++k) j[names[k]] = matrix_to_json(abc[k]);
    return j;
}

std::array<Matrix, 3> triple_from_json(const Json& j, Field& field) {
    field = context_from_json(member(j, "context", "triple"));
    std::array<Matrix, 3> abc;
    const char* names[3] = {"A", "B", "C"};
    for (int k = 0; k < 3; ++k) abc[k] = matrix_from_json(member(j, names[k], "triple"), field);
    for (int k = 1; k < 3; ++k) {
        if (abc[k].rows() != abc[0].rows() || abc[k].cols() != abc[0].cols()) {
            throw ShapeMismatch(std::string("matrices A and ") + names[k] + " differ in size");
        }
    }
    return abc;
}

Json triple_report_json(const LRTripleData& t) {
    Json j;
    j["context"] = context_to_json(t.field);
    j["d"] = t.d;
    j["A"] = entries_json(t.A());
    j["B"] = entries_json(t.B());
    j["C"] = entries_json(t.C());
    Json phi = Json::array(), a = Json::array(), alpha = Json::array(), beta = Json::array();
    for (int k = 0; k < 3; ++k) {
        phi.push_back(vector_json(t.pairs[k].phi_values));
        a.push_back(vector_json(t.trace[k]));
        alpha.push_back(vector_json(t.alpha[k]));
        beta.push_back(vector_json(t.beta[k]));
    }
    j["phi"] = phi;
    j["a"] = a;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["bipartite"] = t.bipartite;
    j["J"] = t.J ? entries_json(*t.J) : Json(nullptr);
    return j;
}

Json space_json(const TridiagSpace& s) {
    Json j;
    if (s.triple) j["context"] = context_to_json(s.triple->field);
    j["dimension"] = s.dimension;
    Json basis = Json::array();
    for (const auto& b : s.basis) basis.push_back(entries_json(b));
    j["basis"] = basis;
    return j;
}

Json report_json(const VerificationReport& r) {
    Json j;
    j["check"] = r.check;
    j["spec"] = r.spec;
    j["passed"] = r.passed();
    j["dimension"] = r.dimension;
    j["expected"] = r.expected;
    j["basis_ok"] = r.basis_ok;
    Json wc = Json::object();
    for (const auto& [label, v] : r.word_coefficients) wc[label] = vector_json(v);
    j["word_coefficients"] = wc;
    Json values = Json::object();
    for (const auto& [k, v] : r.values) values[k] = v;
    j["values"] = values;
    j["failures"] = r.failures;
    return j;
}

}  // namespace lrt
