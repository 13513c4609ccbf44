#pragma once

// JSON forms. Elements are strings in the element grammar, always paired
// with a context object {"kind": "rationals" | "prime" | "ratfunc", "p": n, "var": s}.
// Key order is fixed, so equal inputs serialize to identical bytes.

#include <array>

#include <json.hpp>

#include "lrtriple/tridiag.hpp"

namespace lrt {

using Json = nlohmann::ordered_json;

Json context_to_json(const Field& f);
// Throws InvalidSpec.
Field context_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
// Entries of a bare "entries" array; the matrix context must equal f when
// present. Throws InvalidSpec, ParseError or ShapeMismatch.
Matrix matrix_from_json(const Json& j, const Field& f);

// {"context", "A", "B", "C"}: the input accepted by triple_from_json.
Json triple_to_json(const Field& f, const std::array<Matrix, 3>& abc);
std::array<Matrix, 3> triple_from_json(const Json& j, Field& field);

Json triple_report_json(const LRTripleData& t);
Json space_json(const TridiagSpace& s);
Json report_json(const VerificationReport& r);

}  // namespace lrt
