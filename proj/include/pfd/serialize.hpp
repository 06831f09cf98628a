#pragma once

#include <string>

#include "json.hpp"

#include "pfd/bounds.hpp"

namespace pfd {

using Json = nlohmann::ordered_json;

// Matrix schema: {"rows": n, "cols": m, "entries": [[re, im], ...]} row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Ensemble schema: {"kind": ..., "weights": [...], "points": [matrix, ...]}.
// Parsing validates every ensemble invariant and reports the failing field.
Json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const Json& j);

// Moment operator schema: the matrix fields plus "space", "dims" (per-copy
// factor dimensions) and "t".
Json moment_to_json(const MomentOperator& m);
MomentOperator moment_from_json(const Json& j);

Json bound_report_to_json(const BoundReport& r);

/// Parses a file; throws io_error for missing/unreadable/malformed files.
Json load_json_file(const std::string& path);
void save_json_file(const Json& j, const std::string& path);

Ensemble load_ensemble(const std::string& path);
void save_ensemble(const Ensemble& e, const std::string& path);
MomentOperator load_moment(const std::string& path);
void save_moment(const MomentOperator& m, const std::string& path);

} // namespace pfd
