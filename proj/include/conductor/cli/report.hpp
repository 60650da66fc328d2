#pragma once

#include "conductor/verdict.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace conductor::cli {

/// Outcome of one `check` run.
struct Report {
    std::int64_t d = 0;
    std::string base;  // "z" or "order:F"
    IntMatrix ideal;
    mpz_class index;
    Verdict verdict;
    std::optional<Decision> oracle;  // set by --crosscheck
    double elapsed_ms = 0;

    bool operator==(const Report&) const = default;
};

// Big integers travel as decimal strings.
nlohmann::json to_json(const IntVector& v);
nlohmann::json to_json(const IntMatrix& m);
IntVector vector_from_json(const nlohmann::json& j);
IntMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

/// One "key: value" line per JSON field.
std::string render_text(const Report& r, bool color);

/// True unless NO_COLOR is set or stdout is not a terminal.
bool color_enabled();

} // namespace conductor::cli
