#pragma once

// Text renderings of command results. JSON output carries "schema": 1.

#include <optional>
#include <string>
#include <string_view>

#include "geocheck/harness/harness.hpp"

namespace geocheck {

enum class OutputFormat { Human, Json, Markdown };

std::optional<OutputFormat> output_format_from_name(std::string_view name);

std::string render_report(const RunReport& r, OutputFormat fmt);
std::string render_report(const EvalReport& r, OutputFormat fmt);
std::string render_report(const SanityReport& r, OutputFormat fmt);

/// `{"points": {"A": [x, y]}, "lines": {"L": [a, b, c]}, "circles": {"Ω": [cx, cy, r]}, "reals": {...}}`.
std::string witness_json(const Assignment& a);

}  // namespace geocheck
