#pragma once

#include "dlab/sweep.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace dlab {

using Json = nlohmann::ordered_json;

// 17 significant digits, '.' decimal separator, "inf"/"nan" spelled out
std::string format_real(double v);

// RFC 4180: fields containing ',', '"' or a line break are quoted, quotes doubled, CRLF row ends
std::string csv_field(const std::string& s);
std::string csv_text(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

// one row per point: the parameters in first-seen order, then measured, bound, ratio
std::string sweep_csv(const SweepResult& r);
// name, abscissa, fit, flags and the point count
Json sweep_summary(const SweepResult& r);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);
std::string file_digest(const std::string& path);

// writes bytes exactly; throws std::runtime_error on failure
void write_text_file(const std::string& path, const std::string& text);
// pretty-printed with two-space indent and a trailing newline
void write_json_file(const std::string& path, const Json& j);

}  // namespace dlab
