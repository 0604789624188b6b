#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/experiments.hpp"

namespace geostab {

inline constexpr std::string_view kCsvHeader = "example,epsilon,base1,base2,h_numeric,h_theory,kappa_at_h,binding";

/// %.17g, with infinities written as inf / -inf and NaN as nan.
[[nodiscard]] std::string format_double(double x);

/// Header line plus one LF-terminated line per row.
[[nodiscard]] std::string to_csv(const std::vector<SweepRow>& rows);
/// Inverse of to_csv; throws ErrorCode::Io on malformed input.
[[nodiscard]] std::vector<SweepRow> parse_csv(std::string_view text);

void write_csv_file(const std::string& path, const std::vector<SweepRow>& rows);

}  // namespace geostab
