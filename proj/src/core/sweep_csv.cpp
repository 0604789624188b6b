#include "core/sweep_csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "core/errors.hpp"

namespace geostab {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view field, std::size_t line_no) {
  const std::string s(field);
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw Error(ErrorCode::Io, "line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return x;
}

Binding parse_binding(std::string_view s, std::size_t line_no) {
  for (Binding b : {Binding::Curvature, Binding::KappaCap, Binding::Flat, Binding::Unconditional}) {
    if (s == to_string(b)) return b;
  }
  throw Error(ErrorCode::Io, "line " + std::to_string(line_no) + ": unknown binding '" + std::string(s) + "'");
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const SweepRow& r : rows) {
    out += to_string(r.example);
    out += ',' + format_double(r.epsilon);
    out += ',' + format_double(r.base1);
    out += ',';
    if (r.base2) out += format_double(*r.base2);
    out += ',' + format_double(r.numeric_unconditional ? INFINITY : r.h_numeric);
    out += ',' + format_double(r.h_theory);
    out += ',' + format_double(r.kappa_at_h);
    out += ',';
    out += to_string(r.binding);
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> parse_csv(std::string_view text) {
  std::vector<std::string_view> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kCsvHeader) throw Error(ErrorCode::Io, "missing or unexpected CSV header");
  std::vector<SweepRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 8) throw Error(ErrorCode::Io, "line " + std::to_string(i + 1) + ": expected 8 fields");
    const auto ex = parse_example(f[0]);
    if (!ex) throw Error(ErrorCode::Io, "line " + std::to_string(i + 1) + ": unknown example");
    SweepRow r;
    r.example = *ex;
    r.epsilon = parse_double(f[1], i + 1);
    r.base1 = parse_double(f[2], i + 1);
    if (!f[3].empty()) r.base2 = parse_double(f[3], i + 1);
    r.h_numeric = parse_double(f[4], i + 1);
    r.numeric_unconditional = std::isinf(r.h_numeric);
    r.h_theory = parse_double(f[5], i + 1);
    r.kappa_at_h = parse_double(f[6], i + 1);
    r.binding = parse_binding(f[7], i + 1);
    rows.push_back(r);
  }
  return rows;
}

void write_csv_file(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  const std::string text = to_csv(rows);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

}  // namespace geostab
