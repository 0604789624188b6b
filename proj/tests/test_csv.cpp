#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"
#include "core/sweep_csv.hpp"

using namespace geostab;

namespace {

std::vector<SweepRow> sample_rows() {
  SweepRow a;
  a.example = Example::S2;
  a.epsilon = 0.5;
  a.base1 = 0.1;
  a.h_numeric = 1.0 / 3.0;
  a.h_theory = 0.3;
  a.kappa_at_h = 0.25;
  a.binding = Binding::Curvature;
  SweepRow b;
  b.example = Example::S3;
  b.epsilon = 2.0;
  b.base1 = 1.1;
  b.base2 = std::acos(0.0);
  b.h_numeric = 2.5e-7;
  b.h_theory = 1e-7;
  b.kappa_at_h = 3.141592653589793;
  b.binding = Binding::KappaCap;
  SweepRow c;
  c.example = Example::H2Singular;
  c.epsilon = 0.0;
  c.base1 = 1.0;
  c.h_numeric = INFINITY;
  c.numeric_unconditional = true;
  c.h_theory = INFINITY;
  c.kappa_at_h = INFINITY;
  c.binding = Binding::Unconditional;
  return {a, b, c};
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("csv layout") {
  const std::string text = to_csv(sample_rows());
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 4u);
  CHECK(lines[1] == "s2,0.5,0.10000000000000001,,0.33333333333333331,0.29999999999999999,0.25,curvature");
  CHECK(lines[3] == "h2-singular,0,1,,inf,inf,inf,unconditional");
  CHECK(text.back() == '\n');
}

TEST_CASE("csv round trip is exact") {
  const std::vector<SweepRow> rows = sample_rows();
  const std::vector<SweepRow> back = parse_csv(to_csv(rows));
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].example == rows[i].example);
    CHECK(back[i].epsilon == rows[i].epsilon);
    CHECK(back[i].base1 == rows[i].base1);
    CHECK(back[i].base2 == rows[i].base2);
    CHECK(back[i].h_numeric == rows[i].h_numeric);
    CHECK(back[i].h_theory == rows[i].h_theory);
    CHECK(back[i].kappa_at_h == rows[i].kappa_at_h);
    CHECK(back[i].binding == rows[i].binding);
  }
  CHECK(to_csv(back) == to_csv(rows));
}

TEST_CASE("malformed csv is rejected") {
  const auto rejects = [](const std::string& text) {
    try {
      (void)parse_csv(text);
      return false;
    } catch (const Error& e) {
      return e.code() == ErrorCode::Io;
    }
  };
  CHECK(rejects(""));
  CHECK(rejects("a,b\n"));
  CHECK(rejects(std::string(kCsvHeader) + "\ns2,0.5,0.1,,1,1,0\n"));
  CHECK(rejects(std::string(kCsvHeader) + "\nmoon,0.5,0.1,,1,1,0,flat\n"));
  CHECK(rejects(std::string(kCsvHeader) + "\ns2,x,0.1,,1,1,0,flat\n"));
  CHECK(rejects(std::string(kCsvHeader) + "\ns2,0.5,0.1,,1,1,0,sideways\n"));
  CHECK(parse_csv(std::string(kCsvHeader) + "\n").empty());
}

TEST_CASE("csv files are written byte for byte") {
  const std::string path = "geostab_test_rows.csv";
  write_csv_file(path, sample_rows());
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == to_csv(sample_rows()));
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_csv_file("/nonexistent-dir/x.csv", sample_rows()), Error);
}
