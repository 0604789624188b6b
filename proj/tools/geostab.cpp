// Command-line front end: bound, search, figure, validate.
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geostab/geostab.h"

namespace {

constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

struct UsageError {
  std::string message;
};

struct Failure {
  int code;
};

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Library failures caused by the caller's values are usage errors; the rest are run failures.
void check(geostab_status s) {
  if (s == GEOSTAB_OK) return;
  std::fprintf(stderr, "geostab: %s: %s\n", geostab_status_string(s), geostab_last_error());
  if (s == GEOSTAB_E_INVALID_ARGUMENT || s == GEOSTAB_E_DOMAIN) throw Failure{kExitUsage};
  throw Failure{kExitInvariant};
}

std::vector<double> parse_grid(const std::string& text) {
  // start:stop:count (inclusive, evenly spaced) or a comma-separated list.
  std::vector<double> out;
  const auto to_double = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const double x = std::stod(s, &pos);
      if (pos != s.size() || !std::isfinite(x)) throw std::invalid_argument(s);
      return x;
    } catch (const std::exception&) {
      throw UsageError{"bad number '" + s + "' in grid '" + text + "'"};
    }
  };
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    std::size_t start = 0;
    for (;;) {
      const auto comma = text.find(',', start);
      out.push_back(to_double(text.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw UsageError{"grid '" + text + "' must be start:stop:count"};
  const double a = to_double(text.substr(0, c1));
  const double b = to_double(text.substr(c1 + 1, c2 - c1 - 1));
  const std::string count_text = text.substr(c2 + 1);
  int n = 0;
  try {
    std::size_t pos = 0;
    n = std::stoi(count_text, &pos);
    if (pos != count_text.size()) n = 0;
  } catch (const std::exception&) {
    n = 0;
  }
  if (n < 1) throw UsageError{"grid count in '" + text + "' must be an integer >= 1"};
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return out;
}

geostab_example parse_example_name(const std::string& name) {
  geostab_example e{};
  if (geostab_example_parse(name.c_str(), &e) != GEOSTAB_OK) throw UsageError{"unknown example '" + name + "'"};
  return e;
}

double default_base1(geostab_example e) {
  switch (e) {
    case GEOSTAB_EXAMPLE_S2: return std::numbers::pi / 4;
    case GEOSTAB_EXAMPLE_S3: return std::numbers::pi / 4;
    default: return 1.0;
  }
}

std::string default_grid(geostab_example e) {
  switch (e) {
    case GEOSTAB_EXAMPLE_H2:
    case GEOSTAB_EXAMPLE_H2_SINGULAR: return "0.2:3:40";
    case GEOSTAB_EXAMPLE_EUCLID: return "0.5:2:40";
    default: return "0.1:1.47:40";
  }
}

void print_constants(const geostab_constants& c) {
  std::printf("alpha=%s\n", fmt(c.alpha).c_str());
  std::printf("mu_plus=%s\n", fmt(c.mu_plus).c_str());
  std::printf("mu_minus=%s\n", fmt(c.mu_minus).c_str());
  std::printf("sigma=%s\n", fmt(c.sigma).c_str());
  std::printf("C=%s\n", fmt(c.C).c_str());
  std::printf("rho=%s\n", fmt(c.rho).c_str());
  std::printf("singular=%d\n", c.singular);
}

void print_bound(const geostab_bound& b) {
  std::printf("h_theory=%s\n", fmt(b.h_max).c_str());
  std::printf("kappa_at_h=%s\n", fmt(b.kappa_at_h).c_str());
  std::printf("binding=%s\n", geostab_binding_name(b.binding));
  if (b.binding == GEOSTAB_BINDING_UNCONDITIONAL) std::printf("unconditional\n");
}

struct PointOptions {
  std::string example = "s2";
  double epsilon = 1.0;
  std::optional<double> base1;
  double base2 = std::numbers::pi / 2;
};

void add_point_options(CLI::App* cmd, PointOptions& o) {
  cmd->add_option("--example", o.example, "s2, h2, h2-singular, s3 or euclid")->required();
  cmd->add_option("--epsilon", o.epsilon, "field parameter")->capture_default_str();
  cmd->add_option("--base", o.base1, "phi0 (s2), y0 (h2), psi0 (s3), x0 (euclid)");
  cmd->add_option("--base2", o.base2, "theta0 for s3")->capture_default_str();
}

int run_bound(const PointOptions& o, std::optional<double> alpha) {
  const geostab_example e = parse_example_name(o.example);
  geostab_bound b{};
  if (e == GEOSTAB_EXAMPLE_EUCLID) {
    const double a = alpha.value_or(o.epsilon);
    check(geostab_bound_euclidean(a, &b));
    std::printf("example=%s\nalpha=%s\n", geostab_example_name(e), fmt(a).c_str());
    print_bound(b);
    return 0;
  }
  if (alpha) throw UsageError{"--alpha only applies to --example euclid"};
  const double b1 = o.base1.value_or(default_base1(e));
  geostab_constants c{};
  check(geostab_example_constants(e, o.epsilon, b1, o.base2, &c));
  check(geostab_bound_auto(&c, &b));
  std::printf("example=%s\nepsilon=%s\nbase1=%s\n", geostab_example_name(e), fmt(o.epsilon).c_str(),
              fmt(b1).c_str());
  if (e == GEOSTAB_EXAMPLE_S3) std::printf("base2=%s\n", fmt(o.base2).c_str());
  print_constants(c);
  print_bound(b);
  return 0;
}

int run_search(const PointOptions& o, int n_dirs, double tol_h, double h_hi) {
  const geostab_example e = parse_example_name(o.example);
  const double b1 = o.base1.value_or(default_base1(e));
  geostab_sweep_row r{};
  check(geostab_example_row(e, o.epsilon, b1, o.base2, n_dirs, tol_h, h_hi, &r));
  std::printf("h_numeric=%s\n", fmt(r.h_numeric).c_str());
  std::printf("h_theory=%s\n", fmt(r.h_theory).c_str());
  if (r.numeric_unconditional) std::printf("unconditional\n");
  if (!(r.h_theory <= r.h_numeric + 1e-9)) {
    std::fprintf(stderr, "geostab: invariant violated: h_theory %s > h_numeric %s\n", fmt(r.h_theory).c_str(),
                 fmt(r.h_numeric).c_str());
    return kExitInvariant;
  }
  return 0;
}

struct FigureOptions {
  std::string example;
  std::vector<std::string> epsilons;
  std::string grid;
  std::string grid2;
  int n_dirs = 0;
  double tol_h = 1e-12;
  double h_hi = 1e3;
  int threads = 0;
  std::string output = "-";
};

int run_figure(const FigureOptions& o) {
  const geostab_example e = parse_example_name(o.example);
  std::vector<double> eps;
  for (const auto& s : o.epsilons)
    for (double x : parse_grid(s)) eps.push_back(x);
  if (eps.empty()) eps = {0.5, 1.0, 2.0};
  const std::vector<double> grid = parse_grid(o.grid.empty() ? default_grid(e) : o.grid);
  std::vector<double> grid2;
  if (e == GEOSTAB_EXAMPLE_S3) {
    grid2 = o.grid2.empty() ? std::vector<double>{std::numbers::pi / 4, std::numbers::pi / 2} : parse_grid(o.grid2);
  } else if (!o.grid2.empty()) {
    throw UsageError{"--grid2 only applies to --example s3"};
  }
  if (!(o.tol_h > 0.0) || !(o.h_hi > 0.0)) throw UsageError{"--tol-h and --h-hi must be positive"};

  geostab_sweep_config cfg;
  geostab_sweep_config_init(&cfg);
  cfg.example = e;
  cfg.epsilons = eps.data();
  cfg.n_epsilons = eps.size();
  cfg.base_grid = grid.data();
  cfg.n_base = grid.size();
  cfg.base2_grid = grid2.empty() ? nullptr : grid2.data();
  cfg.n_base2 = grid2.size();
  cfg.n_dirs = o.n_dirs;
  cfg.tol_h = o.tol_h;
  cfg.h_hi = o.h_hi;
  cfg.threads = o.threads;

  geostab_sweep* sweep = nullptr;
  check(geostab_sweep_run(&cfg, &sweep));
  struct Guard {
    geostab_sweep* s;
    ~Guard() { geostab_sweep_destroy(s); }
  } guard{sweep};

  if (o.output == "-") {
    std::size_t needed = 0;
    check(geostab_sweep_csv(sweep, nullptr, 0, &needed));
    std::string text(needed + 1, '\0');
    check(geostab_sweep_csv(sweep, text.data(), text.size(), &needed));
    std::fwrite(text.data(), 1, needed, stdout);
  } else {
    check(geostab_sweep_write_csv(sweep, o.output.c_str()));
  }

  const long bad = geostab_sweep_first_unsound(sweep);
  if (bad >= 0) {
    geostab_sweep_row r{};
    check(geostab_sweep_row_at(sweep, static_cast<std::size_t>(bad), &r));
    std::fprintf(stderr,
                 "geostab: invariant violated at row %ld: example=%s epsilon=%s base1=%s base2=%s "
                 "h_theory=%s > h_numeric=%s\n",
                 bad + 1, geostab_example_name(r.example), fmt(r.epsilon).c_str(), fmt(r.base1).c_str(),
                 r.has_base2 ? fmt(r.base2).c_str() : "", fmt(r.h_theory).c_str(), fmt(r.h_numeric).c_str());
    return kExitInvariant;
  }
  return 0;
}

int run_validate(const std::vector<std::string>& examples, int cases, unsigned long long seed) {
  if (cases < 0) throw UsageError{"--cases must be >= 0"};
  std::vector<geostab_example> list;
  for (const auto& name : examples) list.push_back(parse_example_name(name));
  if (list.empty()) list = {GEOSTAB_EXAMPLE_S2, GEOSTAB_EXAMPLE_H2, GEOSTAB_EXAMPLE_S3};
  int status = 0;
  for (geostab_example e : list) {
    geostab_validation v{};
    check(geostab_jacobi_validation(e, cases, seed, &v));
    std::printf("%s cases=%d max_deviation=%s %s\n", geostab_example_name(e), v.n_cases,
                fmt(v.max_deviation).c_str(), v.passed ? "PASS" : "FAIL");
    if (!v.passed) status = kExitInvariant;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Step-size bounds for geodesic Euler methods on constant-curvature spaces"};
  app.name("geostab");
  app.require_subcommand(1);

  PointOptions bound_opts;
  std::optional<double> alpha;
  auto* bound = app.add_subcommand("bound", "print the constants and the certified step size");
  add_point_options(bound, bound_opts);
  bound->add_option("--alpha", alpha, "cocoercivity constant (euclid only)");

  PointOptions search_opts;
  int search_dirs = 0;
  double search_tol = 1e-12, search_hi = 1e3;
  auto* search = app.add_subcommand("search", "find the largest non-expansive step numerically");
  add_point_options(search, search_opts);
  search->add_option("--n-dirs", search_dirs, "directions per sweep (0: 512 in 2D, 2048 in 3D)");
  search->add_option("--tol-h", search_tol, "relative bisection width")->capture_default_str();
  search->add_option("--h-hi", search_hi, "search ceiling")->capture_default_str();

  FigureOptions fig;
  auto* figure = app.add_subcommand("figure", "sweep base points and write CSV");
  figure->add_option("--example", fig.example, "s2, h2, h2-singular, s3 or euclid")->required();
  figure->add_option("--epsilon", fig.epsilons, "epsilon values (repeat, list or start:stop:count)");
  figure->add_option("--grid", fig.grid, "base grid start:stop:count or list");
  figure->add_option("--grid2", fig.grid2, "theta0 grid for s3");
  figure->add_option("--n-dirs", fig.n_dirs, "directions per sweep (0: default)");
  figure->add_option("--tol-h", fig.tol_h, "relative bisection width")->capture_default_str();
  figure->add_option("--h-hi", fig.h_hi, "search ceiling")->capture_default_str();
  figure->add_option("--threads", fig.threads, "worker threads (0: GEOSTAB_THREADS or all cores)");
  figure->add_option("-o,--output", fig.output, "CSV path, - for stdout")->capture_default_str();

  std::vector<std::string> val_examples;
  int cases = 200;
  unsigned long long seed = 1;
  auto* validate = app.add_subcommand("validate", "check closed-form Jacobi fields against finite differences");
  validate->add_option("--example", val_examples, "examples to check (default s2 h2 s3)");
  validate->add_option("--cases", cases, "random cases per example")->capture_default_str();
  validate->add_option("--seed", seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*bound) return run_bound(bound_opts, alpha);
    if (*search) return run_search(search_opts, search_dirs, search_tol, search_hi);
    if (*figure) return run_figure(fig);
    if (*validate) return run_validate(val_examples, cases, seed);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "geostab: %s\n", e.message.c_str());
    return kExitUsage;
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitUsage;
}
