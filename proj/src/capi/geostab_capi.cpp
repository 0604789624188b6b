#include "geostab/geostab.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "core/examples.hpp"
#include "core/experiments.hpp"
#include "core/integrators.hpp"
#include "core/sweep_csv.hpp"

struct geostab_manifold {
  geostab::Manifold m;
};

struct geostab_field {
  geostab::Field f;
};

struct geostab_sweep {
  std::vector<geostab::SweepRow> rows;
};

namespace {

using namespace geostab;

thread_local std::string g_last_error;

geostab_status fail(geostab_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <class Fn>
geostab_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GEOSTAB_OK;
  } catch (const Error& e) {
    return fail(static_cast<geostab_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GEOSTAB_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GEOSTAB_E_INTERNAL, e.what());
  } catch (...) {
    return fail(GEOSTAB_E_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

Vec read_vec(const double* data, int n) {
  require(data != nullptr, "null coordinate array");
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = data[i];
  return v;
}

void write_vec(const Vec& v, double* out) {
  require(out != nullptr, "null output array");
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i];
}

void write_mat(const Mat& m, double* out) {
  require(out != nullptr, "null output array");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
}

ChartPoint read_point(const Manifold& m, const double* p) { return m.point(read_vec(p, m.dim())); }

Example to_example(geostab_example e) {
  require(e >= GEOSTAB_EXAMPLE_S2 && e <= GEOSTAB_EXAMPLE_EUCLID, "unknown example");
  return static_cast<Example>(e);
}

Method to_method(geostab_method m) {
  require(m == GEOSTAB_GEE || m == GEOSTAB_GIE, "unknown method");
  return m == GEOSTAB_GEE ? Method::GEE : Method::GIE;
}

StabilityConstants from_c(const geostab_constants* c) {
  require(c != nullptr, "null constants");
  StabilityConstants s;
  s.alpha = c->alpha;
  s.mu_plus = c->mu_plus;
  s.mu_minus = c->mu_minus;
  s.sigma = c->sigma;
  s.C = c->C;
  s.rho = c->rho;
  s.x_norm_min = c->x_norm_min;
  s.singular = c->singular != 0;
  return s;
}

void to_c(const StabilityConstants& s, geostab_constants* out) {
  require(out != nullptr, "null output");
  *out = {s.alpha, s.mu_plus, s.mu_minus, s.sigma, s.C, s.rho, s.x_norm_min, s.singular ? 1 : 0};
}

void to_c(const BoundResult& b, geostab_bound* out) {
  require(out != nullptr, "null output");
  *out = {b.h_max, b.kappa_at_h, static_cast<geostab_bound_kind>(b.kind), static_cast<geostab_binding>(b.binding)};
}

void to_c(const SweepRow& r, geostab_sweep_row* out) {
  require(out != nullptr, "null output");
  out->example = static_cast<geostab_example>(r.example);
  out->epsilon = r.epsilon;
  out->base1 = r.base1;
  out->has_base2 = r.base2.has_value() ? 1 : 0;
  out->base2 = r.base2.value_or(std::nan(""));
  out->h_numeric = r.h_numeric;
  out->h_theory = r.h_theory;
  out->kappa_at_h = r.kappa_at_h;
  out->binding = static_cast<geostab_binding>(r.binding);
  out->numeric_unconditional = r.numeric_unconditional ? 1 : 0;
}

std::vector<double> read_list(const double* data, size_t n) {
  if (n == 0) return {};
  require(data != nullptr, "null grid");
  return std::vector<double>(data, data + n);
}

}  // namespace

extern "C" {

const char* geostab_version(void) { return "0.1.0"; }

const char* geostab_status_string(geostab_status status) {
  if (status == GEOSTAB_OK) return "ok";
  if (status < GEOSTAB_E_DOMAIN || status > GEOSTAB_E_INTERNAL) return "unknown status";
  return to_string(static_cast<ErrorCode>(status));
}

const char* geostab_last_error(void) { return g_last_error.c_str(); }

const char* geostab_example_name(geostab_example example) {
  if (example < GEOSTAB_EXAMPLE_S2 || example > GEOSTAB_EXAMPLE_EUCLID) return "?";
  return to_string(static_cast<Example>(example));
}

geostab_status geostab_example_parse(const char* name, geostab_example* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    const auto e = parse_example(name);
    if (!e) throw Error(ErrorCode::InvalidArgument, std::string("unknown example '") + name + "'");
    *out = static_cast<geostab_example>(*e);
  });
}

const char* geostab_binding_name(geostab_binding binding) {
  if (binding < GEOSTAB_BINDING_CURVATURE || binding > GEOSTAB_BINDING_UNCONDITIONAL) return "?";
  return to_string(static_cast<Binding>(binding));
}

void geostab_sweep_config_init(geostab_sweep_config* config) {
  if (config == nullptr) return;
  std::memset(config, 0, sizeof *config);
  config->tol_h = kDefaultTolH;
  config->h_hi = 1e3;
}

geostab_status geostab_manifold_create(geostab_model model, int dim, geostab_manifold** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = nullptr;
    switch (model) {
      case GEOSTAB_MODEL_S2: *out = new geostab_manifold{Manifold::sphere2()}; break;
      case GEOSTAB_MODEL_H2: *out = new geostab_manifold{Manifold::hyperbolic2()}; break;
      case GEOSTAB_MODEL_S3: *out = new geostab_manifold{Manifold::sphere3()}; break;
      case GEOSTAB_MODEL_EUCLIDEAN: *out = new geostab_manifold{Manifold::euclidean(dim)}; break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown model");
    }
  });
}

void geostab_manifold_destroy(geostab_manifold* m) { delete m; }

int geostab_manifold_dim(const geostab_manifold* m) { return m ? m->m.dim() : 0; }

double geostab_manifold_rho(const geostab_manifold* m) { return m ? m->m.rho() : std::nan(""); }

geostab_status geostab_manifold_metric(const geostab_manifold* m, const double* p, double* g_out) {
  return guarded([&] {
    require(m != nullptr, "null manifold");
    write_mat(m->m.metric(read_point(m->m, p)), g_out);
  });
}

geostab_status geostab_manifold_exp(const geostab_manifold* m, const double* p, const double* v, double* out) {
  return guarded([&] {
    require(m != nullptr, "null manifold");
    const ChartPoint q = m->m.exp_map({read_point(m->m, p), read_vec(v, m->m.dim())});
    write_vec(q.coords, out);
  });
}

geostab_status geostab_manifold_distance(const geostab_manifold* m, const double* p, const double* q, double* out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    *out = m->m.distance(read_point(m->m, p), read_point(m->m, q));
  });
}

geostab_status geostab_field_create_example(geostab_example example, double param, geostab_field** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = nullptr;
    *out = new geostab_field{example_field(to_example(example), param)};
  });
}

geostab_status geostab_field_create_linear(int dim, const double* a, const double* b, geostab_field** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = nullptr;
    require(dim >= 1 && dim <= kMaxDim, "dimension must be in [1, 4]");
    require(a != nullptr, "null matrix");
    Mat am(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) am(i, j) = a[i * dim + j];
    const Vec bv = b ? read_vec(b, dim) : Vec(Vec::Zero(dim));
    *out = new geostab_field{linear_field(am, bv)};
  });
}

geostab_status geostab_field_create_generic(const geostab_manifold* m, geostab_component_fn fn, void* user,
                                            geostab_field** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = nullptr;
    require(m != nullptr && fn != nullptr, "null argument");
    const int dim = m->m.dim();
    ComponentFn comps = [fn, user, dim](const Vec& c) {
      double in[kMaxDim], res[kMaxDim];
      for (int i = 0; i < dim; ++i) in[i] = c[i];
      if (fn(in, res, user) != 0) throw Error(ErrorCode::Domain, "field callback reported an error");
      Vec v(dim);
      for (int i = 0; i < dim; ++i) v[i] = res[i];
      return v;
    };
    *out = new geostab_field{generic_field(m->m, "generic", comps)};
  });
}

void geostab_field_destroy(geostab_field* f) { delete f; }

int geostab_field_dim(const geostab_field* f) { return f ? f->f.manifold().dim() : 0; }

geostab_status geostab_field_value(const geostab_field* f, const double* p, double* out) {
  return guarded([&] {
    require(f != nullptr, "null field");
    write_vec(f->f.value(read_point(f->f.manifold(), p)).comps, out);
  });
}

geostab_status geostab_field_covariant(const geostab_field* f, const double* p, double* out) {
  return guarded([&] {
    require(f != nullptr, "null field");
    write_mat(f->f.covariant_matrix(read_point(f->f.manifold(), p)).entries, out);
  });
}

geostab_status geostab_constants_region(const geostab_field* f, const double* points, size_t n_points,
                                        geostab_constants* out) {
  return guarded([&] {
    require(f != nullptr, "null field");
    require(points != nullptr || n_points == 0, "null points");
    const Manifold& m = f->f.manifold();
    std::vector<ChartPoint> samples;
    samples.reserve(n_points);
    for (size_t i = 0; i < n_points; ++i) samples.push_back(read_point(m, points + i * m.dim()));
    to_c(region_constants(f->f, samples), out);
  });
}

geostab_status geostab_example_constants(geostab_example example, double param, double base1, double base2,
                                         geostab_constants* out) {
  return guarded([&] {
    const Example e = to_example(example);
    to_c(row_constants(e, param, example_point(e, base1, base2)), out);
  });
}

geostab_status geostab_bound_positive(const geostab_constants* c, geostab_bound* out) {
  return guarded([&] { to_c(bound_positive(from_c(c)), out); });
}

geostab_status geostab_bound_negative(const geostab_constants* c, geostab_bound* out) {
  return guarded([&] { to_c(bound_negative(from_c(c)), out); });
}

geostab_status geostab_bound_singular(const geostab_constants* c, double x_norm_min, double x_norm_max,
                                      geostab_bound* out) {
  return guarded([&] { to_c(bound_singular(from_c(c), x_norm_min, x_norm_max), out); });
}

geostab_status geostab_bound_euclidean(double alpha, geostab_bound* out) {
  return guarded([&] { to_c(euclidean_bound(alpha), out); });
}

geostab_status geostab_bound_auto(const geostab_constants* c, geostab_bound* out) {
  return guarded([&] { to_c(bound_for(from_c(c)), out); });
}

geostab_status geostab_gee_step(const geostab_field* f, const double* p, double h, double* out) {
  return guarded([&] {
    require(f != nullptr, "null field");
    write_vec(gee_step(f->f, read_point(f->f.manifold(), p), h).coords, out);
  });
}

geostab_status geostab_gie_step(const geostab_field* f, const double* p, double h, double tol, int max_iter,
                                double* out) {
  return guarded([&] {
    require(f != nullptr, "null field");
    write_vec(gie_step(f->f, read_point(f->f.manifold(), p), h, tol, max_iter).coords, out);
  });
}

geostab_status geostab_integrate(const geostab_field* f, const double* p0, double h, int n_steps,
                                 geostab_method method, double* out) {
  return guarded([&] {
    require(f != nullptr && out != nullptr, "null argument");
    const Trajectory t = integrate(f->f, read_point(f->f.manifold(), p0), h, n_steps, to_method(method));
    const int d = f->f.manifold().dim();
    for (size_t i = 0; i < t.points.size(); ++i) write_vec(t.points[i].coords, out + i * d);
  });
}

geostab_status geostab_expansivity_ratio(const geostab_field* f, const double* p, const double* q, double h,
                                         geostab_method method, double* out) {
  return guarded([&] {
    require(f != nullptr && out != nullptr, "null argument");
    const Manifold& m = f->f.manifold();
    *out = expansivity_ratio(f->f, read_point(m, p), read_point(m, q), h, to_method(method));
  });
}

geostab_status geostab_direction_sweep_delta(const geostab_field* f, const double* p, double h, int n_dirs,
                                             double* out) {
  return guarded([&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = direction_sweep_delta(f->f, read_point(f->f.manifold(), p), h, n_dirs);
  });
}

geostab_status geostab_numerical_hmax(const geostab_field* f, const double* p, int n_dirs, double h_lo, double h_hi,
                                      double tol_h, double* h_out, int* unconditional) {
  return guarded([&] {
    require(f != nullptr && h_out != nullptr, "null argument");
    const NumericalHmax r = numerical_hmax(f->f, read_point(f->f.manifold(), p), n_dirs, h_lo, h_hi, tol_h);
    *h_out = r.h;
    if (unconditional) *unconditional = r.unconditional ? 1 : 0;
  });
}

geostab_status geostab_finite_pair_ratio(const geostab_field* f, const double* p, double h, int n_dirs,
                                         double delta, double* out) {
  return guarded([&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = finite_pair_ratio(f->f, read_point(f->f.manifold(), p), h, n_dirs, delta);
  });
}

geostab_status geostab_example_row(geostab_example example, double param, double base1, double base2, int n_dirs,
                                   double tol_h, double h_hi, geostab_sweep_row* out) {
  return guarded([&] {
    const Example e = to_example(example);
    const std::optional<double> b2 = e == Example::S3 ? std::optional<double>(base2) : std::nullopt;
    to_c(sweep_row(e, param, base1, b2, n_dirs, tol_h, h_hi), out);
  });
}

geostab_status geostab_sweep_run(const geostab_sweep_config* config, geostab_sweep** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    SweepConfig c;
    c.example = to_example(config->example);
    c.epsilons = read_list(config->epsilons, config->n_epsilons);
    c.base_grid = read_list(config->base_grid, config->n_base);
    c.base2_grid = read_list(config->base2_grid, config->n_base2);
    c.n_dirs = config->n_dirs;
    c.tol_h = config->tol_h;
    c.h_hi = config->h_hi;
    c.threads = config->threads;
    require(c.tol_h > 0.0 && c.h_hi > 0.0, "tol_h and h_hi must be positive");
    *out = new geostab_sweep{figure_sweep(c)};
  });
}

void geostab_sweep_destroy(geostab_sweep* s) { delete s; }

size_t geostab_sweep_size(const geostab_sweep* s) { return s ? s->rows.size() : 0; }

geostab_status geostab_sweep_row_at(const geostab_sweep* s, size_t i, geostab_sweep_row* out) {
  return guarded([&] {
    require(s != nullptr, "null sweep");
    require(i < s->rows.size(), "row index out of range");
    to_c(s->rows[i], out);
  });
}

long geostab_sweep_first_unsound(const geostab_sweep* s) {
  if (!s) return -1;
  const auto i = first_unsound_row(s->rows);
  return i ? static_cast<long>(*i) : -1;
}

geostab_status geostab_sweep_csv(const geostab_sweep* s, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    require(s != nullptr, "null sweep");
    const std::string text = to_csv(s->rows);
    if (needed) *needed = text.size();
    if (buf != nullptr && cap > text.size()) std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

geostab_status geostab_sweep_write_csv(const geostab_sweep* s, const char* path) {
  return guarded([&] {
    require(s != nullptr && path != nullptr, "null argument");
    write_csv_file(path, s->rows);
  });
}

geostab_status geostab_jacobi_validation(geostab_example example, int n_cases, uint64_t seed,
                                         geostab_validation* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const ValidationReport r = jacobi_validation(to_example(example), n_cases, seed);
    *out = {r.n_cases, r.max_deviation, r.passed() ? 1 : 0};
  });
}

}  // extern "C"
