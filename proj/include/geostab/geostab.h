/* Step-size stability of geodesic Euler methods on constant-curvature spaces. */
#ifndef GEOSTAB_GEOSTAB_H
#define GEOSTAB_GEOSTAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(GEOSTAB_BUILDING_LIBRARY)
#define GEOSTAB_API __attribute__((visibility("default")))
#else
#define GEOSTAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum geostab_status {
  GEOSTAB_OK = 0,
  GEOSTAB_E_DOMAIN = 1,
  GEOSTAB_E_CHART_EXIT,
  GEOSTAB_E_DEGENERATE_DIRECTION,
  GEOSTAB_E_STATIONARY_POINT,
  GEOSTAB_E_NO_FINITE_ALPHA,
  GEOSTAB_E_SINGULAR_OPERATOR,
  GEOSTAB_E_UNSUPPORTED,
  GEOSTAB_E_NOT_COCOERCIVE,
  GEOSTAB_E_NO_BOUND,
  GEOSTAB_E_INCONSISTENT_CONSTANTS,
  GEOSTAB_E_NONCONVERGENCE,
  GEOSTAB_E_BRACKET,
  GEOSTAB_E_INVALID_ARGUMENT,
  GEOSTAB_E_IO,
  GEOSTAB_E_INTERNAL
} geostab_status;

typedef enum geostab_model {
  GEOSTAB_MODEL_S2 = 0, /* (phi, theta), phi the elevation */
  GEOSTAB_MODEL_H2,     /* upper half-plane (x, y) */
  GEOSTAB_MODEL_S3,     /* (psi, theta, phi) */
  GEOSTAB_MODEL_EUCLIDEAN
} geostab_model;

typedef enum geostab_example {
  GEOSTAB_EXAMPLE_S2 = 0,      /* eps cos(phi) d_phi + d_theta */
  GEOSTAB_EXAMPLE_H2,          /* d_x + eps d_y */
  GEOSTAB_EXAMPLE_H2_SINGULAR, /* y d_y */
  GEOSTAB_EXAMPLE_S3,          /* -eps sin(psi) d_psi + d_phi */
  GEOSTAB_EXAMPLE_EUCLID       /* -p / alpha on R^2 */
} geostab_example;

typedef enum geostab_method { GEOSTAB_GEE = 0, GEOSTAB_GIE } geostab_method;

typedef enum geostab_binding {
  GEOSTAB_BINDING_CURVATURE = 0,
  GEOSTAB_BINDING_KAPPA_CAP,
  GEOSTAB_BINDING_FLAT,
  GEOSTAB_BINDING_UNCONDITIONAL
} geostab_binding;

typedef enum geostab_bound_kind {
  GEOSTAB_BOUND_POSITIVE = 0,
  GEOSTAB_BOUND_NEGATIVE,
  GEOSTAB_BOUND_SINGULAR,
  GEOSTAB_BOUND_FLAT
} geostab_bound_kind;

typedef struct geostab_manifold geostab_manifold;
typedef struct geostab_field geostab_field;
typedef struct geostab_sweep geostab_sweep;

typedef struct geostab_constants {
  double alpha;
  double mu_plus;  /* NaN when singular */
  double mu_minus; /* NaN when singular */
  double sigma;
  double C;
  double rho;
  double x_norm_min;
  int singular;
} geostab_constants;

typedef struct geostab_bound {
  double h_max; /* +inf when unconditional */
  double kappa_at_h;
  geostab_bound_kind kind;
  geostab_binding binding;
} geostab_bound;

typedef struct geostab_sweep_row {
  geostab_example example;
  double epsilon;
  double base1;
  double base2; /* NaN unless has_base2 */
  int has_base2;
  double h_numeric; /* +inf when numeric_unconditional */
  double h_theory;
  double kappa_at_h;
  geostab_binding binding;
  int numeric_unconditional;
} geostab_sweep_row;

typedef struct geostab_sweep_config {
  geostab_example example;
  const double* epsilons;
  size_t n_epsilons;
  const double* base_grid;
  size_t n_base;
  const double* base2_grid; /* S3 theta0 values; may be NULL */
  size_t n_base2;
  int n_dirs;   /* 0: 512 in 2D, 2048 in 3D */
  double tol_h; /* relative bisection width, > 0 */
  double h_hi;  /* search ceiling */
  int threads;  /* 0: GEOSTAB_THREADS or hardware concurrency */
} geostab_sweep_config;

typedef struct geostab_validation {
  int n_cases;
  double max_deviation;
  int passed;
} geostab_validation;

/* Field component callback: writes dim components for the chart point; returns 0 on success. */
typedef int (*geostab_component_fn)(const double* coords, double* out, void* user);

GEOSTAB_API const char* geostab_version(void);
GEOSTAB_API const char* geostab_status_string(geostab_status status);
/* Message of the last failed call on this thread ("" if none). */
GEOSTAB_API const char* geostab_last_error(void);

GEOSTAB_API const char* geostab_example_name(geostab_example example);
GEOSTAB_API geostab_status geostab_example_parse(const char* name, geostab_example* out);
GEOSTAB_API const char* geostab_binding_name(geostab_binding binding);
GEOSTAB_API void geostab_sweep_config_init(geostab_sweep_config* config);

/* Manifolds. Points and vectors are chart coordinate arrays of length dim. */
GEOSTAB_API geostab_status geostab_manifold_create(geostab_model model, int dim, geostab_manifold** out);
GEOSTAB_API void geostab_manifold_destroy(geostab_manifold* m);
GEOSTAB_API int geostab_manifold_dim(const geostab_manifold* m);
GEOSTAB_API double geostab_manifold_rho(const geostab_manifold* m);
/* Row-major dim x dim metric. */
GEOSTAB_API geostab_status geostab_manifold_metric(const geostab_manifold* m, const double* p, double* g_out);
GEOSTAB_API geostab_status geostab_manifold_exp(const geostab_manifold* m, const double* p, const double* v,
                                                double* out);
GEOSTAB_API geostab_status geostab_manifold_distance(const geostab_manifold* m, const double* p, const double* q,
                                                     double* out);

/* Fields. */
GEOSTAB_API geostab_status geostab_field_create_example(geostab_example example, double param, geostab_field** out);
/* X(p) = A p + b on R^dim, A row-major. */
GEOSTAB_API geostab_status geostab_field_create_linear(int dim, const double* a, const double* b,
                                                       geostab_field** out);
/* Jacobian by central differences; `user` must outlive the field. */
GEOSTAB_API geostab_status geostab_field_create_generic(const geostab_manifold* m, geostab_component_fn fn,
                                                        void* user, geostab_field** out);
GEOSTAB_API void geostab_field_destroy(geostab_field* f);
GEOSTAB_API int geostab_field_dim(const geostab_field* f);
GEOSTAB_API geostab_status geostab_field_value(const geostab_field* f, const double* p, double* out);
/* Row-major covariant derivative (nabla X)^i_j. */
GEOSTAB_API geostab_status geostab_field_covariant(const geostab_field* f, const double* p, double* out);

/* Constants and bounds. */
GEOSTAB_API geostab_status geostab_constants_region(const geostab_field* f, const double* points, size_t n_points,
                                                    geostab_constants* out);
/* Closed forms cross-checked against the numerics (GEOSTAB_E_INTERNAL on mismatch). */
GEOSTAB_API geostab_status geostab_example_constants(geostab_example example, double param, double base1,
                                                     double base2, geostab_constants* out);
GEOSTAB_API geostab_status geostab_bound_positive(const geostab_constants* c, geostab_bound* out);
GEOSTAB_API geostab_status geostab_bound_negative(const geostab_constants* c, geostab_bound* out);
GEOSTAB_API geostab_status geostab_bound_singular(const geostab_constants* c, double x_norm_min, double x_norm_max,
                                                  geostab_bound* out);
GEOSTAB_API geostab_status geostab_bound_euclidean(double alpha, geostab_bound* out);
/* Solver chosen from the sign of rho and the singular flag. */
GEOSTAB_API geostab_status geostab_bound_auto(const geostab_constants* c, geostab_bound* out);

/* Integrators. */
GEOSTAB_API geostab_status geostab_gee_step(const geostab_field* f, const double* p, double h, double* out);
GEOSTAB_API geostab_status geostab_gie_step(const geostab_field* f, const double* p, double h, double tol,
                                            int max_iter, double* out);
/* out holds (n_steps + 1) * dim values. */
GEOSTAB_API geostab_status geostab_integrate(const geostab_field* f, const double* p0, double h, int n_steps,
                                             geostab_method method, double* out);
GEOSTAB_API geostab_status geostab_expansivity_ratio(const geostab_field* f, const double* p, const double* q,
                                                     double h, geostab_method method, double* out);

/* Experiments. */
GEOSTAB_API geostab_status geostab_direction_sweep_delta(const geostab_field* f, const double* p, double h,
                                                         int n_dirs, double* out);
GEOSTAB_API geostab_status geostab_numerical_hmax(const geostab_field* f, const double* p, int n_dirs, double h_lo,
                                                  double h_hi, double tol_h, double* h_out, int* unconditional);
GEOSTAB_API geostab_status geostab_finite_pair_ratio(const geostab_field* f, const double* p, double h, int n_dirs,
                                                     double delta, double* out);
/* One sweep row: bound and numerical search at a single base point. */
GEOSTAB_API geostab_status geostab_example_row(geostab_example example, double param, double base1, double base2,
                                               int n_dirs, double tol_h, double h_hi, geostab_sweep_row* out);

GEOSTAB_API geostab_status geostab_sweep_run(const geostab_sweep_config* config, geostab_sweep** out);
GEOSTAB_API void geostab_sweep_destroy(geostab_sweep* s);
GEOSTAB_API size_t geostab_sweep_size(const geostab_sweep* s);
GEOSTAB_API geostab_status geostab_sweep_row_at(const geostab_sweep* s, size_t i, geostab_sweep_row* out);
/* Index of the first row with h_theory > h_numeric + 1e-9, or -1. */
GEOSTAB_API long geostab_sweep_first_unsound(const geostab_sweep* s);
/* Writes the CSV text into buf (NUL-terminated if it fits); *needed gets the length without NUL. */
GEOSTAB_API geostab_status geostab_sweep_csv(const geostab_sweep* s, char* buf, size_t cap, size_t* needed);
GEOSTAB_API geostab_status geostab_sweep_write_csv(const geostab_sweep* s, const char* path);

GEOSTAB_API geostab_status geostab_jacobi_validation(geostab_example example, int n_cases, uint64_t seed,
                                                     geostab_validation* out);

#ifdef __cplusplus
}
#endif

#endif /* GEOSTAB_GEOSTAB_H */
