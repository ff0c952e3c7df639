/* C interface to the torus-family bifurcation toolkit.
 *
 * All entry points return a tb_status code; on failure the thread-local
 * message from tb_last_error() describes the cause. Strings returned through
 * char** out-parameters are heap-allocated and must be released with
 * tb_string_free().
 */
#ifndef TORUSBIF_H
#define TORUSBIF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tb_system tb_system;

typedef enum tb_status {
  TB_OK = 0,
  TB_EINVAL = 1,       /* invalid argument or configuration */
  TB_ENOCONV = 2,      /* an iteration failed to converge */
  TB_EDOMAIN = 3,      /* input outside the admissible domain */
  TB_ENUMERIC = 4,     /* quadrature or integration failure */
  TB_EIO = 5,          /* file output failure */
  TB_ECHECKFAIL = 6,   /* a verification check did not pass */
  TB_EINTERNAL = 7
} tb_status;

const char* tb_version(void);

/* Thread-local message for the most recent failing call. */
const char* tb_last_error(void);

void tb_string_free(char* s);

/* Creates a system handle; requires 0 < epsilon < 1/kappa_max(phi) and
 * |phi| < 1/4. */
tb_status tb_system_create(double epsilon, double phi, tb_system** out);
void tb_system_destroy(tb_system* sys);

/* JSON object with the analytic constants of the family at this phi:
 * curvature bound, necklace data, homoclinic energy-balance constants,
 * codimension-two point coordinates. */
tb_status tb_constants_json(const tb_system* sys, char** out_json);

/* Runs the numbered-assumption checks with the given RNG seed; *all_passed
 * is set to 1 only if every entry passes. May be null. */
tb_status tb_checklist_json(const tb_system* sys, uint64_t seed, int* all_passed,
                            char** out_json);

/* Full bifurcation diagram in the requested format: "csv", "json" or "svg". */
tb_status tb_diagram(const tb_system* sys, const char* format, char** out);

/* Persistence-value density of contractible periodic orbits on an
 * n_rho x n_u grid; format "csv" or "svg". */
tb_status tb_density(const tb_system* sys, size_t n_rho, size_t n_u, const char* format,
                     char** out);

/* Samples the slow-flow transit map at scaled parameters (rho, alpha_tilde):
 * JSON with the section data, saddle data, fixed-point offsets and n_samples
 * graph samples of z -> T(z). eps_terms_on toggles the order-sqrt(eps)
 * correction terms. */
tb_status tb_transit_map_json(const tb_system* sys, double rho, double alpha_tilde,
                              int eps_terms_on, int n_samples, char** out_json);

/* Equilibria of the full family at parameters (omega_x, omega_y), as JSON. */
tb_status tb_equilibria_json(const tb_system* sys, double omega_x, double omega_y,
                             char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* TORUSBIF_H */
