/* qndtomo: quantum-nondemolition signal/meter coupling and homodyne
 * tomography -- public C API.
 *
 * Conventions:
 *   - Every function that can fail returns qnd_status; QND_OK is 0.
 *   - On failure, qnd_last_error() returns a message describing the most
 *     recent error on the calling thread.
 *   - Strings returned through char** and arrays returned through double**
 *     are heap-allocated; release them with qnd_string_free and
 *     qnd_buffer_free respectively.
 *   - Opaque handles are created/destroyed in matching pairs; the destroy
 *     functions accept NULL.
 *   - Out-parameters documented as optional may be NULL to skip the field.
 */
#ifndef QNDTOMO_H
#define QNDTOMO_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qnd_status {
  QND_OK = 0,
  QND_ERR_INVALID_ARGUMENT = 1, /* nonsensical parameter value            */
  QND_ERR_GRID_RESOLUTION = 2,  /* grid step too coarse, would alias      */
  QND_ERR_SUPPORT_OVERFLOW = 3, /* state does not fit inside the grid     */
  QND_ERR_RARE_OUTCOME = 4,     /* conditioning on a negligible outcome   */
  QND_ERR_CONFIG = 5,           /* malformed JSON configuration           */
  QND_ERR_IO = 6,               /* file read/write failure                */
  QND_ERR_INTERNAL = 7          /* library invariant violated             */
} qnd_status;

/* Library semantic version, e.g. "1.0.0". Static storage; do not free. */
const char* qnd_version(void);

/* Message for the most recent failure on the calling thread (empty string
 * if none). Valid until the next failing call on the same thread; do not
 * free. */
const char* qnd_last_error(void);

/* Release a string returned through a char** out-parameter. */
void qnd_string_free(char* s);

/* Release an array returned through a double** out-parameter. */
void qnd_buffer_free(double* buf);

/* --------------------------------------------------------------------- */
/* Scenario driver                                                        */
/* --------------------------------------------------------------------- */

/* Run one scenario described by a JSON config string (see README.md for
 * the schema). Artifacts are written to the config's "out_dir" unless
 * out_dir_override is non-NULL and non-empty. On success,
 * *manifest_json_out receives the run manifest as a JSON string. */
qnd_status qnd_run_scenario_json(const char* config_json,
                                 const char* out_dir_override,
                                 char** manifest_json_out);

/* Run the built-in identity-check suite (no files are written). On
 * success, *report_json_out receives {"checks": [...], "all_pass": bool}. */
qnd_status qnd_identity_checks_json(char** report_json_out);

/* --------------------------------------------------------------------- */
/* Single-mode states                                                     */
/* --------------------------------------------------------------------- */

typedef struct qnd_state qnd_state;

/* Create a state from a JSON spec:
 *
 *   {"grid":  {"min": -8.0, "max": 8.0, "points": 512},   (optional; this
 *                                                          is the default)
 *    "angle": 0.0,                  (optional quadrature representation
 *                                    angle; default 0)
 *    "state": {"kind": "vacuum"}}   (required; kinds and their parameters:
 *                                    "vacuum" {}, "coherent" {x0, p0},
 *                                    "fock" {n}, "squeezed" {r, phase},
 *                                    "cat" {separation})
 */
qnd_status qnd_state_create_json(const char* spec_json, qnd_state** out);

void qnd_state_destroy(qnd_state* s);

/* Grid layout and representation angle of the state (all outputs
 * optional). */
qnd_status qnd_state_info(const qnd_state* s, double* x_min, double* x_max,
                          int* n_points, double* angle);

/* Probability density |psi(x_i)|^2 over the state's grid; *n_out receives
 * the number of points. */
qnd_status qnd_state_density(const qnd_state* s, double** density_out,
                             int* n_out);

/* The same ket re-expressed in the rotated-quadrature representation
 * x(new_angle). */
qnd_status qnd_state_rotate(const qnd_state* s, double new_angle,
                            qnd_state** out);

/* Wigner function of the state: row-major values[i*np + l] over the
 * state's x grid (nx rows) and the conjugate momentum grid
 * p_l = p_min + l*dp (np columns). p_min_out and dp_out are optional. */
qnd_status qnd_state_wigner(const qnd_state* s, double** values_out,
                            int* nx_out, int* np_out, double* p_min_out,
                            double* dp_out);

/* --------------------------------------------------------------------- */
/* Signal/meter coupling                                                  */
/* --------------------------------------------------------------------- */

typedef struct qnd_coupled qnd_coupled;

/* Couple a signal and a meter state with strength kappa > 0. The inputs
 * may be represented at any angle; they are rotated internally to the
 * coupling's working frames (signal at pump_phase + pi/2, meter at
 * homodyne_angle). */
qnd_status qnd_couple(const qnd_state* signal, const qnd_state* meter,
                      double kappa, double pump_phase, double homodyne_angle,
                      qnd_coupled** out);

void qnd_coupled_destroy(qnd_coupled* c);

/* Readout density over the meter grid (marginal of the joint state);
 * *n_out receives the number of meter grid points. */
qnd_status qnd_coupled_readout(const qnd_coupled* c, double** density_out,
                               int* n_out);

/* Conditional signal state given one homodyne outcome.
 * *outcome_density_out (optional) receives the readout density at the
 * outcome. Fails with QND_ERR_RARE_OUTCOME when the outcome has negligible
 * probability. */
qnd_status qnd_coupled_condition(const qnd_coupled* c, double outcome,
                                 qnd_state** conditioned_out,
                                 double* outcome_density_out);

/* Mutual information (nats) between the signal and readout distributions,
 * plus the readout-averaged and worst-case total-variation disturbance of
 * the signal density (all outputs optional). */
qnd_status qnd_coupled_information(const qnd_coupled* c,
                                   double* mutual_information,
                                   double* mean_disturbance,
                                   double* max_disturbance);

#ifdef __cplusplus
}
#endif

#endif /* QNDTOMO_H */
