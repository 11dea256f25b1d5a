/*
 * qtwistor — a verification kernel for quaternionic linear algebra and the
 * flat twistor correspondence.
 *
 * C ABI surface over the C++ core.  Conventions:
 *   - Quaternions are double[4] = (w, x, y, z) in the basis (1, i, j, k).
 *   - Vectors of H^m are rows; quaternion matrices act on the right,
 *     t(X) = X * A; real forms are 4m x 4n row-major matrices M with
 *     y_row = x_row * M, real coordinates interleaved (w1 x1 y1 z1 w2 ...).
 *   - Rotations are double[9], row-major, acting on columns (x, y, z).
 *   - Functions return qtw_status; outputs are written only on QTW_OK unless
 *     noted.  Handles are created by this library and released with the
 *     matching destroy function.  Strings returned through char** are
 *     malloc'd; release them with qtw_string_free.
 */
#ifndef QTWISTOR_H
#define QTWISTOR_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qtw_status {
    QTW_OK = 0,
    QTW_ERR_INVALID_ARGUMENT = 1,
    QTW_ERR_PARSE = 2,
    QTW_ERR_DIVISION_BY_ZERO = 10,
    QTW_ERR_ZERO_MAP = 11,
    QTW_ERR_NOT_HLINEAR = 12,
    QTW_ERR_NOT_QUATERNIONIC = 13,
    QTW_ERR_KERNEL_POINT = 20,
    QTW_ERR_POLE = 21,
    QTW_ERR_INSUFFICIENT_SAMPLES = 22,
    QTW_ERR_AMBIGUOUS_RECOVERY = 23,
    QTW_ERR_INCONSISTENT_SAMPLES = 24,
    QTW_ERR_RANK_TOO_LOW = 25,
    QTW_ERR_ZERO_VECTOR = 26,
    QTW_ERR_DOMAIN_ESCAPE = 30,
    QTW_ERR_NOT_QUATERNIONIC_AT = 31,
    QTW_ERR_INTERNAL = 99
} qtw_status;

const char* qtw_status_name(qtw_status s);
const char* qtw_version(void);
void qtw_string_free(char* s);

/* ---- quaternion arithmetic ------------------------------------------- */

void qtw_quat_mul(const double p[4], const double q[4], double out[4]);
void qtw_quat_conj(const double q[4], double out[4]);
double qtw_quat_norm(const double q[4]);
qtw_status qtw_quat_inv(const double q[4], double out[4]);
/* a q a^-1 for unit a and unit imaginary q. */
qtw_status qtw_quat_conjugation(const double a[4], const double q[4], double out[4]);
/* Rotation of Im H induced by a unit quaternion. */
qtw_status qtw_quat_rotation(const double a[4], double rotation[9]);
/* Unit quaternion of a rotation, sign-canonical. */
qtw_status qtw_rotation_unit(const double rotation[9], double a[4]);

/* ---- quaternion matrices and real forms ------------------------------ */

typedef struct qtw_hmatrix qtw_hmatrix; /* m x n quaternion matrix */
typedef struct qtw_realmap qtw_realmap; /* 4m x 4n real linear map  */

qtw_status qtw_hmatrix_create(int rows, int cols, const double* wxyz,
                              qtw_hmatrix** out);
void qtw_hmatrix_destroy(qtw_hmatrix* a);
int qtw_hmatrix_rows(const qtw_hmatrix* a);
int qtw_hmatrix_cols(const qtw_hmatrix* a);
/* Writes rows*cols*4 doubles, row-major, (w,x,y,z) per entry. */
void qtw_hmatrix_data(const qtw_hmatrix* a, double* out);
qtw_status qtw_hmatrix_to_json(const qtw_hmatrix* a, char** out);
qtw_status qtw_hmatrix_from_json(const char* text, qtw_hmatrix** out);

qtw_status qtw_realmap_create(int m, int n, const double* rowmajor,
                              qtw_realmap** out);
void qtw_realmap_destroy(qtw_realmap* t);
int qtw_realmap_source_dim(const qtw_realmap* t);
int qtw_realmap_target_dim(const qtw_realmap* t);
/* Writes 16*m*n doubles, row-major. */
void qtw_realmap_data(const qtw_realmap* t, double* out);
qtw_status qtw_realmap_to_json(const qtw_realmap* t, char** out);
qtw_status qtw_realmap_from_json(const char* text, qtw_realmap** out);

/* L_q on H^m. */
qtw_status qtw_left_mult(const double q[4], int m, qtw_realmap** out);
/* Real form of X -> X A. */
qtw_status qtw_embed(const qtw_hmatrix* a, qtw_realmap** out);
/* Inverse of qtw_embed on H-linear maps; QTW_ERR_NOT_HLINEAR otherwise. */
qtw_status qtw_extract_hmatrix(const qtw_realmap* t, double tol, qtw_hmatrix** out);
/* QTW_OK with *defect set; *hlinear is 1 when defect <= tol. */
qtw_status qtw_check_hlinear(const qtw_realmap* t, double tol, int* hlinear,
                             double* defect);

/* ---- quaternionic structure ------------------------------------------ */

/* QTW_OK: quaternionic, rotation/residual written.  QTW_ERR_ZERO_MAP or
 * QTW_ERR_NOT_QUATERNIONIC otherwise (residual still written). */
qtw_status qtw_check_quaternionic(const qtw_realmap* t, double tol,
                                  double rotation[9], double* residual);
/* t(X) = a (X A); a sign-canonical. */
qtw_status qtw_decompose(const qtw_realmap* t, double tol, double a[4],
                         qtw_hmatrix** A, double rotation[9], double* residual);
/* Membership in Sp(1)·GL(m,H): invertible and quaternionic. */
qtw_status qtw_is_sp1_glmh(const qtw_realmap* g, double tol, int* member);

/* ---- Fueter splitting ------------------------------------------------- */

qtw_status qtw_fueter_split(const qtw_realmap* t, const double rotation[9],
                            qtw_realmap** quaternionic_part,
                            qtw_realmap** fueter_part);
qtw_status qtw_is_fueter(const qtw_realmap* t, const double rotation[9], double tol,
                         int* fueter, double* defect);
qtw_status qtw_symmetry(const double d_imaginary[4], double rotation[9]);
/* Runs the spectral/minimal-polynomial/span/obstruction bundle; returns the
 * JSON report.  A null rotation draws one from the seed. */
qtw_status qtw_fueter_suite(int m, int n, const double* rotation9_or_null,
                            int trials, uint64_t seed, char** json_report);

/* ---- projective spaces and matrix recovery --------------------------- */

/* Canonical representative of [x A]; x and y hold 4(m+1) and 4(n+1) doubles. */
qtw_status qtw_projective_apply(const qtw_hmatrix* a, const double* x, double* y);
/* Twistor projection CP^{2m+1} -> HP^m: z holds 2(m+1) complex entries as
 * (re, im) pairs, x receives the canonical quaternion representative. */
qtw_status qtw_twistor_project(const double* z, int complex_len, double* x);
/* Recovers A from homogeneous samples; xs: count * 4(m+1) doubles, ys:
 * count * 4(n+1).  residual and second singular value are always written on
 * QTW_OK, and also on QTW_ERR_INCONSISTENT_SAMPLES / AMBIGUOUS_RECOVERY. */
qtw_status qtw_projective_recover(int m, int n, int count, const double* xs,
                                  const double* ys, double tol, qtw_hmatrix** A,
                                  double* residual, double* second_singular);
/* Randomized quaternionic-line containment check of a complex matrix given by
 * re/im parts (rows x cols, row-major), with the real-form cross check. */
qtw_status qtw_lines_check(int rows, int cols, const double* re, const double* im,
                           int trials, double tol, uint64_t seed, int* maps_lines,
                           int* cross_check, int* failures);

/* ---- flat twistoriality ------------------------------------------------ */

/* Coordinate evaluator contract for user-supplied smooth maps. */
typedef void (*qtw_map_fn)(const double* x, double* y, void* user);

qtw_status qtw_differential_fd(qtw_map_fn fn, void* user, int m, int n,
                               const double* x, double h, qtw_realmap** out);
qtw_status qtw_hessian_fd(qtw_map_fn fn, void* user, int m, int n, const double* x,
                          const double* u, const double* v, double h, double* out);
/* Grid verification of the two twistoriality conditions for one of the
 * built-in maps (affine | inversion | conj-control | quadratic-control);
 * returns the TwistorReport JSON.  *tau_twistorial reflects the verdict. */
qtw_status qtw_twistor_check(const char* map_name, int m, int n, int points,
                             double h, double tol, uint64_t seed,
                             int* tau_twistorial, char** json_report);

#ifdef __cplusplus
}
#endif

#endif /* QTWISTOR_H */
