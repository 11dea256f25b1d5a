#include "qtwistor/qtwistor.h"

#include <cstring>

#include "core/flat.hpp"
#include "core/fueter.hpp"
#include "core/json_io.hpp"
#include "core/projective.hpp"

using namespace qtw;

struct qtw_hmatrix {
    HMatrix value;
};
struct qtw_realmap {
    RealLinearMap value;
};

namespace {

qtw_status to_c(Status s) {
    return static_cast<qtw_status>(static_cast<int>(s));
}

template <typename F>
qtw_status guarded(F&& body) {
    try {
        body();
        return QTW_OK;
    } catch (const Error& e) {
        return to_c(e.code());
    } catch (const std::exception&) {
        return QTW_ERR_INTERNAL;
    }
}

Quaternion quat_of(const double q[4]) {
    return {q[0], q[1], q[2], q[3]};
}

void quat_out(const Quaternion& q, double out[4]) {
    out[0] = q.w;
    out[1] = q.x;
    out[2] = q.y;
    out[3] = q.z;
}

Rotation3 rot_of(const double r[9]) {
    std::array<double, 9> m;
    std::memcpy(m.data(), r, sizeof(m));
    return Rotation3(m);
}

void rot_out(const Rotation3& r, double out[9]) {
    std::memcpy(out, r.data().data(), 9 * sizeof(double));
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* qtw_status_name(qtw_status s) {
    if (s == QTW_ERR_INTERNAL)
        return "Internal";
    return status_name(static_cast<Status>(static_cast<int>(s)));
}

const char* qtw_version(void) {
    return "1.0.0";
}

void qtw_string_free(char* s) {
    std::free(s);
}

void qtw_quat_mul(const double p[4], const double q[4], double out[4]) {
    quat_out(quat_of(p) * quat_of(q), out);
}

void qtw_quat_conj(const double q[4], double out[4]) {
    quat_out(quat_of(q).conj(), out);
}

double qtw_quat_norm(const double q[4]) {
    return quat_of(q).norm();
}

qtw_status qtw_quat_inv(const double q[4], double out[4]) {
    return guarded([&] { quat_out(inv(quat_of(q)), out); });
}

qtw_status qtw_quat_conjugation(const double a[4], const double q[4], double out[4]) {
    return guarded([&] {
        quat_out(conjugation_action(UnitQuaternion(quat_of(a)),
                                    ImaginaryUnit(quat_of(q)))
                     .value(),
                 out);
    });
}

qtw_status qtw_quat_rotation(const double a[4], double rotation[9]) {
    return guarded(
        [&] { rot_out(rotation_of(UnitQuaternion(quat_of(a))), rotation); });
}

qtw_status qtw_rotation_unit(const double rotation[9], double a[4]) {
    return guarded([&] { quat_out(unit_from_rotation(rot_of(rotation)).value(), a); });
}

qtw_status qtw_hmatrix_create(int rows, int cols, const double* wxyz,
                              qtw_hmatrix** out) {
    return guarded([&] {
        HMatrix a(rows, cols);
        for (size_t k = 0; k < a.a.size(); ++k)
            a.a[k] = quat_of(wxyz + 4 * k);
        *out = new qtw_hmatrix{std::move(a)};
    });
}

void qtw_hmatrix_destroy(qtw_hmatrix* a) {
    delete a;
}

int qtw_hmatrix_rows(const qtw_hmatrix* a) {
    return a->value.rows;
}

int qtw_hmatrix_cols(const qtw_hmatrix* a) {
    return a->value.cols;
}

void qtw_hmatrix_data(const qtw_hmatrix* a, double* out) {
    for (size_t k = 0; k < a->value.a.size(); ++k)
        quat_out(a->value.a[k], out + 4 * k);
}

qtw_status qtw_hmatrix_to_json(const qtw_hmatrix* a, char** out) {
    return guarded([&] { *out = dup_string(to_json(a->value).dump()); });
}

qtw_status qtw_hmatrix_from_json(const char* text, qtw_hmatrix** out) {
    return guarded(
        [&] { *out = new qtw_hmatrix{hmatrix_from_json(parse_json(text))}; });
}

qtw_status qtw_realmap_create(int m, int n, const double* rowmajor,
                              qtw_realmap** out) {
    return guarded([&] {
        RealLinearMap t(m, n);
        for (int r = 0; r < 4 * m; ++r)
            for (int c = 0; c < 4 * n; ++c)
                t.matrix()(r, c) = rowmajor[static_cast<size_t>(r) * 4 * n + c];
        *out = new qtw_realmap{std::move(t)};
    });
}

void qtw_realmap_destroy(qtw_realmap* t) {
    delete t;
}

int qtw_realmap_source_dim(const qtw_realmap* t) {
    return t->value.source_dim();
}

int qtw_realmap_target_dim(const qtw_realmap* t) {
    return t->value.target_dim();
}

void qtw_realmap_data(const qtw_realmap* t, double* out) {
    const Eigen::MatrixXd& m = t->value.matrix();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            out[static_cast<size_t>(r) * m.cols() + c] = m(r, c);
}

qtw_status qtw_realmap_to_json(const qtw_realmap* t, char** out) {
    return guarded([&] { *out = dup_string(to_json(t->value).dump()); });
}

qtw_status qtw_realmap_from_json(const char* text, qtw_realmap** out) {
    return guarded(
        [&] { *out = new qtw_realmap{realmap_from_json(parse_json(text))}; });
}

qtw_status qtw_left_mult(const double q[4], int m, qtw_realmap** out) {
    return guarded(
        [&] { *out = new qtw_realmap{left_mult_operator(quat_of(q), m)}; });
}

qtw_status qtw_embed(const qtw_hmatrix* a, qtw_realmap** out) {
    return guarded([&] { *out = new qtw_realmap{embed(a->value)}; });
}

qtw_status qtw_extract_hmatrix(const qtw_realmap* t, double tol, qtw_hmatrix** out) {
    return guarded(
        [&] { *out = new qtw_hmatrix{extract_hmatrix(t->value, tol)}; });
}

qtw_status qtw_check_hlinear(const qtw_realmap* t, double tol, int* hlinear,
                             double* defect) {
    return guarded([&] {
        const double d = hlinear_defect(t->value);
        if (defect)
            *defect = d;
        if (hlinear)
            *hlinear = d <= tol ? 1 : 0;
    });
}

qtw_status qtw_check_quaternionic(const qtw_realmap* t, double tol,
                                  double rotation[9], double* residual) {
    const SphereMapResult r = classify_quaternionic(t->value, tol);
    if (residual)
        *residual = r.residual;
    switch (r.status) {
    case QuatClass::ZeroMap:
        return QTW_ERR_ZERO_MAP;
    case QuatClass::NotQuaternionic:
        return QTW_ERR_NOT_QUATERNIONIC;
    case QuatClass::Quaternionic:
        if (rotation)
            rot_out(r.T, rotation);
        return QTW_OK;
    }
    return QTW_ERR_INTERNAL;
}

qtw_status qtw_decompose(const qtw_realmap* t, double tol, double a[4],
                         qtw_hmatrix** A, double rotation[9], double* residual) {
    return guarded([&] {
        Decomposition d = decompose(t->value, tol);
        quat_out(d.a.value(), a);
        if (rotation)
            rot_out(d.T, rotation);
        if (residual)
            *residual = d.residual;
        *A = new qtw_hmatrix{std::move(d.A)};
    });
}

qtw_status qtw_is_sp1_glmh(const qtw_realmap* g, double tol, int* member) {
    return guarded([&] { *member = is_sp1_glmh(g->value, tol) ? 1 : 0; });
}

qtw_status qtw_fueter_split(const qtw_realmap* t, const double rotation[9],
                            qtw_realmap** quaternionic_part,
                            qtw_realmap** fueter_part) {
    return guarded([&] {
        FueterSplit s = fueter_split(t->value, rot_of(rotation));
        *quaternionic_part = new qtw_realmap{std::move(s.quaternionic)};
        *fueter_part = new qtw_realmap{std::move(s.fueter)};
    });
}

qtw_status qtw_is_fueter(const qtw_realmap* t, const double rotation[9], double tol,
                         int* fueter, double* defect) {
    return guarded([&] {
        const double d = fueter_defect(t->value, rot_of(rotation));
        if (defect)
            *defect = d;
        if (fueter)
            *fueter = d <= tol ? 1 : 0;
    });
}

qtw_status qtw_symmetry(const double d_imaginary[4], double rotation[9]) {
    return guarded(
        [&] { rot_out(symmetry_s_d(ImaginaryUnit(quat_of(d_imaginary))), rotation); });
}

qtw_status qtw_fueter_suite(int m, int n, const double* rotation9_or_null,
                            int trials, uint64_t seed, char** json_report) {
    return guarded([&] {
        SphereMap T;
        if (rotation9_or_null) {
            T = rot_of(rotation9_or_null);
        } else {
            Rng rng(seed ^ 0x51a7ac9fULL);
            T = rotation_of(random_unit_quaternion(rng));
        }
        const FueterSuiteReport rep = run_fueter_suite(T, m, n, trials, seed);
        json j = to_json(rep);
        j["T"] = to_json(T);
        *json_report = dup_string(j.dump());
    });
}

qtw_status qtw_projective_apply(const qtw_hmatrix* a, const double* x, double* y) {
    return guarded([&] {
        Eigen::VectorXd xc(4 * a->value.rows);
        for (int i = 0; i < xc.size(); ++i)
            xc[i] = x[i];
        const HPPoint image = phi_a(a->value, HPPoint(hvector_from_coords(xc)));
        const Eigen::VectorXd yc = real_coords(image.rep());
        for (int i = 0; i < yc.size(); ++i)
            y[i] = yc[i];
    });
}

qtw_status qtw_twistor_project(const double* z, int complex_len, double* x) {
    return guarded([&] {
        if (complex_len < 2 || complex_len % 2 != 0)
            fail(Status::InvalidArgument, "complex length must be even and >= 2");
        Eigen::VectorXcd zc(complex_len);
        for (int i = 0; i < complex_len; ++i)
            zc[i] = {z[2 * i], z[2 * i + 1]};
        const HPPoint p = twistor_project(CPPoint(zc));
        const Eigen::VectorXd xc = real_coords(p.rep());
        for (int i = 0; i < xc.size(); ++i)
            x[i] = xc[i];
    });
}

qtw_status qtw_projective_recover(int m, int n, int count, const double* xs,
                                  const double* ys, double tol, qtw_hmatrix** A,
                                  double* residual, double* second_singular) {
    try {
        ProjectiveSample s;
        for (int k = 0; k < count; ++k) {
            Eigen::VectorXd xc(4 * (m + 1)), yc(4 * (n + 1));
            for (int i = 0; i < xc.size(); ++i)
                xc[i] = xs[static_cast<size_t>(k) * xc.size() + i];
            for (int i = 0; i < yc.size(); ++i)
                yc[i] = ys[static_cast<size_t>(k) * yc.size() + i];
            s.pairs.emplace_back(hvector_from_coords(xc), hvector_from_coords(yc));
        }
        Recovery r = recover_matrix(s, m, n, tol);
        if (residual)
            *residual = r.residual;
        if (second_singular)
            *second_singular = r.second_singular;
        *A = new qtw_hmatrix{std::move(r.A)};
        return QTW_OK;
    } catch (const Error& e) {
        return to_c(e.code());
    } catch (const std::exception&) {
        return QTW_ERR_INTERNAL;
    }
}

qtw_status qtw_lines_check(int rows, int cols, const double* re, const double* im,
                           int trials, double tol, uint64_t seed, int* maps_lines,
                           int* cross_check, int* failures) {
    return guarded([&] {
        Eigen::MatrixXcd b(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                b(r, c) = {re[static_cast<size_t>(r) * cols + c],
                           im[static_cast<size_t>(r) * cols + c]};
        const LinesCheckReport rep = maps_quaternionic_lines(b, trials, tol, seed);
        if (maps_lines)
            *maps_lines = rep.maps_lines ? 1 : 0;
        if (cross_check)
            *cross_check = rep.cross_check ? 1 : 0;
        if (failures)
            *failures = rep.failures;
    });
}

qtw_status qtw_differential_fd(qtw_map_fn fn, void* user, int m, int n,
                               const double* x, double h, qtw_realmap** out) {
    return guarded([&] {
        SmoothMap map;
        map.m = m;
        map.n = n;
        map.h = h > 0 ? h : 1e-4;
        map.eval = [fn, user, n](const Eigen::VectorXd& p) {
            Eigen::VectorXd y(4 * n);
            fn(p.data(), y.data(), user);
            return y;
        };
        Eigen::VectorXd xc(4 * m);
        for (int i = 0; i < 4 * m; ++i)
            xc[i] = x[i];
        *out = new qtw_realmap{differential_fd(map, xc)};
    });
}

qtw_status qtw_hessian_fd(qtw_map_fn fn, void* user, int m, int n, const double* x,
                          const double* u, const double* v, double h, double* out) {
    return guarded([&] {
        SmoothMap map;
        map.m = m;
        map.n = n;
        map.h = h > 0 ? h : 1e-4;
        map.eval = [fn, user, n](const Eigen::VectorXd& p) {
            Eigen::VectorXd y(4 * n);
            fn(p.data(), y.data(), user);
            return y;
        };
        Eigen::VectorXd xc(4 * m), uc(4 * m), vc(4 * m);
        for (int i = 0; i < 4 * m; ++i) {
            xc[i] = x[i];
            uc[i] = u[i];
            vc[i] = v[i];
        }
        const Eigen::VectorXd hv = hessian_fd(map, xc, uc, vc);
        for (int i = 0; i < 4 * n; ++i)
            out[i] = hv[i];
    });
}

qtw_status qtw_twistor_check(const char* map_name, int m, int n, int points,
                             double h, double tol, uint64_t seed,
                             int* tau_twistorial, char** json_report) {
    return guarded([&] {
        SmoothMap map = builtin_map(map_name, m, n, seed);
        if (h > 0)
            map.h = h;
        const TwistorReport rep = twistor_check(map, map_name, points, seed, tol);
        if (tau_twistorial)
            *tau_twistorial = rep.tau_twistorial ? 1 : 0;
        *json_report = dup_string(to_json(rep).dump());
    });
}

} // extern "C"
