#include "fueter.hpp"

#include <Eigen/SVD>

namespace qtw {

namespace {

RealLinearMap c_apply_triple(const SphereMap& T, const RealLinearMap& t,
                             const std::array<ImaginaryUnit, 3>& triple) {
    const int m = t.source_dim(), n = t.target_dim();
    RealLinearMap acc(m, n);
    for (const ImaginaryUnit& u : triple) {
        const ImaginaryUnit tu = T.apply(u);
        acc = acc + left_mult_operator(u.value(), m)
                        .then(t)
                        .then(left_mult_operator(tu.value(), n));
    }
    return acc;
}

const std::array<ImaginaryUnit, 3>& ijk() {
    static const std::array<ImaginaryUnit, 3> t = {
        ImaginaryUnit(Quaternion::i()), ImaginaryUnit(Quaternion::j()),
        ImaginaryUnit(Quaternion::k())};
    return t;
}

Eigen::VectorXd vec(const RealLinearMap& t) {
    const Eigen::MatrixXd& m = t.matrix();
    Eigen::VectorXd v(m.size());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            v[r * m.cols() + c] = m(r, c);
    return v;
}

RealLinearMap unvec(int m, int n, const Eigen::VectorXd& v) {
    RealLinearMap t(m, n);
    for (int r = 0; r < 4 * m; ++r)
        for (int c = 0; c < 4 * n; ++c)
            t.matrix()(r, c) = v[r * 4 * n + c];
    return t;
}

} // namespace

COperator::COperator(int m, int n, Eigen::MatrixXd c) : m_(m), n_(n), c_(std::move(c)) {
    if (c_.rows() != 16 * m * n || c_.cols() != 16 * m * n)
        fail(Status::InvalidArgument, "COperator matrix must be 16mn x 16mn");
}

RealLinearMap COperator::apply(const RealLinearMap& t) const {
    return unvec(m_, n_, c_ * vec(t));
}

double COperator::minpoly_residual() const {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(c_.rows(), c_.cols());
    const double num = (c_ * c_ + 2 * c_ - 3 * id).norm();
    return num / (c_.squaredNorm());
}

COperator c_operator(const SphereMap& T, int m, int n) {
    return c_operator(T, m, n, ijk());
}

COperator c_operator(const SphereMap& T, int m, int n,
                     const std::array<ImaginaryUnit, 3>& triple) {
    const int dim = 16 * m * n;
    Eigen::MatrixXd c(dim, dim);
    for (int idx = 0; idx < dim; ++idx) {
        RealLinearMap basis(m, n);
        basis.matrix()(idx / (4 * n), idx % (4 * n)) = 1.0;
        c.col(idx) = vec(c_apply_triple(T, basis, triple));
    }
    return COperator(m, n, std::move(c));
}

RealLinearMap c_apply(const SphereMap& T, const RealLinearMap& t) {
    return c_apply_triple(T, t, ijk());
}

FueterSplit fueter_split(const RealLinearMap& t, const SphereMap& T) {
    const RealLinearMap ct = c_apply(T, t);
    return {(t - ct) * 0.25, (t * 3.0 + ct) * 0.25};
}

double fueter_defect(const RealLinearMap& t, const SphereMap& T) {
    const double tn = t.frobenius();
    if (tn == 0.0)
        return 0.0;
    return (c_apply(T, t) - t).frobenius() / tn;
}

bool is_fueter(const RealLinearMap& t, const SphereMap& T, double tol) {
    return fueter_defect(t, T) <= tol;
}

SphereMap symmetry_s_d(const ImaginaryUnit& d) {
    const std::array<double, 3> v = {d.value().x, d.value().y, d.value().z};
    SphereMap s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s(i, j) = 2 * v[i] * v[j] - (i == j ? 1.0 : 0.0);
    return s;
}

std::vector<ImaginaryUnit> default_symmetry_directions() {
    const double r = 1.0 / std::sqrt(2.0);
    return {ImaginaryUnit(1, 0, 0), ImaginaryUnit(0, 1, 0), ImaginaryUnit(0, 0, 1),
            ImaginaryUnit(r, r, 0), ImaginaryUnit(0, r, r), ImaginaryUnit(r, 0, r)};
}

namespace {

// Basis of the quaternionic maps w.r.t. S: the 4mn maps X -> a (X E) with
// rotation_of(a) = S and E running over the unit-entry matrices.
std::vector<RealLinearMap> quaternionic_basis(const SphereMap& S, int m, int n) {
    const UnitQuaternion a = unit_from_rotation(S);
    std::vector<RealLinearMap> basis;
    basis.reserve(static_cast<size_t>(4 * m * n));
    for (int j = 0; j < m; ++j)
        for (int b = 0; b < n; ++b)
            for (const Quaternion u : {Quaternion::one(), Quaternion::i(),
                                       Quaternion::j(), Quaternion::k()}) {
                HMatrix e(m, n);
                e.at(j, b) = u;
                basis.push_back(scaled_right_mult(a.value(), e));
            }
    return basis;
}

int rank_of(const std::vector<RealLinearMap>& maps) {
    if (maps.empty())
        return 0;
    Eigen::MatrixXd stack(static_cast<Eigen::Index>(maps.size()),
                          maps[0].matrix().size());
    for (size_t r = 0; r < maps.size(); ++r)
        stack.row(static_cast<Eigen::Index>(r)) = vec(maps[r]).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > 1e-9 * sv[0])
            ++rank;
    return rank;
}

} // namespace

SpanReport fueter_span_check(const SphereMap& T, int m, int n,
                             const std::vector<ImaginaryUnit>& directions,
                             double tol) {
    SpanReport rep;
    rep.m = m;
    rep.n = n;
    rep.expected_dim = 12 * m * n;

    std::vector<RealLinearMap> all;
    std::vector<RealLinearMap> axis;
    int dir_index = 0;
    for (const ImaginaryUnit& d : directions) {
        const SphereMap s = T * symmetry_s_d(d);
        for (RealLinearMap& t : quaternionic_basis(s, m, n)) {
            rep.max_inclusion_defect =
                std::max(rep.max_inclusion_defect, fueter_defect(t, T));
            if (dir_index < 3)
                axis.push_back(t);
            all.push_back(std::move(t));
        }
        ++dir_index;
    }
    rep.span_dim = rank_of(all);
    rep.axis_span_dim = rank_of(axis);
    rep.ok = rep.span_dim == rep.expected_dim && rep.max_inclusion_defect <= tol;
    return rep;
}

SpanReport fueter_span_check(const SphereMap& T, int m, int n, double tol) {
    return fueter_span_check(T, m, n, default_symmetry_directions(), tol);
}

ObstructionReport composition_obstruction_check(const SphereMap& t_prime,
                                                const SphereMap& t_dprime,
                                                const ImaginaryUnit& d, int trials,
                                                uint64_t seed, int mu, int mv, int mw,
                                                double tol) {
    ObstructionReport rep;
    rep.trials = trials;
    rep.min_composition_defect = std::numeric_limits<double>::infinity();

    const SphereMap sd = symmetry_s_d(d);
    const UnitQuaternion a1 = unit_from_rotation(sd * t_prime);   // S_d ∘ T'
    const UnitQuaternion a2 = unit_from_rotation(t_dprime * sd);  // T'' ∘ S_d
    const SphereMap composed_sphere = t_dprime * t_prime;

    Rng rng(seed);
    for (int i = 0; i < trials; ++i) {
        const RealLinearMap t1 =
            scaled_right_mult(a1.value(), random_hmatrix(mu, mv, rng));
        const RealLinearMap t2 =
            scaled_right_mult(a2.value(), random_hmatrix(mv, mw, rng));
        rep.max_factor_defect = std::max({rep.max_factor_defect,
                                          fueter_defect(t1, t_prime),
                                          fueter_defect(t2, t_dprime)});
        const RealLinearMap comp = t1.then(t2);
        if (comp.frobenius() < 1e-12)
            continue;
        ++rep.nonzero_compositions;
        const double defect = fueter_defect(comp, composed_sphere);
        rep.min_composition_defect = std::min(rep.min_composition_defect, defect);
        if (defect <= tol)
            ++rep.failures;
    }
    if (rep.nonzero_compositions == 0)
        rep.min_composition_defect = 0;
    return rep;
}

FueterSuiteReport run_fueter_suite(const SphereMap& T, int m, int n, int trials,
                                   uint64_t seed) {
    FueterSuiteReport rep;
    rep.m = m;
    rep.n = n;
    rep.trials = trials;

    const COperator c = c_operator(T, m, n);
    rep.minpoly_residual = c.minpoly_residual();

    // Eigenspace dimensions from the ranks of the spectral projectors.
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(16 * m * n, 16 * m * n);
    const Eigen::MatrixXd pq = (id - c.matrix()) / 4.0;
    const Eigen::MatrixXd pf = (3.0 * id + c.matrix()) / 4.0;
    auto mat_rank = [](const Eigen::MatrixXd& a) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        const auto& sv = svd.singularValues();
        int r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv[i] > 1e-9 * sv[0])
                ++r;
        return r;
    };
    rep.dim_q = mat_rank(pq);
    rep.dim_f = mat_rank(pf);

    Rng rng(seed);
    for (int k = 0; k < 8; ++k) {
        const COperator c2 = c_operator(T, m, n, random_oriented_triple(rng));
        rep.basis_independence =
            std::max(rep.basis_independence,
                     (c.matrix() - c2.matrix()).norm() / c.matrix().norm());
    }

    const SpanReport span = fueter_span_check(T, m, n);
    rep.span_dim = span.span_dim;
    rep.axis_span_dim = span.axis_span_dim;

    const ObstructionReport obs = composition_obstruction_check(
        T, T, random_imaginary_unit(rng), trials, seed + 1, m, n, m);
    rep.failures = obs.failures;

    rep.ok = rep.minpoly_residual < 1e-9 && rep.dim_q == 4 * m * n &&
             rep.dim_f == 12 * m * n && rep.span_dim == 12 * m * n &&
             rep.basis_independence < 1e-10 && span.ok && rep.failures == 0;
    return rep;
}

} // namespace qtw
