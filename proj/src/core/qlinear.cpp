#include "qlinear.hpp"

#include <Eigen/SVD>

namespace qtw {

namespace {

constexpr double kZeroMapEps = 1e-8; // per-dimension zero-map threshold

bool effectively_zero(const RealLinearMap& t) {
    const double dim = std::sqrt(16.0 * t.source_dim() * t.target_dim());
    return t.frobenius() < kZeroMapEps * dim;
}

// Best unit imaginary p with t ∘ L_q ≈ L_p ∘ t, solved from the normal
// equations of a 3-unknown least squares; the relation is linear in p.
struct DirectionFit {
    Quaternion p;
    double rel_residual;
};

DirectionFit fit_direction(const RealLinearMap& t, const Quaternion& q) {
    const int m = t.source_dim(), n = t.target_dim();
    const Eigen::MatrixXd b = left_mult_operator(q, m).matrix() * t.matrix();
    std::array<Eigen::MatrixXd, 3> g;
    const std::array<Quaternion, 3> units = {Quaternion::i(), Quaternion::j(),
                                             Quaternion::k()};
    for (int a = 0; a < 3; ++a)
        g[a] = t.matrix() * left_mult_operator(units[a], n).matrix();

    Eigen::Matrix3d gram;
    Eigen::Vector3d rhs;
    for (int a = 0; a < 3; ++a) {
        rhs[a] = (g[a].array() * b.array()).sum();
        for (int c = 0; c < 3; ++c)
            gram(a, c) = (g[a].array() * g[c].array()).sum();
    }
    const Eigen::Vector3d p = gram.ldlt().solve(rhs);

    Eigen::MatrixXd fit = p[0] * g[0] + p[1] * g[1] + p[2] * g[2];
    const double res = (b - fit).norm() / t.frobenius();
    return {Quaternion{0, p[0], p[1], p[2]}, res};
}

} // namespace

SphereMapResult classify_quaternionic(const RealLinearMap& t, double tol,
                                      uint64_t spot_seed) {
    SphereMapResult out;
    if (effectively_zero(t)) {
        out.status = QuatClass::ZeroMap;
        return out;
    }

    SphereMap r;
    double worst = 0;
    const std::array<Quaternion, 3> units = {Quaternion::i(), Quaternion::j(),
                                             Quaternion::k()};
    for (int col = 0; col < 3; ++col) {
        const DirectionFit fit = fit_direction(t, units[col]);
        worst = std::max(worst, fit.rel_residual);
        r(0, col) = fit.p.x;
        r(1, col) = fit.p.y;
        r(2, col) = fit.p.z;
    }
    out.residual = worst;
    if (worst > tol || !r.is_special_orthogonal(std::max(tol * 100, 1e-7))) {
        out.status = QuatClass::NotQuaternionic;
        return out;
    }

    // Spot check on random unit imaginary directions; T extends linearly.
    const int m = t.source_dim(), n = t.target_dim();
    Rng rng(spot_seed);
    for (int trial = 0; trial < 16; ++trial) {
        const ImaginaryUnit q = random_imaginary_unit(rng);
        const ImaginaryUnit p = r.apply(q);
        const Eigen::MatrixXd lhs =
            left_mult_operator(q.value(), m).matrix() * t.matrix();
        const Eigen::MatrixXd rhs =
            t.matrix() * left_mult_operator(p.value(), n).matrix();
        const double res = (lhs - rhs).norm() / t.frobenius();
        out.residual = std::max(out.residual, res);
        if (res > tol * 10) {
            out.status = QuatClass::NotQuaternionic;
            return out;
        }
    }

    out.status = QuatClass::Quaternionic;
    out.T = r;
    return out;
}

SphereMap recover_sphere_map(const RealLinearMap& t, double tol) {
    const SphereMapResult res = classify_quaternionic(t, tol);
    if (res.status == QuatClass::ZeroMap)
        fail(Status::ZeroMap, "sphere map of the zero map is not unique");
    if (res.status == QuatClass::NotQuaternionic)
        fail(Status::NotQuaternionic,
             "map is not quaternionic (residual " + std::to_string(res.residual) + ")");
    return res.T;
}

bool is_quaternionic(const RealLinearMap& t, double tol) {
    return classify_quaternionic(t, tol).status == QuatClass::Quaternionic;
}

Decomposition decompose(const RealLinearMap& t, double tol) {
    const SphereMap T = recover_sphere_map(t, tol);
    const UnitQuaternion a = unit_from_rotation(T);
    const int n = t.target_dim();
    const RealLinearMap unrotated =
        t.then(left_mult_operator(inv(a.value()), n)); // L_{a^-1} ∘ t
    const HMatrix A = extract_hmatrix(unrotated, std::max(tol * 100, 1e-7));
    const double residual =
        (scaled_right_mult(a.value(), A) - t).frobenius() / t.frobenius();
    return {a, A, T, residual};
}

bool is_sp1_glmh(const RealLinearMap& g, double tol) {
    if (g.source_dim() != g.target_dim())
        return false;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.matrix());
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] <= tol * sv[0])
        return false;
    return is_quaternionic(g, tol);
}

namespace {

std::array<HVector, 4> structure_images(const HVector& X,
                                        const std::array<ImaginaryUnit, 3>& triple) {
    return {X, triple[0].value() * X, triple[1].value() * X, triple[2].value() * X};
}

SymTensor2 b_from_images(const std::array<HVector, 4>& u,
                         const std::array<HVector, 4>& v) {
    const int dim = 4 * u[0].size();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < 4; ++i) {
        const Eigen::VectorXd a = real_coords(u[i]);
        const Eigen::VectorXd b = real_coords(v[i]);
        s += 0.5 * (a * b.transpose() + b * a.transpose());
    }
    return {std::move(s)};
}

const std::array<ImaginaryUnit, 3>& standard_triple() {
    static const std::array<ImaginaryUnit, 3> t = {
        ImaginaryUnit(Quaternion::i()), ImaginaryUnit(Quaternion::j()),
        ImaginaryUnit(Quaternion::k())};
    return t;
}

} // namespace

SymTensor2 projector_b(const HVector& X, const HVector& Y) {
    return projector_b_with_triple(X, Y, standard_triple());
}

SymTensor2 projector_b_with_triple(const HVector& X, const HVector& Y,
                                   const std::array<ImaginaryUnit, 3>& triple) {
    if (X.size() != Y.size())
        fail(Status::InvalidArgument, "projector_b arguments must have equal dimension");
    return b_from_images(structure_images(X, triple), structure_images(Y, triple));
}

Eigen::MatrixXd projector_beta(const HVector& X, const HVector& Y) {
    if (X.size() != Y.size())
        fail(Status::InvalidArgument, "projector_beta arguments must have equal dimension");
    const auto u = structure_images(X, standard_triple());
    const auto v = structure_images(Y, standard_triple());
    const int dim = 4 * X.size();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < 4; ++i)
        s += real_coords(u[i]) * real_coords(v[i]).transpose();
    return s;
}

Eigen::VectorXd contract(const Eigen::VectorXd& alpha, const SymTensor2& S) {
    if (alpha.size() != S.s.rows())
        fail(Status::InvalidArgument, "contract dimension mismatch");
    return S.s * alpha;
}

SymTensor2 hermitian_conjugate(const ImaginaryUnit& q, const SymTensor2& S, int m) {
    // Column-convention matrix of J = L_q is the transpose of the stored row
    // convention block.
    const Eigen::MatrixXd jc = left_mult_operator(q.value(), m).matrix().transpose();
    return {jc * S.s * jc.transpose()};
}

std::complex<double> hdot(const CVec& u, const CVec& v) {
    const double re = u.re.dot(v.re) + u.im.dot(v.im);
    const double im = u.re.dot(v.im) - u.im.dot(v.re);
    return {re, im};
}

CVec apply_complexified(const RealLinearMap& t, const CVec& v) {
    return {t.apply(Eigen::VectorXd(v.re)), t.apply(Eigen::VectorXd(v.im))};
}

std::vector<CVec> eigenspace_basis(const ImaginaryUnit& q, int sign, int m) {
    if (sign != 1 && sign != -1)
        fail(Status::InvalidArgument, "eigenspace sign must be +1 or -1");
    // Pick a deterministic unit imaginary p orthogonal to q; then per slot the
    // pairs (1, q) and (p, qp) are an adapted orthonormal basis, and
    // (u -+ i * J u) / sqrt(2) spans the requested eigenspace.
    const Quaternion qq = q.value();
    const std::array<Quaternion, 3> axes = {Quaternion::i(), Quaternion::j(),
                                            Quaternion::k()};
    int best = 0;
    double best_dot = 2.0;
    const std::array<double, 3> dots = {qq.x, qq.y, qq.z};
    for (int a = 0; a < 3; ++a)
        if (std::fabs(dots[a]) < best_dot) {
            best_dot = std::fabs(dots[a]);
            best = a;
        }
    Quaternion p = axes[best] - dots[best] * qq;
    p = p * (1.0 / p.norm());
    const Quaternion qp = qq * p;

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double s = (sign == 1) ? -1.0 : 1.0; // V^{1,0}: u - i Ju
    std::vector<CVec> basis;
    basis.reserve(2 * static_cast<size_t>(m));
    for (int slot = 0; slot < m; ++slot) {
        for (const auto& [u, ju] :
             {std::pair{Quaternion::one(), qq}, std::pair{p, qp}}) {
            HVector ur(m), jur(m);
            ur[slot] = u;
            jur[slot] = ju;
            basis.emplace_back(real_coords(ur) * inv_sqrt2,
                               real_coords(jur) * (s * inv_sqrt2));
        }
    }
    return basis;
}

std::pair<SymTensor2, SymTensor2> projector_b_complex(const CVec& X, const CVec& Y,
                                                      int m) {
    const HVector xr = hvector_from_coords(X.re), xi = hvector_from_coords(X.im);
    const HVector yr = hvector_from_coords(Y.re), yi = hvector_from_coords(Y.im);
    (void)m;
    const SymTensor2 brr = projector_b(xr, yr);
    const SymTensor2 bii = projector_b(xi, yi);
    const SymTensor2 bri = projector_b(xr, yi);
    const SymTensor2 bir = projector_b(xi, yr);
    return {SymTensor2{brr.s - bii.s}, SymTensor2{bri.s + bir.s}};
}

CVec contract_complex(const Eigen::VectorXd& alpha,
                      const std::pair<SymTensor2, SymTensor2>& S) {
    return {contract(alpha, S.first), contract(alpha, S.second)};
}

} // namespace qtw
