#include "flat.hpp"

#include <algorithm>

namespace qtw {

namespace {

Eigen::VectorXd probe(const SmoothMap& map, const Eigen::VectorXd& p) {
    if (!map.in_domain(p))
        fail(Status::DomainEscape, "finite-difference stencil left the domain");
    return map.eval(p);
}

double median_of(std::vector<double> v) {
    if (v.empty())
        return 0;
    std::sort(v.begin(), v.end());
    const size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

// Contraction of the basis-pair Hessian tensor with real direction vectors.
Eigen::VectorXd contract_tensor(const std::vector<Eigen::VectorXd>& ht, int dim_in,
                                int dim_out, const Eigen::VectorXd& u,
                                const Eigen::VectorXd& v) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim_out);
    for (int a = 0; a < dim_in; ++a) {
        if (u[a] == 0.0)
            continue;
        for (int b = 0; b < dim_in; ++b) {
            if (v[b] == 0.0)
                continue;
            acc += (u[a] * v[b]) * ht[static_cast<size_t>(a) * dim_in + b];
        }
    }
    return acc;
}

struct PointAnalysis {
    RealLinearMap jac;
    SphereMapResult cls;
    std::vector<Eigen::VectorXd> hess;
    double hess_norm = 0;
    double jac_scale = 0;
    double normalizer = 0;
};

PointAnalysis analyze_point(const SmoothMap& map, const Eigen::VectorXd& x,
                            double tol) {
    PointAnalysis pa{differential_fd(map, x), {}, {}, 0, 0, 0};
    pa.cls = classify_quaternionic(pa.jac, tol);
    pa.hess = hessian_tensor(map, x, map.h);
    for (const auto& hv : pa.hess)
        pa.hess_norm = std::max(pa.hess_norm, hv.norm());
    pa.jac_scale = pa.jac.matrix().rowwise().norm().maxCoeff();
    pa.normalizer = std::max({pa.hess_norm, pa.jac_scale, 1e-12});
    return pa;
}

CVec complex_hessian(const std::vector<Eigen::VectorXd>& ht, int dim_in, int dim_out,
                     const CVec& u, const CVec& v) {
    const Eigen::VectorXd rr = contract_tensor(ht, dim_in, dim_out, u.re, v.re);
    const Eigen::VectorXd ii = contract_tensor(ht, dim_in, dim_out, u.im, v.im);
    const Eigen::VectorXd ri = contract_tensor(ht, dim_in, dim_out, u.re, v.im);
    const Eigen::VectorXd ir = contract_tensor(ht, dim_in, dim_out, u.im, v.re);
    return {rr - ii, ri + ir};
}

// Squared norm of the (1,0)-component of w relative to J' = L_p on the target.
double opposite_component_norm(const CVec& w, const RealLinearMap& jprime) {
    const CVec jw = apply_complexified(jprime, w);
    // P^{1,0} w = (w - i J'w)/2; i*(a+ib) = -b + ia.
    const CVec p{0.5 * (w.re + jw.im), 0.5 * (w.im - jw.re)};
    return p.norm();
}

double residual_impl(const SmoothMap& map, const Eigen::VectorXd& x,
                     const ImaginaryUnit& q, double tol, bool mixed,
                     const PointAnalysis* pre) {
    PointAnalysis local;
    const PointAnalysis& pa = pre ? *pre : (local = analyze_point(map, x, tol), local);
    if (pa.cls.status == QuatClass::ZeroMap) {
        // Locally constant to finite-difference precision: the containment is
        // vacuous regardless of the (undefined) lift, so the residual is zero.
        // A genuinely curved critical point has no defensible answer.
        if (pa.hess_norm < 1e-6)
            return 0.0;
        fail(Status::ZeroMap, "critical point: the lift is undefined");
    }
    if (pa.cls.status != QuatClass::Quaternionic)
        fail(Status::NotQuaternionicAt,
             "differential admits no sphere map at the base point");

    const ImaginaryUnit qprime = pa.cls.T.apply(q);
    const RealLinearMap jprime = left_mult_operator(qprime.value(), map.n);
    const auto anti = eigenspace_basis(q, -1, map.m);
    const auto holo = eigenspace_basis(q, +1, map.m);
    const auto& left = mixed ? holo : anti;

    double worst = 0;
    for (size_t r = 0; r < left.size(); ++r) {
        const size_t c0 = mixed ? 0 : r; // tau is symmetric in the pair
        for (size_t c = c0; c < anti.size(); ++c) {
            const CVec w =
                complex_hessian(pa.hess, 4 * map.m, 4 * map.n, left[r], anti[c]);
            worst = std::max(worst, opposite_component_norm(w, jprime));
        }
    }
    return worst / pa.normalizer;
}

} // namespace

RealLinearMap differential_fd(const SmoothMap& map, const Eigen::VectorXd& x) {
    return differential_fd(map, x, map.h);
}

RealLinearMap differential_fd(const SmoothMap& map, const Eigen::VectorXd& x,
                              double h) {
    const double step = h * std::max(1.0, x.cwiseAbs().maxCoeff());
    RealLinearMap t(map.m, map.n);
    for (int a = 0; a < 4 * map.m; ++a) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(4 * map.m);
        e[a] = step;
        t.matrix().row(a) = ((probe(map, x + e) - probe(map, x - e)) / (2 * step))
                                .transpose();
    }
    return t;
}

Eigen::VectorXd hessian_fd(const SmoothMap& map, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    return hessian_fd(map, x, u, v, map.h);
}

Eigen::VectorXd hessian_fd(const SmoothMap& map, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                           double h) {
    const double step = h * std::max(1.0, x.cwiseAbs().maxCoeff());
    return (probe(map, x + step * u + step * v) - probe(map, x + step * u - step * v) -
            probe(map, x - step * u + step * v) +
            probe(map, x - step * u - step * v)) /
           (4 * step * step);
}

std::vector<Eigen::VectorXd> hessian_tensor(const SmoothMap& map,
                                            const Eigen::VectorXd& x, double h) {
    const int dim = 4 * map.m;
    std::vector<Eigen::VectorXd> ht(static_cast<size_t>(dim) * dim);
    for (int a = 0; a < dim; ++a) {
        Eigen::VectorXd ea = Eigen::VectorXd::Zero(dim);
        ea[a] = 1.0;
        for (int b = a; b < dim; ++b) {
            Eigen::VectorXd eb = Eigen::VectorXd::Zero(dim);
            eb[b] = 1.0;
            Eigen::VectorXd v = hessian_fd(map, x, ea, eb, h);
            ht[static_cast<size_t>(a) * dim + b] = v;
            ht[static_cast<size_t>(b) * dim + a] = std::move(v);
        }
    }
    return ht;
}

double totally_geodesic_residual(const SmoothMap& map, const Eigen::VectorXd& x) {
    double worst = 0;
    for (const auto& hv : hessian_tensor(map, x, map.h))
        worst = std::max(worst, hv.norm());
    return worst;
}

SphereMapResult pointwise_quaternionic(const SmoothMap& map, const Eigen::VectorXd& x,
                                       double tol) {
    return classify_quaternionic(differential_fd(map, x), tol);
}

double tau_residual(const SmoothMap& map, const Eigen::VectorXd& x,
                    const ImaginaryUnit& q, double tol) {
    return residual_impl(map, x, q, tol, false, nullptr);
}

double tau_prime_residual(const SmoothMap& map, const Eigen::VectorXd& x,
                          const ImaginaryUnit& q, double tol) {
    return residual_impl(map, x, q, tol, true, nullptr);
}

TwistorReport twistor_check(const SmoothMap& map, const std::string& name,
                            int points, uint64_t seed, double tol) {
    TwistorReport rep;
    rep.map_name = name;
    rep.m = map.m;
    rep.n = map.n;
    rep.h = map.h;
    rep.seed = seed;
    rep.tol = tol;
    rep.points = points;

    const double r = 1.0 / std::sqrt(2.0), s = 1.0 / std::sqrt(3.0);
    std::vector<ImaginaryUnit> dirs = {
        ImaginaryUnit(1, 0, 0),  ImaginaryUnit(0, 1, 0),  ImaginaryUnit(0, 0, 1),
        ImaginaryUnit(r, r, 0),  ImaginaryUnit(0, r, r),  ImaginaryUnit(r, 0, r),
        ImaginaryUnit(s, s, s),  ImaginaryUnit(r, -r, 0)};
    Rng rng(seed);
    for (int k = 0; k < 8; ++k)
        dirs.push_back(random_imaginary_unit(rng));

    std::vector<double> taus, taups;
    bool all_ok = true;
    for (int p = 0; p < points; ++p) {
        const Eigen::VectorXd x = map.sample_domain(rng);
        const PointAnalysis pa = analyze_point(map, x, 1e-6);
        rep.geodesic_max = std::max(rep.geodesic_max, pa.hess_norm);
        if (pa.cls.status == QuatClass::ZeroMap) {
            ++rep.zero_differential_points;
            TwistorRow row;
            row.x = x;
            row.zero_differential = true;
            rep.rows.push_back(std::move(row));
            continue;
        }
        if (pa.cls.status != QuatClass::Quaternionic) {
            all_ok = false;
            TwistorRow row;
            row.x = x;
            row.quaternionic = false;
            row.quaternionic_residual = pa.cls.residual;
            row.hessian_norm = pa.hess_norm;
            rep.rows.push_back(std::move(row));
            continue;
        }
        ++rep.quaternionic_points;
        for (const ImaginaryUnit& q : dirs) {
            TwistorRow row;
            row.x = x;
            row.j_dir = q;
            row.quaternionic = true;
            row.quaternionic_residual = pa.cls.residual;
            row.hessian_norm = pa.hess_norm;
            row.lift = pa.cls.T;
            row.tau = residual_impl(map, x, q, 1e-6, false, &pa);
            row.tau_prime = residual_impl(map, x, q, 1e-6, true, &pa);
            taus.push_back(row.tau);
            taups.push_back(row.tau_prime);
            rep.tau_max = std::max(rep.tau_max, row.tau);
            rep.tau_prime_max = std::max(rep.tau_prime_max, row.tau_prime);
            rep.rows.push_back(std::move(row));
        }
    }
    rep.tau_median = median_of(taus);
    rep.tau_prime_median = median_of(taups);
    rep.tau_twistorial = all_ok && rep.quaternionic_points > 0 && rep.tau_max <= tol;
    return rep;
}

SmoothMap affine_builtin(const Quaternion& a, const HMatrix& A, const HVector& b) {
    SmoothMap map;
    map.m = A.rows;
    map.n = A.cols;
    map.eval = [a, A, b](const Eigen::VectorXd& xc) {
        const HVector x = hvector_from_coords(xc);
        HVector y = a * (x * A);
        for (int j = 0; j < y.size(); ++j)
            y[j] = y[j] + b[j];
        return real_coords(y);
    };
    map.sample_domain = [m = map.m](Rng& rng) {
        Eigen::VectorXd x(4 * m);
        for (int i = 0; i < 4 * m; ++i)
            x[i] = gauss(rng);
        return x;
    };
    return map;
}

SmoothMap inversion_builtin() {
    SmoothMap map;
    map.m = 1;
    map.n = 1;
    map.eval = [](const Eigen::VectorXd& xc) {
        const HVector x = hvector_from_coords(xc);
        HVector y(1);
        y[0] = inv(x[0]);
        return real_coords(y);
    };
    map.in_domain = [](const Eigen::VectorXd& xc) { return xc.norm() > 0.2; };
    map.sample_domain = [](Rng& rng) {
        for (;;) {
            Eigen::VectorXd x(4);
            for (int i = 0; i < 4; ++i)
                x[i] = gauss(rng);
            const double n = x.norm();
            if (n < 1e-3)
                continue;
            std::uniform_real_distribution<double> radius(0.5, 2.0);
            return Eigen::VectorXd(x * (radius(rng) / n));
        }
    };
    return map;
}

SmoothMap conj_control_builtin(int m) {
    SmoothMap map;
    map.m = m;
    map.n = m;
    map.eval = [](const Eigen::VectorXd& xc) {
        HVector x = hvector_from_coords(xc);
        for (auto& q : x.entries)
            q = q.conj();
        return real_coords(x);
    };
    map.sample_domain = [m](Rng& rng) {
        Eigen::VectorXd x(4 * m);
        for (int i = 0; i < 4 * m; ++i)
            x[i] = gauss(rng);
        return x;
    };
    return map;
}

SmoothMap quadratic_control_builtin() {
    SmoothMap map;
    map.m = 1;
    map.n = 1;
    map.eval = [](const Eigen::VectorXd& xc) {
        const HVector x = hvector_from_coords(xc);
        HVector y(1);
        y[0] = x[0] * x[0];
        return real_coords(y);
    };
    map.sample_domain = [](Rng& rng) {
        Eigen::VectorXd x(4);
        for (int i = 0; i < 4; ++i)
            x[i] = gauss(rng);
        return x;
    };
    return map;
}

SmoothMap builtin_map(const std::string& name, int m, int n, uint64_t seed) {
    if (name == "affine") {
        Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
        const UnitQuaternion a = random_unit_quaternion(rng);
        const HMatrix A = random_hmatrix(m, n, rng);
        const HVector b = random_hvector(n, rng);
        return affine_builtin(a.value(), A, b);
    }
    if (name == "inversion")
        return inversion_builtin();
    if (name == "conj-control")
        return conj_control_builtin(m);
    if (name == "quadratic-control")
        return quadratic_control_builtin();
    fail(Status::InvalidArgument, "unknown built-in map '" + name + "'");
}

} // namespace qtw
