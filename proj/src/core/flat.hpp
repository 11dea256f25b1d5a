#pragma once

#include <functional>

#include "qlinear.hpp"

namespace qtw {

/// Smooth map between open sets of H^m and H^n given by a coordinate
/// evaluator.  On the flat models the second fundamental form is the plain
/// Euclidean Hessian, so every twistoriality condition below is a
/// finite-difference computation.
struct SmoothMap {
    int m = 1, n = 1;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> eval;
    std::function<bool(const Eigen::VectorXd&)> in_domain =
        [](const Eigen::VectorXd&) { return true; };
    std::function<Eigen::VectorXd(Rng&)> sample_domain; // grid point generator
    double h = 1e-4; // relative step: effective step is h * max(1, |x|_inf)

    double step_at(const Eigen::VectorXd& x) const {
        return h * std::max(1.0, x.cwiseAbs().maxCoeff());
    }
};

/// Central-difference Jacobian in the row convention (row a = d phi / d x_a).
/// DomainEscape when a stencil point leaves the declared domain.
RealLinearMap differential_fd(const SmoothMap& map, const Eigen::VectorXd& x);
RealLinearMap differential_fd(const SmoothMap& map, const Eigen::VectorXd& x,
                              double h);

/// Symmetric second directional derivative via the four-point stencil.
Eigen::VectorXd hessian_fd(const SmoothMap& map, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& u, const Eigen::VectorXd& v);
Eigen::VectorXd hessian_fd(const SmoothMap& map, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                           double h);

/// All basis-pair second derivatives H(e_a, e_b); entry a*4m+b.
std::vector<Eigen::VectorXd> hessian_tensor(const SmoothMap& map,
                                            const Eigen::VectorXd& x, double h);

/// Largest basis-pair Hessian norm; the flat-model totally-geodesic residual.
double totally_geodesic_residual(const SmoothMap& map, const Eigen::VectorXd& x);

/// Classification of d phi at x; the rotation is the fiber value of the
/// sphere-bundle lift at x.
SphereMapResult pointwise_quaternionic(const SmoothMap& map, const Eigen::VectorXd& x,
                                       double tol = 1e-6);

// Residuals of the two twistoriality conditions at (x, J), J = L_q.  For a
// quaternionic differential with lift value T, the Hessian restricted to
//   tau:  V^{0,1;J} x V^{0,1;J}   must land in  T^{0,1; L_{T q}}
//   tau': V^{1,0;J} x V^{0,1;J}   must land in  T^{0,1; L_{T q}}
// The reported value is the worst opposite-type component over basis pairs,
// divided by max(Hessian norm, differential scale, 1e-12) so exact-zero cases
// report at finite-difference noise level.  NotQuaternionicAt when the
// differential at x has no sphere map (ZeroMap included).
double tau_residual(const SmoothMap& map, const Eigen::VectorXd& x,
                    const ImaginaryUnit& q, double tol = 1e-6);
double tau_prime_residual(const SmoothMap& map, const Eigen::VectorXd& x,
                          const ImaginaryUnit& q, double tol = 1e-6);

struct TwistorRow {
    Eigen::VectorXd x;
    ImaginaryUnit j_dir{Quaternion::i()};
    bool zero_differential = false;
    bool quaternionic = false;
    double quaternionic_residual = 0;
    double tau = 0;
    double tau_prime = 0;
    double hessian_norm = 0;
    SphereMap lift; // valid when quaternionic
};

struct TwistorReport {
    std::string map_name;
    int m = 0, n = 0;
    double h = 0;
    uint64_t seed = 0;
    double tol = 0;
    int points = 0;
    std::vector<TwistorRow> rows;

    int quaternionic_points = 0;
    int zero_differential_points = 0;
    double tau_max = 0, tau_median = 0;
    double tau_prime_max = 0, tau_prime_median = 0;
    double geodesic_max = 0;
    bool tau_twistorial = false; // every non-degenerate row quaternionic, tau <= tol
};

/// Evaluates both conditions on a random grid of points times a fixed+random
/// set of 16 sphere directions.
TwistorReport twistor_check(const SmoothMap& map, const std::string& name,
                            int points, uint64_t seed, double tol = 1e-4);

// Built-in maps for the batch front door and the test suite.
SmoothMap affine_builtin(const Quaternion& a, const HMatrix& A, const HVector& b);
SmoothMap inversion_builtin();
SmoothMap conj_control_builtin(int m);
SmoothMap quadratic_control_builtin();
/// Built-in by CLI name: affine | inversion | conj-control | quadratic-control.
/// Affine data is drawn from the seed.
SmoothMap builtin_map(const std::string& name, int m, int n, uint64_t seed);

} // namespace qtw
