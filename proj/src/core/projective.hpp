#pragma once

#include "qlinear.hpp"

namespace qtw {

// Projective conventions:
//   * HP^m is the LEFT quaternionic projective space: [X] = { q X : q != 0 }.
//     Canonical representatives left-divide by the first entry whose norm
//     exceeds 1e-8 * |rep|, making that entry 1.
//   * H^{m+1} = C^{2m+2} splits each quaternion as q = (w + x i) + (y + z i) j,
//     with C acting by left multiplication through w + x i.

/// Point of HP^m held in canonical form.
class HPPoint {
public:
    explicit HPPoint(const HVector& raw); // ZeroVector on the zero vector

    const HVector& rep() const { return rep_; }
    int ambient() const { return rep_.size(); } // m + 1
    int pivot() const { return pivot_; }

    bool approx_equal(const HPPoint& o, double tol = 1e-9) const;

private:
    HVector rep_;
    int pivot_ = 0;
};

/// Point of CP^{2m+1} held in canonical form (first nonzero complex entry 1).
class CPPoint {
public:
    explicit CPPoint(const Eigen::VectorXcd& raw);

    const Eigen::VectorXcd& rep() const { return rep_; }
    int ambient() const { return static_cast<int>(rep_.size()); } // 2m + 2

    bool approx_equal(const CPPoint& o, double tol = 1e-9) const;

private:
    Eigen::VectorXcd rep_;
};

Eigen::VectorXcd complex_coords(const HVector& x);
HVector hvector_from_complex(const Eigen::VectorXcd& z);

/// Twistor fibration CP^{2m+1} -> HP^m: reassemble the quaternion vector from
/// complex pairs and project.
HPPoint twistor_project(const CPPoint& z);

/// [X] -> [X A]; KernelPoint when |X A| < tol |X| |A|.
HPPoint phi_a(const HMatrix& a, const HPPoint& x, double tol = 1e-10);

/// Complex 2(m+1) x 2(n+1) matrix of right multiplication by A, acting on
/// complex row vectors.
Eigen::MatrixXcd complex_form(const HMatrix& a);

/// Real 4(m+1) x 4(n+1) row-convention form of a complex-linear map.
RealLinearMap real_form(const Eigen::MatrixXcd& b);

/// Holomorphic lift [z] -> [z B_A] with B_A = complex_form(A).
CPPoint big_phi_a(const HMatrix& a, const CPPoint& z, double tol = 1e-10);

/// Affine coordinates of a chart-0 point [1 : x_1 : ... : x_m].
HVector chart_coords(const HPPoint& x); // InvalidArgument off the chart
HPPoint from_chart(const HVector& x);

/// y_alpha = (x_j a^j_0 + a^0_0)^{-1} (x_j a^j_alpha + a^0_alpha), coeffs an
/// (m+1) x (n+1) quaternion matrix, Einstein sum over j = 1..m.
/// PoleError when the denominator norm falls below tol.
HVector affine_eval(const HMatrix& coeffs, const HVector& x, double tol = 1e-10);

struct ProjectiveSample {
    std::vector<std::pair<HVector, HVector>> pairs; // homogeneous reps
};

struct Recovery {
    HMatrix A;              // Frobenius norm 1, sign-canonical
    double residual;        // worst canonical-form mismatch over the samples
    double second_singular; // gauge margin of the homogeneous system
};

/// Solves the homogeneous linear system expressing phi_A(x) = y over all
/// samples and reads A off the smallest singular direction.  Errors:
/// InsufficientSamples, AmbiguousRecovery (second-smallest singular value
/// below gauge_tol), InconsistentSamples (best residual above tol).
Recovery recover_matrix(const ProjectiveSample& samples, int m, int n,
                        double tol = 1e-8, double gauge_tol = 1e-6);

struct LinesCheckReport {
    bool maps_lines = false;  // all probes stayed inside a quaternionic line
    bool cross_check = false; // real form classified quaternionic
    int trials = 0;
    int failures = 0;
    double max_containment_residual = 0;
};

/// Randomized premise check: does z -> z B map quaternionic lines into
/// quaternionic lines?  Requires complex rank >= 4 (RankTooLow otherwise).
/// When every probe passes, the conclusion is cross-validated by classifying
/// the real form of B.
LinesCheckReport maps_quaternionic_lines(const Eigen::MatrixXcd& b, int trials,
                                         double tol = 1e-8, uint64_t seed = 0);

/// Hopf fibration H^{m+1} \ {0} -> HP^m.
HPPoint hopf(const HVector& x);

/// Smallest and largest singular values of the real embedding of A; the
/// quaternionic singular values appear with multiplicity four.
std::pair<double, double> h_singular_range(const HMatrix& a);

/// Real dimension of { X : X A = 0 } (a multiple of four).
int h_kernel_dimension(const HMatrix& a, double rank_tol = 1e-9);

/// Chart coordinates of one quaternionic kernel line of X -> X A, when the
/// kernel is nonzero and meets the first affine chart.
std::optional<HVector> kernel_chart_point(const HMatrix& a, double rank_tol = 1e-9);

} // namespace qtw
