#pragma once

#include "qlinear.hpp"

namespace qtw {

/// The operator t -> T(I) ∘ t ∘ I + T(J) ∘ t ∘ J + T(K) ∘ t ∘ K on
/// Hom_R(H^m, H^n), materialized as a dense 16mn x 16mn matrix acting on the
/// row-major vectorization of map matrices.  Satisfies C^2 + 2C - 3 Id = 0;
/// the -3 eigenspace consists of the quaternionic maps with respect to T (of
/// dimension 4mn) and the +1 eigenspace of the Fueter maps (dimension 12mn).
class COperator {
public:
    COperator(int m, int n, Eigen::MatrixXd c);

    int source_dim() const { return m_; }
    int target_dim() const { return n_; }
    const Eigen::MatrixXd& matrix() const { return c_; }

    RealLinearMap apply(const RealLinearMap& t) const;

    double minpoly_residual() const; // |C^2 + 2C - 3 Id| / |C|^2, Frobenius

private:
    int m_, n_;
    Eigen::MatrixXd c_;
};

COperator c_operator(const SphereMap& T, int m, int n);
COperator c_operator(const SphereMap& T, int m, int n,
                     const std::array<ImaginaryUnit, 3>& triple);

/// Operator-style application without materializing the 16mn x 16mn matrix.
RealLinearMap c_apply(const SphereMap& T, const RealLinearMap& t);

struct FueterSplit {
    RealLinearMap quaternionic; // (t - C t) / 4, the -3 spectral projection
    RealLinearMap fueter;       // (3 t + C t) / 4, the +1 spectral projection
};

FueterSplit fueter_split(const RealLinearMap& t, const SphereMap& T);

/// |C_T(t) - t| / |t|; zero for the zero map.
double fueter_defect(const RealLinearMap& t, const SphereMap& T);

bool is_fueter(const RealLinearMap& t, const SphereMap& T, double tol = 1e-9);

/// Rotation by pi about the line through d: q -> 2 <q,d> d - q.
SphereMap symmetry_s_d(const ImaginaryUnit& d);

/// The six-direction certificate set {i, j, k, (i+j)/√2, (j+k)/√2, (i+k)/√2}.
std::vector<ImaginaryUnit> default_symmetry_directions();

struct SpanReport {
    int m = 0, n = 0;
    int expected_dim = 0;       // 12 m n
    int span_dim = 0;           // rank over the full direction set
    int axis_span_dim = 0;      // rank over {i,j,k} only (measured, not asserted)
    double max_inclusion_defect = 0; // worst fueter_defect of a generator
    bool ok = false;            // span_dim == expected_dim and inclusion holds
};

/// Checks that the quaternionic spaces for T ∘ S_d, over the given directions,
/// lie in the Fueter space of T and together span it.
SpanReport fueter_span_check(const SphereMap& T, int m, int n,
                             const std::vector<ImaginaryUnit>& directions,
                             double tol = 1e-9);
SpanReport fueter_span_check(const SphereMap& T, int m, int n, double tol = 1e-9);

struct ObstructionReport {
    int trials = 0;
    int nonzero_compositions = 0;
    int failures = 0;            // nonzero compositions wrongly accepted as Fueter
    double min_composition_defect = 0; // smallest fueter_defect seen (expected ~4)
    double max_factor_defect = 0;      // worst factor defect (expected ~0)
};

/// Random pairs t' quaternionic w.r.t. S_d ∘ T' and t'' w.r.t. T'' ∘ S_d are
/// individually Fueter w.r.t. T' and T''; their nonzero compositions must
/// never be Fueter w.r.t. T'' ∘ T'.
ObstructionReport composition_obstruction_check(const SphereMap& t_prime,
                                                const SphereMap& t_dprime,
                                                const ImaginaryUnit& d, int trials,
                                                uint64_t seed = 0, int mu = 1,
                                                int mv = 1, int mw = 1,
                                                double tol = 1e-9);

struct FueterSuiteReport {
    int m = 0, n = 0;
    double minpoly_residual = 0;
    int dim_q = 0;
    int dim_f = 0;
    int span_dim = 0;
    int axis_span_dim = 0;
    double basis_independence = 0;
    int trials = 0;
    int failures = 0;
    bool ok = false;
};

/// One-shot verification bundle at desk scale: minimal polynomial, eigenspace
/// dimensions by rank, the symmetry-direction span, basis independence of C
/// and the composition obstruction.
FueterSuiteReport run_fueter_suite(const SphereMap& T, int m, int n, int trials,
                                   uint64_t seed);

} // namespace qtw
