#pragma once

#include <complex>
#include <optional>

#include "hlinear.hpp"

namespace qtw {

/// Orientation-preserving isometry Z_V -> Z_W acting on unit imaginary
/// quaternions; realized as an element of SO(3).
using SphereMap = Rotation3;

/// Labels the complex structure J = L_q on H^m.
struct ComplexStructureLabel {
    ImaginaryUnit q;
};

enum class QuatClass { Quaternionic, ZeroMap, NotQuaternionic };

struct SphereMapResult {
    QuatClass status = QuatClass::NotQuaternionic;
    SphereMap T;        // valid only when status == Quaternionic
    double residual = 0; // relative residual of the defining relation
};

/// Total classification of t against t ∘ L_q = L_{T(q)} ∘ t.  The sphere map
/// is solved per basis direction by a 3-unknown least squares, assembled into
/// a rotation, validated as SO(3), and spot-checked on 16 random unit
/// imaginary directions (linearity of T makes this decisive).
SphereMapResult classify_quaternionic(const RealLinearMap& t, double tol = 1e-9,
                                      uint64_t spot_seed = 0);

/// Throwing form: ZeroMap / NotQuaternionic on failure.
SphereMap recover_sphere_map(const RealLinearMap& t, double tol = 1e-9);

bool is_quaternionic(const RealLinearMap& t, double tol = 1e-9);

struct Decomposition {
    UnitQuaternion a;
    HMatrix A;
    SphereMap T;
    double residual; // relative reconstruction error of L_a ∘ embed(A)
};

/// Splits a nonzero quaternionic map as t(X) = a (X A).  The sign of a is
/// canonical (first nonzero component positive); A absorbs the flip.
Decomposition decompose(const RealLinearMap& t, double tol = 1e-9);

/// Membership test for the group of quaternionic linear automorphisms of H^m:
/// invertible (condition estimate below 1/tol) and quaternionic.
bool is_sp1_glmh(const RealLinearMap& g, double tol = 1e-9);

/// Element of the second symmetric power of R^{4m}, stored as a symmetric
/// coefficient matrix: S represents sum_{pq} S_pq e_p ⊗ e_q.
struct SymTensor2 {
    Eigen::MatrixXd s;
};

/// Hermitian projector b(X,Y) = 1/2 sum_{i=0..3} (E_i X ⊗ E_i Y + E_i Y ⊗ E_i X)
/// with E_0 = Id, E_1 = L_i, E_2 = L_j, E_3 = L_k.
SymTensor2 projector_b(const HVector& X, const HVector& Y);

/// Same bilinear expression over an arbitrary oriented orthonormal imaginary
/// triple (E_1, E_2, E_3); admissible-basis independence says the result
/// matches projector_b.
SymTensor2 projector_b_with_triple(const HVector& X, const HVector& Y,
                                   const std::array<ImaginaryUnit, 3>& triple);

/// Raw pre-symmetrization tensor beta(X,Y) = sum_i E_i X ⊗ E_i Y.  Only its
/// compatibility with b under symmetrization is asserted anywhere.
Eigen::MatrixXd projector_beta(const HVector& X, const HVector& Y);

/// iota_alpha with the convention iota_alpha(v ⊗ w + w ⊗ v) = alpha(v) w + alpha(w) v,
/// i.e. S · alpha on coefficient matrices.
Eigen::VectorXd contract(const Eigen::VectorXd& alpha, const SymTensor2& S);

/// (J ⊗ J)(S) for J = L_q.
SymTensor2 hermitian_conjugate(const ImaginaryUnit& q, const SymTensor2& S, int m);

/// Complexified vector of R^{4m}, stored as a (re, im) pair.
struct CVec {
    Eigen::VectorXd re, im;

    CVec() = default;
    CVec(Eigen::VectorXd r, Eigen::VectorXd i) : re(std::move(r)), im(std::move(i)) {}
    explicit CVec(const Eigen::VectorXd& r)
        : re(r), im(Eigen::VectorXd::Zero(r.size())) {}

    Eigen::Index size() const { return re.size(); }
    double norm() const { return std::sqrt(re.squaredNorm() + im.squaredNorm()); }

    CVec operator+(const CVec& o) const { return {re + o.re, im + o.im}; }
    CVec operator-(const CVec& o) const { return {re - o.re, im - o.im}; }
    CVec operator*(std::complex<double> s) const {
        return {s.real() * re - s.imag() * im, s.real() * im + s.imag() * re};
    }
};

/// Hermitian inner product, conjugate-linear in the first argument.
std::complex<double> hdot(const CVec& u, const CVec& v);

/// Complex-bilinear extension of a real-linear map to complexified vectors.
CVec apply_complexified(const RealLinearMap& t, const CVec& v);

/// Orthonormal basis of the (+i or -i)-eigenspace of J = L_q on the
/// complexification of R^{4m}; sign = +1 gives V^{1,0;J}, -1 gives V^{0,1;J}.
/// Each returned vector has Hermitian norm 1; the basis has 2m elements.
std::vector<CVec> eigenspace_basis(const ImaginaryUnit& q, int sign, int m);

/// Complexified b: pair of symmetric coefficient matrices (re, im).
std::pair<SymTensor2, SymTensor2> projector_b_complex(const CVec& X, const CVec& Y, int m);

/// iota_alpha on a complexified tensor, alpha real.
CVec contract_complex(const Eigen::VectorXd& alpha,
                      const std::pair<SymTensor2, SymTensor2>& S);

} // namespace qtw
