#pragma once

#include <vector>

#include <Eigen/Dense>

#include "quaternion.hpp"
#include "random.hpp"

namespace qtw {

// Convention used throughout the project (stated once, here):
//
//   * Elements of H^m are ROW vectors X; quaternion matrices act on the
//     right, t(X) = X * A, and the left H-module structure is q * X.
//   * The real coordinates of X interleave per entry: (w1 x1 y1 z1 w2 ...).
//   * A RealLinearMap stores the 4m x 4n matrix M with y_row = x_row * M,
//     so the matrix of t2 ∘ t1 (t1 applied first) is M1 * M2.

/// Row vector X in H^m.
struct HVector {
    std::vector<Quaternion> entries;

    HVector() = default;
    explicit HVector(std::vector<Quaternion> e) : entries(std::move(e)) {}
    explicit HVector(int m) : entries(static_cast<size_t>(m)) {}

    int size() const { return static_cast<int>(entries.size()); }
    Quaternion& operator[](int i) { return entries[static_cast<size_t>(i)]; }
    const Quaternion& operator[](int i) const { return entries[static_cast<size_t>(i)]; }

    double norm() const;
};

/// m x n quaternion matrix acting by X -> X * A.
struct HMatrix {
    int rows = 0, cols = 0;
    std::vector<Quaternion> a; // row-major

    HMatrix() = default;
    HMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {
        if (r < 1 || c < 1)
            fail(Status::InvalidArgument, "HMatrix dimensions must be >= 1");
    }

    Quaternion& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Quaternion& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static HMatrix identity(int n);

    HMatrix operator*(const HMatrix& o) const;
    HMatrix operator*(double s) const;
    HMatrix operator-() const;

    double frobenius() const;
};

HVector operator*(const HVector& x, const HMatrix& a);
HVector operator*(const Quaternion& q, const HVector& x);

/// Real 4m x 4n matrix of a linear map H^m -> H^n in the row convention.
class RealLinearMap {
public:
    RealLinearMap() = default;
    RealLinearMap(int m, int n)
        : m_(m), n_(n), mat_(Eigen::MatrixXd::Zero(4 * m, 4 * n)) {}
    RealLinearMap(int m, int n, Eigen::MatrixXd mat);

    static RealLinearMap identity(int m);

    int source_dim() const { return m_; } // quaternion dimension m
    int target_dim() const { return n_; }
    const Eigen::MatrixXd& matrix() const { return mat_; }
    Eigen::MatrixXd& matrix() { return mat_; }

    /// Matrix of g ∘ this (this applied first).
    RealLinearMap then(const RealLinearMap& g) const;

    RealLinearMap operator+(const RealLinearMap& o) const;
    RealLinearMap operator-(const RealLinearMap& o) const;
    RealLinearMap operator*(double s) const;

    /// Image of a coordinate row vector.
    Eigen::VectorXd apply(const Eigen::VectorXd& row) const;
    HVector apply(const HVector& x) const;

    double frobenius() const { return mat_.norm(); }
    double op_norm_estimate() const; // max row sum

private:
    int m_ = 0, n_ = 0;
    Eigen::MatrixXd mat_;
};

Eigen::VectorXd real_coords(const HVector& x);
HVector hvector_from_coords(const Eigen::VectorXd& v);

/// 4x4 row-convention blocks of one-entry left/right multiplication.
Eigen::Matrix4d left_block(const Quaternion& q);
Eigen::Matrix4d right_block(const Quaternion& q);

/// L_q : X -> q X on H^m, a block-diagonal 4m x 4m map.
RealLinearMap left_mult_operator(const Quaternion& q, int m);

/// Real form of X -> X * A.
RealLinearMap embed(const HMatrix& a);

/// Relative defect of H-linearity: max over q in {i,j,k} of
/// |t∘L_q - L_q∘t| / |t| (Frobenius; zero map has defect 0).
double hlinear_defect(const RealLinearMap& t);

bool is_hlinear(const RealLinearMap& t, double tol = 1e-9);

/// Reads the matrix of an H-linear map off the images of the basis row
/// vectors.  NotHLinear when a commutator with L_i, L_j or L_k exceeds tol
/// relative to the operator norm of t.
HMatrix extract_hmatrix(const RealLinearMap& t, double tol = 1e-9);

/// L_a ∘ embed(A), i.e. the real form of X -> a (X A).
RealLinearMap scaled_right_mult(const Quaternion& a, const HMatrix& A);

HMatrix random_hmatrix(int m, int n, Rng& rng);
HVector random_hvector(int m, Rng& rng);

} // namespace qtw
