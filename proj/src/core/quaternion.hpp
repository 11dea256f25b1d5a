#pragma once

#include <array>
#include <cmath>
#include <cstdlib>

#include "status.hpp"

namespace qtw {

// Comparison context: |a-b| <= abs + rel*max(|a|,|b|).
struct Tolerance {
    double rel = 1e-9;
    double abs = 1e-12;

    bool close(double a, double b) const {
        return std::fabs(a - b) <= abs + rel * std::max(std::fabs(a), std::fabs(b));
    }
};

/// One element of H with components (w,x,y,z) in the ordered basis (1,i,j,k).
struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion zero() { return {0, 0, 0, 0}; }
    static constexpr Quaternion one() { return {1, 0, 0, 0}; }
    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }
    static constexpr Quaternion real(double r) { return {r, 0, 0, 0}; }

    constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }

    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion operator+(const Quaternion& o) const {
        return {w + o.w, x + o.x, y + o.y, z + o.z};
    }
    constexpr Quaternion operator-(const Quaternion& o) const {
        return {w - o.w, x - o.x, y - o.y, z - o.z};
    }
    // Hamilton product, ij = k.
    constexpr Quaternion operator*(const Quaternion& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
    constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    friend constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

    double component(int idx) const {
        switch (idx) {
        case 0: return w;
        case 1: return x;
        case 2: return y;
        case 3: return z;
        default: fail(Status::InvalidArgument, "quaternion component index out of range");
        }
    }
};

inline Quaternion mul(const Quaternion& p, const Quaternion& q) { return p * q; }
inline Quaternion conj(const Quaternion& q) { return q.conj(); }
inline double norm(const Quaternion& q) { return q.norm(); }

/// conj(q)/|q|^2; DivisionByZero for q = 0.
Quaternion inv(const Quaternion& q);

/// Flips the sign so the first component in order (w,x,y,z) whose magnitude
/// exceeds 1e-8 is positive.  Near-zero quaternions pass through unchanged.
Quaternion canonical_sign(const Quaternion& q);

bool approx_equal(const Quaternion& a, const Quaternion& b, const Tolerance& tol = {});

/// Element of Sp(1).  Construction renormalizes inputs within 1e-6 of unit
/// norm and rejects anything farther out.
class UnitQuaternion {
public:
    explicit UnitQuaternion(const Quaternion& q);
    const Quaternion& value() const { return q_; }
    UnitQuaternion inverse() const;

private:
    explicit UnitQuaternion() = default;
    Quaternion q_;
};

/// Unit quaternion with zero real part; squares to -1.
class ImaginaryUnit {
public:
    explicit ImaginaryUnit(const Quaternion& q);
    ImaginaryUnit(double x, double y, double z) : ImaginaryUnit(Quaternion{0, x, y, z}) {}
    const Quaternion& value() const { return q_; }

private:
    Quaternion q_;
};

/// a q a^-1.  The result is again a unit imaginary quaternion.
ImaginaryUnit conjugation_action(const UnitQuaternion& a, const ImaginaryUnit& q);

/// 3x3 real matrix acting on the components (x,y,z) of imaginary quaternions,
/// stored row-major; vectors are columns, R*v.
class Rotation3 {
public:
    Rotation3() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}
    explicit Rotation3(const std::array<double, 9>& rowmajor) : m_(rowmajor) {}

    static Rotation3 identity() { return Rotation3(); }

    double operator()(int r, int c) const { return m_[3 * r + c]; }
    double& operator()(int r, int c) { return m_[3 * r + c]; }
    const std::array<double, 9>& data() const { return m_; }

    Rotation3 operator*(const Rotation3& o) const;
    Rotation3 transpose() const;
    double det() const;

    std::array<double, 3> apply(const std::array<double, 3>& v) const;
    ImaginaryUnit apply(const ImaginaryUnit& q) const;

    /// max-norm defect of R^T R = I plus a positive-determinant check.
    double orthogonality_defect() const;
    bool is_special_orthogonal(double tol = 1e-9) const;

    double distance(const Rotation3& o) const; // Frobenius

private:
    std::array<double, 9> m_;
};

/// Image of a under Sp(1) -> SO(3): columns are a i a^-1, a j a^-1, a k a^-1.
Rotation3 rotation_of(const UnitQuaternion& a);

/// Inverse of rotation_of up to the +-a ambiguity; result is sign-canonical.
UnitQuaternion unit_from_rotation(const Rotation3& r);

} // namespace qtw
