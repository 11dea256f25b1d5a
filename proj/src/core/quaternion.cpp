#include "quaternion.hpp"

#include <algorithm>

namespace qtw {

namespace {
constexpr double kUnitSlack = 1e-6;   // renormalization window for unit types
constexpr double kSignEps = 1e-8;     // sign-rule component threshold
} // namespace

Quaternion inv(const Quaternion& q) {
    const double n2 = q.norm_sq();
    if (n2 == 0.0)
        fail(Status::DivisionByZero, "inverse of zero quaternion");
    return q.conj() * (1.0 / n2);
}

Quaternion canonical_sign(const Quaternion& q) {
    for (int c = 0; c < 4; ++c) {
        const double v = q.component(c);
        if (std::fabs(v) > kSignEps)
            return v > 0 ? q : -q;
    }
    return q;
}

bool approx_equal(const Quaternion& a, const Quaternion& b, const Tolerance& tol) {
    return tol.close(a.w, b.w) && tol.close(a.x, b.x) && tol.close(a.y, b.y) &&
           tol.close(a.z, b.z);
}

UnitQuaternion::UnitQuaternion(const Quaternion& q) {
    const double n = q.norm();
    if (std::fabs(n - 1.0) > kUnitSlack)
        fail(Status::InvalidArgument, "quaternion is not within 1e-6 of unit norm");
    q_ = q * (1.0 / n);
}

UnitQuaternion UnitQuaternion::inverse() const {
    return UnitQuaternion(q_.conj());
}

ImaginaryUnit::ImaginaryUnit(const Quaternion& q) {
    const double n = q.norm();
    if (std::fabs(n - 1.0) > kUnitSlack || std::fabs(q.w) > kUnitSlack)
        fail(Status::InvalidArgument, "quaternion is not within 1e-6 of a unit imaginary");
    Quaternion im{0, q.x, q.y, q.z};
    q_ = im * (1.0 / im.norm());
}

ImaginaryUnit conjugation_action(const UnitQuaternion& a, const ImaginaryUnit& q) {
    const Quaternion r = a.value() * q.value() * a.value().conj();
    return ImaginaryUnit(r);
}

Rotation3 Rotation3::operator*(const Rotation3& o) const {
    Rotation3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k)
                s += (*this)(i, k) * o(k, j);
            r(i, j) = s;
        }
    return r;
}

Rotation3 Rotation3::transpose() const {
    Rotation3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = (*this)(j, i);
    return r;
}

double Rotation3::det() const {
    const auto& m = m_;
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

std::array<double, 3> Rotation3::apply(const std::array<double, 3>& v) const {
    std::array<double, 3> r{};
    for (int i = 0; i < 3; ++i)
        r[i] = (*this)(i, 0) * v[0] + (*this)(i, 1) * v[1] + (*this)(i, 2) * v[2];
    return r;
}

ImaginaryUnit Rotation3::apply(const ImaginaryUnit& q) const {
    const auto v = apply(std::array<double, 3>{q.value().x, q.value().y, q.value().z});
    return ImaginaryUnit(Quaternion{0, v[0], v[1], v[2]});
}

double Rotation3::orthogonality_defect() const {
    const Rotation3 g = transpose() * (*this);
    double worst = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst, std::fabs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
}

bool Rotation3::is_special_orthogonal(double tol) const {
    return orthogonality_defect() <= tol && det() > 0.0;
}

double Rotation3::distance(const Rotation3& o) const {
    double s = 0;
    for (int i = 0; i < 9; ++i) {
        const double d = m_[i] - o.data()[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Rotation3 rotation_of(const UnitQuaternion& a) {
    const Quaternion& q = a.value();
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    Rotation3 r;
    r(0, 0) = 1 - 2 * (y * y + z * z);
    r(0, 1) = 2 * (x * y - w * z);
    r(0, 2) = 2 * (x * z + w * y);
    r(1, 0) = 2 * (x * y + w * z);
    r(1, 1) = 1 - 2 * (x * x + z * z);
    r(1, 2) = 2 * (y * z - w * x);
    r(2, 0) = 2 * (x * z - w * y);
    r(2, 1) = 2 * (y * z + w * x);
    r(2, 2) = 1 - 2 * (x * x + y * y);
    return r;
}

UnitQuaternion unit_from_rotation(const Rotation3& r) {
    if (!r.is_special_orthogonal(1e-6))
        fail(Status::InvalidArgument, "matrix is not special orthogonal");
    // Shepperd's method: branch on the largest of the four squared components.
    const double t = r(0, 0) + r(1, 1) + r(2, 2);
    double w, x, y, z;
    if (t > std::max({r(0, 0), r(1, 1), r(2, 2)})) {
        w = 0.5 * std::sqrt(1 + t);
        x = (r(2, 1) - r(1, 2)) / (4 * w);
        y = (r(0, 2) - r(2, 0)) / (4 * w);
        z = (r(1, 0) - r(0, 1)) / (4 * w);
    } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
        x = 0.5 * std::sqrt(1 + 2 * r(0, 0) - t);
        w = (r(2, 1) - r(1, 2)) / (4 * x);
        y = (r(0, 1) + r(1, 0)) / (4 * x);
        z = (r(0, 2) + r(2, 0)) / (4 * x);
    } else if (r(1, 1) >= r(2, 2)) {
        y = 0.5 * std::sqrt(1 + 2 * r(1, 1) - t);
        w = (r(0, 2) - r(2, 0)) / (4 * y);
        x = (r(0, 1) + r(1, 0)) / (4 * y);
        z = (r(1, 2) + r(2, 1)) / (4 * y);
    } else {
        z = 0.5 * std::sqrt(1 + 2 * r(2, 2) - t);
        w = (r(1, 0) - r(0, 1)) / (4 * z);
        x = (r(0, 2) + r(2, 0)) / (4 * z);
        y = (r(1, 2) + r(2, 1)) / (4 * z);
    }
    return UnitQuaternion(canonical_sign(Quaternion{w, x, y, z}));
}

} // namespace qtw
