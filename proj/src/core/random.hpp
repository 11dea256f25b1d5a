#pragma once

#include <random>

#include "quaternion.hpp"

namespace qtw {

using Rng = std::mt19937_64;

inline double gauss(Rng& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    return d(rng);
}

inline Quaternion random_quaternion(Rng& rng) {
    return {gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
}

inline UnitQuaternion random_unit_quaternion(Rng& rng) {
    for (;;) {
        Quaternion q = random_quaternion(rng);
        const double n = q.norm();
        if (n > 1e-3)
            return UnitQuaternion(q * (1.0 / n));
    }
}

inline ImaginaryUnit random_imaginary_unit(Rng& rng) {
    for (;;) {
        Quaternion q{0, gauss(rng), gauss(rng), gauss(rng)};
        const double n = q.norm();
        if (n > 1e-3)
            return ImaginaryUnit(q * (1.0 / n));
    }
}

// Oriented orthonormal imaginary triple: the conjugate of (i,j,k) by a random
// unit quaternion, so the quaternionic identities hold by construction.
inline std::array<ImaginaryUnit, 3> random_oriented_triple(Rng& rng) {
    const UnitQuaternion a = random_unit_quaternion(rng);
    return {conjugation_action(a, ImaginaryUnit(Quaternion::i())),
            conjugation_action(a, ImaginaryUnit(Quaternion::j())),
            conjugation_action(a, ImaginaryUnit(Quaternion::k()))};
}

} // namespace qtw
