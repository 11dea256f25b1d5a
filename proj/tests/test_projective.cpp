#include <doctest.h>

#include <Eigen/SVD>

#include "core/flat.hpp"
#include "core/projective.hpp"

using namespace qtw;

namespace {

HVector basis_row(int len, int slot) {
    HVector x(len);
    x[slot] = Quaternion::one();
    return x;
}

ProjectiveSample sample_from_matrix(const HMatrix& a, int count, Rng& rng,
                                    double spread = 1.0) {
    const int m = a.rows - 1;
    ProjectiveSample s;
    while (static_cast<int>(s.pairs.size()) < count) {
        HVector x(m + 1);
        x[0] = Quaternion::one();
        for (int j = 1; j <= m; ++j)
            x[j] = random_quaternion(rng) * spread;
        const HVector y = x * a;
        if (y[0].norm() < 1e-2 * y.norm())
            continue; // keep targets inside the chart
        s.pairs.emplace_back(x, y);
    }
    return s;
}

} // namespace

TEST_CASE("HPPoint canonicalization") {
    Rng rng(3);
    const HVector x = random_hvector(3, rng);
    const HPPoint p(x);
    CHECK((p.rep()[p.pivot()] - Quaternion::one()).norm() == 0.0);

    // Left-scaling the representative changes nothing.
    const HPPoint q(random_quaternion(rng) * x);
    CHECK(p.approx_equal(q, 1e-10));

    CHECK_THROWS_AS(HPPoint(HVector(3)), Error);
}

TEST_CASE("twistor projection") {
    // First complex basis vector lifts the first quaternion basis line.
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(4);
    e1[0] = 1.0;
    const HPPoint p = twistor_project(CPPoint(e1));
    CHECK(p.approx_equal(HPPoint(basis_row(2, 0)), 1e-12));

    Rng rng(5);
    for (int k = 0; k < 25; ++k) {
        const HVector x = random_hvector(3, rng);
        const Eigen::VectorXcd z = complex_coords(x);

        // Complex rescaling moves along the fiber.
        const std::complex<double> lam(gauss(rng), gauss(rng));
        CHECK(twistor_project(CPPoint(z)).approx_equal(
            twistor_project(CPPoint(Eigen::VectorXcd(z * lam))), 1e-9));

        // The j-twisted representative hits the same base point (the
        // antipodal point of the fiber sphere).
        const Eigen::VectorXcd zj = complex_coords(Quaternion::j() * x);
        CHECK(twistor_project(CPPoint(z)).approx_equal(
            twistor_project(CPPoint(zj)), 1e-9));

        // Round trip through the splitting is the identity on coordinates.
        const HVector back = hvector_from_complex(z);
        for (int j = 0; j < 3; ++j)
            CHECK((back[j] - x[j]).norm() == 0.0);
    }
}

TEST_CASE("phi_a basics") {
    const HMatrix id = HMatrix::identity(2);
    Rng rng(7);
    for (int k = 0; k < 10; ++k) {
        const HPPoint p(random_hvector(2, rng));
        CHECK(phi_a(id, p).approx_equal(p, 1e-12));
    }

    // Swap matrix on HP^1: [1 : x] -> [x : 1], i.e. inversion in the chart.
    HMatrix swap(2, 2);
    swap.at(0, 1) = Quaternion::one();
    swap.at(1, 0) = Quaternion::one();
    for (int k = 0; k < 10; ++k) {
        const Quaternion x = random_quaternion(rng);
        HVector rep(2);
        rep[0] = Quaternion::one();
        rep[1] = x;
        const HPPoint image = phi_a(swap, HPPoint(rep));
        const HVector chart = chart_coords(image);
        CHECK((chart[0] - inv(x)).norm() < 1e-12 * (1 + inv(x).norm()));
    }

    // A row of zeros kills the corresponding basis line.
    HMatrix sing(2, 2);
    sing.at(0, 0) = Quaternion::one();
    sing.at(0, 1) = Quaternion::i();
    CHECK_THROWS_AS((void)phi_a(sing, HPPoint(basis_row(2, 1))), Error);
    try {
        (void)phi_a(sing, HPPoint(basis_row(2, 1)));
    } catch (const Error& e) {
        CHECK(e.code() == Status::KernelPoint);
    }
}

TEST_CASE("phi_a is independent of the representative and functorial") {
    Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const HMatrix a = random_hmatrix(3, 2, rng);
        const HMatrix b = random_hmatrix(2, 2, rng);
        const HVector x = random_hvector(3, rng);
        const HPPoint p(x);
        const HPPoint q(random_quaternion(rng) * x);
        CHECK(phi_a(a, p).approx_equal(phi_a(a, q), 1e-9));

        // phi_B ∘ phi_A = phi_{A B}.
        const HPPoint lhs = phi_a(b, phi_a(a, p));
        const HPPoint rhs = phi_a(a * b, p);
        CHECK(lhs.approx_equal(rhs, 1e-9));
    }
}

TEST_CASE("big_phi_a commutes with the twistor projection") {
    Rng rng(13);
    for (int k = 0; k < 25; ++k) {
        const HMatrix a = random_hmatrix(2, 3, rng);
        Eigen::VectorXcd z(4);
        for (int i = 0; i < 4; ++i)
            z[i] = {gauss(rng), gauss(rng)};
        const CPPoint zp(z);

        const HPPoint lhs = twistor_project(big_phi_a(a, zp));
        const HPPoint rhs = phi_a(a, twistor_project(zp));
        CHECK(lhs.approx_equal(rhs, 1e-10));

        // Complex linearity: lambda z maps to the same CP point.
        const std::complex<double> lam(gauss(rng), gauss(rng));
        CHECK(big_phi_a(a, zp).approx_equal(
            big_phi_a(a, CPPoint(Eigen::VectorXcd(z * lam))), 1e-9));
    }

    CHECK(big_phi_a(HMatrix::identity(2), CPPoint(Eigen::VectorXcd::Ones(4)))
              .approx_equal(CPPoint(Eigen::VectorXcd::Ones(4)), 1e-12));
}

TEST_CASE("complex form realizes right multiplication") {
    Rng rng(17);
    for (int k = 0; k < 20; ++k) {
        const HMatrix a = random_hmatrix(2, 3, rng);
        const HVector x = random_hvector(2, rng);
        const Eigen::VectorXcd via_complex =
            complex_form(a).transpose() * complex_coords(x);
        const Eigen::VectorXcd direct = complex_coords(x * a);
        CHECK((via_complex - direct).norm() < 1e-12 * (1 + direct.norm()));
    }
}

TEST_CASE("affine_eval") {
    // Identity coefficients: y = x.
    const HMatrix id = HMatrix::identity(3);
    Rng rng(19);
    for (int k = 0; k < 10; ++k) {
        const HVector x = random_hvector(2, rng);
        const HVector y = affine_eval(id, x);
        for (int j = 0; j < 2; ++j)
            CHECK((y[j] - x[j]).norm() < 1e-13 * (1 + x.norm()));
    }

    // Swap coefficients on m = n = 1: y = x^{-1}.
    HMatrix swap(2, 2);
    swap.at(0, 1) = Quaternion::one();
    swap.at(1, 0) = Quaternion::one();
    for (int k = 0; k < 10; ++k) {
        HVector x(1);
        x[0] = random_quaternion(rng);
        const HVector y = affine_eval(swap, x);
        CHECK((y[0] - inv(x[0])).norm() < 1e-12 * (1 + inv(x[0]).norm()));
    }

    // Pole: denominator vanishes at x = 0 for the swap coefficients.
    HVector zero(1);
    CHECK_THROWS_AS((void)affine_eval(swap, zero), Error);

    // Chart consistency against the projective route on random coefficients.
    for (int k = 0; k < 100; ++k) {
        const HMatrix a = random_hmatrix(3, 3, rng);
        const HVector x = random_hvector(2, rng);
        HVector rep(3);
        rep[0] = Quaternion::one();
        rep[1] = x[0];
        rep[2] = x[1];
        const HPPoint image = phi_a(a, HPPoint(rep));
        if (image.pivot() != 0)
            continue;
        const HVector via_chart = chart_coords(image);
        const HVector direct = affine_eval(a, x);
        double diff = 0;
        for (int j = 0; j < 2; ++j)
            diff = std::max(diff, (via_chart[j] - direct[j]).norm());
        CHECK(diff < 1e-9 * (1 + via_chart.norm()));
    }
}

TEST_CASE("recover_matrix round trip") {
    Rng rng(23);
    for (const auto& [m, n] : {std::pair{1, 1}, {1, 2}, {2, 2}}) {
        const HMatrix a = random_hmatrix(m + 1, n + 1, rng);
        const ProjectiveSample s = sample_from_matrix(a, 2 * (m + 1) * (n + 1), rng);
        const Recovery r = recover_matrix(s, m, n);
        CHECK(r.residual < 1e-8);
        CHECK(r.second_singular > 1e-3);

        // Cosine similarity against the true matrix up to real scale.
        Eigen::VectorXd va(4 * (m + 1) * (n + 1)), vr(va.size());
        for (int i = 0; i < static_cast<int>(a.a.size()); ++i)
            for (int c = 0; c < 4; ++c) {
                va[4 * i + c] = a.a[static_cast<size_t>(i)].component(c);
                vr[4 * i + c] = r.A.a[static_cast<size_t>(i)].component(c);
            }
        const double cosine = std::fabs(va.normalized().dot(vr.normalized()));
        CHECK(cosine > 1 - 1e-8);

        // Fresh points reproduce the map.
        for (int k = 0; k < 20; ++k) {
            HVector x(m + 1);
            x[0] = Quaternion::one();
            for (int j = 1; j <= m; ++j)
                x[j] = random_quaternion(rng);
            const HPPoint expect = phi_a(a, HPPoint(x));
            const HPPoint got = phi_a(r.A, HPPoint(x));
            CHECK(got.approx_equal(expect, 1e-8));
        }
    }
}

TEST_CASE("recover_matrix from the identity map") {
    Rng rng(29);
    const HMatrix id = HMatrix::identity(2);
    const ProjectiveSample s = sample_from_matrix(id, 8, rng);
    const Recovery r = recover_matrix(s, 1, 1);
    // Result is a real multiple of the identity with Frobenius norm one.
    const double diag = r.A.at(0, 0).w;
    CHECK(std::fabs(std::fabs(diag) - 1 / std::sqrt(2.0)) < 1e-9);
    CHECK((r.A.at(0, 0) - r.A.at(1, 1)).norm() < 1e-9);
    CHECK(r.A.at(0, 1).norm() < 1e-9);
    CHECK(r.A.at(1, 0).norm() < 1e-9);
}

TEST_CASE("recover_matrix rejects non-quaternionic data") {
    Rng rng(31);
    ProjectiveSample s;
    for (int k = 0; k < 8; ++k) {
        HVector x(2), y(2);
        x[0] = Quaternion::one();
        x[1] = random_quaternion(rng);
        y[0] = Quaternion::one();
        y[1] = x[1].conj();
        s.pairs.emplace_back(x, y);
    }
    CHECK_THROWS_AS((void)recover_matrix(s, 1, 1), Error);
    try {
        (void)recover_matrix(s, 1, 1);
    } catch (const Error& e) {
        CHECK(e.code() == Status::InconsistentSamples);
    }
}

TEST_CASE("recover_matrix input gates") {
    Rng rng(37);
    const HMatrix a = random_hmatrix(2, 2, rng);
    ProjectiveSample s = sample_from_matrix(a, 3, rng);
    CHECK_THROWS_AS((void)recover_matrix(s, 1, 1), Error);
    try {
        (void)recover_matrix(s, 1, 1);
    } catch (const Error& e) {
        CHECK(e.code() == Status::InsufficientSamples);
    }

    // Degenerate data: every sample at the same source point.
    ProjectiveSample dup;
    const auto pair = sample_from_matrix(a, 1, rng).pairs[0];
    for (int k = 0; k < 8; ++k)
        dup.pairs.push_back(pair);
    CHECK_THROWS_AS((void)recover_matrix(dup, 1, 1), Error);
    try {
        (void)recover_matrix(dup, 1, 1);
    } catch (const Error& e) {
        CHECK(e.code() == Status::AmbiguousRecovery);
    }
}

TEST_CASE("only real rescalings preserve the sample relation") {
    // Brute-force gauge check behind the AmbiguousRecovery threshold: right
    // multiplication of A by a non-real unit quaternion changes the map.
    Rng rng(41);
    const HMatrix a = random_hmatrix(2, 2, rng);
    const HMatrix a_scaled = a * 2.5; // real scaling: same projective map
    HMatrix a_twisted = a;
    const Quaternion u = random_unit_quaternion(rng).value();
    for (auto& q : a_twisted.a)
        q = q * u;

    int scaled_equal = 0, twisted_equal = 0;
    for (int k = 0; k < 32; ++k) {
        HVector x(2);
        x[0] = Quaternion::one();
        x[1] = random_quaternion(rng);
        const HPPoint base = phi_a(a, HPPoint(x));
        if (phi_a(a_scaled, HPPoint(x)).approx_equal(base, 1e-9))
            ++scaled_equal;
        if (phi_a(a_twisted, HPPoint(x)).approx_equal(base, 1e-9))
            ++twisted_equal;
    }
    CHECK(scaled_equal == 32);
    CHECK(twisted_equal == 0);
}

TEST_CASE("maps_quaternionic_lines") {
    Rng rng(43);

    // Complex forms of right quaternion-matrix multiplication pass, and the
    // real-form cross check agrees.
    for (int k = 0; k < 10; ++k) {
        const HMatrix a = random_hmatrix(2, 2, rng);
        const LinesCheckReport rep =
            maps_quaternionic_lines(complex_form(a), 64, 1e-8, 17 + k);
        CHECK(rep.maps_lines);
        CHECK(rep.cross_check);
        CHECK(rep.failures == 0);
    }

    // Generic complex matrices of full rank fail.
    for (int k = 0; k < 10; ++k) {
        Eigen::MatrixXcd b(4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                b(r, c) = {gauss(rng), gauss(rng)};
        const LinesCheckReport rep = maps_quaternionic_lines(b, 64, 1e-8, 19 + k);
        CHECK_FALSE(rep.maps_lines);
    }

    // Rank gate.
    Eigen::MatrixXcd low = Eigen::MatrixXcd::Zero(4, 4);
    low(0, 0) = 1.0;
    low(1, 1) = 1.0;
    CHECK_THROWS_AS((void)maps_quaternionic_lines(low, 16, 1e-8, 3), Error);
    try {
        (void)maps_quaternionic_lines(low, 16, 1e-8, 3);
    } catch (const Error& e) {
        CHECK(e.code() == Status::RankTooLow);
    }
}

TEST_CASE("real_form matches the quaternion evaluation") {
    Rng rng(47);
    const HMatrix a = random_hmatrix(2, 2, rng);
    const RealLinearMap t = real_form(complex_form(a));
    CHECK((t.matrix() - embed(a).matrix()).norm() < 1e-12 * (1 + embed(a).frobenius()));
}

TEST_CASE("hopf fibration") {
    const HVector e1 = basis_row(3, 0);
    CHECK(hopf(e1).approx_equal(HPPoint(e1), 1e-15));

    Rng rng(53);
    for (int k = 0; k < 25; ++k) {
        const HVector x = random_hvector(3, rng);
        const UnitQuaternion q = random_unit_quaternion(rng);
        CHECK(hopf(x).approx_equal(hopf(q.value() * x), 1e-10));
    }

    // Chart coordinates of hopf((1, p)) are p.
    for (int k = 0; k < 10; ++k) {
        HVector x(2);
        x[0] = Quaternion::one();
        x[1] = random_quaternion(rng);
        const HVector chart = chart_coords(hopf(x));
        CHECK((chart[0] - x[1]).norm() < 1e-13 * (1 + x.norm()));
    }

    CHECK_THROWS_AS((void)hopf(HVector(2)), Error);
    try {
        (void)hopf(HVector(2));
    } catch (const Error& e) {
        CHECK(e.code() == Status::ZeroVector);
    }
}

TEST_CASE("nonconstant recovered maps have differential rank at least four") {
    Rng rng(59);
    const HMatrix a = random_hmatrix(2, 2, rng);
    const ProjectiveSample s = sample_from_matrix(a, 8, rng);
    const Recovery r = recover_matrix(s, 1, 1);

    // Chart map of phi_A as a smooth evaluator; rank via finite differences.
    SmoothMap chart_map;
    chart_map.m = 1;
    chart_map.n = 1;
    chart_map.eval = [A = r.A](const Eigen::VectorXd& xc) {
        HVector x(1);
        x[0] = {xc[0], xc[1], xc[2], xc[3]};
        return real_coords(affine_eval(A, x));
    };
    int checked = 0;
    for (int k = 0; k < 100; ++k) {
        Eigen::VectorXd xc(4);
        for (int i = 0; i < 4; ++i)
            xc[i] = gauss(rng);
        HVector probe(2);
        probe[0] = Quaternion::one();
        probe[1] = {xc[0], xc[1], xc[2], xc[3]};
        const HVector denom = probe * r.A;
        if (denom[0].norm() < 0.2)
            continue; // keep away from the pole for the finite differences
        const RealLinearMap jac = differential_fd(chart_map, xc);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac.matrix());
        int rank = 0;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()[i] > 1e-6 * svd.singularValues()[0])
                ++rank;
        CHECK(rank >= 4);
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("global maps with m > n cannot be injective (kernel in hull)") {
    Rng rng(61);
    int degenerate_outcomes = 0;
    const int trials = 10;
    for (int k = 0; k < trials; ++k) {
        // m = 2 > n = 1: a nontrivial kernel is forced by dimensions.  Draw
        // matrices whose kernel line sits at moderate chart coordinates so a
        // globally spread sample hull provably covers it.
        HMatrix a(3, 2);
        std::optional<HVector> kern;
        do {
            a = random_hmatrix(3, 2, rng);
            kern = kernel_chart_point(a);
        } while (!kern || kern->norm() > 2.5);

        ProjectiveSample s;
        try {
            s = sample_from_matrix(a, 16, rng, 2.0); // globally spread
            // Corner samples make the hull provably cover the kernel line.
            for (double sign : {3.0, -3.0}) {
                for (;;) {
                    HVector x(3);
                    x[0] = Quaternion::one();
                    x[1] = Quaternion{sign, sign, sign, sign};
                    x[2] = x[1];
                    const HVector y = x * a;
                    if (y[0].norm() > 1e-2 * y.norm()) {
                        s.pairs.emplace_back(x, y);
                        break;
                    }
                    sign *= 1.05;
                }
            }
            const Recovery r = recover_matrix(s, 2, 1);
            CHECK(h_kernel_dimension(r.A) >= 4);
            const std::optional<HVector> krec = kernel_chart_point(r.A);
            REQUIRE(krec.has_value());
            // In-hull: the kernel's chart coordinates lie inside the bounding
            // box of the sampled chart coordinates.
            Eigen::VectorXd lo = Eigen::VectorXd::Constant(8, 1e30);
            Eigen::VectorXd hi = Eigen::VectorXd::Constant(8, -1e30);
            for (const auto& [x, y] : s.pairs) {
                const Eigen::VectorXd c = real_coords(chart_coords(HPPoint(x)));
                lo = lo.cwiseMin(c);
                hi = hi.cwiseMax(c);
            }
            const Eigen::VectorXd kc = real_coords(*krec);
            bool inside = true;
            for (int i = 0; i < 8; ++i)
                inside = inside && kc[i] >= lo[i] - 1e-9 && kc[i] <= hi[i] + 1e-9;
            CHECK(inside);
            if (inside)
                ++degenerate_outcomes;
        } catch (const Error& e) {
            const bool expected = e.code() == Status::InconsistentSamples ||
                                  e.code() == Status::AmbiguousRecovery;
            CHECK(expected);
            if (expected)
                ++degenerate_outcomes;
        }
    }
    CHECK(degenerate_outcomes == trials);
}

TEST_CASE("injective recoveries keep a singular-value margin") {
    Rng rng(67);
    for (const auto& [m, n] : {std::pair{1, 1}, {1, 2}, {2, 2}}) {
        const HMatrix a = random_hmatrix(m + 1, n + 1, rng);
        const ProjectiveSample s = sample_from_matrix(a, 2 * (m + 1) * (n + 1), rng);
        const Recovery r = recover_matrix(s, m, n);
        const auto [smin, smax] = h_singular_range(r.A);
        CHECK(smin > 1e-6);
        CHECK(smax >= smin);
    }
}
