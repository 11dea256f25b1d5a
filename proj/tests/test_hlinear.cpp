#include <doctest.h>

#include <Eigen/SVD>

#include "core/hlinear.hpp"

using namespace qtw;

TEST_CASE("left_mult_operator basics") {
    CHECK((left_mult_operator(Quaternion::one(), 3).matrix() -
           Eigen::MatrixXd::Identity(12, 12))
              .norm() < 1e-15);

    // Every row of the m=1 block is mul(i, basis vector), the stated oracle.
    const RealLinearMap li = left_mult_operator(Quaternion::i(), 1);
    const Quaternion basis[4] = {Quaternion::one(), Quaternion::i(), Quaternion::j(),
                                 Quaternion::k()};
    for (int r = 0; r < 4; ++r) {
        const Quaternion img = Quaternion::i() * basis[r];
        const double expect[4] = {img.w, img.x, img.y, img.z};
        for (int c = 0; c < 4; ++c)
            CHECK(li.matrix()(r, c) == doctest::Approx(expect[c]).epsilon(1e-14));
    }
    // Frozen from the oracle: (w,x,y,z) -> (-x, w, -z, y).
    Eigen::VectorXd v(4);
    v << 1, 2, 3, 4;
    const Eigen::VectorXd img = li.apply(v);
    CHECK(img(0) == doctest::Approx(-2.0));
    CHECK(img(1) == doctest::Approx(1.0));
    CHECK(img(2) == doctest::Approx(-4.0));
    CHECK(img(3) == doctest::Approx(3.0));
}

TEST_CASE("left multiplication composes like the product") {
    for (int m : {1, 2, 3}) {
        const RealLinearMap li = left_mult_operator(Quaternion::i(), m);
        const RealLinearMap lj = left_mult_operator(Quaternion::j(), m);
        const RealLinearMap lk = left_mult_operator(Quaternion::k(), m);
        // L_i ∘ L_j applies L_j first.
        CHECK((lj.then(li).matrix() - lk.matrix()).norm() < 1e-14);
    }
    Rng rng(1);
    for (int k = 0; k < 50; ++k) {
        const Quaternion p = random_quaternion(rng), q = random_quaternion(rng);
        const RealLinearMap lhs = left_mult_operator(p, 2).then(left_mult_operator(q, 2));
        const RealLinearMap rhs = left_mult_operator(q * p, 2);
        CHECK((lhs.matrix() - rhs.matrix()).norm() <
              1e-13 * (1 + rhs.matrix().norm()));
    }
}

TEST_CASE("embed basics") {
    CHECK((embed(HMatrix::identity(2)).matrix() - Eigen::MatrixXd::Identity(8, 8))
              .norm() < 1e-15);

    // 1x1 matrix [[j]]: rows are basis * j.
    HMatrix a(1, 1);
    a.at(0, 0) = Quaternion::j();
    const RealLinearMap t = embed(a);
    const Quaternion basis[4] = {Quaternion::one(), Quaternion::i(), Quaternion::j(),
                                 Quaternion::k()};
    for (int r = 0; r < 4; ++r) {
        const Quaternion img = basis[r] * Quaternion::j();
        const double expect[4] = {img.w, img.x, img.y, img.z};
        for (int c = 0; c < 4; ++c)
            CHECK(t.matrix()(r, c) == doctest::Approx(expect[c]).epsilon(1e-14));
    }
}

TEST_CASE("embed is functorial and commutes with left multiplication") {
    Rng rng(2);
    for (int k = 0; k < 30; ++k) {
        const HMatrix a = random_hmatrix(2, 3, rng);
        const HMatrix b = random_hmatrix(3, 2, rng);
        const RealLinearMap lhs = embed(a).then(embed(b));
        const RealLinearMap rhs = embed(a * b);
        CHECK((lhs.matrix() - rhs.matrix()).norm() < 1e-12 * (1 + rhs.frobenius()));

        const Quaternion q = random_quaternion(rng);
        const RealLinearMap c1 = left_mult_operator(q, 2).then(embed(a));
        const RealLinearMap c2 = embed(a).then(left_mult_operator(q, 3));
        CHECK((c1.matrix() - c2.matrix()).norm() < 1e-12 * (1 + embed(a).frobenius()));
    }
}

TEST_CASE("embed agrees with direct quaternion evaluation") {
    Rng rng(3);
    for (int k = 0; k < 30; ++k) {
        const HMatrix a = random_hmatrix(3, 2, rng);
        const HVector x = random_hvector(3, rng);
        const HVector via_map = embed(a).apply(x);
        const HVector direct = x * a;
        for (int j = 0; j < 2; ++j)
            CHECK((via_map[j] - direct[j]).norm() < 1e-12 * (1 + direct.norm()));
    }
}

TEST_CASE("extract_hmatrix round trip is exact") {
    Rng rng(4);
    for (int k = 0; k < 30; ++k) {
        const HMatrix a = random_hmatrix(2, 3, rng);
        const HMatrix back = extract_hmatrix(embed(a));
        for (size_t i = 0; i < a.a.size(); ++i)
            CHECK((a.a[i] - back.a[i]).norm() <= 1e-13 * (1 + a.frobenius()));
    }
}

TEST_CASE("extract_hmatrix rejects maps that are not H-linear") {
    // L_i on H^1 fails: it does not commute with L_j.
    const RealLinearMap li = left_mult_operator(Quaternion::i(), 1);
    CHECK_THROWS_AS((void)extract_hmatrix(li), Error);
    try {
        (void)extract_hmatrix(li);
    } catch (const Error& e) {
        CHECK(e.code() == Status::NotHLinear);
    }
    CHECK_FALSE(is_hlinear(li));
    CHECK_FALSE(is_hlinear(left_mult_operator(Quaternion::j(), 1)));

    CHECK(is_hlinear(RealLinearMap(2, 3))); // zero map commutes with everything
    CHECK(is_hlinear(RealLinearMap::identity(2)));
}

TEST_CASE("H-linearity matches commutation with random imaginary directions") {
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        const bool make_linear = k % 2 == 0;
        RealLinearMap t(2, 2);
        if (make_linear) {
            t = embed(random_hmatrix(2, 2, rng));
        } else {
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c)
                    t.matrix()(r, c) = gauss(rng);
        }
        double worst = 0;
        for (int s = 0; s < 8; ++s) {
            const Quaternion q = random_imaginary_unit(rng).value();
            const RealLinearMap comm =
                left_mult_operator(q, 2).then(t) - t.then(left_mult_operator(q, 2));
            worst = std::max(worst, comm.frobenius() / std::max(t.frobenius(), 1e-300));
        }
        CHECK(is_hlinear(t) == (worst < 1e-9));
    }
}

TEST_CASE("space of H-linear maps has real dimension 4mn") {
    // Rank oracle: stack the three commutator constraints on Hom(R^4m, R^4n)
    // and count the nullity.
    for (int m : {1, 2, 3}) {
        for (int n : {1, 2}) {
            const int dim = 16 * m * n;
            Eigen::MatrixXd sys(3 * dim, dim);
            int block = 0;
            for (const Quaternion q :
                 {Quaternion::i(), Quaternion::j(), Quaternion::k()}) {
                const Eigen::MatrixXd lq_m = left_mult_operator(q, m).matrix();
                const Eigen::MatrixXd lq_n = left_mult_operator(q, n).matrix();
                for (int idx = 0; idx < dim; ++idx) {
                    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(4 * m, 4 * n);
                    e(idx / (4 * n), idx % (4 * n)) = 1.0;
                    const Eigen::MatrixXd comm = lq_m * e - e * lq_n;
                    for (int r = 0; r < 4 * m; ++r)
                        for (int c = 0; c < 4 * n; ++c)
                            sys(block * dim + r * 4 * n + c, idx) = comm(r, c);
                }
                ++block;
            }
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys);
            const auto& sv = svd.singularValues();
            int rank = 0;
            for (Eigen::Index i = 0; i < sv.size(); ++i)
                if (sv[i] > 1e-9 * sv[0])
                    ++rank;
            CHECK(dim - rank == 4 * m * n);
        }
    }
}
