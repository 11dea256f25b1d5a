#include "projective.hpp"

#include <Eigen/SVD>

namespace qtw {

namespace {

constexpr double kPivotEps = 1e-8;

int find_pivot(const HVector& x) {
    const double scale = x.norm();
    if (scale == 0.0)
        fail(Status::ZeroVector, "projective point needs a nonzero representative");
    for (int j = 0; j < x.size(); ++j)
        if (x[j].norm() > kPivotEps * scale)
            return j;
    fail(Status::ZeroVector, "no usable pivot entry");
}

// Column-convention 4x4 matrices used by the recovery system.
Eigen::Matrix4d lmat(const Quaternion& q) { return left_block(q).transpose(); }
Eigen::Matrix4d rmat(const Quaternion& q) { return right_block(q).transpose(); }

} // namespace

HPPoint::HPPoint(const HVector& raw) {
    pivot_ = find_pivot(raw);
    rep_ = inv(raw[pivot_]) * raw;
    rep_[pivot_] = Quaternion::one(); // exact after left division
}

bool HPPoint::approx_equal(const HPPoint& o, double tol) const {
    if (rep_.size() != o.rep_.size() || pivot_ != o.pivot_)
        return false;
    for (int j = 0; j < rep_.size(); ++j)
        if ((rep_[j] - o.rep_[j]).norm() > tol)
            return false;
    return true;
}

CPPoint::CPPoint(const Eigen::VectorXcd& raw) {
    const double scale = raw.norm();
    if (scale == 0.0)
        fail(Status::ZeroVector, "projective point needs a nonzero representative");
    Eigen::Index pivot = -1;
    for (Eigen::Index j = 0; j < raw.size(); ++j)
        if (std::abs(raw[j]) > kPivotEps * scale) {
            pivot = j;
            break;
        }
    rep_ = raw / raw[pivot];
    rep_[pivot] = 1.0;
}

bool CPPoint::approx_equal(const CPPoint& o, double tol) const {
    if (rep_.size() != o.rep_.size())
        return false;
    return (rep_ - o.rep_).norm() <= tol;
}

Eigen::VectorXcd complex_coords(const HVector& x) {
    Eigen::VectorXcd z(2 * x.size());
    for (int j = 0; j < x.size(); ++j) {
        z[2 * j] = {x[j].w, x[j].x};
        z[2 * j + 1] = {x[j].y, x[j].z};
    }
    return z;
}

HVector hvector_from_complex(const Eigen::VectorXcd& z) {
    if (z.size() % 2 != 0)
        fail(Status::InvalidArgument, "complex coordinate vector must have even length");
    HVector x(static_cast<int>(z.size() / 2));
    for (int j = 0; j < x.size(); ++j)
        x[j] = {z[2 * j].real(), z[2 * j].imag(), z[2 * j + 1].real(),
                z[2 * j + 1].imag()};
    return x;
}

HPPoint twistor_project(const CPPoint& z) {
    return HPPoint(hvector_from_complex(z.rep()));
}

HPPoint phi_a(const HMatrix& a, const HPPoint& x, double tol) {
    const HVector image = x.rep() * a;
    const double scale = x.rep().norm() * a.frobenius();
    if (image.norm() < tol * scale)
        fail(Status::KernelPoint, "point lies in the projectivized kernel");
    return HPPoint(image);
}

Eigen::MatrixXcd complex_form(const HMatrix& a) {
    Eigen::MatrixXcd b(2 * a.rows, 2 * a.cols);
    for (int j = 0; j < a.rows; ++j)
        for (int c = 0; c < a.cols; ++c) {
            const Quaternion& q = a.at(j, c);
            const std::complex<double> a1{q.w, q.x}, a2{q.y, q.z};
            // (z1, z2) -> (z1 a1 - z2 conj(a2), z1 a2 + z2 conj(a1))
            b(2 * j, 2 * c) = a1;
            b(2 * j, 2 * c + 1) = a2;
            b(2 * j + 1, 2 * c) = -std::conj(a2);
            b(2 * j + 1, 2 * c + 1) = std::conj(a1);
        }
    return b;
}

RealLinearMap real_form(const Eigen::MatrixXcd& b) {
    if (b.rows() % 2 != 0 || b.cols() % 2 != 0)
        fail(Status::InvalidArgument, "complex matrix dimensions must be even");
    const int m = static_cast<int>(b.rows() / 2);
    const int n = static_cast<int>(b.cols() / 2);
    RealLinearMap t(m, n);
    for (int r = 0; r < 4 * m; ++r) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(4 * m);
        e[r] = 1.0;
        const Eigen::VectorXcd img =
            b.transpose() * complex_coords(hvector_from_coords(e));
        t.matrix().row(r) = real_coords(hvector_from_complex(img)).transpose();
    }
    return t;
}

CPPoint big_phi_a(const HMatrix& a, const CPPoint& z, double tol) {
    const Eigen::MatrixXcd b = complex_form(a);
    const Eigen::VectorXcd image = b.transpose() * z.rep();
    if (image.norm() < tol * z.rep().norm() * b.norm())
        fail(Status::KernelPoint, "point lies in the projectivized kernel");
    return CPPoint(image);
}

HVector chart_coords(const HPPoint& x) {
    if (x.pivot() != 0)
        fail(Status::InvalidArgument, "point lies outside the affine chart");
    HVector coords(x.ambient() - 1);
    for (int j = 1; j < x.ambient(); ++j)
        coords[j - 1] = x.rep()[j];
    return coords;
}

HPPoint from_chart(const HVector& x) {
    HVector rep(x.size() + 1);
    rep[0] = Quaternion::one();
    for (int j = 0; j < x.size(); ++j)
        rep[j + 1] = x[j];
    return HPPoint(rep);
}

HVector affine_eval(const HMatrix& coeffs, const HVector& x, double tol) {
    const int m = coeffs.rows - 1, n = coeffs.cols - 1;
    if (x.size() != m)
        fail(Status::InvalidArgument, "affine point dimension mismatch");
    HVector homog(m + 1);
    homog[0] = Quaternion::one();
    for (int j = 0; j < m; ++j)
        homog[j + 1] = x[j];
    const HVector image = homog * coeffs;
    const double scale = homog.norm() * coeffs.frobenius();
    if (image[0].norm() < tol * scale)
        fail(Status::PoleError, "affine denominator vanishes");
    const Quaternion d = inv(image[0]);
    HVector y(n);
    for (int b = 0; b < n; ++b)
        y[b] = d * image[b + 1];
    return y;
}

Recovery recover_matrix(const ProjectiveSample& samples, int m, int n, double tol,
                        double gauge_tol) {
    const int unknowns = 4 * (m + 1) * (n + 1);
    const int needed = (m + 1) * (n + 1);
    if (static_cast<int>(samples.pairs.size()) < needed)
        fail(Status::InsufficientSamples,
             "need at least " + std::to_string(needed) + " samples");

    std::vector<HVector> xs, ys;
    for (const auto& [xr, yr] : samples.pairs) {
        if (xr.size() != m + 1 || yr.size() != n + 1)
            fail(Status::InvalidArgument, "sample dimensions disagree with (m, n)");
        const HPPoint px(xr), py(yr);
        if (px.pivot() != 0 || py.pivot() != 0)
            fail(Status::InvalidArgument, "samples must lie in the first affine chart");
        xs.push_back(px.rep());
        ys.push_back(py.rep());
    }

    // Unknown ordering: quaternion (j, alpha) occupies columns 4(j(n+1)+alpha)..+3.
    const int rows = 4 * n * static_cast<int>(xs.size());
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(rows, unknowns);
    int row = 0;
    for (size_t s = 0; s < xs.size(); ++s) {
        for (int alpha = 1; alpha <= n; ++alpha) {
            for (int j = 0; j <= m; ++j) {
                const int col0 = 4 * (j * (n + 1));
                const int cola = 4 * (j * (n + 1) + alpha);
                // + x_j a^j_0 y_alpha  - x_j a^j_alpha = 0
                sys.block<4, 4>(row, col0) += lmat(xs[s][j]) * rmat(ys[s][alpha]);
                sys.block<4, 4>(row, cola) -= lmat(xs[s][j]);
            }
            row += 4;
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double sigma2 = sv[sv.size() - 2];
    if (sigma2 < gauge_tol)
        fail(Status::AmbiguousRecovery,
             "recovery is gauge- or data-degenerate (sigma2 " +
                 std::to_string(sigma2) + ")");
    const Eigen::VectorXd sol = svd.matrixV().col(unknowns - 1);

    HMatrix a(m + 1, n + 1);
    for (int j = 0; j <= m; ++j)
        for (int alpha = 0; alpha <= n; ++alpha) {
            const int base = 4 * (j * (n + 1) + alpha);
            a.at(j, alpha) = {sol[base], sol[base + 1], sol[base + 2], sol[base + 3]};
        }

    // Frobenius norm is 1 already (unit singular vector); fix the sign by the
    // first entry whose norm is appreciable.
    double lead = 0;
    for (const Quaternion& q : a.a) {
        if (q.norm() <= kPivotEps)
            continue;
        for (int c = 0; c < 4 && lead == 0; ++c)
            if (std::fabs(q.component(c)) > kPivotEps)
                lead = q.component(c);
        break;
    }
    if (lead < 0)
        a = -a;

    double residual = 0;
    for (size_t s = 0; s < xs.size(); ++s) {
        const HPPoint image = phi_a(a, HPPoint(xs[s]));
        const HPPoint expect(ys[s]);
        double d = 0;
        if (image.pivot() == expect.pivot()) {
            for (int j = 0; j <= n; ++j)
                d = std::max(d, (image.rep()[j] - expect.rep()[j]).norm());
        } else {
            d = 1.0;
        }
        residual = std::max(residual, d);
    }
    if (residual > tol)
        fail(Status::InconsistentSamples,
             "no quaternionic matrix reproduces the samples (residual " +
                 std::to_string(residual) + ")");
    return {a, residual, sigma2};
}

LinesCheckReport maps_quaternionic_lines(const Eigen::MatrixXcd& b, int trials,
                                         double tol, uint64_t seed) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > 1e-10 * sv[0])
            ++rank;
    if (rank < 4)
        fail(Status::RankTooLow, "complex rank below 4");

    LinesCheckReport rep;
    rep.trials = trials;
    Rng rng(seed);
    const int m1 = static_cast<int>(b.rows() / 2);
    for (int i = 0; i < trials; ++i) {
        const HVector x = random_hvector(m1, rng);
        const UnitQuaternion q = random_unit_quaternion(rng);

        const Eigen::VectorXcd w = b.transpose() * complex_coords(x);
        if (w.norm() < 1e-10 * x.norm() * b.norm())
            continue; // probe hit the kernel; draw again next round
        const Eigen::VectorXcd wq = b.transpose() * complex_coords(q.value() * x);

        // Quaternionic line through the image: span_C{Y, jY}.
        const HVector y = hvector_from_complex(w);
        Eigen::MatrixXcd span(w.size(), 2);
        span.col(0) = complex_coords(y);
        span.col(1) = complex_coords(Quaternion::j() * y);
        const Eigen::MatrixXcd qmat = Eigen::HouseholderQR<Eigen::MatrixXcd>(span)
                                          .householderQ() *
                                      Eigen::MatrixXcd::Identity(w.size(), 2);
        const Eigen::VectorXcd proj = qmat * (qmat.adjoint() * wq);
        const double res = (wq - proj).norm() / wq.norm();
        rep.max_containment_residual = std::max(rep.max_containment_residual, res);
        if (res > tol)
            ++rep.failures;
    }
    rep.maps_lines = rep.failures == 0;
    if (rep.maps_lines)
        rep.cross_check = is_quaternionic(real_form(b), 1e-7);
    return rep;
}

HPPoint hopf(const HVector& x) {
    return HPPoint(x);
}

std::pair<double, double> h_singular_range(const HMatrix& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(embed(a).matrix());
    const auto& sv = svd.singularValues();
    return {sv[sv.size() - 1], sv[0]};
}

int h_kernel_dimension(const HMatrix& a, double rank_tol) {
    // Left null space of the row-convention matrix.
    const Eigen::MatrixXd m = embed(a).matrix();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > rank_tol * sv[0])
            ++rank;
    return static_cast<int>(m.rows()) - rank;
}

std::optional<HVector> kernel_chart_point(const HMatrix& a, double rank_tol) {
    const Eigen::MatrixXd m = embed(a).matrix();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > rank_tol * sv[0])
            ++rank;
    if (rank >= m.rows())
        return std::nullopt;
    // Null vectors of x -> x M span a left H-submodule; any of them represents
    // a kernel line.  Prefer one with a usable chart-0 pivot.
    for (Eigen::Index col = rank; col < m.rows(); ++col) {
        const HVector x = hvector_from_coords(svd.matrixU().col(col));
        const HPPoint p(x);
        if (p.pivot() == 0)
            return chart_coords(p);
    }
    return std::nullopt;
}

} // namespace qtw
