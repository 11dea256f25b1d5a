#include "hlinear.hpp"

namespace qtw {

double HVector::norm() const {
    double s = 0;
    for (const auto& q : entries)
        s += q.norm_sq();
    return std::sqrt(s);
}

HMatrix HMatrix::identity(int n) {
    HMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        a.at(i, i) = Quaternion::one();
    return a;
}

HMatrix HMatrix::operator*(const HMatrix& o) const {
    if (cols != o.rows)
        fail(Status::InvalidArgument, "HMatrix product dimension mismatch");
    HMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Quaternion& aik = at(i, k);
            for (int j = 0; j < o.cols; ++j)
                r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
        }
    return r;
}

HMatrix HMatrix::operator*(double s) const {
    HMatrix r = *this;
    for (auto& q : r.a)
        q = q * s;
    return r;
}

HMatrix HMatrix::operator-() const { return *this * -1.0; }

double HMatrix::frobenius() const {
    double s = 0;
    for (const auto& q : a)
        s += q.norm_sq();
    return std::sqrt(s);
}

HVector operator*(const HVector& x, const HMatrix& a) {
    if (x.size() != a.rows)
        fail(Status::InvalidArgument, "HVector * HMatrix dimension mismatch");
    HVector y(a.cols);
    for (int j = 0; j < a.rows; ++j)
        for (int b = 0; b < a.cols; ++b)
            y[b] = y[b] + x[j] * a.at(j, b);
    return y;
}

HVector operator*(const Quaternion& q, const HVector& x) {
    HVector y(x.size());
    for (int j = 0; j < x.size(); ++j)
        y[j] = q * x[j];
    return y;
}

RealLinearMap::RealLinearMap(int m, int n, Eigen::MatrixXd mat)
    : m_(m), n_(n), mat_(std::move(mat)) {
    if (mat_.rows() != 4 * m || mat_.cols() != 4 * n)
        fail(Status::InvalidArgument, "RealLinearMap matrix must be 4m x 4n");
}

RealLinearMap RealLinearMap::identity(int m) {
    return RealLinearMap(m, m, Eigen::MatrixXd::Identity(4 * m, 4 * m));
}

RealLinearMap RealLinearMap::then(const RealLinearMap& g) const {
    if (n_ != g.m_)
        fail(Status::InvalidArgument, "composition dimension mismatch");
    return RealLinearMap(m_, g.n_, mat_ * g.mat_);
}

RealLinearMap RealLinearMap::operator+(const RealLinearMap& o) const {
    return RealLinearMap(m_, n_, mat_ + o.mat_);
}

RealLinearMap RealLinearMap::operator-(const RealLinearMap& o) const {
    return RealLinearMap(m_, n_, mat_ - o.mat_);
}

RealLinearMap RealLinearMap::operator*(double s) const {
    return RealLinearMap(m_, n_, mat_ * s);
}

Eigen::VectorXd RealLinearMap::apply(const Eigen::VectorXd& row) const {
    return mat_.transpose() * row;
}

HVector RealLinearMap::apply(const HVector& x) const {
    return hvector_from_coords(apply(real_coords(x)));
}

double RealLinearMap::op_norm_estimate() const {
    return mat_.cwiseAbs().rowwise().sum().maxCoeff();
}

Eigen::VectorXd real_coords(const HVector& x) {
    Eigen::VectorXd v(4 * x.size());
    for (int j = 0; j < x.size(); ++j) {
        v[4 * j + 0] = x[j].w;
        v[4 * j + 1] = x[j].x;
        v[4 * j + 2] = x[j].y;
        v[4 * j + 3] = x[j].z;
    }
    return v;
}

HVector hvector_from_coords(const Eigen::VectorXd& v) {
    if (v.size() % 4 != 0)
        fail(Status::InvalidArgument, "coordinate vector length must be a multiple of 4");
    HVector x(static_cast<int>(v.size() / 4));
    for (int j = 0; j < x.size(); ++j)
        x[j] = {v[4 * j + 0], v[4 * j + 1], v[4 * j + 2], v[4 * j + 3]};
    return x;
}

Eigen::Matrix4d left_block(const Quaternion& q) {
    const double a = q.w, b = q.x, c = q.y, d = q.z;
    Eigen::Matrix4d col; // coords(q*u) = col * coords(u)
    col << a, -b, -c, -d,
           b,  a, -d,  c,
           c,  d,  a, -b,
           d, -c,  b,  a;
    return col.transpose(); // row convention
}

Eigen::Matrix4d right_block(const Quaternion& q) {
    const double a = q.w, b = q.x, c = q.y, d = q.z;
    Eigen::Matrix4d col; // coords(u*q) = col * coords(u)
    col << a, -b, -c, -d,
           b,  a,  d, -c,
           c, -d,  a,  b,
           d,  c, -b,  a;
    return col.transpose();
}

RealLinearMap left_mult_operator(const Quaternion& q, int m) {
    if (m < 1)
        fail(Status::InvalidArgument, "left_mult_operator requires m >= 1");
    RealLinearMap t(m, m);
    const Eigen::Matrix4d b = left_block(q);
    for (int j = 0; j < m; ++j)
        t.matrix().block<4, 4>(4 * j, 4 * j) = b;
    return t;
}

RealLinearMap embed(const HMatrix& a) {
    RealLinearMap t(a.rows, a.cols);
    for (int j = 0; j < a.rows; ++j)
        for (int b = 0; b < a.cols; ++b)
            t.matrix().block<4, 4>(4 * j, 4 * b) = right_block(a.at(j, b));
    return t;
}

double hlinear_defect(const RealLinearMap& t) {
    const double scale = t.op_norm_estimate();
    if (scale == 0.0)
        return 0.0;
    const int m = t.source_dim(), n = t.target_dim();
    double worst = 0;
    for (const Quaternion q : {Quaternion::i(), Quaternion::j(), Quaternion::k()}) {
        const RealLinearMap lhs = left_mult_operator(q, m).then(t); // t ∘ L_q
        const RealLinearMap rhs = t.then(left_mult_operator(q, n)); // L_q ∘ t
        worst = std::max(worst, (lhs - rhs).frobenius());
    }
    return worst / scale;
}

bool is_hlinear(const RealLinearMap& t, double tol) {
    return hlinear_defect(t) <= tol;
}

HMatrix extract_hmatrix(const RealLinearMap& t, double tol) {
    const double defect = hlinear_defect(t);
    if (defect > tol)
        fail(Status::NotHLinear,
             "map does not commute with left multiplication (defect " +
                 std::to_string(defect) + ")");
    const int m = t.source_dim(), n = t.target_dim();
    HMatrix a(m, n);
    for (int j = 0; j < m; ++j) {
        // Row 4j of the matrix holds t(e_j), the image of the j-th basis row.
        for (int b = 0; b < n; ++b)
            a.at(j, b) = {t.matrix()(4 * j, 4 * b + 0), t.matrix()(4 * j, 4 * b + 1),
                          t.matrix()(4 * j, 4 * b + 2), t.matrix()(4 * j, 4 * b + 3)};
    }
    return a;
}

RealLinearMap scaled_right_mult(const Quaternion& a, const HMatrix& A) {
    return embed(A).then(left_mult_operator(a, A.cols));
}

HMatrix random_hmatrix(int m, int n, Rng& rng) {
    HMatrix a(m, n);
    for (auto& q : a.a)
        q = random_quaternion(rng);
    return a;
}

HVector random_hvector(int m, Rng& rng) {
    HVector x(m);
    for (auto& q : x.entries)
        q = random_quaternion(rng);
    return x;
}

} // namespace qtw
