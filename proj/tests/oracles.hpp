#pragma once
// Reference computations written independently of the library: permutations as arrays, 2x2 LU by formula,
// tensor contractions by explicit index loops.

#include <algorithm>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using M2 = Eigen::Matrix2cd;

// ---------------------------------------------------------------- S3 as permutations of {0,1,2}

using Perm = std::array<int, 3>;  // p[i] = image of i

inline Perm compose(const Perm& a, const Perm& b) {  // a after b
    return {a[b[0]], a[b[1]], a[b[2]]};
}

inline Perm inverse(const Perm& a) {
    Perm r{};
    for (int i = 0; i < 3; ++i) r[a[i]] = i;
    return r;
}

inline const std::vector<std::pair<std::string, Perm>>& s3_table() {
    static const std::vector<std::pair<std::string, Perm>> t = {
        {"e", {0, 1, 2}},    {"(12)", {1, 0, 2}},  {"(13)", {2, 1, 0}},
        {"(23)", {0, 2, 1}}, {"(123)", {1, 2, 0}}, {"(132)", {2, 0, 1}},
    };
    return t;
}

inline Perm perm(const std::string& name) {
    for (const auto& [n, p] : s3_table())
        if (n == name) return p;
    throw std::invalid_argument("no permutation " + name);
}

inline std::string name(const Perm& p) {
    for (const auto& [n, q] : s3_table())
        if (q == p) return n;
    throw std::logic_error("not a permutation");
}

inline std::vector<Perm> all_perms() {
    std::vector<Perm> out;
    for (const auto& [n, p] : s3_table()) out.push_back(p);
    return out;
}

inline bool is_even(const Perm& p) {
    int inv = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) inv += p[i] > p[j];
    return inv % 2 == 0;
}
inline bool in_plus(const Perm& p) { return is_even(p); }
inline bool in_minus(const Perm& p) { return p[2] == 2; }  // e and (12)

struct S3Split {
    Perm plus, minus;          // g = plus * minus^{-1}
    Perm bar_minus, bar_plus;  // g = bar_minus^{-1} * bar_plus
};

// Enumerates all products; throws unless each split is unique.
inline S3Split s3_factorize(const Perm& g) {
    std::vector<std::pair<Perm, Perm>> a, b;
    for (const auto& p : all_perms()) {
        if (!in_plus(p)) continue;
        for (const auto& m : all_perms()) {
            if (!in_minus(m)) continue;
            if (compose(p, inverse(m)) == g) a.push_back({p, m});
            if (compose(inverse(m), p) == g) b.push_back({m, p});
        }
    }
    if (a.size() != 1 || b.size() != 1) throw std::logic_error("factorization not unique");
    return {a[0].first, a[0].second, b[0].first, b[0].second};
}

inline Perm s3_star(const Perm& g, const Perm& h) {
    auto fg = s3_factorize(g), fh = s3_factorize(h);
    return compose(compose(fg.plus, fh.plus), inverse(compose(fg.minus, fh.minus)));
}

// i(g) = g_+^{-1} g_-
inline Perm s3_star_inv(const Perm& g) {
    auto f = s3_factorize(g);
    return compose(inverse(f.plus), f.minus);
}

// (a, b) = (x_- y x_-^{-1}, a_+^{-1} x a_+)
inline std::pair<Perm, Perm> s3_cross(const Perm& x, const Perm& y) {
    Perm xm = s3_factorize(x).minus;
    Perm a = compose(compose(xm, y), inverse(xm));
    Perm ap = s3_factorize(a).plus;
    return {a, compose(compose(inverse(ap), x), ap)};
}

// ---------------------------------------------------------------- SL(2) Gauss factorization by formula

struct SL2Split {
    M2 plus, minus, bar_minus, bar_plus;
};

// g = [[a, b], [c, d]] with d != 0 and a != 0.
inline SL2Split sl2_factorize(const M2& g) {
    const cplx a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    SL2Split s;
    // g g_- upper triangular forces g_- = [[1, 0], [-c/d, 1]]
    s.minus << 1.0, 0.0, -c / d, 1.0;
    s.plus << 1.0 / d, b, 0.0, d;
    // bar_minus g = bar_plus
    s.bar_minus << 1.0, 0.0, -c / a, 1.0;
    s.bar_plus << a, b, 0.0, 1.0 / a;
    return s;
}

inline M2 inv2(const M2& g) {
    M2 r;
    const cplx det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    r << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
    return r / det;
}

// ---------------------------------------------------------------- tensors by index loops

inline Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

inline Mat swap(int n) {
    Mat P = Mat::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) P(j * n + i, i * n + j) = 1.0;
    return P;
}

// R on V (x) V, V of dim n: entry R[(i,j),(k,l)].
inline cplx at(const Mat& R, int n, int i, int j, int k, int l) { return R(i * n + j, k * n + l); }

// Transpose in the first tensor factor.
inline Mat transpose_first(const Mat& R, int n) {
    Mat T(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) T(k * n + j, i * n + l) = at(R, n, i, j, k, l);
    return T;
}

// d = tr_1(P (((R^{t1})^{-1})^{t1})) for a color-independent R.
inline Mat d_constant(const Mat& R, int n) {
    Mat T = transpose_first(Mat(transpose_first(R, n).inverse()), n);
    Mat d = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i) d(j, l) += at(T, n, j, i, i, l);
    return d;
}

// R12 R13 R23 - R23 R13 R12 from explicit index sums.
inline double constant_ybe(const Mat& R, int n) {
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        for (int z = 0; z < n; ++z) {
                            cplx lhs = 0.0, rhs = 0.0;
                            for (int q = 0; q < n; ++q)
                                for (int r = 0; r < n; ++r)
                                    for (int p = 0; p < n; ++p) {
                                        // R23 (y,z)->(q,r), R13 (x,r)->(p,c), R12 (p,q)->(a,b)
                                        lhs += at(R, n, a, b, p, q) * at(R, n, p, c, x, r) * at(R, n, q, r, y, z);
                                        // R12 (x,y)->(p,q), R13 (p,z)->(a,r), R23 (q,r)->(b,c)
                                        rhs += at(R, n, b, c, q, r) * at(R, n, a, r, p, z) * at(R, n, p, q, x, y);
                                    }
                            worst = std::max(worst, std::abs(lhs - rhs));
                        }
    return worst;
}

// Closure of a braid B on two up strands, each closed through a cup with tensor h and a plain cap:
// value = sum B[(b0,b1),(a0,a1)] h[a0,b0] h[a1,b1] = tr(B (h (x) h)).
inline cplx two_strand_closure(const Mat& B, const Mat& h) {
    const int n = static_cast<int>(h.rows());
    cplx v = 0.0;
    for (int a0 = 0; a0 < n; ++a0)
        for (int a1 = 0; a1 < n; ++a1)
            for (int b0 = 0; b0 < n; ++b0)
                for (int b1 = 0; b1 < n; ++b1) v += B(b0 * n + b1, a0 * n + a1) * h(a0, b0) * h(a1, b1);
    return v;
}

// Standard quantum sl2 matrix written out entry by entry.
inline Mat qsl2(cplx q) {
    Mat R = Mat::Zero(4, 4);
    R(0, 0) = q;  // |00>
    R(3, 3) = q;  // |11>
    R(1, 1) = 1.0;
    R(2, 2) = 1.0;
    R(1, 2) = q - 1.0 / q;  // |10> -> |01>
    return R;
}

}  // namespace oracle
