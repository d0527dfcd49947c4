#include "holonomy/linear_map.hpp"

#include <Eigen/SVD>

#include "holonomy/errors.hpp"

namespace hol {

std::size_t total_dim(const Factors& f) {
    std::size_t d = 1;
    for (const auto& x : f) d *= x.space.dim;
    return d;
}

std::string to_string(const Factors& f) {
    if (f.empty()) return "C";
    std::string s;
    for (const auto& x : f) s += (s.empty() ? "" : " (x) ") + x.space.name + (x.dual ? "*" : "");
    return s;
}

LinearMap::LinearMap(Matrix mat, Factors dom, Factors cod)
    : m(std::move(mat)), domain(std::move(dom)), codomain(std::move(cod)) {
    if (static_cast<std::size_t>(m.rows()) != total_dim(codomain) ||
        static_cast<std::size_t>(m.cols()) != total_dim(domain))
        throw ShapeMismatch("matrix shape does not match " + to_string(domain) + " -> " + to_string(codomain));
}

LinearMap LinearMap::identity(const Factors& f) {
    auto n = static_cast<Eigen::Index>(total_dim(f));
    return LinearMap(Matrix::Identity(n, n), f, f);
}

LinearMap LinearMap::scalar(cplx z) {
    Matrix m(1, 1);
    m(0, 0) = z;
    return LinearMap(m, {}, {});
}

LinearMap LinearMap::operator*(const LinearMap& rhs) const {
    if (domain != rhs.codomain)
        throw ShapeMismatch("cannot compose " + to_string(rhs.codomain) + " into " + to_string(domain));
    return LinearMap(m * rhs.m, rhs.domain, codomain);
}

LinearMap LinearMap::inverse() const { return LinearMap(guarded_inverse(m, "operator"), codomain, domain); }

json LinearMap::to_json() const {
    auto fj = [](const Factors& f) {
        json a = json::array();
        for (const auto& x : f) a.push_back({{"space", x.space.name}, {"dim", x.space.dim}, {"dual", x.dual}});
        return a;
    };
    return {{"domain", fj(domain)}, {"codomain", fj(codomain)}, {"matrix", matrix_to_json(m)}};
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

LinearMap tensor(const LinearMap& a, const LinearMap& b) {
    Factors dom = a.domain, cod = a.codomain;
    dom.insert(dom.end(), b.domain.begin(), b.domain.end());
    cod.insert(cod.end(), b.codomain.begin(), b.codomain.end());
    return LinearMap(kron(a.m, b.m), dom, cod);
}

namespace {

void require_square2(const Matrix& M, std::size_t n, std::size_t m) {
    auto d = static_cast<Eigen::Index>(n * m);
    if (M.rows() != d || M.cols() != d) throw ShapeMismatch("expected a square operator on a two-factor space");
}

}  // namespace

Matrix partial_transpose(const Matrix& M, int factor, std::size_t n, std::size_t m) {
    require_square2(M, n, m);
    Matrix out(M.rows(), M.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < m; ++l) {
                    auto src = factor == 1 ? M(k * m + j, i * m + l) : M(i * m + l, k * m + j);
                    out(i * m + j, k * m + l) = src;
                }
    return out;
}

Matrix partial_trace(const Matrix& M, int factor, std::size_t n, std::size_t m) {
    require_square2(M, n, m);
    if (factor == 1) {
        Matrix out = Matrix::Zero(m, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t l = 0; l < m; ++l) out(j, l) += M(i * m + j, i * m + l);
        return out;
    }
    Matrix out = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < m; ++j) out(i, k) += M(i * m + j, k * m + j);
    return out;
}

Matrix swap_matrix(std::size_t n, std::size_t m) {
    Matrix P = Matrix::Zero(n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) P(j * n + i, i * m + j) = 1.0;
    return P;
}

LinearMap partial_transpose(const LinearMap& M, int factor) {
    if (M.domain.size() != 2 || M.domain != M.codomain)
        throw ShapeMismatch("partial transpose needs an endomorphism of a two-factor space");
    if (factor != 1 && factor != 2) throw ShapeMismatch("factor must be 1 or 2");
    Factors f = M.domain;
    f[factor - 1] = f[factor - 1].dualized();
    return LinearMap(partial_transpose(M.m, factor, M.domain[0].space.dim, M.domain[1].space.dim), f, f);
}

LinearMap partial_trace(const LinearMap& M, int factor) {
    if (M.domain.size() != 2 || M.domain != M.codomain)
        throw ShapeMismatch("partial trace needs an endomorphism of a two-factor space");
    if (factor != 1 && factor != 2) throw ShapeMismatch("factor must be 1 or 2");
    Factors f{M.domain[factor == 1 ? 1 : 0]};
    return LinearMap(partial_trace(M.m, factor, M.domain[0].space.dim, M.domain[1].space.dim), f, f);
}

LinearMap swap(const Factor& X, const Factor& Y) {
    return LinearMap(swap_matrix(X.space.dim, Y.space.dim), {X, Y}, {Y, X});
}

Matrix embed2(const Matrix& op, const std::vector<std::size_t>& dims, std::size_t i, std::size_t j) {
    const std::size_t k = dims.size();
    if (i >= k || j >= k || i == j) throw ShapeMismatch("bad embedding positions");
    const std::size_t di = dims[i], dj = dims[j];
    if (static_cast<std::size_t>(op.rows()) != di * dj || op.cols() != op.rows())
        throw ShapeMismatch("embedded operator has the wrong size");
    std::vector<std::size_t> stride(k, 1);
    for (std::size_t t = k - 1; t-- > 0;) stride[t] = stride[t + 1] * dims[t + 1];
    const std::size_t D = stride[0] * dims[0];
    Matrix out = Matrix::Zero(D, D);
    for (std::size_t col = 0; col < D; ++col) {
        std::size_t a = (col / stride[i]) % di, b = (col / stride[j]) % dj;
        std::size_t rest = col - a * stride[i] - b * stride[j];
        for (std::size_t a2 = 0; a2 < di; ++a2)
            for (std::size_t b2 = 0; b2 < dj; ++b2) {
                cplx v = op(a2 * dj + b2, a * dj + b);
                if (v != cplx(0.0)) out(rest + a2 * stride[i] + b2 * stride[j], col) += v;
            }
    }
    return out;
}

double frobenius(const Matrix& a) { return a.norm(); }

double condition_number(const Matrix& a) {
    if (a.size() == 0) return 1.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    double lo = s(s.size() - 1);
    return lo == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / lo;
}

Matrix guarded_inverse(const Matrix& a, const std::string& what, double kappa_max) {
    if (a.rows() != a.cols()) throw ShapeMismatch(what + " is not square");
    double k = condition_number(a);
    if (!(k <= kappa_max)) throw SingularR(what + " has condition number " + std::to_string(k));
    return a.partialPivLu().inverse();
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    // Nested rows; each entry is a number or [re, im].
    auto entry = [](const json& z) -> cplx {
        if (z.is_number()) return z.get<double>();
        if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number())
            return {z[0].get<double>(), z[1].get<double>()};
        throw InputError("matrix entry must be a number or [re, im]");
    };
    if (!j.is_array() || j.size() != rows) throw InputError("matrix must have " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw InputError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = entry(j[i][c]);
    }
    return m;
}

}  // namespace hol
