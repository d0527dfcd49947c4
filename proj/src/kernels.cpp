#include "holonomy/kernels.hpp"

#include <cmath>
#include <exception>
#include <omp.h>

#include "holonomy/errors.hpp"

namespace hol::kernels {

namespace {

void check_row(const std::vector<Matrix>& ops, const Matrix& state) {
    Eigen::Index in = 1;
    for (const auto& op : ops) in *= op.cols();
    if (in != state.rows()) throw ShapeMismatch("row operator does not match the state dimension");
}

}  // namespace

Matrix apply_row_serial(const std::vector<Matrix>& ops, const Matrix& state) {
    check_row(ops, state);
    Matrix k = Matrix::Identity(1, 1);
    for (const auto& op : ops) k = kron(k, op);
    return k * state;
}

Matrix apply_row_parallel(const std::vector<Matrix>& ops, const Matrix& state) {
    check_row(ops, state);
    const Eigen::Index C = state.cols();
    Eigen::Index right = state.rows();
    Eigen::Index left = 1;
    Matrix cur = state;
    // Invariant: cur is indexed [left][in_k][right'][C] with left = product of processed output dims.
    for (const auto& op : ops) {
        const Eigen::Index mi = op.cols(), mo = op.rows();
        right /= mi;
        Matrix next = Matrix::Zero(left * mo * right, C);
        const Eigen::Index rows = left * mo * right;
#pragma omp parallel for schedule(static) if (rows * C * mi > 4096)
        for (Eigen::Index row = 0; row < rows; ++row) {
            const Eigen::Index l = row / (mo * right);
            const Eigen::Index o = (row / right) % mo;
            const Eigen::Index r = row % right;
            for (Eigen::Index i = 0; i < mi; ++i) {
                const cplx a = op(o, i);
                if (a == cplx(0.0)) continue;
                next.row(row) += a * cur.row((l * mi + i) * right + r);
            }
        }
        cur = std::move(next);
        left *= mo;
    }
    return cur;
}

std::vector<double> sweep_serial(std::size_t n, const std::function<double(std::size_t)>& f) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
}

std::vector<double> sweep_parallel(std::size_t n, const std::function<double(std::size_t)>& f) {
    std::vector<double> out(n, 0.0);
    std::vector<std::exception_ptr> errors(n);
    const auto N = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < N; ++i) {
        try {
            out[i] = f(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        if (std::isnan(x)) return x;
        m = std::max(m, x);
    }
    return m;
}

}  // namespace hol::kernels
