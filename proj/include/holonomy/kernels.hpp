#pragma once

#include <functional>
#include <vector>

#include "holonomy/linear_map.hpp"

namespace hol::kernels {

// Apply the tensor product ops[0] (x) ops[1] (x) ... to every column of `state`.
// Serial reference: forms the Kronecker product explicitly.
Matrix apply_row_serial(const std::vector<Matrix>& ops, const Matrix& state);
// Factor-by-factor contraction, parallel over output entries.
Matrix apply_row_parallel(const std::vector<Matrix>& ops, const Matrix& state);

// Evaluate f(0..n-1); result i is f(i). Exceptions thrown by f are rethrown (lowest index first).
std::vector<double> sweep_serial(std::size_t n, const std::function<double(std::size_t)>& f);
std::vector<double> sweep_parallel(std::size_t n, const std::function<double(std::size_t)>& f);

double max_of(const std::vector<double>& v);

}  // namespace hol::kernels
