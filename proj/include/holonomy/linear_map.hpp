#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "holonomy/group.hpp"

namespace hol {

using Matrix = Eigen::MatrixXcd;

inline constexpr double kKappaMax = 1e12;

struct SpaceLabel {
    std::string name;
    std::size_t dim = 1;
    bool operator==(const SpaceLabel&) const = default;
};

// A tensor factor X or X*.
struct Factor {
    SpaceLabel space;
    bool dual = false;
    bool operator==(const Factor&) const = default;
    Factor dualized() const { return {space, !dual}; }
};

using Factors = std::vector<Factor>;

std::size_t total_dim(const Factors& f);
std::string to_string(const Factors& f);

// Dense operator between tensor products; rows index the codomain, first factor most significant.
struct LinearMap {
    Matrix m;
    Factors domain, codomain;

    LinearMap() = default;
    LinearMap(Matrix mat, Factors dom, Factors cod);

    static LinearMap identity(const Factors& f);
    static LinearMap scalar(cplx z);

    LinearMap operator*(const LinearMap& rhs) const;  // this after rhs
    LinearMap inverse() const;
    json to_json() const;
};

LinearMap tensor(const LinearMap& a, const LinearMap& b);
Matrix kron(const Matrix& a, const Matrix& b);

// Two-factor operations on square n*m matrices (factor dims n, m).
Matrix partial_transpose(const Matrix& M, int factor, std::size_t n, std::size_t m);
Matrix partial_trace(const Matrix& M, int factor, std::size_t n, std::size_t m);
Matrix swap_matrix(std::size_t n, std::size_t m);  // X(n) (x) Y(m) -> Y (x) X

LinearMap partial_transpose(const LinearMap& M, int factor);
LinearMap partial_trace(const LinearMap& M, int factor);
LinearMap swap(const Factor& X, const Factor& Y);

// Embed an operator on factors (i, j) (i != j, either order) of `dims` into the full product.
Matrix embed2(const Matrix& op, const std::vector<std::size_t>& dims, std::size_t i, std::size_t j);

double frobenius(const Matrix& a);
double condition_number(const Matrix& a);
// Inverse with the kappa_max guard; `what` names the operator in the SingularR message.
Matrix guarded_inverse(const Matrix& a, const std::string& what, double kappa_max = kKappaMax);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols);

}  // namespace hol
