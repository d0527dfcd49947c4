#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "holonomy/coloring.hpp"
#include "holonomy/linear_map.hpp"

namespace hol {

// A family R^{X,Y}(x, y) of operators on X (x) Y.
class RSystem {
public:
    explicit RSystem(GroupPtr G) : group_(std::move(G)) {}
    virtual ~RSystem() = default;

    virtual std::string id() const = 0;
    virtual std::vector<SpaceLabel> spaces() const = 0;
    virtual Matrix r(const SpaceLabel& X, const SpaceLabel& Y, const Element& x, const Element& y) const = 0;

    const FactorizableGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    LinearMap r_map(const SpaceLabel& X, const SpaceLabel& Y, const Element& x, const Element& y) const;
    SpaceLabel space(const std::string& name) const;

private:
    GroupPtr group_;
};

using SystemPtr = std::shared_ptr<const RSystem>;

class ScalarSystem final : public RSystem {
public:
    ScalarSystem(GroupPtr G, cplx lambda, std::vector<SpaceLabel> spaces);
    std::string id() const override;
    std::vector<SpaceLabel> spaces() const override { return spaces_; }
    Matrix r(const SpaceLabel& X, const SpaceLabel& Y, const Element&, const Element&) const override;
    cplx lambda() const { return lambda_; }

private:
    cplx lambda_;
    std::vector<SpaceLabel> spaces_;
};

// One space V and a color-independent R0 on V (x) V.
class ConstantSystem final : public RSystem {
public:
    ConstantSystem(GroupPtr G, SpaceLabel V, Matrix R0, std::string name = "constant");
    std::string id() const override { return name_; }
    std::vector<SpaceLabel> spaces() const override { return {V_}; }
    Matrix r(const SpaceLabel& X, const SpaceLabel& Y, const Element&, const Element&) const override;
    const Matrix& r0() const { return R0_; }

private:
    SpaceLabel V_;
    Matrix R0_;
    std::string name_;
};

// Holonomy-dependent system obtained from a constant solution by a color-dependent change of basis:
// R(x, y) = (phi(b) (x) phi(a)) R0 (phi(x) (x) phi(y))^{-1}, (a, b) = crossing_map(x, y).
class GaugeTransformedSystem final : public RSystem {
public:
    using Phi = std::function<Matrix(const Element&)>;
    GaugeTransformedSystem(GroupPtr G, SpaceLabel V, Matrix R0, Phi phi, std::string name);
    std::string id() const override { return name_; }
    std::vector<SpaceLabel> spaces() const override { return {V_}; }
    Matrix r(const SpaceLabel& X, const SpaceLabel& Y, const Element& x, const Element& y) const override;
    Matrix phi(const Element& g) const { return phi_(g); }

private:
    SpaceLabel V_;
    Matrix R0_;
    Phi phi_;
    std::string name_;
};

// Standard two-dimensional quantum sl2 matrix.
Matrix quantum_sl2(cplx q);
// Seeded phi for finite groups (random well-conditioned matrices per element) or the defining
// representation for SL(2) when dim V = 2.
GaugeTransformedSystem::Phi default_phi(const GroupPtr& G, std::size_t dim, std::uint64_t seed);

// Built-in system ids: "scalar[:re[,im]]", "qsl2[:re,im]", "gauged-qsl2[:re,im]"; other strings are JSON files
// holding a constant R-matrix ({"space": {"name", "dim"}, "matrix": rows}).
SystemPtr make_system(const std::string& spec, GroupPtr G);
std::shared_ptr<ConstantSystem> load_constant_system(const json& j, GroupPtr G);

// Constant Yang-Baxter residual ||R12 R13 R23 - R23 R13 R12||_F for R on V (x) V.
double constant_ybe_residual(const Matrix& R, std::size_t n);

struct HybeResult {
    double residual;
    bool pass;
};
HybeResult check_hybe(const RSystem& sys, const SpaceLabel& X, const SpaceLabel& Y, const SpaceLabel& Z,
                      const Element& x, const Element& y, const Element& z, double tol = 1e-10);

struct NondegeneracyReport {
    bool nondegenerate;
    std::size_t rank;
    double condition;
};
NondegeneracyReport check_cross_nondegenerate(const LinearMap& M, double kappa_max = kKappaMax);

enum class DInvReading { Covariant, Literal };  // R(i(a^{-1}), a) vs R(i(a)^{-1}, a)
enum class WReading { Covariant, Literal };     // R12^{-1}(b, x) vs R12^{-1}(x, b)

LinearMap d_op(const RSystem& sys, const SpaceLabel& X, const Element& a);
LinearMap d_op_inv(const RSystem& sys, const SpaceLabel& X, const Element& a,
                   DInvReading reading = DInvReading::Covariant);
LinearMap w_op(const RSystem& sys, const SpaceLabel& X, const Element& x, WReading reading = WReading::Covariant);

struct IdentityResidual {
    std::string name;
    std::string reading;
    double residual;
    bool pass;
    bool asserted;  // false for alternative readings that are only reported
};

struct IdentityReport {
    std::vector<IdentityResidual> items;
    bool pass = true;
    json to_json() const;
};

IdentityReport check_identities(const RSystem& sys, const SpaceLabel& X, const SpaceLabel& Y, const Element& x,
                                const Element& y, double tol = 1e-9);

}  // namespace hol
