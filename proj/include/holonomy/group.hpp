#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <memory>
#include <nlohmann/json.hpp>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace hol {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using json = nlohmann::json;

inline constexpr double kTauEq = 1e-10;
inline constexpr double kPivotTol = 1e-8;

// Opaque element: an index into the table of a finite backend, or an SL(2) matrix.
struct Element {
    std::variant<std::size_t, Mat2> v;

    Element() : v(std::size_t{0}) {}
    explicit Element(std::size_t i) : v(i) {}
    explicit Element(const Mat2& m) : v(m) {}

    bool is_index() const { return std::holds_alternative<std::size_t>(v); }
    std::size_t index() const;
    const Mat2& matrix() const;
};

// g = g_plus * g_minus^{-1} = bar_minus^{-1} * bar_plus
struct Factorization {
    Element g_plus, g_minus, bar_minus, bar_plus;
};

enum class Orientation : int { Up = 1, Down = -1 };

inline int sign(Orientation o) { return static_cast<int>(o); }
inline Orientation flip(Orientation o) { return o == Orientation::Up ? Orientation::Down : Orientation::Up; }

class FactorizableGroup {
public:
    virtual ~FactorizableGroup() = default;

    virtual std::string id() const = 0;
    virtual Element identity() const = 0;
    virtual Element mul(const Element& a, const Element& b) const = 0;
    virtual Element inv(const Element& a) const = 0;

    // Plus/minus split only (cheaper than the full factorization).
    virtual std::pair<Element, Element> split(const Element& g) const = 0;
    virtual std::pair<Element, Element> split_bar(const Element& g) const = 0;

    virtual bool in_plus(const Element& g) const = 0;
    virtual bool in_minus(const Element& g) const = 0;

    // Max-entry distance for matrix backends, 0/1 for finite ones.
    virtual double distance(const Element& a, const Element& b) const = 0;
    bool equal(const Element& a, const Element& b, double tol = kTauEq) const {
        return distance(a, b) <= tol;
    }

    virtual bool is_finite() const = 0;
    virtual std::vector<Element> elements() const = 0;  // empty for infinite backends
    virtual Element sample(std::mt19937_64& rng) const = 0;

    virtual json to_json(const Element& g) const = 0;
    virtual Element from_json(const json& j) const = 0;
    virtual std::string name_of(const Element& g) const = 0;

    Factorization factorize(const Element& g) const;
};

using GroupPtr = std::shared_ptr<const FactorizableGroup>;

// Finite group given by a multiplication table and two subgroups with G = G+ G-.
class FiniteGroup final : public FactorizableGroup {
public:
    // table[i][j] = index of names[i]*names[j]. Validates group axioms and exact factorization.
    FiniteGroup(std::string id, std::vector<std::string> names,
                std::vector<std::vector<std::size_t>> table,
                std::vector<std::size_t> plus, std::vector<std::size_t> minus);

    static FiniteGroup from_description(const json& j);
    json description() const;

    std::string id() const override { return id_; }
    Element identity() const override { return Element(e_); }
    Element mul(const Element& a, const Element& b) const override;
    Element inv(const Element& a) const override;
    std::pair<Element, Element> split(const Element& g) const override;
    std::pair<Element, Element> split_bar(const Element& g) const override;
    bool in_plus(const Element& g) const override;
    bool in_minus(const Element& g) const override;
    double distance(const Element& a, const Element& b) const override;
    bool is_finite() const override { return true; }
    std::vector<Element> elements() const override;
    Element sample(std::mt19937_64& rng) const override;
    json to_json(const Element& g) const override;
    Element from_json(const json& j) const override;
    std::string name_of(const Element& g) const override;

    std::size_t order() const { return names_.size(); }
    Element by_name(const std::string& name) const;
    std::vector<Element> plus_elements() const;
    std::vector<Element> minus_elements() const;

private:
    std::size_t check(const Element& a) const;

    std::string id_;
    std::vector<std::string> names_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
    std::vector<bool> is_plus_, is_minus_;
    std::vector<std::size_t> plus_list_, minus_list_;
    std::size_t e_ = 0;
    // Precomputed splits: g = p m^{-1} and g = mb^{-1} pb.
    std::vector<std::pair<std::size_t, std::size_t>> split_, split_bar_;
};

// SL(2,C) big cell: G+ upper triangular, G- lower unipotent.
class SL2Group final : public FactorizableGroup {
public:
    std::string id() const override { return "sl2"; }
    Element identity() const override { return Element(Mat2(Mat2::Identity())); }
    Element mul(const Element& a, const Element& b) const override;
    Element inv(const Element& a) const override;
    std::pair<Element, Element> split(const Element& g) const override;
    std::pair<Element, Element> split_bar(const Element& g) const override;
    bool in_plus(const Element& g) const override;
    bool in_minus(const Element& g) const override;
    double distance(const Element& a, const Element& b) const override;
    bool is_finite() const override { return false; }
    std::vector<Element> elements() const override { return {}; }
    // Well-conditioned generic sample near the identity.
    Element sample(std::mt19937_64& rng) const override;
    json to_json(const Element& g) const override;
    Element from_json(const json& j) const override;
    std::string name_of(const Element& g) const override;

    static Element make(const Mat2& m);  // checks |det - 1| <= tau_eq
};

// Built-in groups: "s3", "s3-trivial", "dihedral:N", "sl2"; anything else is read as a JSON file path.
GroupPtr make_group(const std::string& spec);
std::shared_ptr<const FiniteGroup> symmetric3();
std::shared_ptr<const FiniteGroup> symmetric3_trivial();
std::shared_ptr<const FiniteGroup> dihedral(std::size_t n);

// Derived operations.
Element prod(const FactorizableGroup& G, std::initializer_list<Element> xs);
Element plus_part(const FactorizableGroup& G, const Element& g);
Element minus_part(const FactorizableGroup& G, const Element& g);
Element star(const FactorizableGroup& G, const Element& g, const Element& h);
Element star_inv(const FactorizableGroup& G, const Element& g);
Element eps_apply(const FactorizableGroup& G, Orientation e, const Element& g);
// x^gamma; both closed forms are evaluated and compared.
Element dress(const FactorizableGroup& G, const Element& x, const Element& gamma);
Element dress_plus(const FactorizableGroup& G, const Element& xp, const Element& gamma);
Element dress_minus(const FactorizableGroup& G, const Element& xm, const Element& gamma);
// a^e for e = +-1
Element power(const FactorizableGroup& G, const Element& a, int e);

}  // namespace hol
