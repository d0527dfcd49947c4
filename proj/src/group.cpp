#include "holonomy/group.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "holonomy/errors.hpp"

namespace hol {

std::size_t Element::index() const {
    if (!is_index()) throw BackendMismatch("expected a finite-group element, got a matrix");
    return std::get<std::size_t>(v);
}

const Mat2& Element::matrix() const {
    if (is_index()) throw BackendMismatch("expected an SL(2) matrix, got a finite-group element");
    return std::get<Mat2>(v);
}

Factorization FactorizableGroup::factorize(const Element& g) const {
    auto [p, m] = split(g);
    auto [mb, pb] = split_bar(g);
    return {p, m, mb, pb};
}

// ---------------------------------------------------------------- finite

FiniteGroup::FiniteGroup(std::string id, std::vector<std::string> names,
                         std::vector<std::vector<std::size_t>> table,
                         std::vector<std::size_t> plus, std::vector<std::size_t> minus)
    : id_(std::move(id)), names_(std::move(names)), table_(std::move(table)) {
    const std::size_t n = names_.size();
    if (n == 0) throw InvalidGroup("empty element list");
    if (table_.size() != n) throw InvalidGroup("table has wrong number of rows");
    for (const auto& row : table_) {
        if (row.size() != n) throw InvalidGroup("table row has wrong length");
        for (auto k : row)
            if (k >= n) throw InvalidGroup("table entry out of range");
    }
    bool found = false;
    for (std::size_t i = 0; i < n && !found; ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) ok = table_[i][j] == j && table_[j][i] == j;
        if (ok) { e_ = i; found = true; }
    }
    if (!found) throw InvalidGroup("no identity element");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw InvalidGroup("table is not associative");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (table_[a][b] == e_) inverse_[a] = b;
    for (std::size_t a = 0; a < n; ++a)
        if (inverse_[a] == n || table_[inverse_[a]][a] != e_) throw InvalidGroup("missing inverse");

    auto subgroup = [&](const std::vector<std::size_t>& s, std::vector<bool>& mark, const char* label) {
        mark.assign(n, false);
        for (auto k : s) {
            if (k >= n) throw InvalidGroup(std::string(label) + " subgroup index out of range");
            mark[k] = true;
        }
        if (!mark[e_]) throw SubgroupViolation(std::string(label) + " subgroup lacks the identity");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (mark[a] && mark[b] && !mark[table_[a][inverse_[b]]])
                    throw SubgroupViolation(std::string(label) + " list is not a subgroup");
    };
    subgroup(plus, is_plus_, "plus");
    subgroup(minus, is_minus_, "minus");
    for (std::size_t k = 0; k < n; ++k) {
        if (is_plus_[k]) plus_list_.push_back(k);
        if (is_minus_[k]) minus_list_.push_back(k);
    }

    split_.assign(n, {n, n});
    split_bar_.assign(n, {n, n});
    for (auto p : plus_list_)
        for (auto m : minus_list_) {
            auto g = table_[p][inverse_[m]];
            if (split_[g].first != n) throw SubgroupViolation("factorization of " + names_[g] + " is not unique");
            split_[g] = {p, m};
            auto h = table_[inverse_[m]][p];
            if (split_bar_[h].first != n) throw SubgroupViolation("bar factorization of " + names_[h] + " is not unique");
            split_bar_[h] = {m, p};
        }
    for (std::size_t g = 0; g < n; ++g)
        if (split_[g].first == n || split_bar_[g].first == n)
            throw SubgroupViolation(names_[g] + " does not factor as G+ G-");
}

std::size_t FiniteGroup::check(const Element& a) const {
    auto i = a.index();
    if (i >= names_.size()) throw BackendMismatch("element index out of range for " + id_);
    return i;
}

Element FiniteGroup::mul(const Element& a, const Element& b) const {
    return Element(table_[check(a)][check(b)]);
}
Element FiniteGroup::inv(const Element& a) const { return Element(inverse_[check(a)]); }

std::pair<Element, Element> FiniteGroup::split(const Element& g) const {
    auto [p, m] = split_[check(g)];
    return {Element(p), Element(m)};
}
std::pair<Element, Element> FiniteGroup::split_bar(const Element& g) const {
    auto [m, p] = split_bar_[check(g)];
    return {Element(m), Element(p)};
}
bool FiniteGroup::in_plus(const Element& g) const { return is_plus_[check(g)]; }
bool FiniteGroup::in_minus(const Element& g) const { return is_minus_[check(g)]; }
double FiniteGroup::distance(const Element& a, const Element& b) const {
    return check(a) == check(b) ? 0.0 : 1.0;
}
std::vector<Element> FiniteGroup::elements() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < names_.size(); ++i) out.emplace_back(i);
    return out;
}
std::vector<Element> FiniteGroup::plus_elements() const {
    std::vector<Element> out;
    for (auto k : plus_list_) out.emplace_back(k);
    return out;
}
std::vector<Element> FiniteGroup::minus_elements() const {
    std::vector<Element> out;
    for (auto k : minus_list_) out.emplace_back(k);
    return out;
}
Element FiniteGroup::sample(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::size_t> d(0, names_.size() - 1);
    return Element(d(rng));
}
json FiniteGroup::to_json(const Element& g) const { return names_[check(g)]; }
Element FiniteGroup::from_json(const json& j) const {
    if (!j.is_string()) throw InputError("finite-group element must be a name string");
    return by_name(j.get<std::string>());
}
std::string FiniteGroup::name_of(const Element& g) const { return names_[check(g)]; }
Element FiniteGroup::by_name(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw InputError("unknown element '" + name + "' in group " + id_);
    return Element(static_cast<std::size_t>(it - names_.begin()));
}

FiniteGroup FiniteGroup::from_description(const json& j) {
    try {
        auto names = j.at("elements").get<std::vector<std::string>>();
        std::map<std::string, std::size_t> idx;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (!idx.emplace(names[i], i).second) throw InvalidGroup("duplicate element name " + names[i]);
        auto lookup = [&](const json& x) -> std::size_t {
            if (x.is_number_unsigned()) return x.get<std::size_t>();
            auto it = idx.find(x.get<std::string>());
            if (it == idx.end()) throw InvalidGroup("unknown element " + x.get<std::string>());
            return it->second;
        };
        std::vector<std::vector<std::size_t>> table;
        for (const auto& row : j.at("table")) {
            std::vector<std::size_t> r;
            for (const auto& x : row) r.push_back(lookup(x));
            table.push_back(std::move(r));
        }
        std::vector<std::size_t> plus, minus;
        for (const auto& x : j.at("plus")) plus.push_back(lookup(x));
        for (const auto& x : j.at("minus")) minus.push_back(lookup(x));
        return FiniteGroup(j.value("name", std::string("finite")), names, table, plus, minus);
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed group description: ") + ex.what());
    }
}

json FiniteGroup::description() const {
    json j;
    j["name"] = id_;
    j["elements"] = names_;
    j["table"] = table_;
    json p = json::array(), m = json::array();
    for (auto k : plus_list_) p.push_back(names_[k]);
    for (auto k : minus_list_) m.push_back(names_[k]);
    j["plus"] = p;
    j["minus"] = m;
    return j;
}

// ---------------------------------------------------------------- SL(2)

Element SL2Group::make(const Mat2& m) {
    if (std::abs(m.determinant() - cplx(1.0)) > kTauEq)
        throw InputError("SL(2) element must have unit determinant");
    return Element(m);
}

Element SL2Group::mul(const Element& a, const Element& b) const {
    return Element(Mat2(a.matrix() * b.matrix()));
}
Element SL2Group::inv(const Element& a) const {
    const Mat2& m = a.matrix();
    Mat2 r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return Element(Mat2(r / m.determinant()));
}

std::pair<Element, Element> SL2Group::split(const Element& g) const {
    const Mat2& m = g.matrix();
    if (std::abs(m(1, 1)) < kPivotTol) {
        std::ostringstream os;
        os << "entry g22 = " << m(1, 1) << " vanishes (plus/minus split)";
        throw NonGeneric(os.str());
    }
    Mat2 gm = Mat2::Identity();
    gm(1, 0) = -m(1, 0) / m(1, 1);
    Mat2 gp = m * gm;
    gp(1, 0) = 0.0;
    return {Element(gp), Element(gm)};
}

std::pair<Element, Element> SL2Group::split_bar(const Element& g) const {
    const Mat2& m = g.matrix();
    if (std::abs(m(0, 0)) < kPivotTol) {
        std::ostringstream os;
        os << "entry g11 = " << m(0, 0) << " vanishes (bar split)";
        throw NonGeneric(os.str());
    }
    Mat2 mb = Mat2::Identity();
    mb(1, 0) = -m(1, 0) / m(0, 0);
    Mat2 pb = mb * m;
    pb(1, 0) = 0.0;
    return {Element(mb), Element(pb)};
}

bool SL2Group::in_plus(const Element& g) const { return std::abs(g.matrix()(1, 0)) <= kTauEq; }
bool SL2Group::in_minus(const Element& g) const {
    const Mat2& m = g.matrix();
    return std::abs(m(0, 0) - 1.0) <= kTauEq && std::abs(m(1, 1) - 1.0) <= kTauEq &&
           std::abs(m(0, 1)) <= kTauEq;
}
double SL2Group::distance(const Element& a, const Element& b) const {
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Element SL2Group::sample(std::mt19937_64& rng) const {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        Mat2 m = Mat2::Identity();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) += 0.4 * cplx(n(rng), n(rng)) / std::sqrt(2.0);
        cplx det = m.determinant();
        if (std::abs(det) < 0.2) continue;
        m /= std::sqrt(det);
        if (std::abs(m(0, 0)) < 0.3 || std::abs(m(1, 1)) < 0.3) continue;
        if (m.cwiseAbs().maxCoeff() > 3.0) continue;
        return Element(m);
    }
}

json SL2Group::to_json(const Element& g) const {
    const Mat2& m = g.matrix();
    json out = json::array();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.push_back({m(i, j).real(), m(i, j).imag()});
    return out;
}

Element SL2Group::from_json(const json& j) const {
    if (!j.is_array() || j.size() != 4) throw InputError("SL(2) element must be four [re, im] pairs");
    Mat2 m;
    for (int k = 0; k < 4; ++k) {
        const auto& z = j[k];
        if (z.is_number()) m(k / 2, k % 2) = z.get<double>();
        else m(k / 2, k % 2) = cplx(z.at(0).get<double>(), z.at(1).get<double>());
    }
    return make(m);
}

std::string SL2Group::name_of(const Element& g) const { return to_json(g).dump(); }

// ---------------------------------------------------------------- built-ins

namespace {

using Perm = std::vector<std::size_t>;

std::string cycle_name(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i) continue;
        out += '(';
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            out += std::to_string(j + 1);
        }
        out += ')';
    }
    return out.empty() ? "e" : out;
}

std::shared_ptr<const FiniteGroup> s3_with(const std::string& id, bool trivial) {
    std::vector<Perm> perms;
    Perm p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const std::size_t n = perms.size();
    std::vector<std::string> names;
    for (const auto& q : perms) names.push_back(cycle_name(q));
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Perm c(3);
            for (std::size_t i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];  // right factor first
            table[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    auto idx = [&](const std::string& s) {
        return static_cast<std::size_t>(std::find(names.begin(), names.end(), s) - names.begin());
    };
    std::vector<std::size_t> plus, minus;
    if (trivial) {
        plus = {idx("e")};
        minus.resize(n);
        std::iota(minus.begin(), minus.end(), 0);
    } else {
        plus = {idx("e"), idx("(123)"), idx("(132)")};
        minus = {idx("e"), idx("(12)")};
    }
    return std::make_shared<FiniteGroup>(id, names, table, plus, minus);
}

}  // namespace

std::shared_ptr<const FiniteGroup> symmetric3() {
    static auto g = s3_with("s3", false);
    return g;
}
std::shared_ptr<const FiniteGroup> symmetric3_trivial() {
    static auto g = s3_with("s3-trivial", true);
    return g;
}

std::shared_ptr<const FiniteGroup> dihedral(std::size_t n) {
    if (n < 2) throw InputError("dihedral order must be >= 2");
    // r^k s^j stored at index 2k + j
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) {
        std::string r = k == 0 ? "" : (k == 1 ? "r" : "r^" + std::to_string(k));
        names.push_back(k == 0 ? "e" : r);
        names.push_back(k == 0 ? "s" : r + "s");
    }
    std::vector<std::vector<std::size_t>> table(2 * n, std::vector<std::size_t>(2 * n));
    for (std::size_t a = 0; a < 2 * n; ++a)
        for (std::size_t b = 0; b < 2 * n; ++b) {
            std::size_t ka = a / 2, ja = a % 2, kb = b / 2, jb = b % 2;
            std::size_t k = (ja == 0 ? ka + kb : ka + n - kb) % n;
            table[a][b] = 2 * k + ((ja + jb) % 2);
        }
    std::vector<std::size_t> plus, minus{0, 1};
    for (std::size_t k = 0; k < n; ++k) plus.push_back(2 * k);
    return std::make_shared<FiniteGroup>("dihedral:" + std::to_string(n), names, table, plus, minus);
}

GroupPtr make_group(const std::string& spec) {
    if (spec == "s3") return symmetric3();
    if (spec == "s3-trivial") return symmetric3_trivial();
    if (spec == "sl2") {
        static auto g = std::make_shared<const SL2Group>();
        return g;
    }
    if (spec.rfind("dihedral:", 0) == 0) {
        try {
            return dihedral(std::stoul(spec.substr(9)));
        } catch (const std::logic_error&) {
            throw InputError("bad dihedral order in '" + spec + "'");
        }
    }
    std::ifstream in(spec);
    if (!in) throw InputError("unknown group '" + spec + "' (not a built-in id or readable file)");
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw InputError("cannot parse group file " + spec + ": " + ex.what());
    }
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_description(j));
}

// ---------------------------------------------------------------- derived ops

Element prod(const FactorizableGroup& G, std::initializer_list<Element> xs) {
    Element r = G.identity();
    for (const auto& x : xs) r = G.mul(r, x);
    return r;
}

Element plus_part(const FactorizableGroup& G, const Element& g) { return G.split(g).first; }
Element minus_part(const FactorizableGroup& G, const Element& g) { return G.split(g).second; }

Element power(const FactorizableGroup& G, const Element& a, int e) { return e > 0 ? a : G.inv(a); }

Element star(const FactorizableGroup& G, const Element& g, const Element& h) {
    auto [gp, gm] = G.split(g);
    auto [hp, hm] = G.split(h);
    return G.mul(G.mul(gp, hp), G.inv(G.mul(gm, hm)));
}

Element star_inv(const FactorizableGroup& G, const Element& g) {
    auto [gp, gm] = G.split(g);
    return G.mul(G.inv(gp), gm);
}

Element eps_apply(const FactorizableGroup& G, Orientation e, const Element& g) {
    return e == Orientation::Up ? g : star_inv(G, g);
}

Element dress(const FactorizableGroup& G, const Element& x, const Element& gamma) {
    Element c = prod(G, {x, gamma, G.inv(x)});
    auto [cp, cm] = G.split(c);
    auto [gp, gm] = G.split(gamma);
    Element via_plus = prod(G, {G.inv(cp), x, gp});
    Element via_minus = prod(G, {G.inv(cm), x, gm});
    // Matrix backends: products of a few factors lose a handful of digits.
    double tol = G.is_finite() ? 0.0 : 1e-8;
    if (G.distance(via_plus, via_minus) > tol)
        throw InconsistentDressing("closed forms differ by " + std::to_string(G.distance(via_plus, via_minus)));
    return via_plus;
}

Element dress_plus(const FactorizableGroup& G, const Element& xp, const Element& gamma) {
    if (!G.in_plus(xp)) throw SubgroupViolation("dress_plus argument is not in G+");
    Element gm = minus_part(G, gamma);
    return G.inv(plus_part(G, G.mul(G.inv(gm), G.inv(xp))));
}

Element dress_minus(const FactorizableGroup& G, const Element& xm, const Element& gamma) {
    if (!G.in_minus(xm)) throw SubgroupViolation("dress_minus argument is not in G-");
    Element gp = plus_part(G, gamma);
    return G.inv(minus_part(G, G.mul(xm, gp)));
}

}  // namespace hol
