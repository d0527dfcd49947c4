#include "holonomy/rmatrix.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "holonomy/errors.hpp"

namespace hol {

namespace {

std::string fmt(cplx z) {
    std::ostringstream os;
    os << std::setprecision(17) << z.real() << "," << z.imag();
    return os.str();
}

std::size_t dim_of(const SpaceLabel& s) { return s.dim; }

}  // namespace

LinearMap RSystem::r_map(const SpaceLabel& X, const SpaceLabel& Y, const Element& x, const Element& y) const {
    Factors f{{X, false}, {Y, false}};
    return LinearMap(r(X, Y, x, y), f, f);
}

SpaceLabel RSystem::space(const std::string& name) const {
    for (const auto& s : spaces())
        if (s.name == name) return s;
    throw InputError("system " + id() + " has no space '" + name + "'");
}

ScalarSystem::ScalarSystem(GroupPtr G, cplx lambda, std::vector<SpaceLabel> spaces)
    : RSystem(std::move(G)), lambda_(lambda), spaces_(std::move(spaces)) {
    if (lambda_ == cplx(0.0)) throw SingularR("scalar system needs a nonzero lambda");
}

std::string ScalarSystem::id() const { return "scalar:" + fmt(lambda_); }

Matrix ScalarSystem::r(const SpaceLabel& X, const SpaceLabel& Y, const Element&, const Element&) const {
    auto n = static_cast<Eigen::Index>(X.dim * Y.dim);
    return lambda_ * Matrix::Identity(n, n);
}

ConstantSystem::ConstantSystem(GroupPtr G, SpaceLabel V, Matrix R0, std::string name)
    : RSystem(std::move(G)), V_(std::move(V)), R0_(std::move(R0)), name_(std::move(name)) {
    auto n = static_cast<Eigen::Index>(V_.dim * V_.dim);
    if (R0_.rows() != n || R0_.cols() != n) throw ShapeMismatch("constant R-matrix must be (dim V)^2 square");
}

Matrix ConstantSystem::r(const SpaceLabel& X, const SpaceLabel& Y, const Element&, const Element&) const {
    if (!(X == V_) || !(Y == V_)) throw InputError("constant system is defined on " + V_.name + " only");
    return R0_;
}

GaugeTransformedSystem::GaugeTransformedSystem(GroupPtr G, SpaceLabel V, Matrix R0, Phi phi, std::string name)
    : RSystem(std::move(G)), V_(std::move(V)), R0_(std::move(R0)), phi_(std::move(phi)), name_(std::move(name)) {}

Matrix GaugeTransformedSystem::r(const SpaceLabel& X, const SpaceLabel& Y, const Element& x, const Element& y) const {
    if (!(X == V_) || !(Y == V_)) throw InputError("gauge-transformed system is defined on " + V_.name + " only");
    auto [a, b] = crossing_map(group(), x, y);
    Matrix right = kron(phi_(x), phi_(y));
    return kron(phi_(b), phi_(a)) * R0_ * guarded_inverse(right, "basis change");
}

Matrix quantum_sl2(cplx q) {
    Matrix R = Matrix::Zero(4, 4);
    R(0, 0) = q;
    R(1, 1) = 1.0;
    R(1, 2) = q - 1.0 / q;
    R(2, 2) = 1.0;
    R(3, 3) = q;
    return R;
}

GaugeTransformedSystem::Phi default_phi(const GroupPtr& G, std::size_t dim, std::uint64_t seed) {
    if (!G->is_finite()) {
        if (dim != 2) throw InputError("defining-representation basis change needs dim 2");
        return [](const Element& g) -> Matrix { return g.matrix(); };
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    auto table = std::make_shared<std::vector<Matrix>>();
    const auto n = static_cast<Eigen::Index>(dim);
    for (std::size_t k = 0; k < G->elements().size(); ++k) {
        Matrix m = Matrix::Identity(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) += 0.5 * cplx(nd(rng), nd(rng));
        table->push_back(m);
    }
    return [table](const Element& g) -> Matrix { return table->at(g.index()); };
}

namespace {

cplx parse_complex(const std::string& s, cplx fallback) {
    if (s.empty()) return fallback;
    auto comma = s.find(',');
    try {
        double re = std::stod(s.substr(0, comma));
        double im = comma == std::string::npos ? 0.0 : std::stod(s.substr(comma + 1));
        return {re, im};
    } catch (const std::logic_error&) {
        throw InputError("cannot read complex number '" + s + "'");
    }
}

}  // namespace

std::shared_ptr<ConstantSystem> load_constant_system(const json& j, GroupPtr G) {
    try {
        SpaceLabel V{j.at("space").value("name", std::string("V")), j.at("space").at("dim").get<std::size_t>()};
        if (V.dim == 0) throw InputError("space dimension must be positive");
        Matrix R = matrix_from_json(j.at("matrix"), V.dim * V.dim, V.dim * V.dim);
        return std::make_shared<ConstantSystem>(std::move(G), V, R, j.value("name", std::string("constant")));
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed R-matrix file: ") + ex.what());
    }
}

SystemPtr make_system(const std::string& spec, GroupPtr G) {
    const cplx q0(0.7, 0.2);
    auto head = spec.substr(0, spec.find(':'));
    std::string arg = spec.find(':') == std::string::npos ? "" : spec.substr(spec.find(':') + 1);
    SpaceLabel V{"V", 2};
    if (head == "scalar") {
        // scalar[:re[,im][:dim]]
        auto colon = arg.find(':');
        if (colon != std::string::npos) {
            V.dim = std::stoul(arg.substr(colon + 1));
            arg.resize(colon);
        }
        return std::make_shared<ScalarSystem>(G, parse_complex(arg, 1.0), std::vector<SpaceLabel>{V});
    }
    if (head == "identity") return std::make_shared<ConstantSystem>(G, V, Matrix::Identity(4, 4), "identity");
    if (head == "qsl2") {
        cplx q = parse_complex(arg, q0);
        return std::make_shared<ConstantSystem>(G, V, quantum_sl2(q), "qsl2:" + fmt(q));
    }
    if (head == "gauged-qsl2") {
        cplx q = parse_complex(arg, q0);
        return std::make_shared<GaugeTransformedSystem>(G, V, quantum_sl2(q), default_phi(G, 2, 7),
                                                        "gauged-qsl2:" + fmt(q));
    }
    std::ifstream in(spec);
    if (!in) throw InputError("unknown system '" + spec + "' (not a built-in id or readable file)");
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw InputError("cannot parse R-matrix file " + spec + ": " + ex.what());
    }
    return load_constant_system(j, G);
}

double constant_ybe_residual(const Matrix& R, std::size_t n) {
    std::vector<std::size_t> dims{n, n, n};
    Matrix R12 = embed2(R, dims, 0, 1), R13 = embed2(R, dims, 0, 2), R23 = embed2(R, dims, 1, 2);
    return frobenius(R12 * R13 * R23 - R23 * R13 * R12);
}

HybeResult check_hybe(const RSystem& sys, const SpaceLabel& X, const SpaceLabel& Y, const SpaceLabel& Z,
                      const Element& x, const Element& y, const Element& z, double tol) {
    const FactorizableGroup& G = sys.group();
    auto xl = [&](const Element& u, const Element& v) { return crossing_map(G, u, v).first; };
    auto xr = [&](const Element& u, const Element& v) { return crossing_map(G, u, v).second; };
    std::vector<std::size_t> dims{dim_of(X), dim_of(Y), dim_of(Z)};
    auto R12 = [&](const Element& u, const Element& v) { return embed2(sys.r(X, Y, u, v), dims, 0, 1); };
    auto R13 = [&](const Element& u, const Element& v) { return embed2(sys.r(X, Z, u, v), dims, 0, 2); };
    auto R23 = [&](const Element& u, const Element& v) { return embed2(sys.r(Y, Z, u, v), dims, 1, 2); };

    Element lyz = xl(y, z);
    Matrix lhs = R12(xr(x, lyz), xr(y, z)) * R13(x, lyz) * R23(y, z);
    Element rxy = xr(x, y);
    Matrix rhs = R23(xl(x, y), xl(rxy, z)) * R13(rxy, z) * R12(x, y);
    double res = frobenius(lhs - rhs);
    return {res, res <= tol};
}

NondegeneracyReport check_cross_nondegenerate(const LinearMap& M, double kappa_max) {
    Matrix T = partial_transpose(M, 2).m;
    Eigen::JacobiSVD<Matrix> svd(T);
    const auto& s = svd.singularValues();
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > s(0) * 1e-12) ++rank;
    double cond = s(s.size() - 1) == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / s(s.size() - 1);
    return {cond <= kappa_max, rank, cond};
}

LinearMap d_op(const RSystem& sys, const SpaceLabel& X, const Element& a) {
    const FactorizableGroup& G = sys.group();
    const std::size_t n = X.dim;
    Matrix R = sys.r(X, X, a, G.inv(star_inv(G, a)));
    Matrix inner = partial_transpose(guarded_inverse(partial_transpose(R, 1, n, n), "R^{t1}"), 1, n, n);
    Matrix d = partial_trace(swap_matrix(n, n) * inner, 1, n, n);
    return LinearMap(d, {{X, false}}, {{X, false}});
}

LinearMap d_op_inv(const RSystem& sys, const SpaceLabel& X, const Element& a, DInvReading reading) {
    const FactorizableGroup& G = sys.group();
    const std::size_t n = X.dim;
    Element u = reading == DInvReading::Covariant ? star_inv(G, G.inv(a)) : G.inv(star_inv(G, a));
    Matrix Rinv = guarded_inverse(sys.r(X, X, u, a), "R");
    Matrix inner = partial_transpose(guarded_inverse(partial_transpose(Rinv, 2, n, n), "(R^{-1})^{t2}"), 2, n, n);
    Matrix d = partial_trace(inner * swap_matrix(n, n), 2, n, n);
    return LinearMap(d, {{X, false}}, {{X, false}});
}

LinearMap w_op(const RSystem& sys, const SpaceLabel& X, const Element& x, WReading reading) {
    const FactorizableGroup& G = sys.group();
    const std::size_t n = X.dim;
    Element b = star_inv(G, G.inv(x));
    Matrix R12inv = reading == WReading::Covariant ? guarded_inverse(sys.r(X, X, b, x), "R")
                                                   : guarded_inverse(sys.r(X, X, x, b), "R");
    Matrix A = partial_transpose(guarded_inverse(partial_transpose(R12inv, 2, n, n), "(R^{-1})^{t2}"), 2, n, n);
    std::vector<std::size_t> dims{n, n, n};
    Matrix P = swap_matrix(n, n);
    Matrix M = embed2(P, dims, 0, 1) * embed2(A, dims, 0, 1) * embed2(P, dims, 0, 2) *
               embed2(sys.r(X, X, b, x), dims, 0, 2);
    Matrix w = Matrix::Zero(n, n);
    for (std::size_t a1 = 0; a1 < n; ++a1)
        for (std::size_t a2 = 0; a2 < n; ++a2)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) w(i, k) += M((a1 * n + a2) * n + i, (a1 * n + a2) * n + k);
    return LinearMap(w, {{X, false}}, {{X, false}});
}

json IdentityReport::to_json() const {
    json a = json::array();
    for (const auto& it : items)
        a.push_back({{"identity", it.name},
                     {"reading", it.reading},
                     {"residual", it.residual},
                     {"pass", it.pass},
                     {"asserted", it.asserted}});
    return {{"pass", pass}, {"identities", a}};
}

IdentityReport check_identities(const RSystem& sys, const SpaceLabel& X, const SpaceLabel& Y, const Element& x,
                                const Element& y, double tol) {
    const FactorizableGroup& G = sys.group();
    const std::size_t nx = X.dim, ny = Y.dim;
    auto [a, b] = crossing_map(G, x, y);
    Matrix R = sys.r(X, Y, x, y);
    Matrix IX = Matrix::Identity(nx, nx), IY = Matrix::Identity(ny, ny);
    auto d1 = [&](const Element& g) { return kron(d_op(sys, X, g).m, IY); };
    auto d2 = [&](const Element& g) { return kron(IX, d_op(sys, Y, g).m); };
    auto inv = [](const Matrix& m) { return guarded_inverse(m, "identity operand"); };
    auto pt = [&](const Matrix& m, int f) { return partial_transpose(m, f, nx, ny); };

    IdentityReport rep;
    auto add = [&](std::string name, std::string reading, double res, bool asserted) {
        bool ok = res <= tol;
        rep.items.push_back({std::move(name), std::move(reading), res, ok, asserted});
        if (asserted) rep.pass = rep.pass && ok;
    };

    add("cr-1", "R(x,y) = d2(a)^-1 ((R^-1)^t2)^-1)^t2 d2(y)",
        frobenius(R - inv(d2(a)) * pt(inv(pt(inv(R), 2)), 2) * d2(y)), true);
    add("cr-2", "R(x,y) = d1(b)^-1 (((R^t1)^-1)^t1)^-1 d1(x)",
        frobenius(R - inv(d1(b)) * inv(pt(inv(pt(R, 1)), 1)) * d1(x)), true);
    {
        Matrix Rab = sys.r(X, Y, a, b);
        add("cr-2", "literal: R(a,b) = d1(y)^-1 (((R(a,b)^t1)^-1)^t1)^-1 d1(a)",
            frobenius(Rab - inv(d1(y)) * inv(pt(inv(pt(Rab, 1)), 1)) * d1(a)), false);
    }
    add("comm", "d1(b) d2(a) R(x,y) = R(x,y) d1(x) d2(y)", frobenius(d1(b) * d2(a) * R - R * d1(x) * d2(y)), true);

    for (auto reading : {WReading::Covariant, WReading::Literal}) {
        bool cov = reading == WReading::Covariant;
        std::string tag = cov ? "w(x) with R12^-1(b,x), R13(b,x), b = i(x^-1)" : "literal: R12^-1(x,b), R13(b,x)";
        Matrix wl = kron(IX, w_op(sys, Y, a, reading).m), wr = kron(IX, w_op(sys, Y, y, reading).m);
        add("w-left", tag, frobenius(wl * R - R * wr), cov);
        Matrix vl = kron(w_op(sys, X, b, reading).m, IY), vr = kron(w_op(sys, X, x, reading).m, IY);
        add("w-right", tag, frobenius(vl * R - R * vr), cov);
    }
    for (auto reading : {DInvReading::Covariant, DInvReading::Literal}) {
        bool cov = reading == DInvReading::Covariant;
        Matrix prod = d_op(sys, X, x).m * d_op_inv(sys, X, x, reading).m;
        add("d-inverse", cov ? "R(i(a^-1), a)" : "literal: R(i(a)^-1, a)",
            frobenius(prod - Matrix::Identity(nx, nx)), cov);
    }
    return rep;
}

}  // namespace hol
