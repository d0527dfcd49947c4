#include "holonomy/diagram.hpp"

#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "holonomy/errors.hpp"

namespace hol {

std::size_t Piece::bottom_count() const {
    switch (kind) {
        case PieceKind::Id: return 1;
        case PieceKind::Cup: return 0;
        default: return 2;
    }
}

std::size_t Piece::top_count() const {
    switch (kind) {
        case PieceKind::Id: return 1;
        case PieceKind::Cap: return 0;
        default: return 2;
    }
}

std::vector<Orientation> Piece::bottom() const {
    switch (kind) {
        case PieceKind::Id: return {o1};
        case PieceKind::Cup: return {};
        default: return {o1, o2};
    }
}

std::vector<Orientation> Piece::top() const {
    switch (kind) {
        case PieceKind::Id: return {o1};
        case PieceKind::Cap: return {};
        case PieceKind::Cup: return {o1, o2};
        default: return {o2, o1};
    }
}

int Piece::crossing_sign() const {
    if (!is_crossing()) return 0;
    int s = kind == PieceKind::PosCross ? 1 : -1;
    return o1 == o2 ? s : -s;
}

namespace {

char letter(Orientation o) { return o == Orientation::Up ? 'u' : 'd'; }

struct UnionFind {
    std::vector<std::size_t> p;
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void join(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

}  // namespace

SlicedDiagram::SlicedDiagram(Signature bottom, std::vector<Row> rows) : rows_(std::move(rows)) {
    levels_.assign(1, std::move(bottom));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Signature& bot = levels_.back();
        Signature top;
        std::size_t k = 0;
        for (auto& p : rows_[r]) {
            if (k + p.bottom_count() > bot.size())
                throw SignatureMismatch("row " + std::to_string(r) + " consumes more strands than the level below has");
            switch (p.kind) {
                case PieceKind::Id:
                    if (bot[k] != p.o1)
                        throw SignatureMismatch("row " + std::to_string(r) + ", strand " + std::to_string(k) +
                                                ": orientation flips between rows");
                    break;
                case PieceKind::PosCross:
                case PieceKind::NegCross:
                    p.o1 = bot[k];
                    p.o2 = bot[k + 1];
                    break;
                case PieceKind::Cup:
                    if (p.o2 != flip(p.o1)) throw SignatureMismatch("cup ends must have opposite orientations");
                    break;
                case PieceKind::Cap:
                    if (p.o2 != flip(p.o1)) throw SignatureMismatch("cap ends must have opposite orientations");
                    if (bot[k] != p.o1 || bot[k + 1] != p.o2)
                        throw SignatureMismatch("row " + std::to_string(r) + ", strand " + std::to_string(k) +
                                                ": cap orientation does not match the strands below");
                    break;
            }
            auto t = p.top();
            top.insert(top.end(), t.begin(), t.end());
            k += p.bottom_count();
        }
        if (k != bot.size())
            throw SignatureMismatch("row " + std::to_string(r) + " covers " + std::to_string(k) + " of " +
                                    std::to_string(bot.size()) + " strands");
        levels_.push_back(std::move(top));
    }

    level_offset_.assign(1, 0);
    for (const auto& s : levels_) level_offset_.push_back(level_offset_.back() + s.size());
    const std::size_t n_edges = level_offset_.back();

    UnionFind uf(n_edges);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        std::size_t kb = 0, kt = 0;
        for (const auto& p : rows_[r]) {
            auto b = [&](std::size_t i) { return edge_id(r, kb + i); };
            auto t = [&](std::size_t i) { return edge_id(r + 1, kt + i); };
            switch (p.kind) {
                case PieceKind::Id: uf.join(b(0), t(0)); break;
                case PieceKind::PosCross:
                case PieceKind::NegCross:
                    uf.join(b(0), t(1));
                    uf.join(b(1), t(0));
                    break;
                case PieceKind::Cup: uf.join(t(0), t(1)); break;
                case PieceKind::Cap: uf.join(b(0), b(1)); break;
            }
            kb += p.bottom_count();
            kt += p.top_count();
        }
    }
    std::vector<std::size_t> comp_of_root(n_edges, n_edges);
    component_count_ = 0;
    edges_.clear();
    for (std::size_t l = 0; l < levels_.size(); ++l)
        for (std::size_t pos = 0; pos < levels_[l].size(); ++pos) {
            std::size_t id = edge_id(l, pos);
            std::size_t root = uf.find(id);
            if (comp_of_root[root] == n_edges) comp_of_root[root] = component_count_++;
            edges_.push_back({id, l, pos, levels_[l][pos], comp_of_root[root]});
        }
    // Components with no edges at all cannot occur: every piece but a cap has a top edge, every cap a bottom one.
    meets_bottom_.assign(component_count_, false);
    for (std::size_t pos = 0; pos < levels_[0].size(); ++pos) meets_bottom_[component_of(0, pos)] = true;

    framing_.assign(component_count_, 0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        auto off = offsets(r);
        for (std::size_t i = 0; i < rows_[r].size(); ++i) {
            const auto& p = rows_[r][i];
            if (!p.is_crossing()) continue;
            std::size_t c1 = component_of(r, off[i]), c2 = component_of(r, off[i] + 1);
            if (c1 == c2) framing_[c1] += p.crossing_sign();
        }
    }
}

SlicedDiagram SlicedDiagram::identity(const Signature& sig) { return SlicedDiagram(sig, {}); }

std::size_t SlicedDiagram::edge_id(std::size_t level, std::size_t position) const {
    if (level >= levels_.size() || position >= levels_[level].size())
        throw ShapeMismatch("no edge at level " + std::to_string(level) + ", position " + std::to_string(position));
    return level_offset_[level] + position;
}

std::size_t SlicedDiagram::component_of(std::size_t level, std::size_t position) const {
    return edges_.at(edge_id(level, position)).component;
}

bool SlicedDiagram::component_meets_bottom(std::size_t c) const { return meets_bottom_.at(c); }

std::size_t SlicedDiagram::crossing_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_)
        for (const auto& p : r) n += p.is_crossing();
    return n;
}

std::vector<std::size_t> SlicedDiagram::offsets(std::size_t r) const {
    std::vector<std::size_t> off;
    std::size_t k = 0;
    for (const auto& p : rows_.at(r)) {
        off.push_back(k);
        k += p.bottom_count();
    }
    return off;
}

json SlicedDiagram::to_json() const {
    auto sig_json = [](const Signature& s) {
        json a = json::array();
        for (auto o : s) a.push_back(std::string(1, letter(o)));
        return a;
    };
    json j;
    j["bottom"] = sig_json(bottom());
    j["top"] = sig_json(top());
    json rows = json::array();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        std::string line;
        for (const auto& p : rows_[r]) line += (line.empty() ? "" : " ") + hol::to_string(p, r == 0);
        rows.push_back(line.empty() ? "." : line);
    }
    j["rows"] = rows;
    json edges = json::array();
    for (const auto& e : edges_)
        edges.push_back({{"id", e.id},
                         {"level", e.level},
                         {"position", e.position},
                         {"orientation", std::string(1, letter(e.orientation))},
                         {"component", e.component}});
    j["edges"] = edges;
    json comps = json::array();
    for (std::size_t c = 0; c < component_count_; ++c) {
        json ids = json::array();
        for (const auto& e : edges_)
            if (e.component == c) ids.push_back(e.id);
        comps.push_back({{"id", c}, {"edges", ids}, {"framing", framing_[c]}, {"meets_bottom", meets_bottom_[c]}});
    }
    j["components"] = comps;
    j["crossings"] = crossing_count();
    return j;
}

Signature boundary_signature(const SlicedDiagram& d, Boundary which) {
    return which == Boundary::Bottom ? d.bottom() : d.top();
}

// ---------------------------------------------------------------- DSL

std::string to_string(const Piece& p, bool with_letters) {
    auto two = [&](const char* head) {
        return std::string(head) + "(" + letter(p.o1) + letter(p.o2) + ")";
    };
    switch (p.kind) {
        case PieceKind::Id: return std::string("|") + letter(p.o1);
        case PieceKind::PosCross: return with_letters ? two("X+") : "X+";
        case PieceKind::NegCross: return with_letters ? two("X-") : "X-";
        case PieceKind::Cup: return two("U");
        case PieceKind::Cap: return two("A");
    }
    return "?";
}

namespace {

struct Token {
    Piece piece;
    bool has_letters = false;
    std::size_t column = 0;
};

Orientation parse_letter(char c, std::size_t line, std::size_t col) {
    if (c == 'u') return Orientation::Up;
    if (c == 'd') return Orientation::Down;
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": orientation letter must be u or d");
}

Token parse_token(const std::string& tok, std::size_t line, std::size_t col) {
    auto err = [&](const std::string& msg) {
        return ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg + " '" +
                          tok + "'");
    };
    Token t;
    t.column = col;
    if (tok.size() == 2 && tok[0] == '|') {
        t.piece = Piece::id(parse_letter(tok[1], line, col + 1));
        t.has_letters = true;
        return t;
    }
    // HEAD or HEAD(ab) with HEAD one of X+, X-, U, A
    const auto paren = tok.find('(');
    const std::string head = tok.substr(0, paren);
    const bool letters = paren != std::string::npos && tok.size() == paren + 4 && tok.back() == ')';
    if (paren != std::string::npos && !letters) throw err("unknown token");
    Orientation a = Orientation::Up, b = Orientation::Up;
    if (letters) {
        a = parse_letter(tok[paren + 1], line, col + paren + 1);
        b = parse_letter(tok[paren + 2], line, col + paren + 2);
    }
    if (head == "X+" || head == "X-") {
        t.piece = Piece::cross(head == "X+", a, b);
        t.has_letters = letters;
    } else if (head == "U" || head == "A") {
        if (!letters) throw err("cup/cap needs orientation letters");
        if (a == b) throw err("cup/cap ends must have opposite orientations");
        t.piece = head == "U" ? Piece::cup(a) : Piece::cap(a);
        t.has_letters = true;
    } else {
        throw err("unknown token");
    }
    return t;
}

}  // namespace

SlicedDiagram parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::vector<Token>> rows;
    bool have_bottom = false;
    Signature bottom;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::vector<std::pair<std::string, std::size_t>> toks;
        for (std::size_t i = 0; i < line.size();) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            toks.emplace_back(line.substr(i, j - i), i + 1);
            i = j;
        }
        if (toks.empty()) continue;
        if (toks[0].first == "@bottom") {
            if (have_bottom || !rows.empty())
                throw ParseError("line " + std::to_string(line_no) + ": @bottom must be the first line");
            have_bottom = true;
            for (std::size_t k = 1; k < toks.size(); ++k) {
                if (toks[k].first.size() != 1)
                    throw ParseError("line " + std::to_string(line_no) + ", column " +
                                     std::to_string(toks[k].second) + ": expected u or d");
                bottom.push_back(parse_letter(toks[k].first[0], line_no, toks[k].second));
            }
            continue;
        }
        std::vector<Token> row;
        if (toks.size() == 1 && toks[0].first == ".") {
            rows.push_back(row);
            continue;
        }
        for (const auto& [tok, col] : toks) row.push_back(parse_token(tok, line_no, col));
        rows.push_back(std::move(row));
    }

    if (!have_bottom && !rows.empty()) {
        for (const auto& t : rows[0]) {
            if (t.piece.kind == PieceKind::Cup) continue;
            if (!t.has_letters)
                throw ParseError("line 1: cannot infer the bottom orientation of a crossing; write X+(uu) or add @bottom");
            auto b = t.piece.bottom();
            bottom.insert(bottom.end(), b.begin(), b.end());
        }
    }

    std::vector<Row> plain;
    for (const auto& r : rows) {
        Row pr;
        for (const auto& t : r) pr.push_back(t.piece);
        plain.push_back(std::move(pr));
    }
    SlicedDiagram d(bottom, plain);
    // Explicit letters on crossings must agree with the inferred strand orientations.
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t i = 0; i < rows[r].size(); ++i) {
            const auto& t = rows[r][i];
            if (t.piece.is_crossing() && t.has_letters && !(t.piece == d.rows()[r][i]))
                throw SignatureMismatch("row " + std::to_string(r) + ", column " + std::to_string(t.column) +
                                        ": crossing letters disagree with the strands below");
        }
    return d;
}

std::string render(const SlicedDiagram& d) {
    std::string out;
    bool header = d.rows().empty() && !d.bottom().empty();
    if (header) {
        out += "@bottom";
        for (auto o : d.bottom()) out += std::string(" ") + letter(o);
        out += "\n";
    }
    for (std::size_t r = 0; r < d.rows().size(); ++r) {
        std::string line;
        for (const auto& p : d.rows()[r]) line += (line.empty() ? "" : " ") + to_string(p, r == 0);
        out += (line.empty() ? "." : line) + "\n";
    }
    return out;
}

SlicedDiagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read diagram file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

// ---------------------------------------------------------------- composition

SlicedDiagram compose(const SlicedDiagram& lower, const SlicedDiagram& upper) {
    if (lower.top() != upper.bottom()) throw SignatureMismatch("compose: top of the lower diagram differs from the bottom of the upper one");
    auto rows = lower.rows();
    rows.insert(rows.end(), upper.rows().begin(), upper.rows().end());
    return SlicedDiagram(lower.bottom(), rows);
}

SlicedDiagram tensor(const SlicedDiagram& left, const SlicedDiagram& right) {
    const std::size_t n = std::max(left.row_count(), right.row_count());
    auto padded = [&](const SlicedDiagram& d, std::size_t r) {
        if (r < d.row_count()) return d.rows()[r];
        Row row;
        for (auto o : d.top()) row.push_back(Piece::id(o));
        return row;
    };
    std::vector<Row> rows;
    for (std::size_t r = 0; r < n; ++r) {
        Row row = padded(left, r);
        Row rr = padded(right, r);
        row.insert(row.end(), rr.begin(), rr.end());
        rows.push_back(std::move(row));
    }
    Signature bottom = left.bottom();
    bottom.insert(bottom.end(), right.bottom().begin(), right.bottom().end());
    return SlicedDiagram(bottom, rows);
}

}  // namespace hol
