#include "fretchet/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "fretchet/errors.hpp"

namespace fretchet {
namespace {

struct Token {
    enum class Kind { Num, Ident, Sym, End };
    Kind kind;
    std::string text;
    double num = 0.0;
    bool integer = false;
    std::size_t line = 1;
    std::size_t col = 1;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t{Token::Kind::Sym, "", 0.0, false, line, col};
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            bool integer = true;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j + 1 < s.size() && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
                integer = false;
                ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
                if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
                    integer = false;
                    j = k;
                    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                }
            }
            t.kind = Token::Kind::Num;
            t.text = std::string(s.substr(i, j - i));
            t.integer = integer;
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.num);
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            t.kind = Token::Kind::Ident;
            t.text = std::string(s.substr(i, j - i));
            advance(j - i);
        } else if (s.substr(i, 3) == "(x)") {
            t.text = "(x)";
            advance(3);
        } else if (s.substr(i, 2) == "*." || s.substr(i, 2) == "->") {
            t.text = std::string(s.substr(i, 2));
            advance(2);
        } else if (std::string_view("()[]{},.+-*:^").find(c) != std::string_view::npos) {
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw ParseError(line, col, "a token, found '" + std::string(1, c) + "'");
        }
        out.push_back(std::move(t));
    }
    out.push_back({Token::Kind::End, "", 0.0, false, line, col});
    return out;
}

const std::set<std::string, std::less<>> prim_names{"sin", "cos", "exp", "ln", "tanh"};
const std::set<std::string, std::less<>> bilin_names{"mul", "dot", "matvec", "tensor", "hadamard", "contract"};
// Linear atoms that may appear bare inside a function term.
const std::set<std::string, std::less<>> bare_lin_names{
    "id",   "zero",       "proj",   "inj",    "red",     "contractL",   "contractR", "bra", "ibra", "ket",
    "iket", "ttranspose", "assoc",  "assoc_inv", "distrib", "distrib_inv", "zip",   "unzip", "dup", "plus",
    "sum",  "rep",        "scan"};

std::optional<UnitaryKind> unitary_by_name(std::string_view name) {
    for (auto u : all_unitaries)
        if (name == unitary_name(u)) return u;
    return std::nullopt;
}

std::optional<BilinKind> bilin_by_name(std::string_view name) {
    for (auto b : {BilinKind::Contract, BilinKind::TensorProd, BilinKind::Inner, BilinKind::ScalarMul,
                   BilinKind::MatVec, BilinKind::Hadamard})
        if (name == bilin_name(b)) return b;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    void finish() {
        if (peek().kind != Token::Kind::End) fail("end of input");
    }

    // ---- index sets and values ----

    IndexSet index_set() {
        IndexSet x = index_prod();
        while (accept("+")) x = IndexSet::sum(x, index_prod());
        return x;
    }

    IndexSet index_prod() {
        IndexSet x = index_atom();
        while (accept("*")) x = IndexSet::prod(x, index_atom());
        return x;
    }

    IndexSet index_atom() {
        if (accept("(")) {
            IndexSet x = index_set();
            expect(")");
            return x;
        }
        return IndexSet::seg(integer("an index set"));
    }

    IndexValue index_value() {
        if (accept_ident("inl")) return IndexValue::inl(index_value());
        if (accept_ident("inr")) return IndexValue::inr(index_value());
        if (accept("(")) {
            IndexValue a = index_value();
            expect(",");
            IndexValue b = index_value();
            expect(")");
            return IndexValue::pair(std::move(a), std::move(b));
        }
        return IndexValue::natural(integer("an index value"));
    }

    // ---- spaces ----

    Space space() {
        Space s = space_pow();
        while (accept("(x)")) s = Space::tensor(s, space_pow());
        return s;
    }

    Space space_pow() {
        Space s = space_atom();
        while (accept("^")) s = Space::pow(index_atom(), s);
        return s;
    }

    Space space_atom() {
        const Token& t = peek();
        if (accept_ident("R")) return Space::scalar();
        if (t.kind == Token::Kind::Num && t.integer && t.num == 0) {
            next();
            return Space::zero();
        }
        if (accept("(")) {
            Space s = space();
            expect(")");
            return s;
        }
        if (accept("{")) {
            std::vector<Space> cs;
            if (!accept("}")) {
                do cs.push_back(space());
                while (accept(","));
                expect("}");
            }
            return Space::tuple(std::move(cs));
        }
        fail("a space");
    }

    // ---- vectors ----

    Vector vec() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Num || is_sym("-")) return Vector::scalar(number());
        if (accept_ident("zero")) {
            expect("[");
            Space s = space();
            expect("]");
            return Vector::zero(s);
        }
        if (accept_ident("tensor")) return tensor_literal();
        if (accept("(")) {
            std::vector<Vector> items;
            if (accept(")")) return Vector::tuple({});
            items.push_back(vec());
            if (accept(",")) {
                if (accept(")")) return Vector::tuple(std::move(items));
                do items.push_back(vec());
                while (accept(","));
            }
            expect(")");
            return Vector::tuple(std::move(items));
        }
        if (accept("[")) {
            std::optional<IndexSet> x;
            if (is_index_prefix()) {
                x = index_set();
                expect(":");
            }
            std::vector<Vector> items;
            if (!is_sym("]")) {
                do items.push_back(vec());
                while (accept(","));
            }
            expect("]");
            if (!x) x = IndexSet::seg(items.size());
            if (items.empty()) fail("at least one element in a copower literal");
            return Vector::copower(*x, std::move(items));
        }
        fail("a vector");
    }

    Vector tensor_literal() {
        if (accept("[")) {
            Space l = space();
            expect(",");
            Space r = space();
            expect("]");
            expect("{");
            std::vector<TensorTerm> terms;
            if (!is_sym("}")) terms = tensor_terms();
            expect("}");
            return Vector::tensor(l, r, std::move(terms));
        }
        expect("{");
        if (is_sym("}")) fail("a tensor term (use tensor[U, V]{} for an empty sum)");
        auto terms = tensor_terms();
        expect("}");
        Space l = terms.front().left.space(), r = terms.front().right.space();
        return Vector::tensor(l, r, std::move(terms));
    }

    std::vector<TensorTerm> tensor_terms() {
        std::vector<TensorTerm> terms;
        do {
            double c = 1.0;
            // A leading number followed by '*' is a coefficient, otherwise the left factor.
            if (peek().kind == Token::Kind::Num && peek(1).text == "*") {
                c = number();
                expect("*");
            } else if (is_sym("-") && peek(1).kind == Token::Kind::Num && peek(2).text == "*") {
                c = number();
                expect("*");
            }
            Vector l = vec();
            expect("(x)");
            Vector r = vec();
            terms.push_back({c, l, r});
        } while (accept(","));
        return terms;
    }

    // ---- linear terms ----

    LinTerm lin() {
        LinTerm f = lin_comp();
        while (accept("+")) f = plus_map(f, lin_comp());
        return f;
    }

    LinTerm lin_comp() {
        LinTerm g = lin_atom();
        if (accept(".")) return comp(g, lin_comp());
        return g;
    }

    bool starts_scale() const {
        if (peek().kind == Token::Kind::Num) return peek(1).text == "*.";
        return is_sym("-") && peek(1).kind == Token::Kind::Num && peek(2).text == "*.";
    }

    LinTerm lin_atom() {
        if (accept("(")) {
            LinTerm f = lin();
            expect(")");
            return f;
        }
        if (peek().kind == Token::Kind::Ident) {
            const std::string name = peek().text;
            if (name == "par") {
                next();
                auto x = opt_index_annot();
                auto parts = lin_list();
                return par_map(std::move(parts), x);
            }
            if (name == "fanout") {
                next();
                auto x = opt_index_annot();
                auto parts = lin_list();
                return fanout(std::move(parts), x);
            }
            if (name == "pow") {
                next();
                IndexSet x = index_atom();
                return pow_map(x, lin_atom());
            }
        }
        if (auto f = lin_leaf()) return *f;
        fail("a linear term");
    }

    std::vector<LinTerm> lin_list() {
        expect("(");
        std::vector<LinTerm> parts;
        if (!accept(")")) {
            do parts.push_back(lin());
            while (accept(","));
            expect(")");
        }
        return parts;
    }

    // Atoms shared by linear and function terms.
    std::optional<LinTerm> lin_leaf() {
        if (starts_scale()) {
            const double k = number();
            expect("*.");
            return scale_map(k, opt_space_annot());
        }
        if (peek().kind != Token::Kind::Ident) return std::nullopt;
        const std::string name = peek().text;
        if (auto u = unitary_by_name(name)) {
            next();
            return unitary(*u, opt_space_annot());
        }
        if (!bare_lin_names.count(name)) return std::nullopt;
        next();
        if (name == "id") return id_map(opt_space_annot());
        if (name == "zero") return zero_annot();
        if (name == "proj") {
            auto fam = opt_space_annot();
            return proj(integer("a projection index"), fam);
        }
        if (name == "inj") {
            std::optional<Space> fam;
            std::optional<IndexSet> hint;
            if (accept("[")) {
                if (accept("^")) hint = index_set();
                else fam = space();
                expect("]");
            }
            return inj(integer("an injection index"), fam, hint);
        }
        if (name == "red") return red_literal();
        if (name == "contractL") {
            auto ctx = opt_space_annot();
            return contract_l(vec(), ctx);
        }
        if (name == "contractR") {
            auto ctx = opt_space_annot();
            return contract_r(vec(), ctx);
        }
        if (name == "dup") return dup(opt_space_annot());
        if (name == "plus") return plus(opt_space_annot());
        if (name == "sum") {
            auto body = opt_space_annot();
            return sum_over(index_atom(), body);
        }
        if (name == "rep") {
            auto body = opt_space_annot();
            return rep(index_atom(), body);
        }
        // scan
        auto body = opt_space_annot();
        return scan(integer("a scan length"), body);
    }

    LinTerm zero_annot() {
        std::optional<Space> d, c;
        if (accept("[")) {
            if (!is_sym("->")) d = space();
            if (accept("->") && !is_sym("]")) c = space();
            expect("]");
        }
        return zero_map(d, c);
    }

    LinTerm red_literal() {
        auto body = opt_space_annot();
        std::optional<IndexSet> x, y;
        if (!is_sym("{")) {
            x = index_set();
            expect("->");
            y = index_set();
        }
        const Token& open = peek();
        expect("{");
        std::vector<std::pair<IndexValue, IndexValue>> pairs;
        if (!is_sym("}")) {
            do {
                expect("(");
                IndexValue a = index_value();
                expect(",");
                IndexValue b = index_value();
                expect(")");
                pairs.emplace_back(std::move(a), std::move(b));
            } while (accept(","));
        }
        expect("}");
        if (!x) {
            std::size_t mx = 0, my = 0;
            for (const auto& [a, b] : pairs) {
                if (a.kind != IndexValue::Kind::Nat || b.kind != IndexValue::Kind::Nat)
                    throw ParseError(open.line, open.col, "explicit index sets 'X -> Y' for non-numeric pairs");
                mx = std::max(mx, a.nat);
                my = std::max(my, b.nat);
            }
            if (pairs.empty()) throw ParseError(open.line, open.col, "explicit index sets 'X -> Y' for an empty relation");
            x = IndexSet::seg(mx);
            y = IndexSet::seg(my);
        }
        return red(Relation::from_values(*x, *y, pairs), body);
    }

    // ---- function terms ----

    FunTerm fun() {
        FunTerm f = fun_mul();
        for (;;) {
            if (accept("+")) f = fadd(f, fun_mul());
            else if (accept("-")) f = fsub(f, fun_mul());
            else return f;
        }
    }

    FunTerm fun_mul() {
        FunTerm f = fun_comp();
        while (accept("*")) f = fmul(f, fun_comp());
        return f;
    }

    FunTerm fun_comp() {
        FunTerm g = fun_atom();
        if (accept(".")) return f_comp(g, fun_comp());
        return g;
    }

    bool starts_fun_atom() const {
        const Token& t = peek();
        if (t.kind == Token::Kind::Ident)
            return prim_names.count(t.text) || bilin_names.count(t.text) || bare_lin_names.count(t.text) ||
                   unitary_by_name(t.text) || t.text == "pow" || t.text == "par" || t.text == "fanout" ||
                   t.text == "const" || t.text == "lin";
        return is_sym("(") || starts_scale();
    }

    FunTerm fun_atom() {
        if (accept("(")) {
            FunTerm f = fun();
            expect(")");
            return f;
        }
        if (peek().kind == Token::Kind::Ident) {
            const std::string name = peek().text;
            if (prim_names.count(name)) {
                next();
                if (name == "sin") return f_prim(prim_sin());
                if (name == "cos") return f_prim(prim_cos());
                if (name == "exp") return f_prim(prim_exp());
                if (name == "ln") return f_prim(prim_ln());
                return f_prim(prim_tanh());
            }
            if (auto b = bilin_by_name(name)) {
                next();
                return f_bilin(*b);
            }
            if (name == "pow") {
                next();
                return fun_pow();
            }
            if (name == "par") {
                next();
                auto x = opt_index_annot();
                return f_par(fun_list(), x);
            }
            if (name == "fanout") {
                next();
                return ffanout(fun_list());
            }
            if (name == "const") {
                next();
                return f_const(vec());
            }
            if (name == "lin") {
                next();
                expect("(");
                LinTerm h = lin();
                expect(")");
                return f_lin(h);
            }
        }
        if (auto h = lin_leaf()) return f_lin(*h);
        fail("a function term");
    }

    // `pow K` is the power primitive; `pow X f` is the copower of f.
    FunTerm fun_pow() {
        if (is_sym("(")) {
            IndexSet x = index_atom();
            return f_pow(x, fun_atom());
        }
        const Token& at = peek();
        const bool negative = accept("-");
        const std::size_t n = integer("an exponent or index set");
        if (!negative && starts_fun_atom()) return f_pow(IndexSet::seg(n), fun_atom());
        if (n == 0) throw ParseError(at.line, at.col, "a nonzero exponent");
        const long k = negative ? -static_cast<long>(n) : static_cast<long>(n);
        return f_prim(prim_pow(static_cast<int>(k)));
    }

    std::vector<FunTerm> fun_list() {
        expect("(");
        std::vector<FunTerm> parts;
        if (!accept(")")) {
            do parts.push_back(fun());
            while (accept(","));
            expect(")");
        }
        return parts;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    bool is_sym(std::string_view s) const { return peek().kind == Token::Kind::Sym && peek().text == s; }

    bool accept(std::string_view s) {
        if (!is_sym(s)) return false;
        next();
        return true;
    }

    bool accept_ident(std::string_view s) {
        if (peek().kind != Token::Kind::Ident || peek().text != s) return false;
        next();
        return true;
    }

    void expect(std::string_view s) {
        if (!accept(s)) fail("'" + std::string(s) + "'");
    }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.col, what + ", found " + found);
    }

    std::size_t integer(const std::string& what) {
        const Token& t = peek();
        if (t.kind != Token::Kind::Num || !t.integer) fail(what);
        next();
        return static_cast<std::size_t>(t.num);
    }

    double number() {
        const bool negative = accept("-");
        const Token& t = peek();
        if (t.kind != Token::Kind::Num) fail("a number");
        next();
        return negative ? -t.num : t.num;
    }

    // Inside '[', an index set is followed by ':'.
    bool is_index_prefix() const {
        std::size_t depth = 0;
        for (std::size_t k = 0; pos_ + k < toks_.size(); ++k) {
            const Token& t = peek(k);
            if (t.kind == Token::Kind::End) return false;
            if (t.kind == Token::Kind::Sym) {
                if (t.text == "(") ++depth;
                else if (t.text == ")") {
                    if (depth == 0) return false;
                    --depth;
                } else if (t.text == ":" && depth == 0) return true;
                else if (t.text != "*" && t.text != "+") return false;
            } else if (t.kind != Token::Kind::Num || !t.integer) {
                return false;
            }
        }
        return false;
    }

    std::optional<Space> opt_space_annot() {
        if (!accept("[")) return std::nullopt;
        Space s = space();
        expect("]");
        return s;
    }

    std::optional<IndexSet> opt_index_annot() {
        if (!accept("[")) return std::nullopt;
        IndexSet x = index_set();
        expect("]");
        return x;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---- printing ----

std::string index_atom_str(const IndexSet& x) { return x.is_seg() ? to_string(x) : "(" + to_string(x) + ")"; }

std::string annot(const std::optional<Space>& s) { return s ? "[" + to_string(*s) + "]" : ""; }

std::optional<Space> red_body_of(const LinTerm& t) {
    if (const auto* r = t.as<lin::Red>()) return r->body;
    return std::nullopt;
}

// The printed sugar for a tagged node, if the node still has the tagged shape.
std::optional<std::string> lin_sugar(const LinTerm& t) {
    const auto& tag = t.sugar();
    if (!tag) return std::nullopt;
    const auto* c = t.as<lin::Comp>();
    switch (tag->kind) {
    case SugarTag::Kind::Dup:
        if (c && structurally_equal(t, dup(red_body_of(c->g)))) return "dup" + annot(red_body_of(c->g));
        break;
    case SugarTag::Kind::Rep:
        if (c && tag->index && structurally_equal(t, rep(*tag->index, red_body_of(c->g))))
            return "rep" + annot(red_body_of(c->g)) + " " + index_atom_str(*tag->index);
        break;
    case SugarTag::Kind::Plus:
        if (c && structurally_equal(t, plus(red_body_of(c->f)))) return "plus" + annot(red_body_of(c->f));
        break;
    case SugarTag::Kind::Sum:
        if (c && tag->index && structurally_equal(t, sum_over(*tag->index, red_body_of(c->f))))
            return "sum" + annot(red_body_of(c->f)) + " " + index_atom_str(*tag->index);
        break;
    case SugarTag::Kind::Scan:
        if (structurally_equal(t, scan(tag->n, red_body_of(t))))
            return "scan" + annot(red_body_of(t)) + " " + std::to_string(tag->n);
        break;
    }
    return std::nullopt;
}

std::string relation_str(const Relation& r) {
    bool infer = r.domain().is_seg() && r.codomain().is_seg() && !r.pairs().empty();
    if (infer) {
        std::size_t mx = 0, my = 0;
        for (const auto& [a, b] : r.pairs()) {
            mx = std::max(mx, a + 1);
            my = std::max(my, b + 1);
        }
        infer = mx == r.domain().n() && my == r.codomain().n();
    }
    if (infer) return to_string(r);
    return to_string(r.domain()) + " -> " + to_string(r.codomain()) + " " + to_string(r);
}

// Precedence levels: 0 sum, 1 composition, 2 atom.
std::string print_lin(const LinTerm& t, int ctx);

std::string lin_list_str(const std::vector<LinTerm>& parts) {
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += print_lin(parts[i], 0);
    }
    return out + ")";
}

std::string family_index_annot(const IndexSet& x, std::size_t parts) {
    if (x.is_seg() && x.n() == parts) return "";
    return "[" + to_string(x) + "]";
}

std::string print_lin(const LinTerm& t, int ctx) {
    if (auto s = lin_sugar(t)) return *s;
    auto wrap = [&](int level, std::string s) { return level < ctx ? "(" + s + ")" : s; };
    switch (t.kind()) {
    case LinTerm::Kind::Id:
        return "id" + annot(t.get<lin::Id>().space);
    case LinTerm::Kind::Zero: {
        const auto& z = t.get<lin::Zero>();
        if (!z.domain && !z.codomain) return "zero";
        std::string out = "zero[";
        if (z.domain) out += to_string(*z.domain) + " ";
        out += "->";
        if (z.codomain) out += " " + to_string(*z.codomain);
        return out + "]";
    }
    case LinTerm::Kind::Comp: {
        const auto& c = t.get<lin::Comp>();
        return wrap(1, print_lin(c.g, 2) + " . " + print_lin(c.f, 1));
    }
    case LinTerm::Kind::ContractL: {
        const auto& c = t.get<lin::ContractL>();
        return "contractL" + annot(c.context) + " " + to_string(c.v);
    }
    case LinTerm::Kind::ContractR: {
        const auto& c = t.get<lin::ContractR>();
        return "contractR" + annot(c.context) + " " + to_string(c.w);
    }
    case LinTerm::Kind::Scale: {
        const auto& s = t.get<lin::Scale>();
        return format_real(s.k) + " *." + annot(s.space);
    }
    case LinTerm::Kind::Inj: {
        const auto& i = t.get<lin::Inj>();
        std::string a = annot(i.family);
        if (!i.family && i.index_hint) a = "[^" + to_string(*i.index_hint) + "]";
        return "inj" + a + " " + std::to_string(i.ordinal);
    }
    case LinTerm::Kind::Proj: {
        const auto& p = t.get<lin::Proj>();
        return "proj" + annot(p.family) + " " + std::to_string(p.ordinal);
    }
    case LinTerm::Kind::Par: {
        const auto& p = t.get<lin::Par>();
        return "par" + family_index_annot(p.index, p.parts.size()) + lin_list_str(p.parts);
    }
    case LinTerm::Kind::Pow: {
        const auto& p = t.get<lin::Pow>();
        return "pow " + index_atom_str(p.index) + " " + print_lin(p.f, 2);
    }
    case LinTerm::Kind::Fanout: {
        const auto& p = t.get<lin::Fanout>();
        return "fanout" + family_index_annot(p.index, p.parts.size()) + lin_list_str(p.parts);
    }
    case LinTerm::Kind::Plus: {
        const auto& p = t.get<lin::Plus>();
        return wrap(0, print_lin(p.f, 0) + " + " + print_lin(p.g, 1));
    }
    case LinTerm::Kind::Red: {
        const auto& r = t.get<lin::Red>();
        return "red" + annot(r.body) + " " + relation_str(r.relation);
    }
    case LinTerm::Kind::Unitary: {
        const auto& u = t.get<lin::Unitary>();
        return unitary_name(u.kind) + annot(u.at);
    }
    }
    return {};
}

bool bare_in_fun(const LinTerm& h) {
    if (lin_sugar(h)) return true;
    switch (h.kind()) {
    case LinTerm::Kind::Comp:
    case LinTerm::Kind::Plus:
    case LinTerm::Kind::Par:
    case LinTerm::Kind::Pow:
    case LinTerm::Kind::Fanout:
        return false;
    default:
        return true;
    }
}

// Precedence levels: 0 sum/difference, 1 product, 2 composition, 3 atom.
std::string print_fun(const FunTerm& t, int ctx);

std::string fun_list_str(const std::vector<FunTerm>& parts) {
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += print_fun(parts[i], 0);
    }
    return out + ")";
}

std::optional<std::string> fun_sugar(const FunTerm& t, int ctx) {
    const auto& tag = t.sugar();
    if (!tag || t.kind() != FunTerm::Kind::Comp) return std::nullopt;
    auto wrap = [&](int level, std::string s) { return level < ctx ? "(" + s + ")" : s; };
    const auto& c = t.get<fun::Comp>();
    if (tag->kind == FunSugar::Kind::Fanout) {
        if (c.g.kind() != FunTerm::Kind::Par) return std::nullopt;
        const auto& parts = c.g.get<fun::Par>().parts;
        if (!structurally_equal(t, ffanout(parts))) return std::nullopt;
        return "fanout" + fun_list_str(parts);
    }
    if (c.f.kind() != FunTerm::Kind::Comp) return std::nullopt;
    const auto& inner = c.f.get<fun::Comp>();
    if (inner.g.kind() != FunTerm::Kind::Par || inner.g.get<fun::Par>().parts.size() != 2) return std::nullopt;
    const auto& a = inner.g.get<fun::Par>().parts[0];
    const auto& b = inner.g.get<fun::Par>().parts[1];
    switch (tag->kind) {
    case FunSugar::Kind::Add:
        if (structurally_equal(t, fadd(a, b))) return wrap(0, print_fun(a, 0) + " + " + print_fun(b, 1));
        break;
    case FunSugar::Kind::Sub:
        if (structurally_equal(t, fsub(a, b))) return wrap(0, print_fun(a, 0) + " - " + print_fun(b, 1));
        break;
    case FunSugar::Kind::Mul:
        if (structurally_equal(t, fmul(a, b))) return wrap(1, print_fun(a, 1) + " * " + print_fun(b, 2));
        break;
    default:
        break;
    }
    return std::nullopt;
}

std::string print_fun(const FunTerm& t, int ctx) {
    if (auto s = fun_sugar(t, ctx)) return *s;
    switch (t.kind()) {
    case FunTerm::Kind::Const:
        return "const " + to_string(t.get<fun::Const>().w);
    case FunTerm::Kind::Prim:
        return t.get<fun::Prim>().op.name();
    case FunTerm::Kind::Lin: {
        const auto& h = t.get<fun::Lin>().h;
        if (bare_in_fun(h)) return print_lin(h, 2);
        return "lin(" + print_lin(h, 0) + ")";
    }
    case FunTerm::Kind::Bilin:
        return bilin_name(t.get<fun::Bilin>().op);
    case FunTerm::Kind::Comp: {
        const auto& c = t.get<fun::Comp>();
        std::string s = print_fun(c.g, 3) + " . " + print_fun(c.f, 2);
        return ctx > 2 ? "(" + s + ")" : s;
    }
    case FunTerm::Kind::Par: {
        const auto& p = t.get<fun::Par>();
        return "par" + family_index_annot(p.index, p.parts.size()) + fun_list_str(p.parts);
    }
    case FunTerm::Kind::Pow: {
        const auto& p = t.get<fun::Pow>();
        return "pow " + index_atom_str(p.index) + " " + print_fun(p.f, 3);
    }
    }
    return {};
}

template <class T, class F>
T parse_all(std::string_view src, F f) {
    Parser p(src);
    T out = f(p);
    p.finish();
    return out;
}

}  // namespace

Space parse_space(std::string_view src) {
    return parse_all<Space>(src, [](Parser& p) { return p.space(); });
}

IndexSet parse_index_set(std::string_view src) {
    return parse_all<IndexSet>(src, [](Parser& p) { return p.index_set(); });
}

Vector parse_vec(std::string_view src) {
    return parse_all<Vector>(src, [](Parser& p) { return p.vec(); });
}

LinTerm parse_lin(std::string_view src) {
    return parse_all<LinTerm>(src, [](Parser& p) { return p.lin(); });
}

FunTerm parse_fun(std::string_view src) {
    return parse_all<FunTerm>(src, [](Parser& p) { return p.fun(); });
}

std::string to_string(const LinTerm& f) { return print_lin(f, 0); }

std::string to_string(const FunTerm& t) { return print_fun(t, 0); }

}  // namespace fretchet
