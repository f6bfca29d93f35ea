#include "qtcs/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace qtcs {

const char* cmp_text(Cmp c) {
    switch (c) {
        case Cmp::Lt: return "<";
        case Cmp::Le: return "<=";
        case Cmp::Eq: return "=";
        case Cmp::Ne: return "!=";
        case Cmp::Gt: return ">";
        case Cmp::Ge: return ">=";
    }
    return "?";
}

namespace {

struct Token {
    enum class Kind { Ident, Cmp, And, Or, Not, LParen, RParen, End };
    Kind kind;
    std::size_t pos;
    std::string text;
    Cmp cmp = Cmp::Lt;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
        tok_.pos = pos_;
        if (pos_ >= text_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            tok_.kind = Token::Kind::Ident;
            tok_.text = std::string(text_.substr(pos_, end - pos_));
            pos_ = end;
            return;
        }
        switch (c) {
            case '&': tok_.kind = Token::Kind::And; ++pos_; return;
            case '|': tok_.kind = Token::Kind::Or; ++pos_; return;
            case '(': tok_.kind = Token::Kind::LParen; ++pos_; return;
            case ')': tok_.kind = Token::Kind::RParen; ++pos_; return;
            case '<':
                tok_.kind = Token::Kind::Cmp;
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                    tok_.cmp = Cmp::Le;
                    pos_ += 2;
                } else {
                    tok_.cmp = Cmp::Lt;
                    ++pos_;
                }
                return;
            case '>':
                tok_.kind = Token::Kind::Cmp;
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                    tok_.cmp = Cmp::Ge;
                    pos_ += 2;
                } else {
                    tok_.cmp = Cmp::Gt;
                    ++pos_;
                }
                return;
            case '=': tok_.kind = Token::Kind::Cmp; tok_.cmp = Cmp::Eq; ++pos_; return;
            case '!':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                    tok_.kind = Token::Kind::Cmp;
                    tok_.cmp = Cmp::Ne;
                    pos_ += 2;
                } else {
                    tok_.kind = Token::Kind::Not;
                    ++pos_;
                }
                return;
            default: throw ParseError(pos_, std::string("unexpected character '") + c + "'");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token tok_;
};

class FormulaParser {
public:
    FormulaParser(std::string_view text, const std::vector<std::string>* declared)
        : lexer_(text) {
        if (declared) {
            declared_only_ = true;
            vars_ = *declared;
            for (std::size_t i = 0; i < vars_.size(); ++i) index_[vars_[i]] = static_cast<int>(i);
        }
    }

    Formula parse() {
        FormulaNode root = disjunction();
        const Token& t = lexer_.peek();
        if (t.kind != Token::Kind::End) throw ParseError(t.pos, "trailing input");
        return Formula{std::move(vars_), std::move(root)};
    }

private:
    FormulaNode disjunction() {
        FormulaNode first = conjunction();
        if (lexer_.peek().kind != Token::Kind::Or) return first;
        FormulaNode node;
        node.kind = FormulaNode::Kind::Or;
        node.children.push_back(std::move(first));
        while (lexer_.peek().kind == Token::Kind::Or) {
            lexer_.take();
            node.children.push_back(conjunction());
        }
        return node;
    }

    FormulaNode conjunction() {
        FormulaNode first = unary();
        if (lexer_.peek().kind != Token::Kind::And) return first;
        FormulaNode node;
        node.kind = FormulaNode::Kind::And;
        node.children.push_back(std::move(first));
        while (lexer_.peek().kind == Token::Kind::And) {
            lexer_.take();
            node.children.push_back(unary());
        }
        return node;
    }

    FormulaNode unary() {
        const Token& t = lexer_.peek();
        if (t.kind == Token::Kind::Not) {
            lexer_.take();
            FormulaNode node;
            node.kind = FormulaNode::Kind::Not;
            node.children.push_back(unary());
            return node;
        }
        if (t.kind == Token::Kind::LParen) {
            lexer_.take();
            FormulaNode inner = disjunction();
            const Token close = lexer_.take();
            if (close.kind != Token::Kind::RParen)
                throw ParseError(close.pos, "expected ')'");
            return inner;
        }
        return atom();
    }

    FormulaNode atom() {
        const Token lhs = lexer_.take();
        if (lhs.kind != Token::Kind::Ident)
            throw ParseError(lhs.pos, "expected variable");
        const Token op = lexer_.take();
        if (op.kind != Token::Kind::Cmp)
            throw ParseError(op.pos, "expected comparison operator");
        const Token rhs = lexer_.take();
        if (rhs.kind != Token::Kind::Ident)
            throw ParseError(rhs.pos, "expected variable");
        const int lhs_index = var_index(lhs);  // intern in appearance order
        const int rhs_index = var_index(rhs);
        return FormulaNode::atom(lhs_index, op.cmp, rhs_index);
    }

    int var_index(const Token& t) {
        auto it = index_.find(t.text);
        if (it != index_.end()) return it->second;
        if (declared_only_)
            throw ParseError(t.pos, "unknown variable '" + t.text + "'");
        const int idx = static_cast<int>(vars_.size());
        vars_.push_back(t.text);
        index_[t.text] = idx;
        return idx;
    }

    Lexer lexer_;
    bool declared_only_ = false;
    std::vector<std::string> vars_;
    std::map<std::string, int> index_;
};

}  // namespace

Formula parse_formula(std::string_view text) {
    return FormulaParser(text, nullptr).parse();
}

Formula parse_formula(std::string_view text, const std::vector<std::string>& declared) {
    return FormulaParser(text, &declared).parse();
}

bool eval_node(const FormulaNode& n, std::span<const int> ranks) {
    switch (n.kind) {
        case FormulaNode::Kind::Atom:
            return cmp_holds(n.cmp, ranks[static_cast<std::size_t>(n.lhs)],
                             ranks[static_cast<std::size_t>(n.rhs)]);
        case FormulaNode::Kind::And:
            return std::all_of(n.children.begin(), n.children.end(),
                               [&](const FormulaNode& c) { return eval_node(c, ranks); });
        case FormulaNode::Kind::Or:
            return std::any_of(n.children.begin(), n.children.end(),
                               [&](const FormulaNode& c) { return eval_node(c, ranks); });
        case FormulaNode::Kind::Not: return !eval_node(n.children.front(), ranks);
    }
    return false;
}

bool eval_node_values(const FormulaNode& n, std::span<const Rational> values) {
    switch (n.kind) {
        case FormulaNode::Kind::Atom:
            return cmp_holds(n.cmp, values[static_cast<std::size_t>(n.lhs)],
                             values[static_cast<std::size_t>(n.rhs)]);
        case FormulaNode::Kind::And:
            return std::all_of(n.children.begin(), n.children.end(), [&](const FormulaNode& c) {
                return eval_node_values(c, values);
            });
        case FormulaNode::Kind::Or:
            return std::any_of(n.children.begin(), n.children.end(), [&](const FormulaNode& c) {
                return eval_node_values(c, values);
            });
        case FormulaNode::Kind::Not: return !eval_node_values(n.children.front(), values);
    }
    return false;
}

bool eval_formula(const Formula& f, const WeakOrder& w) {
    if (w.arity() != static_cast<int>(f.vars.size()))
        throw std::invalid_argument("orbit arity does not match formula variables");
    return eval_node(f.root, w.ranks());
}

TemporalRelation relation_of_formula(const Formula& f) {
    return relation_of_formula(f, f.vars);
}

TemporalRelation relation_of_formula(const Formula& f, const std::vector<std::string>& vars) {
    if (static_cast<int>(vars.size()) > kMaxArity)
        throw std::invalid_argument("arity cap exceeded");
    // Remap formula variable indices into the target variable list.
    std::vector<int> remap(f.vars.size());
    for (std::size_t i = 0; i < f.vars.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), f.vars[i]);
        if (it == vars.end())
            throw std::invalid_argument("formula variable '" + f.vars[i] +
                                        "' missing from variable list");
        remap[i] = static_cast<int>(it - vars.begin());
    }
    std::vector<WeakOrder> orbits;
    std::vector<int> local(f.vars.size());
    for_each_weak_order(static_cast<int>(vars.size()), [&](const WeakOrder& w) {
        for (std::size_t i = 0; i < remap.size(); ++i)
            local[i] = w.rank(remap[i]);
        if (eval_node(f.root, local)) orbits.push_back(w);
    });
    return TemporalRelation(static_cast<int>(vars.size()), std::move(orbits));
}

bool entails(const TemporalRelation& R, const Formula& f,
             const std::vector<std::string>& coord_names) {
    if (static_cast<int>(coord_names.size()) != R.arity())
        throw std::invalid_argument("coordinate names must match relation arity");
    std::vector<int> remap(f.vars.size());
    for (std::size_t i = 0; i < f.vars.size(); ++i) {
        auto it = std::find(coord_names.begin(), coord_names.end(), f.vars[i]);
        if (it == coord_names.end())
            throw std::invalid_argument("formula variable '" + f.vars[i] +
                                        "' is not a coordinate of the relation");
        remap[i] = static_cast<int>(it - coord_names.begin());
    }
    std::vector<int> local(f.vars.size());
    for (const WeakOrder& w : R.orbits()) {
        for (std::size_t i = 0; i < remap.size(); ++i)
            local[i] = w.rank(remap[i]);
        if (!eval_node(f.root, local)) return false;
    }
    return true;
}

std::string print_dnf(const TemporalRelation& R, std::span<const std::string> vars) {
    if (static_cast<int>(vars.size()) != R.arity())
        throw std::invalid_argument("variable list must match arity");
    if (R.arity() == 0) throw std::invalid_argument("cannot print arity-0 relation");
    if (R.is_empty()) return vars[0] + " < " + vars[0];
    std::string out;
    for (const WeakOrder& w : R.orbits()) {
        if (!out.empty()) out += " | ";
        // Chain coordinates sorted by (rank, index); adjacent links are = or <.
        std::vector<int> order(static_cast<std::size_t>(w.arity()));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return w.rank(a) < w.rank(b); });
        std::string conj;
        if (w.arity() == 1) {
            conj = vars[static_cast<std::size_t>(order[0])] + " = " + vars[static_cast<std::size_t>(order[0])];
        } else {
            for (std::size_t i = 0; i + 1 < order.size(); ++i) {
                if (i) conj += " & ";
                const int a = order[i];
                const int b = order[i + 1];
                conj += vars[static_cast<std::size_t>(a)];
                conj += w.rank(a) == w.rank(b) ? " = " : " < ";
                conj += vars[static_cast<std::size_t>(b)];
            }
        }
        out += "(" + conj + ")";
    }
    return out;
}

}  // namespace qtcs
