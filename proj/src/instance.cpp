#include "qtcs/instance.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qtcs {

namespace {

std::string strip(const std::string& line) {
    std::string s = line;
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct LineError : ParseError {
    LineError(int line_no, std::size_t pos, const std::string& msg)
        : ParseError(pos, "line " + std::to_string(line_no) + ": " + msg) {}
};

// Cursor over one logical line.
struct Cursor {
    const std::string& text;
    int line_no;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!consume(c))
            throw LineError(line_no, pos, std::string("expected '") + c + "'");
    }
    std::string ident() {
        skip_ws();
        const std::size_t start = pos;
        if (pos >= text.size() ||
            !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            throw LineError(line_no, pos, "expected identifier");
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    }
    std::optional<Cmp> try_cmp() {
        skip_ws();
        if (pos >= text.size()) return std::nullopt;
        auto two = [&](char a, char b) {
            return pos + 1 < text.size() && text[pos] == a && text[pos + 1] == b;
        };
        if (two('<', '=')) { pos += 2; return Cmp::Le; }
        if (two('>', '=')) { pos += 2; return Cmp::Ge; }
        if (two('!', '=')) { pos += 2; return Cmp::Ne; }
        switch (text[pos]) {
            case '<': ++pos; return Cmp::Lt;
            case '>': ++pos; return Cmp::Gt;
            case '=': ++pos; return Cmp::Eq;
            default: return std::nullopt;
        }
    }
};

TemporalRelation comparison_relation(Cmp c) {
    Formula f;
    f.vars = {"a", "b"};
    f.root = FormulaNode::atom(0, c, 1);
    return relation_of_formula(f);
}

class FileParser {
public:
    ParsedFile parse(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            const std::string line = strip(raw);
            if (line.empty()) continue;
            Cursor cur{line, line_no};
            const std::string head = cur.ident();
            if (head == "rel") {
                parse_rel(cur);
            } else if (head == "csp") {
                begin_instance(cur, InstanceKind::Csp);
                parse_csp(cur);
            } else if (head == "qcsp") {
                begin_instance(cur, InstanceKind::Qcsp);
                parse_qcsp(cur);
            } else {
                throw LineError(line_no, 0, "expected 'rel', 'csp' or 'qcsp'");
            }
        }
        return std::move(file_);
    }

private:
    void begin_instance(const Cursor& cur, InstanceKind kind) {
        if (file_.instance)
            throw LineError(cur.line_no, cur.pos, "multiple instance lines");
        file_.instance.emplace();
        file_.instance->kind = kind;
    }

    void parse_rel(Cursor& cur) {
        const std::string name = cur.ident();
        if (file_.find(name))
            throw LineError(cur.line_no, cur.pos, "relation '" + name + "' redeclared");
        cur.expect('(');
        std::vector<std::string> params;
        while (true) {
            params.push_back(cur.ident());
            if (!cur.consume(',')) break;
        }
        cur.expect(')');
        for (std::size_t i = 0; i < params.size(); ++i) {
            for (std::size_t j = i + 1; j < params.size(); ++j) {
                if (params[i] == params[j])
                    throw LineError(cur.line_no, cur.pos, "repeated parameter '" + params[i] + "'");
            }
        }
        if (static_cast<int>(params.size()) > kMaxArity)
            throw LineError(cur.line_no, cur.pos, "arity cap exceeded");
        cur.expect(':');
        cur.expect('=');
        cur.skip_ws();
        const std::string body = cur.text.substr(cur.pos);
        Formula f;
        try {
            f = parse_formula(body, params);
        } catch (const ParseError& e) {
            throw LineError(cur.line_no, cur.pos + e.pos, e.what());
        }
        file_.relations.emplace_back(name, RelDecl{params, relation_of_formula(f, params)});
        cur.pos = cur.text.size();
    }

    int var_index(const std::string& name, int line_no, std::size_t pos) {
        Instance& inst = *file_.instance;
        auto it = std::find(inst.vars.begin(), inst.vars.end(), name);
        if (it != inst.vars.end()) return static_cast<int>(it - inst.vars.begin());
        if (inst.kind == InstanceKind::Qcsp)
            throw LineError(line_no, pos, "variable '" + name + "' not in prefix");
        inst.vars.push_back(name);
        return static_cast<int>(inst.vars.size()) - 1;
    }

    void parse_atom(Cursor& cur) {
        Instance& inst = *file_.instance;
        const std::size_t start = cur.pos;
        const std::string first = cur.ident();
        InstanceConstraint con;
        if (cur.consume('(')) {
            const RelDecl* decl = file_.find(first);
            if (!decl)
                throw LineError(cur.line_no, start, "undeclared relation '" + first + "'");
            std::vector<int> args;
            while (true) {
                const std::string v = cur.ident();
                args.push_back(var_index(v, cur.line_no, cur.pos));
                if (!cur.consume(',')) break;
            }
            cur.expect(')');
            if (args.size() != decl->params.size())
                throw LineError(cur.line_no, start,
                                "relation '" + first + "' expects " +
                                    std::to_string(decl->params.size()) + " arguments, got " +
                                    std::to_string(args.size()));
            con.rel_name = first;
            con.rel = decl->rel;
            con.args = std::move(args);
        } else {
            const auto cmp = cur.try_cmp();
            if (!cmp)
                throw LineError(cur.line_no, cur.pos, "expected comparison operator or '('");
            const std::string second = cur.ident();
            con.rel = comparison_relation(*cmp);
            con.args = {var_index(first, cur.line_no, start),
                        var_index(second, cur.line_no, cur.pos)};
        }
        con.display = strip(cur.text.substr(start, cur.pos - start));
        inst.constraints.push_back(std::move(con));
    }

    void parse_csp(Cursor& cur) {
        parse_atom(cur);
        while (cur.consume('&')) parse_atom(cur);
        if (!cur.at_end())
            throw LineError(cur.line_no, cur.pos, "trailing input after constraints");
    }

    void parse_qcsp(Cursor& cur) {
        Instance& inst = *file_.instance;
        while (true) {
            cur.skip_ws();
            const std::size_t start = cur.pos;
            if (cur.consume(':')) break;
            const std::string q = cur.ident();
            Quant quant;
            if (q == "forall") {
                quant = Quant::ForAll;
            } else if (q == "exists") {
                quant = Quant::Exists;
            } else {
                throw LineError(cur.line_no, start, "expected 'forall', 'exists' or ':'");
            }
            const std::string v = cur.ident();
            if (std::find(inst.vars.begin(), inst.vars.end(), v) != inst.vars.end())
                throw LineError(cur.line_no, start, "duplicate prefix variable '" + v + "'");
            inst.vars.push_back(v);
            inst.quants.push_back(quant);
        }
        if (inst.vars.empty())
            throw LineError(cur.line_no, cur.pos, "empty quantifier prefix");
        parse_atom(cur);
        while (cur.consume('&')) parse_atom(cur);
        if (!cur.at_end())
            throw LineError(cur.line_no, cur.pos, "trailing input after constraints");
    }

    ParsedFile file_;
};

}  // namespace

const RelDecl* ParsedFile::find(const std::string& name) const {
    for (const auto& [n, decl] : relations) {
        if (n == name) return &decl;
    }
    return nullptr;
}

ParsedFile parse_file(const std::string& text) {
    return FileParser{}.parse(text);
}

Instance parse_instance(const std::string& text) {
    ParsedFile f = parse_file(text);
    if (!f.instance) throw ParseError(0, "no csp/qcsp line in input");
    return std::move(*f.instance);
}

}  // namespace qtcs
