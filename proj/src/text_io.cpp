#include <algorithm>
#include <optional>
#include <sstream>

#include "graphlift/strips.hpp"

namespace graphlift {

namespace {

// S-expression tree with source positions.
struct Node {
    bool is_list = false;
    std::string token;
    std::vector<Node> children;
    int line = 1;
    int col = 1;
};

class Tokenizer {
  public:
    explicit Tokenizer(const std::string& text) : text_(text) {}

    Node parse_one() {
        skip_ws();
        if (eof()) fail("unexpected end of input");
        Node n;
        n.line = line_;
        n.col = col_;
        if (peek() == '(') {
            advance();
            n.is_list = true;
            while (true) {
                skip_ws();
                if (eof()) throw ParseError(n.line, n.col, "unclosed '('");
                if (peek() == ')') {
                    advance();
                    break;
                }
                n.children.push_back(parse_one());
            }
        } else if (peek() == ')') {
            fail("unexpected ')'");
        } else {
            while (!eof() && !isspace(static_cast<unsigned char>(peek())) && peek() != '(' &&
                   peek() != ')' && peek() != ';')
                n.token.push_back(take());
        }
        return n;
    }

    void expect_eof() {
        skip_ws();
        if (!eof()) fail("trailing content after top-level form");
    }

  private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char take() {
        char c = text_[pos_];
        advance();
        return c;
    }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_ws() {
        while (!eof()) {
            if (isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else if (peek() == ';') {
                while (!eof() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

[[noreturn]] void fail_at(const Node& n, const std::string& msg) {
    throw ParseError(n.line, n.col, msg);
}

const std::string& symbol(const Node& n, const std::string& what) {
    if (n.is_list) fail_at(n, "expected " + what + ", got a list");
    return n.token;
}

void expect_head(const Node& n, const std::string& head) {
    if (!n.is_list || n.children.empty() || n.children[0].is_list || n.children[0].token != head)
        fail_at(n, "expected (" + head + " ...)");
}

struct RawLiteral {
    std::string predicate;
    std::vector<std::string> args;
    bool positive = true;
    int line = 1, col = 1;
};

RawLiteral parse_literal_node(const Node& n) {
    RawLiteral lit;
    lit.line = n.line;
    lit.col = n.col;
    const Node* atom = &n;
    if (n.is_list && !n.children.empty() && !n.children[0].is_list && n.children[0].token == "not") {
        if (n.children.size() != 2) fail_at(n, "(not ...) takes exactly one atom");
        lit.positive = false;
        atom = &n.children[1];
    }
    if (!atom->is_list || atom->children.empty() || atom->children[0].is_list)
        fail_at(*atom, "expected an atom (predicate args...)");
    lit.predicate = atom->children[0].token;
    for (std::size_t i = 1; i < atom->children.size(); ++i)
        lit.args.push_back(symbol(atom->children[i], "argument"));
    return lit;
}

std::vector<RawLiteral> parse_condition(const Node& n) {
    std::vector<RawLiteral> lits;
    if (n.is_list && !n.children.empty() && !n.children[0].is_list && n.children[0].token == "and") {
        for (std::size_t i = 1; i < n.children.size(); ++i)
            lits.push_back(parse_literal_node(n.children[i]));
    } else {
        lits.push_back(parse_literal_node(n));
    }
    return lits;
}

std::string param_name(int i) { return "?x" + std::to_string(i); }

void emit_literal(std::ostringstream& os, const SchemaLiteral& l, const Domain& d) {
    if (!l.positive) os << "(not ";
    os << "(" << (l.predicate == kNeqPredicate
                      ? "neq"
                      : d.predicates[static_cast<std::size_t>(l.predicate)].name);
    for (int a : l.args) os << " " << param_name(a);
    os << ")";
    if (!l.positive) os << ")";
}

}  // namespace

Domain parse_domain(const std::string& text) {
    Tokenizer tz(text);
    Node root = tz.parse_one();
    tz.expect_eof();
    expect_head(root, "define");
    if (root.children.size() < 2) fail_at(root, "missing (domain NAME)");
    expect_head(root.children[1], "domain");
    if (root.children[1].children.size() != 2) fail_at(root.children[1], "expected (domain NAME)");

    Domain domain;
    domain.name = symbol(root.children[1].children[1], "domain name");

    struct RawSchema {
        std::string name;
        std::vector<std::string> params;
        std::vector<RawLiteral> pre, eff;
        int line = 1, col = 1;
    };
    std::vector<RawSchema> raw_schemas;

    for (std::size_t i = 2; i < root.children.size(); ++i) {
        const Node& sec = root.children[i];
        if (!sec.is_list || sec.children.empty() || sec.children[0].is_list)
            fail_at(sec, "expected (:predicates ...) or (:action ...)");
        const std::string& head = sec.children[0].token;
        if (head == ":predicates") {
            for (std::size_t j = 1; j < sec.children.size(); ++j) {
                const Node& p = sec.children[j];
                if (!p.is_list || p.children.empty() || p.children[0].is_list)
                    fail_at(p, "expected (name ?vars...)");
                Predicate pred;
                pred.name = p.children[0].token;
                pred.arity = static_cast<int>(p.children.size()) - 1;
                if (pred.name == "neq") fail_at(p, "predicate name 'neq' is reserved");
                domain.predicates.push_back(std::move(pred));
            }
        } else if (head == ":action") {
            if (sec.children.size() < 2) fail_at(sec, "missing action name");
            RawSchema rs;
            rs.name = symbol(sec.children[1], "action name");
            rs.line = sec.line;
            rs.col = sec.col;
            std::size_t j = 2;
            while (j < sec.children.size()) {
                const std::string& key = symbol(sec.children[j], "action section keyword");
                if (j + 1 >= sec.children.size()) fail_at(sec.children[j], key + " missing body");
                const Node& body = sec.children[j + 1];
                if (key == ":parameters") {
                    if (!body.is_list) fail_at(body, "expected parameter list");
                    for (const Node& v : body.children) {
                        const std::string& s = symbol(v, "parameter");
                        if (s.empty() || s[0] != '?') fail_at(v, "parameters must start with '?'");
                        rs.params.push_back(s);
                    }
                } else if (key == ":precondition") {
                    rs.pre = parse_condition(body);
                } else if (key == ":effect") {
                    rs.eff = parse_condition(body);
                } else {
                    fail_at(sec.children[j], "unknown action section " + key);
                }
                j += 2;
            }
            raw_schemas.push_back(std::move(rs));
        } else {
            fail_at(sec, "unknown section " + head);
        }
    }

    // Resolve literals: preconditions are split into static_pre/pre after the
    // whole domain is read, since staticness depends on every schema's effects.
    auto resolve = [&](const RawSchema& rs, const RawLiteral& rl) {
        SchemaLiteral lit;
        lit.predicate = domain.predicate_id(rl.predicate);
        if (lit.predicate == -2)
            throw ParseError(rl.line, rl.col, "unknown predicate " + rl.predicate);
        lit.positive = rl.positive;
        for (const auto& a : rl.args) {
            auto it = std::find(rs.params.begin(), rs.params.end(), a);
            if (it == rs.params.end())
                throw ParseError(rl.line, rl.col, "unknown parameter " + a + " in " + rs.name);
            lit.args.push_back(static_cast<int>(it - rs.params.begin()));
        }
        int arity = lit.predicate == kNeqPredicate
                        ? 2
                        : domain.predicates[static_cast<std::size_t>(lit.predicate)].arity;
        if (static_cast<int>(lit.args.size()) != arity)
            throw ParseError(rl.line, rl.col, "arity mismatch for " + rl.predicate);
        return lit;
    };

    std::vector<bool> in_effect(domain.predicates.size(), false);
    for (const auto& rs : raw_schemas)
        for (const auto& rl : rs.eff) {
            int p = domain.predicate_id(rl.predicate);
            if (p >= 0) in_effect[static_cast<std::size_t>(p)] = true;
        }

    for (const auto& rs : raw_schemas) {
        ActionSchema schema;
        schema.name = rs.name;
        schema.param_count = static_cast<int>(rs.params.size());
        for (const auto& rl : rs.pre) {
            SchemaLiteral lit = resolve(rs, rl);
            bool is_static =
                lit.predicate == kNeqPredicate || !in_effect[static_cast<std::size_t>(lit.predicate)];
            (is_static ? schema.static_pre : schema.pre).push_back(std::move(lit));
        }
        for (const auto& rl : rs.eff) {
            if (domain.predicate_id(rl.predicate) == kNeqPredicate)
                throw ParseError(rl.line, rl.col, "neq cannot appear in effects");
            schema.eff.push_back(resolve(rs, rl));
        }
        domain.schemas.push_back(std::move(schema));
    }

    domain.canonicalize_and_validate();
    return domain;
}

Instance parse_problem(const std::string& text, const Domain& domain) {
    Tokenizer tz(text);
    Node root = tz.parse_one();
    tz.expect_eof();
    expect_head(root, "define");
    if (root.children.size() < 2) fail_at(root, "missing (problem NAME)");
    expect_head(root.children[1], "problem");
    if (root.children[1].children.size() != 2) fail_at(root.children[1], "expected (problem NAME)");

    Instance inst;
    inst.name = symbol(root.children[1].children[1], "problem name");

    std::vector<std::string> object_names;
    auto resolve_atom = [&](const RawLiteral& rl) {
        GroundAtom atom;
        atom.predicate = domain.predicate_id(rl.predicate);
        if (atom.predicate == -2)
            throw ParseError(rl.line, rl.col, "unknown predicate " + rl.predicate);
        if (atom.predicate == kNeqPredicate)
            throw ParseError(rl.line, rl.col, "neq atoms are built in");
        for (const auto& o : rl.args) {
            auto it = std::find(object_names.begin(), object_names.end(), o);
            if (it == object_names.end())
                throw ParseError(rl.line, rl.col, "unknown object " + o);
            atom.objects.push_back(static_cast<int>(it - object_names.begin()));
        }
        return atom;
    };

    for (std::size_t i = 2; i < root.children.size(); ++i) {
        const Node& sec = root.children[i];
        if (!sec.is_list || sec.children.empty() || sec.children[0].is_list)
            fail_at(sec, "expected a (:section ...)");
        const std::string& head = sec.children[0].token;
        if (head == ":domain") {
            if (sec.children.size() != 2) fail_at(sec, "expected (:domain NAME)");
            inst.domain_name = symbol(sec.children[1], "domain name");
            if (inst.domain_name != domain.name)
                fail_at(sec, "problem references domain '" + inst.domain_name +
                                 "' but '" + domain.name + "' was given");
        } else if (head == ":objects") {
            for (std::size_t j = 1; j < sec.children.size(); ++j)
                object_names.push_back(symbol(sec.children[j], "object name"));
        } else if (head == ":init") {
            for (std::size_t j = 1; j < sec.children.size(); ++j) {
                RawLiteral rl = parse_literal_node(sec.children[j]);
                if (!rl.positive) fail_at(sec.children[j], "init atoms must be positive");
                inst.init.push_back(resolve_atom(rl));
            }
        } else if (head == ":goal") {
            for (const auto& rl : parse_condition(sec.children.size() == 2
                                                      ? sec.children[1]
                                                      : throw ParseError(sec.line, sec.col,
                                                                         "expected (:goal (and ...))"))) {
                if (!rl.positive) fail_at(sec, "goal atoms must be positive");
                inst.goal.push_back(resolve_atom(rl));
            }
        } else {
            fail_at(sec, "unknown section " + head);
        }
    }
    inst.objects = std::move(object_names);
    inst.canonicalize_and_validate(domain);
    return inst;
}

std::string emit_domain(const Domain& domain) {
    std::ostringstream os;
    os << "(define (domain " << domain.name << ")\n";
    os << "  (:predicates";
    for (const auto& p : domain.predicates) {
        os << " (" << p.name;
        for (int i = 0; i < p.arity; ++i) os << " " << param_name(i);
        os << ")";
    }
    os << ")\n";
    for (const auto& s : domain.schemas) {
        os << "  (:action " << s.name << "\n";
        os << "    :parameters (";
        for (int i = 0; i < s.param_count; ++i) os << (i ? " " : "") << param_name(i);
        os << ")\n";
        if (!s.static_pre.empty() || !s.pre.empty()) {
            os << "    :precondition (and";
            for (const auto& l : s.static_pre) {
                os << " ";
                emit_literal(os, l, domain);
            }
            for (const auto& l : s.pre) {
                os << " ";
                emit_literal(os, l, domain);
            }
            os << ")\n";
        }
        if (!s.eff.empty()) {
            os << "    :effect (and";
            for (const auto& l : s.eff) {
                os << " ";
                emit_literal(os, l, domain);
            }
            os << ")\n";
        }
        os << "  )\n";
    }
    os << ")\n";
    return os.str();
}

std::string emit_problem(const Instance& instance, const Domain& domain) {
    std::ostringstream os;
    os << "(define (problem " << instance.name << ")\n";
    os << "  (:domain " << domain.name << ")\n";
    os << "  (:objects";
    for (const auto& o : instance.objects) os << " " << o;
    os << ")\n";
    auto emit_atoms = [&](const std::vector<GroundAtom>& atoms) {
        for (const auto& a : atoms) {
            os << " (" << domain.predicates[static_cast<std::size_t>(a.predicate)].name;
            for (int o : a.objects) os << " " << instance.objects[static_cast<std::size_t>(o)];
            os << ")";
        }
    };
    os << "  (:init";
    emit_atoms(instance.init);
    os << ")\n";
    if (!instance.goal.empty()) {
        os << "  (:goal (and";
        emit_atoms(instance.goal);
        os << "))\n";
    }
    os << ")\n";
    return os.str();
}

Domain load_domain_file(const std::string& path) {
    try {
        return parse_domain(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.line(), e.col(), path + ": " + e.what());
    }
}

Instance load_problem_file(const std::string& path, const Domain& domain) {
    try {
        return parse_problem(read_file(path), domain);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), e.col(), path + ": " + e.what());
    }
}

}  // namespace graphlift
