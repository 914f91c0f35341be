#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "tame/program.hpp"

namespace tame {

namespace {

struct Token {
    enum Kind { ident, number, punct, eol } kind = eol;
    std::string text;
    int line = 0, col = 0;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize_line(const std::string& line, int line_no) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        int col = static_cast<int>(i) + 1;
        if (is_ident_start(c)) {
            size_t j = i;
            while (j < line.size() && is_ident_char(line[j])) ++j;
            out.push_back({Token::ident, line.substr(i, j - i), line_no, col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            out.push_back({Token::number, line.substr(i, j - i), line_no, col});
            i = j;
        } else if (std::string("+-*^(),=<>!;:{}[]&|/%.").find(c) != std::string::npos) {
            // comparison and block punctuation tokenize so that loop keywords
            // are diagnosed as control flow, not as stray characters
            out.push_back({Token::punct, std::string(1, c), line_no, col});
            ++i;
        } else {
            fail(ErrorKind::parse, std::string("unexpected character '") + c + "'", line_no, col);
        }
    }
    out.push_back({Token::eol, "", line_no, static_cast<int>(line.size()) + 1});
    return out;
}

// keywords whose rewriting would require branching on decrypted state
const char* control_keywords[] = {"while", "for",  "if",   "else",   "elif",
                                  "do",    "until", "repeat", "goto", "switch", "case"};

bool is_control_keyword(const std::string& s) {
    for (const char* k : control_keywords)
        if (s == k) return true;
    return false;
}

bool is_indexed_name(const std::string& s, char prefix) {
    if (s.size() < 2 || s[0] != prefix) return false;
    for (size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

int indexed_suffix(const std::string& s, int line, int col) {
    long long v = 0;
    for (size_t i = 1; i < s.size(); ++i) {
        v = v * 10 + (s[i] - '0');
        if (v > 1000000) fail(ErrorKind::parse, "variable index out of range: " + s, line, col);
    }
    return static_cast<int>(v);
}

struct Expr {
    enum Kind { num, var, add, sub, neg, mul, pow } kind;
    Int value;
    std::string name;
    int line = 0, col = 0;
    std::unique_ptr<Expr> a, b;
    uint32_t exponent = 0;
};
using ExprPtr = std::unique_ptr<Expr>;

class LineParser {
public:
    LineParser(const std::vector<Token>& toks, size_t start) : toks_(toks), pos_(start) {}

    ExprPtr parse_expression() { return parse_sum(); }

    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    bool at_end() const { return toks_[pos_].kind == Token::eol; }

    [[noreturn]] void unexpected(const std::string& what) {
        const Token& t = peek();
        std::string got = t.kind == Token::eol ? "end of line" : "'" + t.text + "'";
        fail(ErrorKind::parse, "expected " + what + ", got " + got, t.line, t.col);
    }

private:
    ExprPtr parse_sum() {
        ExprPtr e = parse_product();
        while (peek().kind == Token::punct && (peek().text == "+" || peek().text == "-")) {
            bool plus = take().text == "+";
            ExprPtr rhs = parse_product();
            ExprPtr node = std::make_unique<Expr>();
            node->kind = plus ? Expr::add : Expr::sub;
            node->a = std::move(e);
            node->b = std::move(rhs);
            e = std::move(node);
        }
        return e;
    }

    ExprPtr parse_product() {
        ExprPtr e = parse_unary();
        while (peek().kind == Token::punct && peek().text == "*") {
            take();
            ExprPtr rhs = parse_unary();
            ExprPtr node = std::make_unique<Expr>();
            node->kind = Expr::mul;
            node->a = std::move(e);
            node->b = std::move(rhs);
            e = std::move(node);
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (peek().kind == Token::punct && (peek().text == "-" || peek().text == "+")) {
            bool neg = take().text == "-";
            ExprPtr inner = parse_unary();
            if (!neg) return inner;
            ExprPtr node = std::make_unique<Expr>();
            node->kind = Expr::neg;
            node->a = std::move(inner);
            return node;
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (peek().kind == Token::punct && peek().text == "^") {
            take();
            if (peek().kind != Token::number) unexpected("an integer exponent");
            Token e = take();
            long long v = 0;
            for (char c : e.text) {
                v = v * 10 + (c - '0');
                if (v > 1000000)
                    fail(ErrorKind::parse, "exponent too large", e.line, e.col);
            }
            ExprPtr node = std::make_unique<Expr>();
            node->kind = Expr::pow;
            node->a = std::move(base);
            node->exponent = static_cast<uint32_t>(v);
            return node;
        }
        return base;
    }

    ExprPtr parse_atom() {
        const Token& t = peek();
        if (t.kind == Token::number) {
            Token tok = take();
            ExprPtr node = std::make_unique<Expr>();
            node->kind = Expr::num;
            node->value = Int(tok.text);
            return node;
        }
        if (t.kind == Token::ident) {
            if (is_control_keyword(t.text))
                fail(ErrorKind::not_straight_line,
                     "not straight-line: '" + t.text +
                         "' branches on intermediate state; rewriting its guard would expose "
                         "components of the private inverse map",
                     t.line, t.col);
            Token tok = take();
            ExprPtr node = std::make_unique<Expr>();
            node->kind = Expr::var;
            node->name = tok.text;
            node->line = tok.line;
            node->col = tok.col;
            return node;
        }
        if (t.kind == Token::punct && t.text == "(") {
            take();
            ExprPtr inner = parse_sum();
            if (!(peek().kind == Token::punct && peek().text == ")")) unexpected("')'");
            take();
            return inner;
        }
        unexpected("a number, variable, or parenthesized expression");
    }

    const std::vector<Token>& toks_;
    size_t pos_;
};

using Resolver = std::function<Polynomial(const std::string&, int, int)>;

Polynomial lower(const Expr& e, int nvars, const Resolver& resolve) {
    switch (e.kind) {
        case Expr::num: return Polynomial::constant(nvars, e.value);
        case Expr::var: return resolve(e.name, e.line, e.col);
        case Expr::add: return lower(*e.a, nvars, resolve) + lower(*e.b, nvars, resolve);
        case Expr::sub: return lower(*e.a, nvars, resolve) - lower(*e.b, nvars, resolve);
        case Expr::neg: return -lower(*e.a, nvars, resolve);
        case Expr::mul: return lower(*e.a, nvars, resolve) * lower(*e.b, nvars, resolve);
        case Expr::pow: return lower(*e.a, nvars, resolve).pow(e.exponent);
    }
    fail(ErrorKind::internal, "unhandled expression node");
}

void scan_max_u(const Expr& e, int& k) {
    if (e.kind == Expr::var && is_indexed_name(e.name, 'u'))
        k = std::max(k, indexed_suffix(e.name, e.line, e.col));
    if (e.a) scan_max_u(*e.a, k);
    if (e.b) scan_max_u(*e.b, k);
}

std::vector<ExprPtr> parse_expr_list(LineParser& p) {
    std::vector<ExprPtr> out;
    out.push_back(p.parse_expression());
    while (p.peek().kind == Token::punct && p.peek().text == ",") {
        p.take();
        out.push_back(p.parse_expression());
    }
    if (!p.at_end()) p.unexpected("',' or end of line");
    return out;
}

} // namespace

StraightLineProgram parse_program_text(const std::string& text) {
    std::vector<std::vector<Token>> lines;
    {
        std::istringstream in(text);
        std::string line;
        int no = 0;
        while (std::getline(in, line)) {
            ++no;
            std::vector<Token> toks = tokenize_line(line, no);
            if (toks.size() > 1) lines.push_back(std::move(toks));
        }
    }
    require(!lines.empty(), ErrorKind::parse, "empty program");

    auto leading_ident = [](const std::vector<Token>& toks) -> const Token& { return toks[0]; };
    for (const auto& toks : lines) {
        const Token& t = leading_ident(toks);
        if (t.kind == Token::ident && is_control_keyword(t.text))
            fail(ErrorKind::not_straight_line,
                 "not straight-line: '" + t.text +
                     "' branches on intermediate state; rewriting it would require evaluating the "
                     "guard on decrypted values and so reveal components of the private inverse map",
                 t.line, t.col);
    }

    // ---- input clause ----
    const std::vector<Token>& first = lines.front();
    require(first[0].kind == Token::ident && first[0].text == "input", ErrorKind::parse,
            "the first clause must be 'input'");
    int n = 0;
    {
        size_t pos = 1;
        for (;;) {
            const Token& t = first[pos];
            if (!(t.kind == Token::ident && is_indexed_name(t.text, 'x')))
                fail(ErrorKind::parse, "input clause must list the state variables x1..xn",
                     t.line, t.col);
            int idx = indexed_suffix(t.text, t.line, t.col);
            if (idx != n + 1)
                fail(ErrorKind::parse,
                     "input clause must list x1..xn in order; expected x" + std::to_string(n + 1),
                     t.line, t.col);
            ++n;
            ++pos;
            if (first[pos].kind == Token::punct && first[pos].text == ",") { ++pos; continue; }
            break;
        }
        if (!(first[pos].kind == Token::punct && first[pos].text == "="))
            fail(ErrorKind::parse, "expected '=' after the input variable list",
                 first[pos].line, first[pos].col);
        LineParser p(first, pos + 1);
        std::vector<ExprPtr> exprs = parse_expr_list(p);
        if (static_cast<int>(exprs.size()) != n)
            fail(ErrorKind::parse, "input clause assigns " + std::to_string(n) +
                                       " state variables but has " + std::to_string(exprs.size()) +
                                       " expressions",
                 first[0].line, first[0].col);
        int k = 0;
        for (const ExprPtr& e : exprs) scan_max_u(*e, k);
        Resolver resolve = [&](const std::string& name, int line, int col) -> Polynomial {
            if (is_indexed_name(name, 'u')) {
                int i = indexed_suffix(name, line, col);
                return Polynomial::variable(k, i - 1);
            }
            fail(ErrorKind::parse,
                 "only input variables u1..u" + std::to_string(k) +
                     " and constants may appear in the input clause; got '" + name + "'",
                 line, col);
        };
        std::vector<Polynomial> comps;
        comps.reserve(static_cast<size_t>(n));
        for (const ExprPtr& e : exprs) comps.push_back(lower(*e, k, resolve));

        StraightLineProgram prog;
        prog.arity = k;
        prog.state_dim = n;
        prog.input = PolyMap(k, std::move(comps));

        // ---- steps and output ----
        std::map<std::string, Polynomial> temps;  // scoped to the current step
        bool saw_output = false;
        Resolver state_resolve = [&](const std::string& name, int line, int col) -> Polynomial {
            if (is_indexed_name(name, 'x')) {
                int i = indexed_suffix(name, line, col);
                if (i < 1 || i > n)
                    fail(ErrorKind::parse, "unknown variable " + name + ": the state has " +
                                               std::to_string(n) + " variables",
                         line, col);
                return Polynomial::variable(n, i - 1);
            }
            if (is_indexed_name(name, 'u'))
                fail(ErrorKind::parse,
                     "input variables are only available in the input clause", line, col);
            auto it = temps.find(name);
            if (it != temps.end()) return it->second;
            fail(ErrorKind::parse, "unknown variable '" + name + "'", line, col);
        };

        for (size_t li = 1; li < lines.size(); ++li) {
            const std::vector<Token>& toks = lines[li];
            const Token& head = toks[0];
            require(!saw_output, ErrorKind::parse,
                    "the output clause must be the last clause");
            if (head.kind != Token::ident)
                fail(ErrorKind::parse, "a clause must start with a name", head.line, head.col);

            if (head.text == "input")
                fail(ErrorKind::parse, "only one input clause is allowed", head.line, head.col);

            if (head.text == "output") {
                saw_output = true;
                // named form: output v1, .., vl = exprs
                size_t pos = 1;
                bool named = false;
                if (toks[pos].kind == Token::ident && is_indexed_name(toks[pos].text, 'v')) {
                    size_t probe = pos;
                    while (toks[probe].kind == Token::ident && is_indexed_name(toks[probe].text, 'v')) {
                        ++probe;
                        if (toks[probe].kind == Token::punct && toks[probe].text == ",") ++probe;
                        else break;
                    }
                    named = toks[probe].kind == Token::punct && toks[probe].text == "=";
                }
                int named_count = 0;
                if (named) {
                    for (;;) {
                        const Token& t = toks[pos];
                        int idx = indexed_suffix(t.text, t.line, t.col);
                        if (idx != named_count + 1)
                            fail(ErrorKind::parse, "output names must be v1..vl in order",
                                 t.line, t.col);
                        ++named_count;
                        ++pos;
                        if (toks[pos].kind == Token::punct && toks[pos].text == ",") { ++pos; continue; }
                        break;
                    }
                    ++pos;  // '='
                }
                if (!temps.empty())
                    fail(ErrorKind::parse,
                         "temporaries must feed a state assignment before the output clause",
                         head.line, head.col);
                LineParser p(toks, pos);
                std::vector<ExprPtr> exprs = parse_expr_list(p);
                if (named && static_cast<int>(exprs.size()) != named_count)
                    fail(ErrorKind::parse, "output names and expressions differ in count",
                         head.line, head.col);
                std::vector<Polynomial> comps;
                for (const ExprPtr& e : exprs) comps.push_back(lower(*e, n, state_resolve));
                prog.out_dim = static_cast<int>(comps.size());
                prog.output = PolyMap(n, std::move(comps));
                continue;
            }

            if (is_indexed_name(head.text, 'x')) {
                // simultaneous state assignment; unlisted variables keep their value
                std::vector<int> targets;
                std::vector<bool> assigned(static_cast<size_t>(n), false);
                size_t pos = 0;
                for (;;) {
                    const Token& t = toks[pos];
                    if (!(t.kind == Token::ident && is_indexed_name(t.text, 'x')))
                        fail(ErrorKind::parse, "assignment targets must be state variables",
                             t.line, t.col);
                    int idx = indexed_suffix(t.text, t.line, t.col);
                    if (idx < 1 || idx > n)
                        fail(ErrorKind::parse, "unknown variable " + t.text + ": the state has " +
                                                   std::to_string(n) + " variables",
                             t.line, t.col);
                    if (assigned[static_cast<size_t>(idx - 1)])
                        fail(ErrorKind::parse, t.text + " assigned twice in one step", t.line, t.col);
                    assigned[static_cast<size_t>(idx - 1)] = true;
                    targets.push_back(idx - 1);
                    ++pos;
                    if (toks[pos].kind == Token::punct && toks[pos].text == ",") { ++pos; continue; }
                    break;
                }
                if (!(toks[pos].kind == Token::punct && toks[pos].text == "="))
                    fail(ErrorKind::parse, "expected '=' in state assignment",
                         toks[pos].line, toks[pos].col);
                LineParser p(toks, pos + 1);
                std::vector<ExprPtr> exprs = parse_expr_list(p);
                if (exprs.size() != targets.size())
                    fail(ErrorKind::parse,
                         "assignment lists " + std::to_string(targets.size()) +
                             " targets but " + std::to_string(exprs.size()) + " expressions",
                         head.line, head.col);
                std::vector<Polynomial> comps;
                comps.reserve(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i) comps.push_back(Polynomial::variable(n, i));
                for (size_t t = 0; t < targets.size(); ++t)
                    comps[static_cast<size_t>(targets[t])] = lower(*exprs[t], n, state_resolve);
                prog.steps.emplace_back(n, std::move(comps));
                temps.clear();
                continue;
            }

            // temporary binding
            if (is_indexed_name(head.text, 'u') || is_indexed_name(head.text, 'v'))
                fail(ErrorKind::parse,
                     "'" + head.text + "' cannot be assigned; use a temporary name or state variable",
                     head.line, head.col);
            if (temps.count(head.text))
                fail(ErrorKind::parse, "temporary '" + head.text + "' rebound within one step",
                     head.line, head.col);
            if (!(toks[1].kind == Token::punct && toks[1].text == "="))
                fail(ErrorKind::parse, "expected '=' after '" + head.text + "'",
                     toks[1].line, toks[1].col);
            LineParser p(toks, 2);
            ExprPtr e = p.parse_expression();
            if (!p.at_end()) p.unexpected("end of line");
            temps.emplace(head.text, lower(*e, n, state_resolve));
        }
        require(saw_output, ErrorKind::parse, "missing output clause");
        ValidationReport v = validate(prog);
        require(v.ok, ErrorKind::parse,
                v.diagnostics.empty() ? "invalid program" : v.diagnostics.front());
        return prog;
    }
}

std::string emit_program_text(const StraightLineProgram& p,
                              const std::vector<std::string>& header_comments) {
    std::ostringstream out;
    for (const std::string& c : header_comments) out << "# " << c << "\n";
    out << "input ";
    for (int i = 0; i < p.state_dim; ++i) out << (i ? ", " : "") << "x" << (i + 1);
    out << " = ";
    for (int i = 0; i < p.state_dim; ++i)
        out << (i ? ", " : "") << p.input.component(i).to_text("u");
    out << "\n";
    for (const PolyMap& step : p.steps) {
        for (int i = 0; i < p.state_dim; ++i)
            out << "temp" << (i + 1) << " = " << step.component(i).to_text("x") << "\n";
        for (int i = 0; i < p.state_dim; ++i) out << (i ? ", " : "") << "x" << (i + 1);
        out << " = ";
        for (int i = 0; i < p.state_dim; ++i) out << (i ? ", " : "") << "temp" << (i + 1);
        out << "\n";
    }
    out << "output ";
    for (int i = 0; i < p.out_dim; ++i)
        out << (i ? ", " : "") << p.output.component(i).to_text("x");
    out << "\n";
    return out.str();
}

} // namespace tame
