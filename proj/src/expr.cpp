#include "l2pos/expr.hpp"

#include <cctype>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace l2pos::geometry {

namespace {

enum class Op { add, sub, mul };

} // namespace

struct ExprNode {
    enum class Kind { number, var, abs2, binary, pow, call_exp, call_log };
    Kind kind;
    double number = 0.0;
    char letter = 0; // 'x','y' for var; 'z','w' for abs2
    int index = 0;   // 1-based coordinate; 0 for abs2 over all coordinates
    Op op = Op::add;
    int exponent = 0;
    std::shared_ptr<const ExprNode> lhs, rhs, child;
};

namespace {

struct Token {
    enum class Kind { number, ident, plus, minus, star, caret, lparen, rparen, end };
    Kind kind;
    double number = 0.0;
    std::string ident;
    size_t pos = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= s_.size()) {
            tok_.kind = Token::Kind::end;
            return;
        }
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            try {
                tok_.number = std::stod(s_.substr(i_), &used);
            } catch (const std::exception&) {
                throw InputError("expression: bad number at position " + std::to_string(i_));
            }
            i_ += used;
            tok_.kind = Token::Kind::number;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])))) ++j;
            tok_.ident = s_.substr(i_, j - i_);
            i_ = j;
            tok_.kind = Token::Kind::ident;
            return;
        }
        ++i_;
        switch (c) {
            case '+': tok_.kind = Token::Kind::plus; return;
            case '-': tok_.kind = Token::Kind::minus; return;
            case '*': tok_.kind = Token::Kind::star; return;
            case '^': tok_.kind = Token::Kind::caret; return;
            case '(': tok_.kind = Token::Kind::lparen; return;
            case ')': tok_.kind = Token::Kind::rparen; return;
            default:
                throw InputError(std::string("expression: unexpected character '") + c +
                                 "' at position " + std::to_string(i_ - 1));
        }
    }

    const std::string& s_;
    size_t i_ = 0;
    Token tok_;
};

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::number;
    n->number = v;
    return n;
}

NodePtr make_binary(Op op, NodePtr l, NodePtr r) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::binary;
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string& s) : lex_(s) {}

    NodePtr parse() {
        NodePtr e = expression();
        if (lex_.peek().kind != Token::Kind::end)
            throw InputError("expression: trailing input at position " +
                             std::to_string(lex_.peek().pos));
        return e;
    }

  private:
    NodePtr expression() {
        bool neg = false;
        if (lex_.peek().kind == Token::Kind::minus) {
            lex_.take();
            neg = true;
        } else if (lex_.peek().kind == Token::Kind::plus) {
            lex_.take();
        }
        NodePtr acc = term();
        if (neg) acc = make_binary(Op::sub, make_number(0.0), acc);
        while (true) {
            const auto k = lex_.peek().kind;
            if (k == Token::Kind::plus) {
                lex_.take();
                acc = make_binary(Op::add, acc, term());
            } else if (k == Token::Kind::minus) {
                lex_.take();
                acc = make_binary(Op::sub, acc, term());
            } else {
                return acc;
            }
        }
    }

    NodePtr term() {
        NodePtr acc = factor();
        while (lex_.peek().kind == Token::Kind::star) {
            lex_.take();
            acc = make_binary(Op::mul, acc, factor());
        }
        return acc;
    }

    NodePtr factor() {
        NodePtr base = atom();
        if (lex_.peek().kind == Token::Kind::caret) {
            const size_t pos = lex_.take().pos;
            const Token t = lex_.take();
            if (t.kind != Token::Kind::number || t.number != std::floor(t.number) || t.number < 0)
                throw InputError("expression: exponent must be a non-negative integer near position " +
                                 std::to_string(pos));
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::pow;
            n->exponent = static_cast<int>(t.number);
            n->child = base;
            return n;
        }
        return base;
    }

    NodePtr atom() {
        const Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::number: return make_number(t.number);
            case Token::Kind::lparen: {
                NodePtr e = expression();
                expect_rparen(t.pos);
                return e;
            }
            case Token::Kind::ident: return ident_atom(t);
            default:
                throw InputError("expression: expected a value at position " + std::to_string(t.pos));
        }
    }

    NodePtr ident_atom(const Token& t) {
        if (t.ident == "exp" || t.ident == "log") {
            expect_lparen(t.pos);
            NodePtr arg = expression();
            expect_rparen(t.pos);
            auto n = std::make_shared<ExprNode>();
            n->kind = t.ident == "exp" ? ExprNode::Kind::call_exp : ExprNode::Kind::call_log;
            n->child = arg;
            return n;
        }
        if (t.ident == "abs2") {
            expect_lparen(t.pos);
            const Token v = lex_.take();
            if (v.kind != Token::Kind::ident || (v.ident[0] != 'z' && v.ident[0] != 'w'))
                throw InputError("expression: abs2 takes z, zK, w or wK, at position " +
                                 std::to_string(v.pos));
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::abs2;
            n->letter = v.ident[0];
            n->index = parse_suffix(v, /*allow_empty=*/true);
            expect_rparen(t.pos);
            return n;
        }
        if (t.ident[0] == 'x' || t.ident[0] == 'y') {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::var;
            n->letter = t.ident[0];
            n->index = parse_suffix(t, /*allow_empty=*/false);
            return n;
        }
        throw InputError("expression: unknown identifier '" + t.ident + "' at position " +
                         std::to_string(t.pos));
    }

    static int parse_suffix(const Token& t, bool allow_empty) {
        const std::string suffix = t.ident.substr(1);
        if (suffix.empty()) {
            if (allow_empty) return 0;
            throw InputError("expression: '" + t.ident + "' needs a coordinate index, position " +
                             std::to_string(t.pos));
        }
        for (char c : suffix)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw InputError("expression: bad coordinate index in '" + t.ident + "'");
        const int k = std::stoi(suffix);
        if (k < 1) throw InputError("expression: coordinate indices start at 1");
        return k;
    }

    void expect_lparen(size_t pos) {
        if (lex_.take().kind != Token::Kind::lparen)
            throw InputError("expression: expected '(' near position " + std::to_string(pos));
    }
    void expect_rparen(size_t pos) {
        if (lex_.take().kind != Token::Kind::rparen)
            throw InputError("expression: expected ')' near position " + std::to_string(pos));
    }

    Lexer lex_;
};

void validate_node(const ExprNode& n, int n_base, int m_fiber) {
    switch (n.kind) {
        case ExprNode::Kind::number: return;
        case ExprNode::Kind::var:
            if (n.index > n_base)
                throw InputError(std::string("expression: ") + n.letter + std::to_string(n.index) +
                                 " out of range for n=" + std::to_string(n_base));
            return;
        case ExprNode::Kind::abs2: {
            const int limit = n.letter == 'z' ? n_base : m_fiber;
            if (n.letter == 'w' && m_fiber == 0)
                throw InputError("expression: fiber coordinate w used without a fiber");
            if (n.index > limit)
                throw InputError(std::string("expression: abs2(") + n.letter +
                                 std::to_string(n.index) + ") out of range");
            return;
        }
        case ExprNode::Kind::binary:
            validate_node(*n.lhs, n_base, m_fiber);
            validate_node(*n.rhs, n_base, m_fiber);
            return;
        case ExprNode::Kind::pow:
        case ExprNode::Kind::call_exp:
        case ExprNode::Kind::call_log:
            validate_node(*n.child, n_base, m_fiber);
            return;
    }
}

// double overloads mirroring the D2 friends so eval_node works for both
double exp(double v) { return std::exp(v); }
double log(double v) {
    if (!(v > 0.0)) throw InputError("log: argument must be positive");
    return std::log(v);
}

// Evaluation over any scalar type providing the needed arithmetic; V is
// double or D2. Vars resolves (letter, 1-based complex coordinate) pairs.
template <typename V, typename Vars>
V eval_node(const ExprNode& n, const Vars& vars) {
    switch (n.kind) {
        case ExprNode::Kind::number: return vars.constant(n.number);
        case ExprNode::Kind::var: return vars.real_part(n.letter, n.index);
        case ExprNode::Kind::abs2: return vars.abs2(n.letter, n.index);
        case ExprNode::Kind::binary: {
            V a = eval_node<V>(*n.lhs, vars);
            V b = eval_node<V>(*n.rhs, vars);
            switch (n.op) {
                case Op::add: return a + b;
                case Op::sub: return a - b;
                case Op::mul: return a * b;
            }
            return a;
        }
        case ExprNode::Kind::pow: {
            V a = eval_node<V>(*n.child, vars);
            return vars.pow_int(a, n.exponent);
        }
        case ExprNode::Kind::call_exp: return exp(eval_node<V>(*n.child, vars));
        case ExprNode::Kind::call_log: return log(eval_node<V>(*n.child, vars));
    }
    throw InputError("expression: corrupt node");
}

struct DoubleVars {
    std::span<const std::complex<double>> z;
    int n_base;
    double constant(double v) const { return v; }
    double real_part(char letter, int k) const {
        const auto& c = z[k - 1];
        return letter == 'x' ? c.real() : c.imag();
    }
    double abs2(char letter, int k) const {
        const int lo = letter == 'z' ? 0 : n_base;
        const int hi = letter == 'z' ? n_base : static_cast<int>(z.size());
        if (k > 0) return std::norm(z[lo + k - 1]);
        double s = 0.0;
        for (int j = lo; j < hi; ++j) s += std::norm(z[j]);
        return s;
    }
    double pow_int(double a, int e) const {
        double r = 1.0;
        for (int i = 0; i < e; ++i) r *= a;
        return r;
    }
};

struct D2Vars {
    std::span<const std::complex<double>> z;
    int n_base;
    int nvars() const { return 2 * static_cast<int>(z.size()); }
    D2 constant(double v) const { return D2(v, nvars()); }
    D2 coordinate(int axis) const {
        const int j = axis / 2;
        const double v = axis % 2 == 0 ? z[j].real() : z[j].imag();
        return D2::variable(v, nvars(), axis);
    }
    D2 real_part(char letter, int k) const {
        return coordinate(2 * (k - 1) + (letter == 'x' ? 0 : 1));
    }
    D2 abs2(char letter, int k) const {
        const int lo = letter == 'z' ? 0 : n_base;
        const int hi = letter == 'z' ? n_base : static_cast<int>(z.size());
        D2 s = constant(0.0);
        for (int j = lo; j < hi; ++j) {
            if (k > 0 && j != lo + k - 1) continue;
            const D2 x = coordinate(2 * j);
            const D2 y = coordinate(2 * j + 1);
            s += x * x + y * y;
        }
        return s;
    }
    D2 pow_int(const D2& a, int e) const { return l2pos::geometry::pow_int(a, e); }
};

} // namespace

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.text_ = text;
    e.root_ = Parser(text).parse();
    return e;
}

void Expression::validate(int n_base, int m_fiber) const {
    validate_node(*root_, n_base, m_fiber);
}

double Expression::eval(std::span<const std::complex<double>> z, int n_base) const {
    return eval_node<double>(*root_, DoubleVars{z, n_base});
}

D2 Expression::eval_d2(std::span<const std::complex<double>> z, int n_base) const {
    return eval_node<D2>(*root_, D2Vars{z, n_base});
}

} // namespace l2pos::geometry
