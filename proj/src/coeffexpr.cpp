#include "fracspec/coeffexpr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "fracspec/errors.hpp"

namespace fracspec {

namespace coeffexpr {

enum class Kind { number, variable, negate, add, sub, mul, div, pow, call, piecewise };

enum class Func { sin, cos, exp, log, sqrt, abs };

struct Node {
    Kind kind;
    double value = 0.0;  // literal, or the breakpoint of a piecewise node
    Func func = Func::sin;
    std::shared_ptr<const Node> lhs;  // operand / argument / left branch
    std::shared_ptr<const Node> rhs;  // right operand / right branch
};

using NodePtr = std::shared_ptr<const Node>;

namespace {

struct FuncInfo {
    std::string_view name;
    Func func;
};

constexpr std::array<FuncInfo, 6> functions{{
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"exp", Func::exp},
    {"log", Func::log},
    {"sqrt", Func::sqrt},
    {"abs", Func::abs},
}};

std::string_view func_name(Func f) {
    for (const auto& info : functions) {
        if (info.func == f) return info.name;
    }
    return "?";
}

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

std::string render(const Node& n) {
    switch (n.kind) {
        case Kind::number:
            return format_number(n.value);
        case Kind::variable:
            return "x";
        case Kind::negate:
            return "(-" + render(*n.lhs) + ")";
        case Kind::add:
            return "(" + render(*n.lhs) + " + " + render(*n.rhs) + ")";
        case Kind::sub:
            return "(" + render(*n.lhs) + " - " + render(*n.rhs) + ")";
        case Kind::mul:
            return "(" + render(*n.lhs) + " * " + render(*n.rhs) + ")";
        case Kind::div:
            return "(" + render(*n.lhs) + " / " + render(*n.rhs) + ")";
        case Kind::pow:
            return "(" + render(*n.lhs) + " ^ " + render(*n.rhs) + ")";
        case Kind::call:
            return std::string(func_name(n.func)) + "(" + render(*n.lhs) + ")";
        case Kind::piecewise:
            return "piecewise(" + format_number(n.value) + "; " + render(*n.lhs) + "; " +
                   render(*n.rhs) + ")";
    }
    return "?";
}

[[noreturn]] void domain_failure(const Node& n, const std::string& why) {
    throw EvalError("cannot evaluate " + render(n) + ": " + why);
}

double checked(const Node& n, double v) {
    if (!std::isfinite(v)) domain_failure(n, "non-finite result");
    return v;
}

double evaluate(const Node& n, double x) {
    switch (n.kind) {
        case Kind::number:
            return n.value;
        case Kind::variable:
            return x;
        case Kind::negate:
            return -evaluate(*n.lhs, x);
        case Kind::add:
            return checked(n, evaluate(*n.lhs, x) + evaluate(*n.rhs, x));
        case Kind::sub:
            return checked(n, evaluate(*n.lhs, x) - evaluate(*n.rhs, x));
        case Kind::mul:
            return checked(n, evaluate(*n.lhs, x) * evaluate(*n.rhs, x));
        case Kind::div: {
            const double num = evaluate(*n.lhs, x);
            const double den = evaluate(*n.rhs, x);
            if (den == 0.0) domain_failure(n, "division by zero");
            return checked(n, num / den);
        }
        case Kind::pow:
            return checked(n, std::pow(evaluate(*n.lhs, x), evaluate(*n.rhs, x)));
        case Kind::call: {
            const double v = evaluate(*n.lhs, x);
            switch (n.func) {
                case Func::sin:
                    return std::sin(v);
                case Func::cos:
                    return std::cos(v);
                case Func::exp:
                    return checked(n, std::exp(v));
                case Func::log:
                    if (!(v > 0.0)) domain_failure(n, "log of a non-positive value");
                    return std::log(v);
                case Func::sqrt:
                    if (v < 0.0) domain_failure(n, "sqrt of a negative value");
                    return std::sqrt(v);
                case Func::abs:
                    return std::abs(v);
            }
            return 0.0;
        }
        case Kind::piecewise:
            return x < n.value ? evaluate(*n.lhs, x) : evaluate(*n.rhs, x);
    }
    return 0.0;
}

bool depends_on_x(const Node& n) {
    if (n.kind == Kind::variable) return true;
    if (n.kind == Kind::piecewise) return true;
    return (n.lhs && depends_on_x(*n.lhs)) || (n.rhs && depends_on_x(*n.rhs));
}

void collect_breaks(const Node& n, std::set<double>& out) {
    if (n.kind == Kind::piecewise && n.value > 0.0 && n.value < 1.0) out.insert(n.value);
    if (n.lhs) collect_breaks(*n.lhs, out);
    if (n.rhs) collect_breaks(*n.rhs, out);
}

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, semicolon, end };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string_view text;
    double number = 0.0;
};

std::string_view describe(Tok t) {
    switch (t) {
        case Tok::number: return "number";
        case Tok::ident: return "identifier";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::star: return "'*'";
        case Tok::slash: return "'/'";
        case Tok::caret: return "'^'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::semicolon: return "';'";
        case Tok::end: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= src_.size()) return {Tok::end, start, {}};
        const char c = src_[pos_];
        const auto single = [&](Tok t) {
            ++pos_;
            return Token{t, start, src_.substr(start, 1)};
        };
        switch (c) {
            case '+': return single(Tok::plus);
            case '-': return single(Tok::minus);
            case '*': return single(Tok::star);
            case '/': return single(Tok::slash);
            case '^': return single(Tok::caret);
            case '(': return single(Tok::lparen);
            case ')': return single(Tok::rparen);
            case ';': return single(Tok::semicolon);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(start);
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
            }
            return {Tok::ident, start, src_.substr(start, pos_ - start)};
        }
        throw ParseError(start, fmt::format("unexpected character 0x{:02x}", static_cast<unsigned char>(c)));
    }

private:
    Token lex_number(std::size_t start) {
        const auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) throw ParseError(start, "malformed number");
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) throw ParseError(start, "malformed exponent in number");
        }
        const std::string_view text = src_.substr(start, pos_ - start);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
            throw ParseError(start, "number out of range");
        }
        return {Tok::number, start, text, value};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    NodePtr parse_all() {
        auto root = expr();
        if (cur_.kind != Tok::end) {
            throw ParseError(cur_.offset, fmt::format("expected operator or end of input, found {}", describe(cur_.kind)));
        }
        return root;
    }

private:
    static constexpr int max_depth = 200;

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++parser.depth_ > max_depth) throw ParseError(parser.cur_.offset, "expression nested too deeply");
        }
        ~DepthGuard() { --parser.depth_; }
        Parser& parser;
    };

    void advance() { cur_ = lexer_.next(); }

    void expect(Tok kind) {
        if (cur_.kind != kind) {
            throw ParseError(cur_.offset, fmt::format("expected {}, found {}", describe(kind), describe(cur_.kind)));
        }
        advance();
    }

    static std::shared_ptr<Node> make(Kind k, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        return n;
    }

    NodePtr expr() {
        DepthGuard guard(*this);
        auto lhs = term();
        while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
            const Kind k = cur_.kind == Tok::plus ? Kind::add : Kind::sub;
            advance();
            lhs = make(k, lhs, term());
        }
        return lhs;
    }

    NodePtr term() {
        auto lhs = unary();
        while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
            const Kind k = cur_.kind == Tok::star ? Kind::mul : Kind::div;
            advance();
            lhs = make(k, lhs, unary());
        }
        return lhs;
    }

    NodePtr unary() {
        DepthGuard guard(*this);
        if (cur_.kind == Tok::minus) {
            advance();
            return make(Kind::negate, unary());
        }
        return power();
    }

    NodePtr power() {
        auto base = primary();
        if (cur_.kind == Tok::caret) {
            advance();
            return make(Kind::pow, base, unary());
        }
        return base;
    }

    NodePtr primary() {
        switch (cur_.kind) {
            case Tok::number: {
                auto n = make(Kind::number);
                n->value = cur_.number;
                advance();
                return n;
            }
            case Tok::lparen: {
                advance();
                auto inner = expr();
                expect(Tok::rparen);
                return inner;
            }
            case Tok::ident:
                return identifier();
            default:
                throw ParseError(cur_.offset, fmt::format("expected number, 'x', function call or '(', found {}", describe(cur_.kind)));
        }
    }

    NodePtr identifier() {
        const Token name = cur_;
        advance();
        if (name.text == "x") return make(Kind::variable);

        std::optional<Func> func;
        for (const auto& info : functions) {
            if (info.name == name.text) func = info.func;
        }
        const bool is_piecewise = name.text == "piecewise";
        if (!func && !is_piecewise) {
            throw ParseError(name.offset, fmt::format("unknown identifier '{}'", name.text));
        }
        if (cur_.kind != Tok::lparen) {
            throw ParseError(cur_.offset, fmt::format("expected '(' after '{}'", name.text));
        }
        advance();
        std::vector<std::pair<std::size_t, NodePtr>> args;
        const auto argument = [&] {
            const std::size_t at = cur_.offset;  // read before expr() advances the lexer
            args.emplace_back(at, expr());
        };
        argument();
        while (cur_.kind == Tok::semicolon) {
            advance();
            argument();
        }
        expect(Tok::rparen);

        const std::size_t arity = is_piecewise ? 3 : 1;
        if (args.size() != arity) {
            throw ParseError(name.offset, fmt::format("'{}' takes {} argument{}, got {}", name.text, arity,
                                                      arity == 1 ? "" : "s", args.size()));
        }
        if (!is_piecewise) {
            auto n = make(Kind::call, args[0].second);
            n->func = *func;
            return n;
        }
        const auto& [bp_offset, bp] = args[0];
        if (depends_on_x(*bp)) throw ParseError(bp_offset, "piecewise breakpoint must not depend on x");
        double value = 0.0;
        try {
            value = evaluate(*bp, 0.0);
        } catch (const EvalError& e) {
            throw ParseError(bp_offset, std::string("piecewise breakpoint: ") + e.what());
        }
        auto n = make(Kind::piecewise, args[1].second, args[2].second);
        n->value = value;
        return n;
    }

    Lexer lexer_;
    Token cur_{Tok::end, 0, {}};
    int depth_ = 0;
};

}  // namespace
}  // namespace coeffexpr

Expr::Expr(std::shared_ptr<const coeffexpr::Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

Expr Expr::parse(std::string_view src) {
    coeffexpr::Parser parser(src);
    return Expr(parser.parse_all(), std::string(src));
}

double Expr::eval(double x) const { return coeffexpr::evaluate(*root_, x); }

std::vector<double> Expr::breakpoints() const {
    std::set<double> found;
    coeffexpr::collect_breaks(*root_, found);
    return {found.begin(), found.end()};
}

bool Expr::is_constant() const { return !coeffexpr::depends_on_x(*root_); }

std::string Expr::to_string() const { return coeffexpr::render(*root_); }

}  // namespace fracspec
