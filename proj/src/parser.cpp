#include <array>
#include <cctype>
#include <charconv>
#include <optional>
#include <utility>

#include "varcal/error.hpp"
#include "varcal/expr.hpp"

namespace varcal {
namespace {

constexpr std::array<std::pair<std::string_view, Func>, 9> kFunctions{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"cot", Func::Cot},
    {"sqrt", Func::Sqrt},
    {"exp", Func::Exp},
    {"ln", Func::Ln},
    {"arctan", Func::Arctan},
    {"arccot", Func::Arccot},
}};

std::optional<Func> lookup_function(std::string_view name) {
    for (const auto& [n, f] : kFunctions) {
        if (n == name) return f;
    }
    return std::nullopt;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        skip_space();
        if (at_end()) fail("empty expression", "expression");
        Expr e = parse_sum();
        skip_space();
        if (!at_end()) fail("unexpected character '" + std::string(1, peek()) + "'", "operator or end of input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(const std::string& message, std::string expected) const {
        fail_at(pos_, message, std::move(expected));
    }

    [[noreturn]] static void fail_at(std::size_t offset, const std::string& message, std::string expected) {
        throw ParseError(offset, std::move(expected), "syntax error: " + message);
    }

    Expr parse_sum() {
        std::vector<Expr> terms{parse_product()};
        for (;;) {
            if (accept('+')) {
                terms.push_back(parse_product());
            } else if (accept('-')) {
                terms.push_back(Expr::negate(parse_product()));
            } else {
                break;
            }
        }
        return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
    }

    Expr parse_product() {
        std::vector<Expr> factors{parse_unary()};
        for (;;) {
            if (accept('*')) {
                factors.push_back(parse_unary());
            } else if (accept('/')) {
                factors.push_back(Expr::power(parse_unary(), Expr::constant(-1.0)));
            } else {
                break;
            }
        }
        return factors.size() == 1 ? factors.front() : Expr::product(std::move(factors));
    }

    Expr parse_unary() {
        if (accept('-')) return Expr::negate(parse_unary());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (accept('^')) return Expr::power(std::move(base), parse_unary());
        return base;
    }

    Expr parse_primary() {
        skip_space();
        if (at_end()) fail("unexpected end of input", "expression");
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Expr inner = parse_sum();
            if (!accept(')')) fail("unbalanced parenthesis", "')'");
            return inner;
        }
        if (digit(c) || c == '.') return parse_number();
        if (ident_start(c)) return parse_identifier();
        fail("unexpected character '" + std::string(1, c) + "'", "expression");
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        while (digit(peek())) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (digit(peek())) ++pos_;
        }
        if (pos_ == start + 1 && text_[start] == '.') fail_at(start, "malformed number", "digit");
        if (peek() == 'e' || peek() == 'E') {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && digit(text_[p])) {
                pos_ = p;
                while (digit(peek())) ++pos_;
            }
        }
        std::string literal(text_.substr(start, pos_ - start));
        if (literal.front() == '.') literal.insert(literal.begin(), '0');
        double value = 0.0;
        auto [end, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), value);
        if (ec != std::errc{} || end != literal.data() + literal.size()) {
            fail_at(start, "malformed number", "number");
        }
        return Expr::constant(value);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (ident_char(peek())) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (peek() == '\'') {
            if (name != "y") fail("prime is only allowed on y", "operator");
            ++pos_;
            name = "yp";
            if (peek() == '\'') {
                ++pos_;
                name = "ypp";
            }
            return Expr::variable(std::move(name));
        }
        skip_space();
        if (peek() == '(') {
            auto f = lookup_function(name);
            if (!f) fail_at(start, "unknown function '" + name + "'", "one of sin, cos, tan, cot, sqrt, exp, ln, arctan, arccot");
            ++pos_;
            Expr arg = parse_sum();
            if (!accept(')')) fail("unbalanced parenthesis", "')'");
            return Expr::call(*f, std::move(arg));
        }
        if (lookup_function(name)) fail("function '" + name + "' needs an argument", "'('");
        return Expr::variable(std::move(name));
    }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace varcal
