#include "edp/potdsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace edp::potdsl {

namespace {

struct Parser {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    std::string found_here() {
        skip_ws();
        if (pos >= src.size()) return "end of input";
        return "'" + std::string(1, src[pos]) + "'";
    }
    [[noreturn]] void fail(const std::string& expected) {
        skip_ws();
        throw ParseError(pos, expected, found_here());
    }

    ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (true) {
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            const std::size_t at = pos;
            ++pos;
            ExprPtr rhs = parse_term();
            Expr e;
            e.kind = (c == '+') ? Expr::Kind::Add : Expr::Kind::Sub;
            e.a = lhs;
            e.b = rhs;
            e.offset = at;
            lhs = make(std::move(e));
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (true) {
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            const std::size_t at = pos;
            ++pos;
            ExprPtr rhs = parse_factor();
            Expr e;
            e.kind = (c == '*') ? Expr::Kind::Mul : Expr::Kind::Div;
            e.a = lhs;
            e.b = rhs;
            e.offset = at;
            lhs = make(std::move(e));
        }
    }

    ExprPtr parse_factor() {
        if (peek() == '-') {
            const std::size_t at = pos;
            ++pos;
            Expr e;
            e.kind = Expr::Kind::Neg;
            e.a = parse_factor();
            e.offset = at;
            return make(std::move(e));
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (peek() != '^') return base;
        const std::size_t caret = pos;
        ++pos;
        skip_ws();
        const std::size_t exp_at = pos;
        if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
            throw ParseError(exp_at, "a nonnegative integer exponent", found_here());
        int exponent = 0;
        const auto res = std::from_chars(src.data() + pos, src.data() + src.size(), exponent);
        pos = static_cast<std::size_t>(res.ptr - src.data());
        // a fractional exponent is not a separate token; reject it explicitly
        if (pos < src.size() && src[pos] == '.')
            throw ParseError(exp_at, "a nonnegative integer exponent",
                             "a fractional number");
        if (exponent > 60)
            throw ParseError(exp_at, "an exponent no larger than 60",
                             std::to_string(exponent));
        if (peek() == '^')
            throw ParseError(pos, "no further '^' (an exponent cannot itself be raised)",
                             "'^'");
        Expr e;
        e.kind = Expr::Kind::Pow;
        e.a = base;
        e.exponent = exponent;
        e.offset = caret;
        return make(std::move(e));
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos >= src.size())
            fail("a number, 'x', 'E', a function call, or '('");
        const std::size_t at = pos;
        const char c = src[pos];

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            real value = 0.0;
            const auto res =
                std::from_chars(src.data() + pos, src.data() + src.size(), value);
            if (res.ec != std::errc{})
                fail("a number");
            pos = static_cast<std::size_t>(res.ptr - src.data());
            Expr e;
            e.kind = Expr::Kind::Number;
            e.value = value;
            e.offset = at;
            return make(std::move(e));
        }

        if (c == '(') {
            ++pos;
            ExprPtr inner = parse_expr();
            if (peek() != ')') fail("')'");
            ++pos;
            return inner;
        }

        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos;
            while (end < src.size() &&
                   std::isalpha(static_cast<unsigned char>(src[end])))
                ++end;
            const std::string name(src.substr(pos, end - pos));
            if (name == "x" || name == "E") {
                pos = end;
                Expr e;
                e.kind = (name == "x") ? Expr::Kind::VarX : Expr::Kind::VarE;
                e.offset = at;
                return make(std::move(e));
            }
            if (name == "sqrt" || name == "exp" || name == "abs") {
                pos = end;
                if (peek() != '(') fail("'(' after function name");
                ++pos;
                ExprPtr arg = parse_expr();
                if (peek() != ')') fail("')'");
                ++pos;
                Expr e;
                e.kind = Expr::Kind::Call;
                e.func = name;
                e.a = arg;
                e.offset = at;
                return make(std::move(e));
            }
            throw ParseError(at, "'x', 'E', 'sqrt', 'exp', or 'abs'",
                             "identifier '" + name + "'");
        }

        fail("a number, 'x', 'E', a function call, or '('");
    }
};

// Shortest decimal text that parses back to exactly v.
std::string number_text(real v) {
    char buf[64];
    for (int prec = 6; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        real back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) break;
    }
    return buf;
}

// Precedence level of a node for the printer: higher binds tighter.
int level(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_level, std::string& out) {
    if (level(child) < min_level) {
        out += '(';
        print(child, out);
        out += ')';
    } else {
        print(child, out);
    }
}

void print(const Expr& e, std::string& out) {
    switch (e.kind) {
        case Expr::Kind::Number: out += number_text(e.value); return;
        case Expr::Kind::VarX: out += 'x'; return;
        case Expr::Kind::VarE: out += 'E'; return;
        case Expr::Kind::Neg:
            out += '-';
            print_child(*e.a, 3, out);
            return;
        case Expr::Kind::Add:
            print_child(*e.a, 1, out);
            out += '+';
            print_child(*e.b, 2, out);
            return;
        case Expr::Kind::Sub:
            print_child(*e.a, 1, out);
            out += '-';
            print_child(*e.b, 2, out);
            return;
        case Expr::Kind::Mul:
            print_child(*e.a, 2, out);
            out += '*';
            print_child(*e.b, 3, out);
            return;
        case Expr::Kind::Div:
            print_child(*e.a, 2, out);
            out += '/';
            print_child(*e.b, 3, out);
            return;
        case Expr::Kind::Pow:
            print_child(*e.a, 5, out);
            out += '^';
            out += std::to_string(e.exponent);
            return;
        case Expr::Kind::Call:
            out += e.func;
            out += '(';
            print(*e.a, out);
            out += ')';
            return;
    }
}

} // namespace

ExprPtr parse(std::string_view src) {
    Parser p{src};
    ExprPtr tree = p.parse_expr();
    if (!p.at_end())
        throw ParseError(p.pos, "end of input", p.found_here());
    return tree;
}

real eval(const Expr& e, real x, real energy) {
    switch (e.kind) {
        case Expr::Kind::Number: return e.value;
        case Expr::Kind::VarX: return x;
        case Expr::Kind::VarE: return energy;
        case Expr::Kind::Neg: return -eval(*e.a, x, energy);
        case Expr::Kind::Add: return eval(*e.a, x, energy) + eval(*e.b, x, energy);
        case Expr::Kind::Sub: return eval(*e.a, x, energy) - eval(*e.b, x, energy);
        case Expr::Kind::Mul: return eval(*e.a, x, energy) * eval(*e.b, x, energy);
        case Expr::Kind::Div: {
            const real num = eval(*e.a, x, energy);
            const real den = eval(*e.b, x, energy);
            if (den == 0.0) throw DomainError(pretty(e), x, energy);
            return num / den;
        }
        case Expr::Kind::Pow: {
            const real base = eval(*e.a, x, energy);
            real acc = 1.0;
            for (int i = 0; i < e.exponent; ++i) acc *= base;
            return acc;
        }
        case Expr::Kind::Call: {
            const real arg = eval(*e.a, x, energy);
            if (e.func == "sqrt") {
                if (arg < 0.0) throw DomainError(pretty(e), x, energy);
                return std::sqrt(arg);
            }
            if (e.func == "exp") return std::exp(arg);
            return std::abs(arg); // "abs"
        }
    }
    return 0.0; // unreachable
}

std::string pretty(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

bool uses_x(const Expr& e) {
    if (e.kind == Expr::Kind::VarX) return true;
    if (e.a && uses_x(*e.a)) return true;
    return e.b && uses_x(*e.b);
}

bool uses_e(const Expr& e) {
    if (e.kind == Expr::Kind::VarE) return true;
    if (e.a && uses_e(*e.a)) return true;
    return e.b && uses_e(*e.b);
}

} // namespace edp::potdsl
