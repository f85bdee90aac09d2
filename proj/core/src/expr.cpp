#include "hurwitz/expr.hpp"

#include "hurwitz/error.hpp"
#include "hurwitz/rational.hpp"

#include <cctype>
#include <sstream>

namespace hurwitz {

Rational parse_rational(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    const auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
        if (part.empty()) throw Error(ErrorCode::ParseError, "empty integer in rational '" + std::string(text) + "'");
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
        return Integer(part[0] == '+' ? part.substr(1) : part);
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    const Integer num = parse_int(s.substr(0, slash));
    const Integer den = parse_int(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in rational '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r, bool force_fraction)
{
    const Integer n = boost::multiprecision::numerator(r);
    const Integer d = boost::multiprecision::denominator(r);
    if (d == 1 && !force_fraction) return n.str();
    return n.str() + "/" + d.str();
}

namespace {

class Parser {
public:
    Parser(const FieldPtr& f, std::string_view text) : f_(f), s_(text) {}

    RatFunc parse()
    {
        RatFunc r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorCode::ParseError, what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool starts_primary()
    {
        skip();
        if (pos_ >= s_.size()) return false;
        const char c = s_[pos_];
        return c == '(' || c == 'x' || c == 'g' || c == 'd' || std::isdigit(static_cast<unsigned char>(c));
    }

    RatFunc expr()
    {
        RatFunc acc = term();
        while (true) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    RatFunc term()
    {
        RatFunc acc = unary();
        while (true) {
            if (eat('*')) acc *= unary();
            else if (eat('/')) {
                RatFunc d = unary();
                if (d.is_zero()) fail("division by zero");
                acc /= d;
            } else if (starts_primary()) acc *= power();
            else return acc;
        }
    }

    RatFunc unary()
    {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    RatFunc power()
    {
        RatFunc base = primary();
        if (eat('^')) {
            skip();
            bool neg = false;
            if (eat('-')) neg = true;
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
            if (neg && base.is_zero()) fail("negative power of zero");
            return pow(base, neg ? -e : e);
        }
        return base;
    }

    RatFunc primary()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (c == 'x') {
            ++pos_;
            return RatFunc(Poly::x(f_));
        }
        if (c == 'g') {
            ++pos_;
            return RatFunc::constant(f_, f_->generator());
        }
        if (c == 'd' && pos_ + 1 < s_.size() && s_[pos_ + 1] == 'x') {
            pos_ += 2;
            return RatFunc::constant(f_, f_->one());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = (v * 10 + (s_[pos_] - '0')) % f_->p();
                ++pos_;
            }
            return RatFunc::constant(f_, f_->from_int(v));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const FieldPtr& f_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string wrap(const std::string& s)
{
    return s.find_first_of("+-*") == std::string::npos ? s : "(" + s + ")";
}

std::string linear_factor(const FieldPtr& f, Elem a)
{
    if (a.code == 0) return "x";
    if (f->in_prime_field(a)) {
        const Elem b = f->neg(a);
        if (b.code <= a.code) return "x+" + f->to_string(b);
        return "x-" + f->to_string(a);
    }
    return "x+" + wrap(f->to_string(f->neg(a)));
}

}  // namespace

RatFunc parse_expression(const FieldPtr& f, std::string_view text)
{
    return Parser(f, text).parse();
}

Elem parse_element(const FieldPtr& f, std::string_view text)
{
    const RatFunc r = parse_expression(f, text);
    if (!r.is_polynomial() || r.num().deg() > 0) throw Error(ErrorCode::ParseError, "not a field element: " + std::string(text));
    return r.num().coeff(0);
}

std::string format_factored(const Poly& p)
{
    const FieldPtr& f = p.field();
    if (p.is_zero()) return "0";
    std::vector<std::string> parts;
    Poly rest = p.monic();
    for (const auto& [a, k] : roots_with_multiplicity(rest)) {
        std::string s = linear_factor(f, a);
        const bool bare = (a.code == 0);
        if (k == 1) parts.push_back(bare ? s : "(" + s + ")");
        else parts.push_back((bare ? s : "(" + s + ")") + "^" + std::to_string(k));
        rest = rest / pow(Poly::linear(f, a), k);
    }
    if (rest.deg() > 0) parts.push_back("(" + rest.to_string() + ")");
    const Elem lead = p.lead();
    std::string out;
    if (lead != f->one() || parts.empty()) out = wrap(f->to_string(lead));
    for (const auto& s : parts) {
        if (!out.empty()) out += "*";
        out += s;
    }
    return out;
}

std::string format_form(const RatFunc& r)
{
    const FieldPtr& f = r.field();
    if (r.is_zero()) return "0";
    std::string num;
    if (r.num().deg() == 0) {
        const Elem c = r.num().coeff(0);
        if (c == f->neg(f->one()) && c != f->one()) num = "-dx";
        else if (c == f->one()) num = "dx";
        else num = wrap(f->to_string(c)) + "*dx";
    } else {
        num = "(" + r.num().to_string() + ")*dx";
    }
    if (r.den().deg() == 0) return num;
    const std::string den = format_factored(r.den());
    bool single = true;
    int depth = 0;
    for (char ch : den) {
        if (ch == '(') ++depth;
        else if (ch == ')') --depth;
        else if (ch == '*' && depth == 0) single = false;
    }
    return num + "/" + (single ? den : "(" + den + ")");
}

}  // namespace hurwitz
