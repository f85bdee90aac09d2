#include "hurwitz/ratfunc.hpp"

#include "hurwitz/error.hpp"

#include <sstream>

namespace hurwitz {

int Valuation::value() const
{
    if (!finite_) throw Error(ErrorCode::PreconditionViolated, "valuation of the zero function");
    return value_;
}

std::string Valuation::to_string() const
{
    return finite_ ? std::to_string(value_) : "+inf";
}

Elem Point::value() const
{
    if (infinite_) throw Error(ErrorCode::PreconditionViolated, "the point at infinity has no coordinate");
    return value_;
}

RatFunc::RatFunc(FieldPtr f) : num_(f), den_(Poly::constant(f, f->one()))
{
}

RatFunc::RatFunc(Poly num) : RatFunc(num, Poly::constant(num.field(), num.field()->one()))
{
}

RatFunc::RatFunc(Poly num, Poly den)
{
    if (den.is_zero()) throw Error(ErrorCode::ZeroInput, "zero denominator");
    require_same_field(num.field() ? num.field() : den.field(), den.field());
    const FieldPtr f = den.field();
    if (num.is_zero()) {
        num_ = Poly(f);
        den_ = Poly::constant(f, f->one());
        return;
    }
    const Poly g = gcd(num, den);
    num = num / g;
    den = den / g;
    const Elem l = f->inv(den.lead());
    num_ = num.scaled(l);
    den_ = den.scaled(l);
}

RatFunc RatFunc::constant(FieldPtr f, Elem c)
{
    return RatFunc(Poly::constant(f, c));
}

RatFunc RatFunc::operator-() const
{
    RatFunc r = *this;
    r.num_ = -num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o)
{
    if (den_ == o.den_) {
        *this = RatFunc(num_ + o.num_, den_);
        return *this;
    }
    const Poly g = gcd(den_, o.den_);
    const Poly a = o.den_ / g;
    const Poly b = den_ / g;
    *this = RatFunc(num_ * a + o.num_ * b, den_ * a);
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o)
{
    return *this += -o;
}

RatFunc& RatFunc::operator*=(const RatFunc& o)
{
    *this = RatFunc(num_ * o.num_, den_ * o.den_);
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o)
{
    return *this *= o.inverse();
}

RatFunc RatFunc::inverse() const
{
    if (is_zero()) throw Error(ErrorCode::ZeroInput, "inverse of the zero function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::scaled(Elem c) const
{
    return RatFunc(num_.scaled(c), den_);
}

RatFunc RatFunc::derivative() const
{
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::string RatFunc::to_string() const
{
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatFunc operator+(RatFunc a, const RatFunc& b)
{
    return a += b;
}

RatFunc operator-(RatFunc a, const RatFunc& b)
{
    return a -= b;
}

RatFunc operator*(RatFunc a, const RatFunc& b)
{
    return a *= b;
}

RatFunc operator/(RatFunc a, const RatFunc& b)
{
    return a /= b;
}

RatFunc pow(const RatFunc& a, int e)
{
    if (e < 0) return pow(a.inverse(), -e);
    return RatFunc(pow(a.num(), e), pow(a.den(), e));
}

int multiplicity_at(const Poly& f, Elem a)
{
    if (f.is_zero()) throw Error(ErrorCode::ZeroInput, "multiplicity in the zero polynomial");
    int k = 0;
    Poly rest = f;
    const Poly lin = Poly::linear(f.field(), a);
    while (rest.deg() > 0 && rest.eval(a).code == 0) {
        rest = rest / lin;
        ++k;
    }
    return k;
}

Valuation ord_at(const RatFunc& f, Point point)
{
    if (f.is_zero()) return Valuation::plus_infinity();
    if (point.is_infinity()) return Valuation(f.den().deg() - f.num().deg());
    return Valuation(multiplicity_at(f.num(), point.value()) - multiplicity_at(f.den(), point.value()));
}

RatFunc PartialFractions::recombine() const
{
    const FieldPtr& F = polynomial_part.field();
    RatFunc acc(polynomial_part);
    for (const auto& t : terms)
        acc += RatFunc(Poly::constant(F, t.coefficient), pow(Poly::linear(F, t.pole), t.order));
    return acc;
}

PartialFractions partial_fractions(const RatFunc& f)
{
    const FieldPtr& F = f.field();
    const auto roots = roots_with_multiplicity(f.den());
    int total = 0;
    Poly rest = f.den();
    for (const auto& [a, k] : roots) {
        total += k;
        rest = rest / pow(Poly::linear(F, a), k);
    }
    if (total != f.den().deg()) {
        const int deg = smallest_irreducible_factor_degree(rest).value_or(rest.deg());
        throw Error(ErrorCode::IrreducibleFactor,
                    "denominator has an irreducible factor of degree " + std::to_string(deg), deg);
    }
    PartialFractions out;
    auto [quot, rem] = divmod(f.num(), f.den());
    out.polynomial_part = quot;
    for (const auto& [a, k] : roots) {
        const Poly cofactor = f.den() / pow(Poly::linear(F, a), k);
        // Power series of rem/cofactor around a, to precision k.
        const Poly num = rem.shifted(a).truncated(k);
        const Poly den = cofactor.shifted(a).truncated(k);
        const Elem d0inv = F->inv(den.coeff(0));
        std::vector<Elem> s(k, Elem{0});
        for (int i = 0; i < k; ++i) {
            Elem acc = num.coeff(i);
            for (int j = 1; j <= i; ++j) acc = F->sub(acc, F->mul(den.coeff(j), s[i - j]));
            s[i] = F->mul(acc, d0inv);
        }
        for (int order = 1; order <= k; ++order) {
            const Elem c = s[k - order];
            if (c.code != 0) out.terms.push_back({a, order, c});
        }
    }
    if (!out.polynomial_part.field()) out.polynomial_part = Poly(F);
    return out;
}

}  // namespace hurwitz
