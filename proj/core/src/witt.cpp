#include "hurwitz/witt.hpp"

#include "hurwitz/error.hpp"

#include <algorithm>

namespace hurwitz {

RatFunc ReductionType::entry_in_x(std::size_t i) const
{
    const Poly& e = entries.at(i);
    if (e.is_zero()) return RatFunc(field);
    const int d = e.deg();
    // sum c_j x^-j = (sum c_j x^(d-j)) / x^d
    std::vector<Elem> rev(e.coeffs().rbegin(), e.coeffs().rend());
    return RatFunc(Poly(field, rev), Poly::monomial(field, field->one(), d));
}

ReductionType reduction_type_from_functions(const FieldPtr& f, const std::vector<RatFunc>& entries)
{
    ReductionType rt{f, {}};
    for (const RatFunc& r : entries) {
        if (r.is_zero()) {
            rt.entries.emplace_back(f);
            continue;
        }
        const Poly& den = r.den();
        if (den.deg() != static_cast<int>(den.coeffs().size()) - 1 || den != Poly::monomial(f, f->one(), den.deg()))
            throw Error(ErrorCode::ParseError, "reduction type entries must be polynomials in 1/x");
        const int d = den.deg();
        if (r.num().deg() > d) throw Error(ErrorCode::ParseError, "reduction type entries must be polynomials in 1/x");
        std::vector<Elem> u(static_cast<std::size_t>(d) + 1, Elem{0});
        for (int k = 0; k <= r.num().deg(); ++k) u[d - k] = r.num().coeff(k);
        rt.entries.emplace_back(f, u);
    }
    return rt;
}

bool is_reduced(const ReductionType& rt)
{
    const int p = rt.p();
    for (const Poly& e : rt.entries)
        for (int j = p; j < static_cast<int>(e.coeffs().size()); j += p)
            if (e.coeff(j).code != 0) return false;
    return true;
}

std::vector<int> breaks(const ReductionType& rt)
{
    if (!is_reduced(rt)) throw Error(ErrorCode::NotReduced, "reduction type has p-th power terms");
    const long long p = rt.p();
    std::vector<int> m;
    for (std::size_t i = 0; i < rt.entries.size(); ++i) {
        std::optional<long long> best;
        long long scale = 1;
        for (std::size_t l = i + 1; l-- > 0;) {
            const Degree d = rt.entries[l].degree();
            if (!d.is_minus_infinity()) best = std::max(best.value_or(d.value() * scale), d.value() * scale);
            scale *= p;
        }
        if (!best || *best <= 0)
            throw Error(ErrorCode::PreconditionViolated, "level " + std::to_string(i + 1) + " is not totally ramified",
                        static_cast<int>(i + 1));
        m.push_back(static_cast<int>(*best));
    }
    return m;
}

ConductorData conductors(const ReductionType& rt)
{
    ConductorData out;
    out.breaks = breaks(rt);
    const int p = rt.p();
    int prev = 0;
    for (std::size_t i = 0; i < out.breaks.size(); ++i) {
        const int iota = out.breaks[i] + 1;
        const int bound = p * prev - p + 1;
        const int level = static_cast<int>(i + 1);
        if (i > 0) {
            if (iota < bound)
                throw Error(ErrorCode::ConductorInequalityViolated,
                            "conductor " + std::to_string(iota) + " below " + std::to_string(bound) + " at level " +
                                std::to_string(level),
                            level);
            if (iota % p == 1 % p && iota != bound)
                throw Error(ErrorCode::ConductorInequalityViolated,
                            "conductor congruent to 1 mod p must be minimal at level " + std::to_string(level), level);
        }
        out.conductors.push_back(iota);
        out.minimal.push_back(i > 0 && iota == bound);
        out.excess.push_back(i > 0 ? iota - bound : 0);
        prev = iota;
    }
    return out;
}

Elem root_constant_coefficient(const ReductionType& rt)
{
    if (rt.entries.empty() || rt.entries.back().is_zero())
        throw Error(ErrorCode::PreconditionViolated, "top entry of the reduction type is zero");
    const Poly& top = rt.entries.back();
    const int l = top.deg();
    if (l % rt.p() == 0)
        throw Error(ErrorCode::LeadingExponentDivisibleByP, "leading exponent " + std::to_string(l) + " divisible by p");
    const FieldPtr& f = rt.field;
    return f->neg(f->scale(top.lead(), l));
}

bool is_prefix(const ReductionType& lo, const ReductionType& hi)
{
    if (hi.entries.size() != lo.entries.size() + 1) return false;
    for (std::size_t i = 0; i < lo.entries.size(); ++i)
        if (!(lo.entries[i] == hi.entries[i])) return false;
    return true;
}

}  // namespace hurwitz
