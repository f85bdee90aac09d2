#include "hurwitz/differential.hpp"

#include "hurwitz/error.hpp"
#include "hurwitz/expr.hpp"

namespace hurwitz {

std::string DifferentialForm::to_string() const
{
    return format_form(f_);
}

DifferentialForm parse_form(const FieldPtr& f, std::string_view text)
{
    return DifferentialForm(parse_expression(f, text));
}

int ord(const DifferentialForm& w, Point point)
{
    if (w.is_zero()) throw Error(ErrorCode::ZeroForm, "order of the zero form");
    const int v = ord_at(w.coefficient(), point).value();
    return point.is_infinity() ? v - 2 : v;
}

Poly cartier_polynomial(const Poly& h)
{
    const FieldPtr& F = h.field();
    const int p = F->p();
    std::vector<Elem> out;
    const auto& c = h.coeffs();
    for (std::size_t k = static_cast<std::size_t>(p - 1); k < c.size(); k += p) {
        const std::size_t target = (k + 1) / p - 1;
        if (out.size() <= target) out.resize(target + 1, Elem{0});
        out[target] = F->pth_root(c[k]);
    }
    return Poly(F, std::move(out));
}

DifferentialForm cartier(const DifferentialForm& w)
{
    if (w.is_zero()) return w;
    const RatFunc& f = w.coefficient();
    const int p = f.field()->p();
    const Poly lifted = f.num() * pow(f.den(), p - 1);
    return DifferentialForm(RatFunc(cartier_polynomial(lifted), f.den()));
}

DifferentialForm cartier_partial_fractions(const DifferentialForm& w)
{
    if (w.is_zero()) return w;
    const FieldPtr& F = w.field();
    const int p = F->p();
    const PartialFractions pf = partial_fractions(w.coefficient());
    RatFunc acc(cartier_polynomial(pf.polynomial_part));
    for (const auto& t : pf.terms) {
        if ((t.order - 1) % p != 0) continue;
        const int k = (t.order - 1) / p;
        acc += RatFunc(Poly::constant(F, F->pth_root(t.coefficient)), pow(Poly::linear(F, t.pole), k + 1));
    }
    return DifferentialForm(acc);
}

bool is_logarithmic(const DifferentialForm& w)
{
    if (w.is_zero()) throw Error(ErrorCode::ZeroForm, "logarithmicity of the zero form");
    return cartier(w) == w;
}

DifferentialForm dlog(const RatFunc& g)
{
    if (g.is_zero()) throw Error(ErrorCode::ZeroInput, "dlog of zero");
    return DifferentialForm(g.derivative() / g);
}

DifferentialForm exterior_derivative(const RatFunc& f)
{
    return DifferentialForm(f.derivative());
}

}  // namespace hurwitz
