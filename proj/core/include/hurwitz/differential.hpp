#pragma once

#include "hurwitz/ratfunc.hpp"

#include <string>

namespace hurwitz {

// omega = f dx
class DifferentialForm {
public:
    DifferentialForm() = default;
    explicit DifferentialForm(RatFunc f) : f_(std::move(f)) {}
    static DifferentialForm zero(FieldPtr field) { return DifferentialForm(RatFunc(std::move(field))); }

    const RatFunc& coefficient() const { return f_; }
    const FieldPtr& field() const { return f_.field(); }
    bool is_zero() const { return f_.is_zero(); }

    DifferentialForm operator-() const { return DifferentialForm(-f_); }
    DifferentialForm operator+(const DifferentialForm& o) const { return DifferentialForm(f_ + o.f_); }
    DifferentialForm operator-(const DifferentialForm& o) const { return DifferentialForm(f_ - o.f_); }
    DifferentialForm scaled(Elem c) const { return DifferentialForm(f_.scaled(c)); }
    DifferentialForm times(const RatFunc& g) const { return DifferentialForm(f_ * g); }
    bool operator==(const DifferentialForm& o) const { return f_ == o.f_; }

    std::string to_string() const;

private:
    RatFunc f_;
};

DifferentialForm parse_form(const FieldPtr& f, std::string_view text);

// Order including the -2 contribution of dx at infinity. Throws ZeroForm.
int ord(const DifferentialForm& w, Point point);

// Cartier image of h dx for a polynomial h: keeps exponents k = p-1 (mod p),
// x^k -> pth_root(c) x^((k+1)/p - 1).
Poly cartier_polynomial(const Poly& h);

// Expansion route: C(A/B dx) = C(A B^(p-1) dx) / B. Works for any denominator.
DifferentialForm cartier(const DifferentialForm& w);
// Partial-fraction route; throws IrreducibleFactor when the denominator does not split.
DifferentialForm cartier_partial_fractions(const DifferentialForm& w);

bool is_logarithmic(const DifferentialForm& w);
DifferentialForm dlog(const RatFunc& g);
DifferentialForm exterior_derivative(const RatFunc& f);

}  // namespace hurwitz
