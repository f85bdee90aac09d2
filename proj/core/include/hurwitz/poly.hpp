#pragma once

#include "hurwitz/field.hpp"

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hurwitz {

class Degree {
public:
    static Degree minus_infinity() { return Degree(); }
    explicit Degree(int value) : finite_(true), value_(value) {}

    bool is_minus_infinity() const { return !finite_; }
    int value() const;

    bool operator==(const Degree&) const = default;
    std::strong_ordering operator<=>(const Degree& o) const;
    std::string to_string() const;

private:
    Degree() = default;
    bool finite_ = false;
    int value_ = 0;
};

class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr f) : f_(std::move(f)) {}
    Poly(FieldPtr f, std::vector<Elem> coeffs);

    static Poly constant(FieldPtr f, Elem c);
    static Poly x(FieldPtr f);
    static Poly monomial(FieldPtr f, Elem c, int k);
    // x - a
    static Poly linear(FieldPtr f, Elem a);
    static Poly from_roots(FieldPtr f, const std::vector<Elem>& roots);

    const FieldPtr& field() const { return f_; }
    const std::vector<Elem>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    Degree degree() const { return c_.empty() ? Degree::minus_infinity() : Degree(static_cast<int>(c_.size()) - 1); }
    // Degree of a nonzero polynomial.
    int deg() const;
    Elem coeff(int k) const;
    Elem lead() const;
    bool is_monic() const { return !c_.empty() && c_.back() == f_->one(); }
    bool is_constant() const { return c_.size() <= 1; }

    Elem eval(Elem a) const;
    Poly monic() const;
    Poly derivative() const;
    Poly scaled(Elem c) const;
    // f(x + a)
    Poly shifted(Elem a) const;
    // Coefficients of index < k.
    Poly truncated(int k) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);

    bool operator==(const Poly& o) const { return c_ == o.c_; }

    std::string to_string(char var = 'x') const;

private:
    void normalize();

    FieldPtr f_;
    std::vector<Elem> c_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(Poly a, const Poly& b);

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);
Poly pow(const Poly& a, int e);
Poly powmod(const Poly& a, unsigned long long e, const Poly& m);

// Roots in the field with multiplicity, ascending by element order.
std::vector<std::pair<Elem, int>> roots_with_multiplicity(const Poly& f);
std::vector<Elem> distinct_roots(const Poly& f);
bool is_squarefree(const Poly& f);
// True when f is a product of linear factors over the field.
bool splits(const Poly& f);
// True when f is a product of distinct linear factors (f divides x^q - x).
bool splits_squarefree(const Poly& f);
// Smallest degree of an irreducible factor; nullopt for constants.
std::optional<int> smallest_irreducible_factor_degree(const Poly& f);

void require_same_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace hurwitz
