#pragma once

#include "hurwitz/poly.hpp"

#include <compare>
#include <string>
#include <vector>

namespace hurwitz {

class Valuation {
public:
    static Valuation plus_infinity() { return Valuation(); }
    explicit Valuation(int value) : finite_(true), value_(value) {}

    bool is_plus_infinity() const { return !finite_; }
    int value() const;

    bool operator==(const Valuation&) const = default;
    std::string to_string() const;

private:
    Valuation() = default;
    bool finite_ = false;
    int value_ = 0;
};

class Point {
public:
    static Point infinity() { return Point(); }
    static Point at(Elem a) { return Point(a); }

    bool is_infinity() const { return infinite_; }
    Elem value() const;

    bool operator==(const Point&) const = default;

private:
    Point() = default;
    explicit Point(Elem a) : infinite_(false), value_(a) {}
    bool infinite_ = true;
    Elem value_{};
};

// Reduced quotient num/den with den monic.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(FieldPtr f);
    RatFunc(Poly num);
    RatFunc(Poly num, Poly den);

    static RatFunc constant(FieldPtr f, Elem c);

    const FieldPtr& field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.deg() == 0; }

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    RatFunc inverse() const;
    RatFunc scaled(Elem c) const;
    RatFunc derivative() const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::string to_string() const;

private:
    Poly num_;
    Poly den_;
};

RatFunc operator+(RatFunc a, const RatFunc& b);
RatFunc operator-(RatFunc a, const RatFunc& b);
RatFunc operator*(RatFunc a, const RatFunc& b);
RatFunc operator/(RatFunc a, const RatFunc& b);
RatFunc pow(const RatFunc& a, int e);

Valuation ord_at(const RatFunc& f, Point point);
// Order of vanishing of a polynomial at a finite point.
int multiplicity_at(const Poly& f, Elem a);

struct PartialFractionTerm {
    Elem pole;
    int order = 0;
    Elem coefficient;
    bool operator==(const PartialFractionTerm&) const = default;
};

struct PartialFractions {
    Poly polynomial_part;
    // Sorted by pole, then by increasing order.
    std::vector<PartialFractionTerm> terms;

    RatFunc recombine() const;
};

// Throws Error(IrreducibleFactor, degree) when the denominator does not split.
PartialFractions partial_fractions(const RatFunc& f);

}  // namespace hurwitz
