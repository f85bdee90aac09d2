#pragma once

#include <hurwitz/differential.hpp>
#include <hurwitz/error.hpp>
#include <hurwitz/expr.hpp>
#include <hurwitz/extension.hpp>
#include <hurwitz/field.hpp>
#include <hurwitz/io.hpp>
#include <hurwitz/poly.hpp>
#include <hurwitz/ratfunc.hpp>
#include <hurwitz/tree.hpp>
#include <hurwitz/witt.hpp>

#include <random>
#include <string>
#include <vector>

namespace hurwitz::testing {

inline FieldPtr F(int p) { return Field::prime(p); }
inline FieldPtr F4() { return Field::make(2, {1, 1, 1}); }
inline FieldPtr F8() { return Field::make(2, {1, 1, 0, 1}); }
inline FieldPtr F9() { return Field::make(3, {1, 0, 1}); }
inline FieldPtr F16() { return Field::make(2, first_irreducible_modulus(2, 4)); }
inline FieldPtr F25() { return Field::make(5, first_irreducible_modulus(5, 2)); }

// Every field of order at most 25.
inline std::vector<FieldPtr> small_fields()
{
    return {F(2), F4(), F8(), F16(), F(3), F9(), F(5), F25(), F(7), F(11), F(13), F(17), F(19), F(23)};
}

inline DifferentialForm form(const FieldPtr& f, const std::string& text) { return parse_form(f, text); }

inline HurwitzTree load_tree(const std::string& path) { return parse_tree(read_file(path)); }

// Cartier image computed term by term from the partial-fraction expansion:
// x^k dx keeps k = p-1 (mod p), c dx/(x-a)^j keeps j = 1 (mod p).
inline DifferentialForm cartier_oracle(const DifferentialForm& w)
{
    const FieldPtr& f = w.field();
    const int p = f->p();
    const PartialFractions pf = partial_fractions(w.coefficient());
    RatFunc out(f);
    const Poly& h = pf.polynomial_part;
    for (int k = 0; !h.is_zero() && k <= h.deg(); ++k) {
        const Elem c = h.coeff(k);
        if (c.code == 0 || (k + 1) % p != 0) continue;
        out += RatFunc(Poly::monomial(f, f->pth_root(c), (k + 1) / p - 1));
    }
    for (const auto& t : pf.terms) {
        if ((t.order - 1) % p != 0) continue;
        const Poly den = pow(Poly::linear(f, t.pole), (t.order - 1) / p + 1);
        out += RatFunc(Poly::constant(f, f->pth_root(t.coefficient)), den);
    }
    return DifferentialForm(out);
}

class Random {
public:
    explicit Random(std::uint64_t seed) : gen_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    Elem elem(const FieldPtr& f) { return f->element(static_cast<std::uint32_t>(uniform(0, static_cast<int>(f->size()) - 1))); }
    Elem nonzero(const FieldPtr& f) { return f->element(static_cast<std::uint32_t>(uniform(1, static_cast<int>(f->size()) - 1))); }

    Poly poly(const FieldPtr& f, int max_deg)
    {
        const int d = uniform(0, max_deg);
        std::vector<Elem> c;
        for (int i = 0; i <= d; ++i) c.push_back(elem(f));
        return Poly(f, c);
    }

    // Split denominator: up to max_poles points with orders in [1, max_order].
    Poly split_denominator(const FieldPtr& f, int max_poles, int max_order)
    {
        Poly den = Poly::constant(f, f->one());
        const int k = uniform(0, max_poles);
        for (int i = 0; i < k; ++i) den *= pow(Poly::linear(f, elem(f)), uniform(1, max_order));
        return den;
    }

    DifferentialForm split_form(const FieldPtr& f, int max_num_deg = 6, int max_poles = 3, int max_order = 7)
    {
        return DifferentialForm(RatFunc(poly(f, max_num_deg), split_denominator(f, max_poles, max_order)));
    }

    RatFunc nonzero_ratfunc(const FieldPtr& f, int max_deg)
    {
        Poly num = poly(f, max_deg);
        while (num.is_zero()) num = poly(f, max_deg);
        Poly den = poly(f, max_deg);
        while (den.is_zero()) den = poly(f, max_deg);
        return RatFunc(num, den);
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace hurwitz::testing
