#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hurwitz {

// Element of a finite field, identified by its integer code sum c_i p^i where
// c_i is the coefficient of t^i in the polynomial basis. Comparison of codes is
// the canonical element order used by every deterministic choice.
struct Elem {
    std::uint32_t code = 0;
    auto operator<=>(const Elem&) const = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    // modulus: ascending coefficients of a monic irreducible polynomial of degree d.
    static FieldPtr make(int p, std::vector<int> modulus);
    static FieldPtr prime(int p);

    int p() const { return p_; }
    int degree() const { return d_; }
    std::uint32_t size() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }
    bool same_as(const Field& other) const;

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }
    Elem generator() const;
    Elem from_int(long long v) const;
    Elem from_coeffs(const std::vector<int>& coeffs) const;
    std::vector<int> coeffs(Elem a) const;
    Elem element(std::uint32_t code) const;
    // Integer value when a lies in the prime field.
    bool in_prime_field(Elem a) const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const { return Elem{neg_[a.code]}; }
    Elem mul(Elem a, Elem b) const
    {
        if (a.code == 0 || b.code == 0) return Elem{0};
        return Elem{exp_[log_[a.code] + log_[b.code]]};
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, long long e) const;
    Elem scale(Elem a, long long k) const { return mul(a, from_int(k)); }
    Elem frobenius(Elem a) const;
    Elem pth_root(Elem a) const;
    Elem primitive_element() const { return Elem{exp_[1]}; }

    // All x with x^l = a, ascending by code.
    std::vector<Elem> lth_roots(Elem a, long long l) const;

    std::string to_string(Elem a) const;

private:
    Field() = default;

    int p_ = 0;
    int d_ = 0;
    std::uint32_t q_ = 0;
    std::vector<int> modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> add_table_;
};

bool is_prime(long long n);
// Ben-Or irreducibility test over F_p for an ascending coefficient vector.
bool is_irreducible_mod_p(int p, const std::vector<int>& poly);
// Least monic irreducible polynomial of degree d over F_p in the canonical order.
std::vector<int> first_irreducible_modulus(int p, int d);

// Ring homomorphism from a small field into a larger one of the same characteristic.
class FieldEmbedding {
public:
    FieldEmbedding(FieldPtr from, FieldPtr to);
    Elem operator()(Elem a) const { return image_[a.code]; }
    const FieldPtr& source() const { return from_; }
    const FieldPtr& target() const { return to_; }

private:
    FieldPtr from_;
    FieldPtr to_;
    std::vector<Elem> image_;
};

}  // namespace hurwitz
