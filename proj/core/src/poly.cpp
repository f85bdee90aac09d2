#include "hurwitz/poly.hpp"

#include "hurwitz/error.hpp"

#include <sstream>

namespace hurwitz {

int Degree::value() const
{
    if (!finite_) throw Error(ErrorCode::PreconditionViolated, "degree of the zero polynomial");
    return value_;
}

std::strong_ordering Degree::operator<=>(const Degree& o) const
{
    if (!finite_ || !o.finite_) return finite_ <=> o.finite_;
    return value_ <=> o.value_;
}

std::string Degree::to_string() const
{
    return finite_ ? std::to_string(value_) : "-inf";
}

void require_same_field(const FieldPtr& a, const FieldPtr& b)
{
    if (a == b) return;
    if (!a || !b || !a->same_as(*b)) throw Error(ErrorCode::FieldMismatch, "operands live over different fields");
}

Poly::Poly(FieldPtr f, std::vector<Elem> coeffs) : f_(std::move(f)), c_(std::move(coeffs))
{
    normalize();
}

void Poly::normalize()
{
    while (!c_.empty() && c_.back().code == 0) c_.pop_back();
}

Poly Poly::constant(FieldPtr f, Elem c)
{
    return Poly(std::move(f), {c});
}

Poly Poly::x(FieldPtr f)
{
    const Elem one = f->one();
    return Poly(std::move(f), {Elem{0}, one});
}

Poly Poly::monomial(FieldPtr f, Elem c, int k)
{
    std::vector<Elem> v(static_cast<std::size_t>(k) + 1, Elem{0});
    v[k] = c;
    return Poly(std::move(f), std::move(v));
}

Poly Poly::linear(FieldPtr f, Elem a)
{
    const Elem na = f->neg(a);
    const Elem one = f->one();
    return Poly(std::move(f), {na, one});
}

Poly Poly::from_roots(FieldPtr f, const std::vector<Elem>& roots)
{
    Poly r = constant(f, f->one());
    for (Elem a : roots) r *= linear(f, a);
    return r;
}

int Poly::deg() const
{
    if (c_.empty()) throw Error(ErrorCode::PreconditionViolated, "degree of the zero polynomial");
    return static_cast<int>(c_.size()) - 1;
}

Elem Poly::coeff(int k) const
{
    if (k < 0 || k >= static_cast<int>(c_.size())) return Elem{0};
    return c_[k];
}

Elem Poly::lead() const
{
    return c_.empty() ? Elem{0} : c_.back();
}

Elem Poly::eval(Elem a) const
{
    Elem acc{0};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = f_->add(f_->mul(acc, a), *it);
    return acc;
}

Poly Poly::monic() const
{
    if (c_.empty()) return *this;
    return scaled(f_->inv(c_.back()));
}

Poly Poly::derivative() const
{
    std::vector<Elem> v;
    for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(f_->scale(c_[k], static_cast<long long>(k)));
    return Poly(f_, std::move(v));
}

Poly Poly::scaled(Elem c) const
{
    std::vector<Elem> v(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) v[k] = f_->mul(c_[k], c);
    return Poly(f_, std::move(v));
}

Poly Poly::shifted(Elem a) const
{
    // Horner in the shifted variable.
    Poly r(f_);
    const Poly lin(f_, {a, f_->one()});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r *= lin;
        r += constant(f_, *it);
    }
    return r;
}

Poly Poly::truncated(int k) const
{
    if (k >= static_cast<int>(c_.size())) return *this;
    return Poly(f_, std::vector<Elem>(c_.begin(), c_.begin() + std::max(k, 0)));
}

Poly Poly::operator-() const
{
    std::vector<Elem> v(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) v[k] = f_->neg(c_[k]);
    return Poly(f_, std::move(v));
}

Poly& Poly::operator+=(const Poly& o)
{
    if (!f_) f_ = o.f_;
    else if (o.f_) require_same_field(f_, o.f_);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Elem{0});
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = f_->add(c_[k], o.c_[k]);
    normalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    return *this += -o;
}

Poly& Poly::operator*=(const Poly& o)
{
    if (!f_) f_ = o.f_;
    else if (o.f_) require_same_field(f_, o.f_);
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, Elem{0});
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].code == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
    }
    c_ = std::move(r);
    normalize();
    return *this;
}

Poly operator+(Poly a, const Poly& b)
{
    return a += b;
}

Poly operator-(Poly a, const Poly& b)
{
    return a -= b;
}

Poly operator*(Poly a, const Poly& b)
{
    return a *= b;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero()) throw Error(ErrorCode::ZeroInput, "division by the zero polynomial");
    require_same_field(a.field(), b.field());
    const FieldPtr& f = b.field();
    std::vector<Elem> r = a.coeffs();
    const auto& bc = b.coeffs();
    const int db = b.deg();
    if (static_cast<int>(r.size()) - 1 < db) return {Poly(f), a};
    std::vector<Elem> quot(r.size() - db, Elem{0});
    const Elem lead_inv = f->inv(bc.back());
    for (int k = static_cast<int>(r.size()) - 1; k >= db; --k) {
        if (r[k].code == 0) continue;
        const Elem c = f->mul(r[k], lead_inv);
        quot[k - db] = c;
        for (int i = 0; i <= db; ++i) r[k - db + i] = f->sub(r[k - db + i], f->mul(c, bc[i]));
    }
    r.resize(db);
    return {Poly(f, std::move(quot)), Poly(f, std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b)
{
    return divmod(a, b).first;
}

Poly operator%(const Poly& a, const Poly& b)
{
    return divmod(a, b).second;
}

Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly pow(const Poly& a, int e)
{
    Poly r = Poly::constant(a.field(), a.field()->one());
    Poly b = a;
    for (; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        if (e > 1) b *= b;
    }
    return r;
}

Poly powmod(const Poly& a, unsigned long long e, const Poly& m)
{
    Poly r = Poly::constant(m.field(), m.field()->one()) % m;
    Poly b = a % m;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = (r * b) % m;
        if (e > 1) b = (b * b) % m;
    }
    return r;
}

std::vector<std::pair<Elem, int>> roots_with_multiplicity(const Poly& f)
{
    std::vector<std::pair<Elem, int>> out;
    if (f.is_zero() || f.is_constant()) return out;
    const FieldPtr& F = f.field();
    Poly rest = f;
    for (std::uint32_t c = 0; c < F->size() && rest.deg() > 0; ++c) {
        const Elem a{c};
        int k = 0;
        while (rest.deg() > 0 && rest.eval(a).code == 0) {
            rest = rest / Poly::linear(F, a);
            ++k;
        }
        if (k > 0) out.emplace_back(a, k);
    }
    return out;
}

std::vector<Elem> distinct_roots(const Poly& f)
{
    std::vector<Elem> out;
    for (const auto& [a, k] : roots_with_multiplicity(f)) out.push_back(a);
    return out;
}

bool is_squarefree(const Poly& f)
{
    if (f.is_zero()) return false;
    if (f.is_constant()) return true;
    return gcd(f, f.derivative()).deg() == 0;
}

bool splits(const Poly& f)
{
    if (f.is_zero()) return false;
    int total = 0;
    for (const auto& [a, k] : roots_with_multiplicity(f)) total += k;
    return total == f.deg();
}

bool splits_squarefree(const Poly& f)
{
    if (f.is_zero()) return false;
    if (f.is_constant()) return true;
    const FieldPtr& F = f.field();
    const Poly xq = powmod(Poly::x(F), F->size(), f);
    return ((xq - Poly::x(F)) % f).is_zero() && is_squarefree(f);
}

std::optional<int> smallest_irreducible_factor_degree(const Poly& f)
{
    if (f.is_zero() || f.is_constant()) return std::nullopt;
    const FieldPtr& F = f.field();
    const Poly x = Poly::x(F);
    Poly h = x % f;
    for (int k = 1; k <= f.deg(); ++k) {
        h = powmod(h, F->size(), f);
        if (gcd(f, h - x).deg() > 0) return k;
    }
    return f.deg();
}

std::string Poly::to_string(char var) const
{
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
        const Elem c = c_[k];
        if (c.code == 0) continue;
        std::string cs = f_->to_string(c);
        const bool composite = cs.find_first_of("+*") != std::string::npos;
        if (!first) os << '+';
        first = false;
        if (k == 0) {
            os << (composite ? "(" + cs + ")" : cs);
            continue;
        }
        if (c != f_->one()) os << (composite ? "(" + cs + ")" : cs) << '*';
        os << var;
        if (k > 1) os << '^' << k;
    }
    return os.str();
}

}  // namespace hurwitz
