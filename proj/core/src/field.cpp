#include "hurwitz/field.hpp"

#include "hurwitz/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace hurwitz {

std::string_view error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::IrreducibleFactor: return "IrreducibleFactor";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NotReduced: return "NotReduced";
    case ErrorCode::ConductorInequalityViolated: return "ConductorInequalityViolated";
    case ErrorCode::LeadingExponentDivisibleByP: return "LeadingExponentDivisibleByP";
    case ErrorCode::PlaceOutsideEdge: return "PlaceOutsideEdge";
    case ErrorCode::ShapeViolation: return "ShapeViolation";
    case ErrorCode::TrunkNotAllowed: return "TrunkNotAllowed";
    case ErrorCode::DepthTooHigh: return "DepthTooHigh";
    case ErrorCode::NoRootInField: return "NoRootInField";
    case ErrorCode::NonPositiveSolution: return "NonPositiveSolution";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::SearchFailed: return "SearchFailed";
    case ErrorCode::TargetInfeasible: return "TargetInfeasible";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<int> detail)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code), detail_(detail)
{
}

namespace {

using ModPoly = std::vector<int>;

void trim(ModPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p)
{
    int r = 1;
    for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return r;
}

ModPoly mod_reduce(ModPoly a, const ModPoly& m, int p)
{
    trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    const int lead_inv = inv_mod(m.back(), p);
    while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
        const int shift = static_cast<int>(a.size()) - 1 - dm;
        const int c = a.back() * lead_inv % p;
        for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const ModPoly& m, int p)
{
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return mod_reduce(std::move(r), m, p);
}

ModPoly mod_gcd(ModPoly a, ModPoly b, int p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = mod_reduce(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

std::uint32_t int_pow(std::uint32_t b, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return static_cast<std::uint32_t>(r);
}

}  // namespace

bool is_prime(long long n)
{
    if (n < 2) return false;
    for (long long k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

bool is_irreducible_mod_p(int p, const std::vector<int>& poly)
{
    ModPoly f;
    for (int c : poly) f.push_back(((c % p) + p) % p);
    trim(f);
    const int d = static_cast<int>(f.size()) - 1;
    if (d < 1) return false;
    if (d == 1) return true;
    ModPoly h{0, 1};
    for (int i = 1; i <= d / 2; ++i) {
        ModPoly acc{1};
        for (int k = 0; k < p; ++k) acc = mod_mul(acc, h, f, p);
        h = acc;
        ModPoly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        trim(diff);
        if (diff.empty()) return false;
        if (mod_gcd(f, diff, p).size() > 1) return false;
    }
    return true;
}

std::vector<int> first_irreducible_modulus(int p, int d)
{
    if (!is_prime(p) || d < 1) throw Error(ErrorCode::PreconditionViolated, "bad field parameters");
    const std::uint32_t count = int_pow(static_cast<std::uint32_t>(p), d);
    for (std::uint32_t code = 0; code < count; ++code) {
        std::vector<int> m(d + 1, 0);
        std::uint32_t c = code;
        for (int i = 0; i < d; ++i, c /= p) m[i] = static_cast<int>(c % p);
        m[d] = 1;
        if (is_irreducible_mod_p(p, m)) return m;
    }
    throw Error(ErrorCode::PreconditionViolated, "no irreducible polynomial found");
}

FieldPtr Field::prime(int p)
{
    return make(p, {0, 1});
}

FieldPtr Field::make(int p, std::vector<int> modulus)
{
    if (!is_prime(p)) throw Error(ErrorCode::PreconditionViolated, "characteristic " + std::to_string(p) + " is not prime");
    for (int& c : modulus) c = ((c % p) + p) % p;
    trim(modulus);
    if (modulus.size() < 2 || modulus.back() != 1)
        throw Error(ErrorCode::PreconditionViolated, "modulus must be monic of positive degree");
    if (!is_irreducible_mod_p(p, modulus))
        throw Error(ErrorCode::PreconditionViolated, "modulus is not irreducible");
    const int d = static_cast<int>(modulus.size()) - 1;
    if (std::pow(static_cast<double>(p), d) > static_cast<double>(1u << 24))
        throw Error(ErrorCode::PreconditionViolated, "field too large");

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->d_ = d;
    f->q_ = int_pow(static_cast<std::uint32_t>(p), d);
    f->modulus_ = modulus;
    const std::uint32_t q = f->q_;

    auto to_digits = [&](std::uint32_t code) {
        ModPoly v(d, 0);
        for (int i = 0; i < d; ++i, code /= p) v[i] = static_cast<int>(code % p);
        return v;
    };
    auto to_code = [&](const ModPoly& v) {
        std::uint32_t code = 0;
        for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) code = code * p + static_cast<std::uint32_t>(v[i]);
        return code;
    };

    f->neg_.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) {
        ModPoly v = to_digits(a);
        for (int& c : v) c = (p - c) % p;
        f->neg_[a] = to_code(v);
    }
    if (p != 2 && q <= 1024) {
        f->add_table_.resize(static_cast<std::size_t>(q) * q);
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) {
                std::uint32_t r = 0, x = a, y = b, w = 1;
                for (int i = 0; i < d; ++i, x /= p, y /= p, w *= p) r += ((x % p + y % p) % p) * w;
                f->add_table_[static_cast<std::size_t>(a) * q + b] = r;
            }
    }

    f->exp_.assign(2 * (q - 1) + 1, 0);
    f->log_.assign(q, 0);
    if (q == 2) {
        f->exp_[0] = f->exp_[1] = f->exp_[2] = 1;
    } else {
        std::vector<std::uint32_t> seq(q - 1);
        bool found = false;
        for (std::uint32_t cand = 2; cand < q && !found; ++cand) {
            const ModPoly g = to_digits(cand);
            ModPoly cur{1};
            std::uint32_t k = 0;
            for (; k < q - 1; ++k) {
                const std::uint32_t code = to_code(cur);
                if (k > 0 && code == 1) break;
                seq[k] = code;
                cur = mod_mul(cur, g, modulus, p);
                cur.resize(d, 0);
            }
            if (k == q - 1) found = true;
        }
        if (!found) throw Error(ErrorCode::PreconditionViolated, "no primitive element");
        for (std::uint32_t k = 0; k < q - 1; ++k) {
            f->exp_[k] = seq[k];
            f->exp_[k + q - 1] = seq[k];
            f->log_[seq[k]] = k;
        }
        f->exp_[2 * (q - 1)] = 1;
    }
    return f;
}

bool Field::same_as(const Field& other) const
{
    return p_ == other.p_ && modulus_ == other.modulus_;
}

Elem Field::generator() const
{
    if (d_ == 1) return from_int(-modulus_[0]);
    return Elem{static_cast<std::uint32_t>(p_)};
}

Elem Field::from_int(long long v) const
{
    long long r = v % p_;
    if (r < 0) r += p_;
    return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::from_coeffs(const std::vector<int>& coeffs) const
{
    if (static_cast<int>(coeffs.size()) > d_)
        throw Error(ErrorCode::ParseError, "element has more than " + std::to_string(d_) + " coefficients");
    std::uint32_t code = 0;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
        const int c = ((coeffs[i] % p_) + p_) % p_;
        code = code * p_ + static_cast<std::uint32_t>(c);
    }
    return Elem{code};
}

std::vector<int> Field::coeffs(Elem a) const
{
    std::vector<int> v(d_, 0);
    std::uint32_t c = a.code;
    for (int i = 0; i < d_; ++i, c /= p_) v[i] = static_cast<int>(c % p_);
    return v;
}

Elem Field::element(std::uint32_t code) const
{
    if (code >= q_) throw Error(ErrorCode::ParseError, "element code out of range");
    return Elem{code};
}

bool Field::in_prime_field(Elem a) const
{
    return a.code < static_cast<std::uint32_t>(p_);
}

Elem Field::add(Elem a, Elem b) const
{
    if (p_ == 2) return Elem{a.code ^ b.code};
    if (!add_table_.empty()) return Elem{add_table_[static_cast<std::size_t>(a.code) * q_ + b.code]};
    std::uint32_t r = 0, x = a.code, y = b.code, w = 1;
    const auto p = static_cast<std::uint32_t>(p_);
    for (int i = 0; i < d_; ++i, x /= p, y /= p, w *= p) r += ((x % p + y % p) % p) * w;
    return Elem{r};
}

Elem Field::inv(Elem a) const
{
    if (a.code == 0) throw Error(ErrorCode::ZeroInput, "inverse of zero");
    return Elem{exp_[(q_ - 1 - log_[a.code]) % (q_ - 1)]};
}

Elem Field::pow(Elem a, long long e) const
{
    if (e == 0) return one();
    if (a.code == 0) {
        if (e < 0) throw Error(ErrorCode::ZeroInput, "negative power of zero");
        return zero();
    }
    const long long order = static_cast<long long>(q_) - 1;
    long long k = (static_cast<long long>(log_[a.code]) * (e % order)) % order;
    if (k < 0) k += order;
    return Elem{exp_[k]};
}

Elem Field::frobenius(Elem a) const
{
    return pow(a, p_);
}

Elem Field::pth_root(Elem a) const
{
    if (a.code == 0) return a;
    const long long order = static_cast<long long>(q_) - 1;
    long long e = 1;
    for (int i = 0; i + 1 < d_; ++i) e = (e * p_) % order;
    return pow(a, e == 0 ? order : e);
}

std::vector<Elem> Field::lth_roots(Elem a, long long l) const
{
    if (l <= 0) throw Error(ErrorCode::PreconditionViolated, "root index must be positive");
    std::vector<Elem> out;
    for (std::uint32_t c = 0; c < q_; ++c)
        if (pow(Elem{c}, l) == a) out.push_back(Elem{c});
    return out;
}

std::string Field::to_string(Elem a) const
{
    if (d_ == 1) return std::to_string(a.code);
    const auto c = coeffs(a);
    std::ostringstream os;
    bool first = true;
    for (int i = d_ - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << c[i];
            continue;
        }
        if (c[i] != 1) os << c[i] << '*';
        os << 'g';
        if (i > 1) os << '^' << i;
    }
    if (first) os << '0';
    return os.str();
}

FieldEmbedding::FieldEmbedding(FieldPtr from, FieldPtr to) : from_(std::move(from)), to_(std::move(to))
{
    if (from_->p() != to_->p() || to_->degree() % from_->degree() != 0)
        throw Error(ErrorCode::FieldMismatch, "no embedding between these fields");
    const auto& m = from_->modulus();
    std::optional<Elem> theta;
    for (std::uint32_t c = 0; c < to_->size() && !theta; ++c) {
        Elem acc = to_->zero();
        for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i)
            acc = to_->add(to_->mul(acc, Elem{c}), to_->from_int(m[i]));
        if (acc == to_->zero()) theta = Elem{c};
    }
    if (!theta) throw Error(ErrorCode::FieldMismatch, "modulus has no root in target field");
    image_.resize(from_->size());
    for (std::uint32_t c = 0; c < from_->size(); ++c) {
        const auto co = from_->coeffs(Elem{c});
        Elem acc = to_->zero();
        for (int i = static_cast<int>(co.size()) - 1; i >= 0; --i)
            acc = to_->add(to_->mul(acc, *theta), to_->from_int(co[i]));
        image_[c] = acc;
    }
}

}  // namespace hurwitz
