#include "hurwitz/error.hpp"
#include "hurwitz/extension.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace hurwitz {

namespace {

struct Candidate {
    std::vector<std::uint32_t> z;
    std::uint32_t c = 0;
    bool operator<(const Candidate& o) const { return std::tie(z, c) < std::tie(o.z, o.c); }
};

std::vector<std::uint32_t> codes(const Poly& f)
{
    std::vector<std::uint32_t> out;
    for (Elem a : f.coeffs()) out.push_back(a.code);
    return out;
}

// Monic polynomials of degree k, indexed in base q by their lower coefficients.
Poly monic_from_index(const FieldPtr& F, int k, std::uint64_t index)
{
    std::vector<Elem> c(k + 1);
    const std::uint64_t q = F->size();
    for (int i = 0; i < k; ++i) {
        c[i] = F->element(static_cast<std::uint32_t>(index % q));
        index /= q;
    }
    c[k] = F->one();
    return Poly(F, c);
}

std::uint64_t checked_power(std::uint64_t q, int k, std::uint64_t cap)
{
    std::uint64_t out = 1;
    for (int i = 0; i < k; ++i) {
        if (out > cap / q + 1) return cap + 1;
        out *= q;
    }
    return out;
}

}  // namespace

std::optional<DifferentialForm> solve_cartier(const DifferentialForm& omega_prev, int m_n, CartierVariant variant,
                                              const SolverOptions& options, SolverStats* stats)
{
    if (omega_prev.is_zero()) throw Error(ErrorCode::ZeroForm, "solver input is zero");
    const auto shape = canonical_shape(omega_prev);
    if (!shape || shape->poles.empty())
        throw Error(ErrorCode::ShapeViolation, "solver input must be c dx/prod(x-e_j)^l_j");
    const FieldPtr F = omega_prev.field();
    const int p = F->p();
    const Elem gamma = shape->constant;
    const Poly B_prev = omega_prev.coefficient().den();
    const int m_prev = B_prev.deg() - 1;

    Poly B = B_prev;
    int N = m_n - m_prev;
    Poly M = Poly::constant(F, F->one());
    if (variant == CartierVariant::FIXED_PLUS) {
        if (N < 0) throw Error(ErrorCode::PreconditionViolated, "m_n below the previous conductor");
        const bool exact = cartier(omega_prev).is_zero();
        for (const auto& [e, l] : shape->poles) {
            const int k = exact ? l - 1 : l - ((l - 1) / p + 1);
            if (k > 0) M *= pow(Poly::linear(F, e), k);
        }
    } else {
        Elem first = shape->poles.front().first;
        if (options.first_pole) {
            first = *options.first_pole;
            if (std::none_of(shape->poles.begin(), shape->poles.end(), [&](const auto& pl) { return pl.first == first; }))
                throw Error(ErrorCode::PreconditionViolated, "first pole is not a pole of the input");
        }
        B = Poly::constant(F, F->one());
        for (const auto& [e, l] : shape->poles) B *= pow(Poly::linear(F, e), e == first ? p * l - p + 1 : p * l);
        N = m_n + 1 - B.deg();
        if (N < 0) throw Error(ErrorCode::PreconditionViolated, "m_n too small for the raised denominator");
    }
    const int mu = M.deg();
    const std::uint64_t q = F->size();
    const int free_deg = variant == CartierVariant::FIXED_PLUS && mu > 0 ? N - mu : N;
    std::uint64_t family = 0;
    if (free_deg >= 0) {
        family = checked_power(q, free_deg, options.ceiling);
        family = family > options.ceiling / (q - 1) + 1 ? options.ceiling + 1 : family * (q - 1);
    } else if (N == 0) {
        family = 1;
    }
    if (stats) *stats = SolverStats{std::min(family, options.ceiling + 1), 0, 0};
    if (family > options.ceiling)
        throw Error(ErrorCode::SearchFailed,
                    "search family exceeds the ceiling of " + std::to_string(options.ceiling) + " candidates");

    const DifferentialForm& target = omega_prev;
    auto test = [&](Elem c, const Poly& Z) -> bool {
        const Poly D = B * Z;
        const Poly P = cartier_polynomial(pow(D, p - 1)).scaled(F->pth_root(c));
        if (variant == CartierVariant::FIXED_PLUS) {
            if (P != Poly::constant(F, c) + Z.scaled(gamma)) return false;
        } else {
            if (P * B_prev != (B * Z).scaled(gamma)) return false;
        }
        if (!is_squarefree(Z) || gcd(Z, B).deg() != 0) return false;
        if (options.split_only && Z.deg() > 0 && !splits_squarefree(Z)) return false;
        return true;
    };

    std::optional<Candidate> best;
    std::uint64_t candidates = 0;
    std::uint64_t solutions = 0;
    std::mutex lock;

    auto run = [&](std::uint64_t begin, std::uint64_t end) {
        std::optional<Candidate> local;
        std::uint64_t seen = 0;
        std::uint64_t hits = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            const Elem c = F->element(static_cast<std::uint32_t>(i % (q - 1) + 1));
            const std::uint64_t w = i / (q - 1);
            Poly Z(F);
            if (free_deg < 0) {
                // Only N = 0 reaches here: Z = 1 forces c = -gamma.
                if (c != F->neg(gamma)) continue;
                Z = Poly::constant(F, F->one());
            } else if (variant == CartierVariant::FIXED_PLUS && mu > 0) {
                Z = Poly::constant(F, F->neg(F->div(c, gamma))) + M * monic_from_index(F, free_deg, w);
            } else {
                Z = monic_from_index(F, N, w);
            }
            ++seen;
            if (!test(c, Z)) continue;
            ++hits;
            Candidate cand{codes(Z), c.code};
            if (!local || cand < *local) local = cand;
        }
        std::lock_guard<std::mutex> g(lock);
        candidates += seen;
        solutions += hits;
        if (local && (!best || *local < *best)) best = local;
    };

    const std::uint64_t total = free_deg < 0 ? (N == 0 ? q - 1 : 0) : family;
    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(std::max<std::uint64_t>(1, total / 64))));
    if (workers == 1) {
        run(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (unsigned k = 0; k < workers; ++k) {
            const std::uint64_t b = k * chunk;
            const std::uint64_t e = std::min(total, b + chunk);
            if (b < e) pool.emplace_back(run, b, e);
        }
        for (auto& t : pool) t.join();
    }
    if (stats) {
        stats->candidates = candidates;
        stats->solutions = solutions;
    }
    if (!best) return std::nullopt;

    std::vector<Elem> zc;
    for (auto code : best->z) zc.push_back(F->element(code));
    const Poly Z(F, zc);
    const DifferentialForm out(RatFunc(Poly::constant(F, F->element(best->c)), B * Z));
    const DifferentialForm image = cartier(out);
    const bool holds = variant == CartierVariant::FIXED_PLUS ? image == out + target : image == target;
    if (!holds) throw Error(ErrorCode::PreconditionViolated, "solver produced a form failing the Cartier identity");
    return out;
}

}  // namespace hurwitz
