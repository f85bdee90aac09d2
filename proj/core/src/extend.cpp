#include "hurwitz/error.hpp"
#include "hurwitz/extension.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hurwitz {

namespace {

struct Failure {
    ErrorCode code;
    std::string message;
};

struct BuildFailure {
    Failure cause;
};

class Builder {
public:
    Builder(const HurwitzTree& prev, const ExtendOptions& options)
        : prev_(prev), F_(prev.field), p_(prev.p), crit_(1, prev.p - 1), top_(prev.p, prev.p - 1), options_(options)
    {
    }

    HurwitzTree out;
    VertexMap map;
    std::vector<std::string> log;
    std::optional<Failure> failure;

    // Builds the image of the edge e below an already placed source; returns the
    // id of the first new segment or nullopt after rolling back.
    std::optional<std::string> edge(const Edge& e, TargetMode mode, int l, Elem c_req)
    {
        const Vertex& v = prev_.vertex(e.target);
        if (v.depth > crit_) return base(e, mode, l, c_req);
        return induction(e, mode, l, c_req);
    }

private:
    struct Mark {
        std::size_t v, e, b, mv, mb, mp, lg;
    };

    Mark mark() const
    {
        return {out.vertices.size(), out.edges.size(), out.leaves.size(), map.vertices.size(),
                map.leaves.size(), map.places.size(), log.size()};
    }

    void rollback(const Mark& m)
    {
        out.vertices.resize(m.v);
        out.edges.resize(m.e);
        out.leaves.resize(m.b);
        map.vertices.resize(m.mv);
        map.leaves.resize(m.mb);
        map.places.resize(m.mp);
        log.resize(m.lg);
    }

    void fail(ErrorCode code, std::string message)
    {
        if (!failure || failure->code != ErrorCode::SearchFailed) failure = Failure{code, std::move(message)};
    }

    DifferentialForm monomial_form(Elem c, int k) const
    {
        return DifferentialForm(RatFunc(Poly::constant(F_, c), Poly::monomial(F_, F_->one(), k)));
    }

    // Segments from the source of e to its target, given as (upper endpoint radius, slope, id, target).
    void add_path(const Edge& e, const std::vector<std::pair<std::string, Rational>>& stops,
                  const std::vector<int>& slopes)
    {
        Rational at = prev_.radius(e.source);
        std::string from = e.source;
        const std::size_t k = stops.size();
        for (std::size_t i = 0; i < k; ++i) {
            const std::string id = k == 1 ? e.id : e.id + "_" + std::to_string(i);
            out.edges.push_back({id, from, stops[i].first, stops[i].second - at, slopes[i]});
            const Rational mid = (at + stops[i].second) / 2;
            map.places.push_back({RationalPlace{e.id, mid}, PlaceLocus{std::nullopt, RationalPlace{id, mid}}});
            at = stops[i].second;
            from = stops[i].first;
        }
    }

    std::string first_segment(const Edge& e, std::size_t segments) const
    {
        return segments == 1 ? e.id : e.id + "_0";
    }

    void copy_below(const std::string& vid)
    {
        const Vertex& v = prev_.vertex(vid);
        Vertex w = v;
        w.depth = v.depth + 1;
        if (v.omega) w.omega = -*v.omega;
        w.monodromy = v.monodromy + 1;
        out.vertices.push_back(w);
        map.vertices.emplace_back(v.id, v.id);
        for (const Leaf* b : prev_.leaves_at(vid)) {
            Leaf c = *b;
            c.index = b->index + 1;
            out.leaves.push_back(c);
            map.leaves.emplace_back(b->id, b->id);
        }
        for (const Edge* c : prev_.child_edges(vid)) {
            out.edges.push_back(*c);
            const auto [s, t] = prev_.interval(c->id);
            const Rational mid = (s + t) / 2;
            map.places.push_back({RationalPlace{c->id, mid}, PlaceLocus{std::nullopt, RationalPlace{c->id, mid}}});
            copy_below(c->target);
        }
    }

    // Vertex at depth p/(p-1) carrying the solution omega = c dx/(x^C Z) with leaves at the roots of Z.
    void add_fixed_vertex(const std::string& id, const DifferentialForm& omega, const std::string& continuing)
    {
        Vertex r{id, top_, omega, prev_.n + 1, {{continuing, F_->zero()}}};
        int k = 0;
        for (const auto& [a, mult] : roots_with_multiplicity(omega.coefficient().den())) {
            if (a == F_->zero()) continue;
            const std::string bid = id + "_b" + std::to_string(k++);
            r.chart.push_back({bid, a});
            out.leaves.push_back({bid, 1, 1, id, a});
        }
        out.vertices.push_back(r);
    }

    std::optional<DifferentialForm> fixed_solution(const DifferentialForm& w, int m_n)
    {
        SolverOptions so;
        so.split_only = true;
        so.ceiling = options_.ceiling;
        so.workers = options_.workers;
        try {
            return solve_cartier(w, m_n, CartierVariant::FIXED_PLUS, so);
        } catch (const Error& err) {
            if (err.code() != ErrorCode::SearchFailed) throw;
            fail(ErrorCode::SearchFailed, err.what());
            return std::nullopt;
        }
    }

    // Attaches the equidistant tree below new_vertex at the point a; false when x^l - alpha does not split.
    bool attach_equidistant(Vertex& host, const std::string& prefix, int l_e, Elem a, Elem alpha, const Rational& radius)
    {
        HurwitzTree q;
        try {
            q = make_equidistant(F_, l_e, alpha, host.depth, radius, prefix);
        } catch (const Error& err) {
            if (err.code() != ErrorCode::IrreducibleFactor) throw;
            fail(ErrorCode::IrreducibleFactor, err.what());
            return false;
        }
        for (const auto& qv : q.vertices)
            if (qv.id != q.root) out.vertices.push_back(qv);
        for (Edge qe : q.edges) {
            qe.source = host.id;
            out.edges.push_back(qe);
            host.chart.push_back({qe.id, a});
        }
        for (const auto& qb : q.leaves) out.leaves.push_back(qb);
        return true;
    }

    std::optional<std::string> base(const Edge& e, TargetMode mode, int l, Elem c_req)
    {
        const Mark m0 = mark();
        const Vertex& u = prev_.vertex(e.source);
        const Vertex& v = prev_.vertex(e.target);
        const int C = prev_.leaves_behind(e.id);
        const int d = e.slope;
        const Elem gamma = constant_coefficient(prev_, v.id);
        const Rational s = prev_.radius(u.id);
        const Rational r = s + (crit_ - u.depth) / d;
        const Rational t = prev_.radius(v.id);
        const Rational du = u.depth * p_;
        const DifferentialForm w_r = monomial_form(gamma, C);

        if (mode == TargetMode::MINIMAL) {
            const int N = (p_ - 1) * (C - 1);
            const auto sol = fixed_solution(w_r, C - 1 + N);
            if (!sol) {
                fail(ErrorCode::TargetInfeasible, "no split solution at the place of depth 1/(p-1) on '" + e.id + "'");
                return std::nullopt;
            }
            const Elem c = canonical_shape(*sol)->constant;
            if (c != c_req) {
                fail(ErrorCode::TargetInfeasible, "constant " + F_->to_string(c) + " on '" + e.id + "' differs from the required " +
                                                      F_->to_string(c_req));
                return std::nullopt;
            }
            const std::string rid = e.id + "_r";
            add_fixed_vertex(rid, *sol, e.id + "_1");
            add_path(e, {{rid, r}, {v.id, t}}, {p_ * C - p_, d});
            map.places.push_back({RationalPlace{e.id, r}, PlaceLocus{rid, std::nullopt}});
            copy_below(v.id);
            log.push_back("'" + e.id + "': minimal branch, " + std::to_string(N) + " new leaves at depth " + to_string(top_, false));
            if (du + Rational(p_ * C - p_) * (r - s) != top_)
                throw Error(ErrorCode::PreconditionViolated, "depth mismatch on '" + e.id + "'");
            return first_segment(e, 2);
        }

        const int lp = l % p_;
        const int mm = l / p_;
        const int Cn = p_ * C - p_ + l + 1;
        for (int j = 0;; ++j) {
            const int Nr = (p_ - 1) * (C - 1) - (p_ - lp) - p_ * j;
            if (Nr < 0) break;
            DifferentialForm w_n;
            if (Nr == 0) {
                if (!cartier(w_r).is_zero()) continue;
                w_n = -w_r;
            } else {
                const auto sol = fixed_solution(w_r, C - 1 + Nr);
                if (!sol) continue;
                w_n = *sol;
            }
            const Elem c_r = canonical_shape(w_n)->constant;
            const int Cr = C + Nr;
            const int B = p_ * (mm + 1 + j);
            std::pair<Rational, Rational> eps;
            try {
                eps = split_segment(Rational(p_ * C - p_), Cn - 1, Cr - 1, r - s);
            } catch (const Error& err) {
                fail(err.code(), err.what());
                continue;
            }
            const Rational rv = s + eps.first;
            Elem rhs = F_->div(c_req, c_r);
            if (B % 2 == 1) rhs = F_->neg(rhs);
            const auto roots = F_->lth_roots(rhs, B);
            if (roots.empty()) fail(ErrorCode::NoRootInField, "no root of a^" + std::to_string(B) + " = " + F_->to_string(rhs));
            for (Elem a : roots) {
                const Elem alpha = F_->div(c_req, F_->pow(a, Cr));
                const std::string vid = e.id + "_v";
                const std::string rid = e.id + "_r";
                Vertex host{vid, du + Rational(Cn - 1) * eps.first, std::nullopt, prev_.n + 1, {}};
                host.omega = DifferentialForm(RatFunc(Poly::constant(F_, c_req),
                                                      Poly::monomial(F_, F_->one(), Cr) * pow(Poly::linear(F_, a), B)));
                host.chart.push_back({e.id + "_1", F_->zero()});
                const std::size_t slot = out.vertices.size();
                out.vertices.push_back(host);
                if (!attach_equidistant(host, e.id + "_q", B - 1, a, alpha, rv)) {
                    rollback(m0);
                    continue;
                }
                out.vertices[slot] = host;
                if (Nr > 0) {
                    add_fixed_vertex(rid, w_n, e.id + "_2");
                    add_path(e, {{vid, rv}, {rid, r}, {v.id, t}}, {Cn - 1, Cr - 1, d});
                    map.places.push_back({RationalPlace{e.id, r}, PlaceLocus{rid, std::nullopt}});
                } else {
                    add_path(e, {{vid, rv}, {v.id, t}}, {Cn - 1, d});
                    map.places.push_back({RationalPlace{e.id, r}, PlaceLocus{std::nullopt, RationalPlace{e.id + "_1", r}}});
                }
                map.places.push_back({RationalPlace{e.id, rv}, PlaceLocus{vid, std::nullopt}});
                copy_below(v.id);
                log.push_back("'" + e.id + "': branch with excess " + std::to_string(l) + ", " + std::to_string(Nr) +
                              " new leaves at depth " + to_string(top_, false) + " and an equidistant tree of " +
                              std::to_string(B) + " leaves");
                return first_segment(e, Nr > 0 ? 3 : 2);
            }
        }
        fail(failure ? failure->code : ErrorCode::TargetInfeasible,
             failure ? failure->message : "no admissible split of '" + e.id + "'");
        rollback(m0);
        return std::nullopt;
    }

    // Recurses into the children of v with the given modes; fills the chart of the new vertex.
    bool children(const std::vector<const Edge*>& ch, const std::vector<std::pair<TargetMode, int>>& modes,
                  const DifferentialForm& w, Vertex& vn)
    {
        for (std::size_t i = 0; i < ch.size(); ++i) {
            const Elem a = *prev_.chart_point(ch[i]->source, ch[i]->id);
            const Elem c = leading_coefficient_at(w, a);
            const auto first = edge(*ch[i], modes[i].first, modes[i].second, c);
            if (!first) return false;
            vn.chart.push_back({*first, a});
        }
        for (const Leaf* b : prev_.leaves_at(vn.id)) vn.chart.push_back({b->id, b->point});
        return true;
    }

    std::optional<std::string> induction(const Edge& e, TargetMode mode, int l, Elem c_req)
    {
        const Mark m0 = mark();
        const Vertex& v = prev_.vertex(e.target);
        const auto shape = canonical_shape(*v.omega);
        const Elem c = shape->constant;
        const auto ch = prev_.child_edges(v.id);
        const std::size_t k = ch.size();
        std::vector<Elem> pts;
        std::vector<int> ls;
        for (const Edge* x : ch) {
            pts.push_back(*prev_.chart_point(v.id, x->id));
            ls.push_back(-ord(*v.omega, Point::at(pts.back())));
        }
        const int C = prev_.leaves_behind(e.id);
        const Rational s = prev_.radius(e.source);
        const Rational t = prev_.radius(v.id);
        const Rational du = prev_.vertex(e.source).depth * p_;
        const Elem cp = F_->pow(c, p_);

        auto form = [&](Elem K, const std::vector<int>& orders) {
            Poly den = Poly::constant(F_, F_->one());
            for (std::size_t i = 0; i < k; ++i) den *= pow(Poly::linear(F_, pts[i]), orders[i]);
            return DifferentialForm(RatFunc(Poly::constant(F_, K), den));
        };
        auto place_vertex = [&](const DifferentialForm& w) {
            Vertex vn{v.id, v.depth * p_, w, v.monodromy + 1, {}};
            out.vertices.push_back(vn);
            map.vertices.emplace_back(v.id, v.id);
            return out.vertices.size() - 1;
        };

        if (mode == TargetMode::MINIMAL) {
            if (cp != c_req) {
                fail(ErrorCode::TargetInfeasible, "required constant at '" + v.id + "' is not the p-th power of " + F_->to_string(c));
                return std::nullopt;
            }
            for (std::size_t f = 0; f < k; ++f) {
                std::vector<int> orders;
                std::vector<std::pair<TargetMode, int>> modes;
                for (std::size_t i = 0; i < k; ++i) {
                    orders.push_back(i == f ? p_ * ls[i] - p_ + 1 : p_ * ls[i]);
                    modes.emplace_back(i == f ? TargetMode::MINIMAL : TargetMode::GENERAL, i == f ? 0 : p_ - 1);
                }
                const DifferentialForm w = form(cp, orders);
                if (!(cartier(w) == *v.omega)) continue;
                const std::size_t slot = place_vertex(w);
                Vertex vn = out.vertices[slot];
                if (!children(ch, modes, w, vn)) {
                    rollback(m0);
                    continue;
                }
                out.vertices[slot] = vn;
                add_path(e, {{v.id, t}}, {p_ * C - p_});
                log.push_back("'" + e.id + "': minimal, new form at '" + v.id + "' raised at child " + std::to_string(f));
                return first_segment(e, 1);
            }
            rollback(m0);
            return std::nullopt;
        }

        if (k < 2) {
            fail(ErrorCode::TargetInfeasible, "vertex '" + v.id + "' has a single child");
            return std::nullopt;
        }
        const int lp = l % p_;
        const int mm = l / p_;
        const int B = p_ * (mm + 1);
        const int Cv = p_ * C - 2 * p_ + lp + 1;
        const int Cn = p_ * C - p_ + l + 1;
        std::pair<Rational, Rational> eps;
        try {
            eps = partition_trunk(C, p_, l, lp, e.thickness);
        } catch (const Error& err) {
            fail(err.code(), err.what());
            return std::nullopt;
        }
        const Rational rv = s + eps.first;
        for (std::size_t f = 0; f < k; ++f) {
            for (std::size_t g = 0; g < k; ++g) {
                if (g == f) continue;
                const Elem K = F_->div(cp, F_->pow(F_->sub(pts[f], pts[g]), p_ - lp));
                std::vector<int> orders;
                std::vector<std::pair<TargetMode, int>> modes;
                for (std::size_t i = 0; i < k; ++i) {
                    if (i == f) {
                        orders.push_back(p_ * ls[i] - p_ + 1);
                        modes.emplace_back(TargetMode::MINIMAL, 0);
                    } else if (i == g) {
                        orders.push_back(p_ * ls[i] - p_ + lp);
                        modes.emplace_back(lp == 1 ? TargetMode::MINIMAL : TargetMode::GENERAL, lp - 1);
                    } else {
                        orders.push_back(p_ * ls[i]);
                        modes.emplace_back(TargetMode::GENERAL, p_ - 1);
                    }
                }
                const DifferentialForm w = form(K, orders);
                if (!(cartier(w) == *v.omega)) continue;
                Elem rhs = F_->div(c_req, K);
                if (B % 2 == 1) rhs = F_->neg(rhs);
                const auto roots = F_->lth_roots(rhs, B);
                if (roots.empty()) {
                    fail(ErrorCode::NoRootInField, "no root of a^" + std::to_string(B) + " = " + F_->to_string(rhs));
                    continue;
                }
                const std::size_t slot = place_vertex(w);
                Vertex vn = out.vertices[slot];
                if (!children(ch, modes, w, vn)) {
                    rollback(m0);
                    continue;
                }
                out.vertices[slot] = vn;
                const Mark m1 = mark();
                for (Elem a : roots) {
                    const Elem alpha = F_->div(c_req, F_->pow(a, Cv));
                    const std::string vid = e.id + "_v";
                    Vertex host{vid, du + Rational(Cn - 1) * eps.first, std::nullopt, prev_.n + 1, {}};
                    host.omega = DifferentialForm(RatFunc(Poly::constant(F_, c_req),
                                                          Poly::monomial(F_, F_->one(), Cv) * pow(Poly::linear(F_, a), B)));
                    host.chart.push_back({e.id + "_1", F_->zero()});
                    const std::size_t hslot = out.vertices.size();
                    out.vertices.push_back(host);
                    if (!attach_equidistant(host, e.id + "_q", B - 1, a, alpha, rv)) {
                        rollback(m1);
                        continue;
                    }
                    out.vertices[hslot] = host;
                    add_path(e, {{vid, rv}, {v.id, t}}, {Cn - 1, Cv - 1});
                    map.places.push_back({RationalPlace{e.id, rv}, PlaceLocus{vid, std::nullopt}});
                    log.push_back("'" + e.id + "': excess " + std::to_string(l) + ", new form at '" + v.id +
                                  "' and an equidistant tree of " + std::to_string(B) + " leaves");
                    return first_segment(e, 2);
                }
                rollback(m0);
            }
        }
        rollback(m0);
        return std::nullopt;
    }

    const HurwitzTree& prev_;
    FieldPtr F_;
    int p_;
    Rational crit_;
    Rational top_;
    ExtendOptions options_;
};

struct Plan {
    TargetMode mode;
    int l;
    Elem c_req;
    std::optional<ReductionType> rt;
    std::optional<DifferentialForm> root_form;
};

Plan plan_target(const HurwitzTree& prev, const ExtensionTarget& target)
{
    const FieldPtr& F = prev.field;
    const int p = prev.p;
    const int C = prev.conductor();
    const int floor_conductor = p * C - p + 1;
    const Vertex& v1 = prev.vertex(prev.trunk().target);
    const Elem cp = F->pow(constant_coefficient(prev, v1.id), p);
    Plan plan{target.mode, target.mode == TargetMode::GENERAL ? target.l : 0, cp, std::nullopt, std::nullopt};

    auto settle = [&](int cn) {
        const int l = cn - floor_conductor;
        if (l < 0) throw Error(ErrorCode::TargetInfeasible, "conductor " + std::to_string(cn) + " below " + std::to_string(floor_conductor));
        if (l > 0 && l % p == 0)
            throw Error(ErrorCode::TargetInfeasible, "conductor " + std::to_string(cn) + " is congruent to 1 mod p but not minimal");
        const TargetMode mode = l == 0 ? TargetMode::MINIMAL : TargetMode::GENERAL;
        if (!target.derive_mode && (mode != target.mode || (mode == TargetMode::GENERAL && target.l > 0 && target.l != l)))
            throw Error(ErrorCode::TargetInfeasible, "mode and l disagree with the conductor " + std::to_string(cn));
        plan.mode = mode;
        plan.l = l;
    };
    if (target.conductor) settle(*target.conductor);
    if (plan.mode == TargetMode::GENERAL && (plan.l <= 0 || plan.l % p == 0))
        throw Error(ErrorCode::TargetInfeasible, "excess l must be positive and prime to p");

    if (prev.is_etale()) {
        if (target.root_form) throw Error(ErrorCode::TargetInfeasible, "etale tree extended with a root form");
        if (target.root_reduction_type) {
            const ReductionType& rt = *target.root_reduction_type;
            if (!is_prefix(*prev.reduction_type, rt))
                throw Error(ErrorCode::TargetInfeasible, "reduction type does not extend the one of the input");
            const ConductorData cd = conductors(rt);
            settle(cd.conductors.back());
            if (target.conductor && *target.conductor != cd.conductors.back())
                throw Error(ErrorCode::TargetInfeasible, "m_n differs from the conductor of the reduction type");
            if (plan.mode == TargetMode::GENERAL) plan.c_req = root_constant_coefficient(rt);
            plan.rt = rt;
        } else {
            if (target.derive_mode && !target.conductor)
                throw Error(ErrorCode::TargetInfeasible, "target needs a mode, a conductor or a reduction type");
            ReductionType rt = *prev.reduction_type;
            if (plan.mode == TargetMode::MINIMAL) {
                rt.entries.emplace_back(F);
            } else {
                const int k = floor_conductor + plan.l - 1;
                rt.entries.push_back(Poly::monomial(F, F->neg(F->inv(F->from_int(k))), k));
                plan.c_req = F->one();
            }
            plan.rt = rt;
        }
        return plan;
    }

    if (target.root_reduction_type) throw Error(ErrorCode::TargetInfeasible, "radical tree extended with a reduction type");
    const Vertex& root = prev.vertex(prev.root);
    const Elem z = *prev.chart_point(prev.root, prev.trunk().id);
    if (target.root_form) {
        const DifferentialForm& w = *target.root_form;
        if (!(cartier(w) == *root.omega))
            throw Error(ErrorCode::TargetInfeasible, "Cartier image of the root form differs from the input root form");
        const int order = -ord(w, Point::at(z));
        const auto poles = roots_with_multiplicity(w.coefficient().den());
        if (poles.size() != 1 || poles.front().first != z)
            throw Error(ErrorCode::TargetInfeasible, "root form must have its only pole at the trunk point");
        if (target.derive_mode && !target.conductor) settle(order);
        else if (order != floor_conductor + plan.l)
            throw Error(ErrorCode::TargetInfeasible, "root form has pole order " + std::to_string(order) + " at the trunk");
        plan.c_req = leading_coefficient_at(w, z);
        if (plan.mode == TargetMode::MINIMAL && plan.c_req != cp)
            throw Error(ErrorCode::TargetInfeasible, "leading coefficient of the root form must be " + F->to_string(cp));
        plan.root_form = w;
        return plan;
    }
    if (target.derive_mode && !target.conductor)
        throw Error(ErrorCode::TargetInfeasible, "target needs a mode or a conductor");
    const PartialFractions pf = partial_fractions(root.omega->coefficient());
    RatFunc acc(F);
    Poly hp(F);
    for (std::size_t k = 0; k < pf.polynomial_part.coeffs().size(); ++k)
        hp += Poly::monomial(F, F->frobenius(pf.polynomial_part.coeff(static_cast<int>(k))), p * static_cast<int>(k) + p - 1);
    acc += RatFunc(hp);
    for (const auto& term : pf.terms)
        acc += RatFunc(Poly::constant(F, F->frobenius(term.coefficient)), pow(Poly::linear(F, term.pole), p * term.order - p + 1));
    if (plan.mode == TargetMode::GENERAL) {
        acc += RatFunc(Poly::constant(F, F->one()), pow(Poly::linear(F, z), floor_conductor + plan.l));
        plan.c_req = F->one();
    }
    plan.root_form = DifferentialForm(acc);
    if (!(cartier(*plan.root_form) == *root.omega))
        throw Error(ErrorCode::PreconditionViolated, "root form preimage failed");
    return plan;
}

ExtensionResult extend_once(const HurwitzTree& prev, const ExtensionTarget& target, const ExtendOptions& options)
{
    const Plan plan = plan_target(prev, target);
    Builder b(prev, options);
    b.out.p = prev.p;
    b.out.n = prev.n + 1;
    b.out.field = prev.field;
    b.out.root = prev.root;
    b.out.root_radius = prev.root_radius;
    b.out.reduction_type = plan.rt;
    const Vertex& root = prev.vertex(prev.root);
    Vertex nr{root.id, root.depth * prev.p, plan.root_form, root.monodromy + 1, {}};
    b.out.vertices.push_back(nr);
    b.map.vertices.emplace_back(root.id, root.id);
    const Edge& trunk = prev.trunk();
    const auto first = b.edge(trunk, plan.mode, plan.l, plan.c_req);
    if (!first) {
        throw BuildFailure{b.failure.value_or(Failure{ErrorCode::TargetInfeasible, "no extension found"})};
    }
    b.out.vertices.front().chart.push_back({*first, *prev.chart_point(root.id, trunk.id)});
    ExtensionResult res{b.out, b.map, prev, b.log};
    const ValidationReport rep = validate(res.tree);
    if (!rep.ok()) {
        const Violation& v = rep.violations.front();
        throw Error(ErrorCode::PreconditionViolated, "constructed tree fails " + v.clause + " at '" + v.subject + "': " + v.message);
    }
    const ValidationReport ext = check_extension(prev, res.tree, res.map);
    if (!ext.ok()) {
        const Violation& v = ext.violations.front();
        throw Error(ErrorCode::PreconditionViolated, "constructed extension fails " + v.clause + " at '" + v.subject + "': " + v.message);
    }
    return res;
}

ExtensionTarget embed_target(const ExtensionTarget& t, const FieldEmbedding& emb)
{
    ExtensionTarget out = t;
    if (t.root_reduction_type) out.root_reduction_type = embed_reduction_type(*t.root_reduction_type, emb);
    if (t.root_form) out.root_form = embed_form(*t.root_form, emb);
    return out;
}

}  // namespace

ExtensionResult extend_tree(const HurwitzTree& prev, const ExtensionTarget& target, const ExtendOptions& options)
{
    const ValidationReport rep = validate(prev);
    if (!rep.ok())
        throw Error(ErrorCode::PreconditionViolated, "input tree is not valid: " + rep.violations.front().clause + " at '" +
                                                          rep.violations.front().subject + "'");
    const int p = prev.p;
    const Rational crit(1, p - 1);
    if (!(prev.vertex(prev.root).depth < crit))
        throw Error(ErrorCode::DepthTooHigh, "root depth must be below 1/(p-1)");
    for (const auto& v : prev.vertices)
        if (v.depth == crit) throw Error(ErrorCode::PreconditionViolated, "vertex '" + v.id + "' sits at depth 1/(p-1)");

    const int d = prev.field->degree();
    Failure last{ErrorCode::TargetInfeasible, "no extension found"};
    int k = 1;
    for (;; ++k) {
        if (k > 1 && d * k > options.max_field_degree) break;
        std::uint64_t q = 1;
        for (int i = 0; i < d * k; ++i) q *= static_cast<std::uint64_t>(p);
        if (q > (1u << 24)) break;
        try {
            if (k == 1) return extend_once(prev, target, options);
            const FieldPtr big = Field::make(p, first_irreducible_modulus(p, d * k));
            const FieldEmbedding emb(prev.field, big);
            ExtensionResult res = extend_once(embed_tree(prev, emb), embed_target(target, emb), options);
            res.log.insert(res.log.begin(), "retried over F_" + std::to_string(q));
            return res;
        } catch (const BuildFailure& f) {
            last = f.cause;
            if (last.code == ErrorCode::SearchFailed) throw Error(ErrorCode::SearchFailed, last.message, d * k);
        }
    }
    throw Error(ErrorCode::SearchFailed, std::string(error_code_name(last.code)) + ": " + last.message, d * k);
}

}  // namespace hurwitz
