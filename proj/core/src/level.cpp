#include "hurwitz/error.hpp"
#include "hurwitz/extension.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hurwitz {

std::string_view level_case_name(LevelCase c)
{
    switch (c) {
    case LevelCase::L1_MAX: return "L1_MAX";
    case LevelCase::L1_SUB: return "L1_SUB";
    case LevelCase::CASE2: return "CASE2";
    case LevelCase::CASE3a: return "CASE3a";
    case LevelCase::CASE3b: return "CASE3b";
    case LevelCase::CASE3c: return "CASE3c";
    case LevelCase::CASE3d: return "CASE3d";
    case LevelCase::FAIL: return "FAIL";
    }
    return "FAIL";
}

namespace {

LevelPairVerdict verdict(LevelCase tag, std::string identity, bool holds)
{
    LevelPairVerdict v;
    v.checked.push_back(identity);
    if (holds) {
        v.tag = tag;
    } else {
        v.tag = LevelCase::FAIL;
        v.reason = identity + " fails";
    }
    return v;
}

}  // namespace

LevelPairVerdict classify_level_pair(int p, const Rational& depth_lo, const DifferentialForm& omega_lo,
                                     const Rational& depth_hi, const DifferentialForm& omega_hi)
{
    if (omega_lo.is_zero() || omega_hi.is_zero()) throw Error(ErrorCode::ZeroForm, "level pair with a zero form");
    if (!(depth_lo > 0)) throw Error(ErrorCode::PreconditionViolated, "lower depth must be positive");
    const Rational crit(1, p - 1);
    const Rational top(p, p - 1);
    if (depth_lo > crit) {
        if (depth_hi != depth_lo + 1) {
            LevelPairVerdict v;
            v.checked.push_back("depth_hi = depth_lo + 1");
            v.reason = "depth_hi = " + to_string(depth_hi) + " but depth_lo + 1 = " + to_string(depth_lo + 1);
            return v;
        }
        return verdict(LevelCase::CASE2, "omega_hi = -omega_lo", omega_hi == -omega_lo);
    }
    const Rational scaled = depth_lo * p;
    if (depth_hi < scaled || depth_hi > top) {
        LevelPairVerdict v;
        v.checked.push_back("p*depth_lo <= depth_hi <= p/(p-1)");
        v.reason = "depth_hi = " + to_string(depth_hi) + " outside [" + to_string(scaled) + ", " + to_string(top) + "]";
        return v;
    }
    const DifferentialForm c = cartier(omega_hi);
    if (depth_hi == scaled && depth_hi < top) return verdict(LevelCase::CASE3a, "C(omega_hi) = omega_lo", c == omega_lo);
    if (depth_hi > scaled && depth_hi < top) return verdict(LevelCase::CASE3b, "C(omega_hi) = 0", c.is_zero());
    if (depth_hi == top && depth_hi > scaled) return verdict(LevelCase::CASE3c, "C(omega_hi) = omega_hi", c == omega_hi);
    return verdict(LevelCase::CASE3d, "C(omega_hi) = omega_hi + omega_lo", c == omega_hi + omega_lo);
}

LevelPairVerdict classify_level_one(int p, const Rational& depth, const DifferentialForm& omega)
{
    if (omega.is_zero()) throw Error(ErrorCode::ZeroForm, "level one with a zero form");
    const Rational top(p, p - 1);
    if (!(depth > 0) || depth > top) {
        LevelPairVerdict v;
        v.checked.push_back("0 < depth <= p/(p-1)");
        v.reason = "depth " + to_string(depth) + " out of range";
        return v;
    }
    const DifferentialForm c = cartier(omega);
    if (depth == top) return verdict(LevelCase::L1_MAX, "C(omega) = omega", c == omega);
    return verdict(LevelCase::L1_SUB, "C(omega) = 0", c.is_zero());
}

ValidationReport check_extension(const HurwitzTree& lo, const HurwitzTree& hi, const VertexMap& map)
{
    ValidationReport rep;
    if (lo.p != hi.p) rep.add("EXT1", "tree", "different characteristics");
    if (!lo.field->same_as(*hi.field)) rep.add("EXT1", "tree", "trees over different fields");
    if (hi.n != lo.n + 1) rep.add("EXT3", "tree", "upper tree must have type Z/p^(n+1)");
    if (!rep.ok()) return rep;
    const int p = lo.p;

    // (1) refinement.
    std::map<std::string, std::string> vmap;
    std::set<std::string> vimage;
    for (const auto& [a, b] : map.vertices) {
        if (!lo.find_vertex(a)) rep.add("EXT1", a, "mapped vertex missing from the lower tree");
        if (!hi.find_vertex(b)) rep.add("EXT1", b, "image vertex missing from the upper tree");
        if (!vmap.emplace(a, b).second) rep.add("EXT1", a, "vertex mapped twice");
        if (!vimage.insert(b).second) rep.add("EXT1", b, "vertex map is not injective");
    }
    for (const auto& v : lo.vertices)
        if (!vmap.count(v.id)) rep.add("EXT1", v.id, "vertex has no image");
    if (!rep.ok()) return rep;
    if (vmap[lo.root] != hi.root) rep.add("EXT1", lo.root, "root must map to the root");

    std::map<std::string, std::vector<std::string>> paths;
    std::map<std::string, std::string> edge_owner;
    for (const auto& e : lo.edges) {
        std::vector<std::string> path;
        std::string cur = vmap[e.target];
        const std::string top = vmap[e.source];
        bool found = false;
        for (std::size_t guard = 0; guard <= hi.edges.size(); ++guard) {
            if (cur == top) {
                found = true;
                break;
            }
            const Edge* in = hi.incoming_edge(cur);
            if (!in) break;
            path.push_back(in->id);
            cur = in->source;
        }
        if (!found || path.empty()) {
            rep.add("EXT1", e.id, "image of the edge is not a downward path");
            continue;
        }
        std::reverse(path.begin(), path.end());
        for (const auto& he : path) {
            auto [it, inserted] = edge_owner.emplace(he, e.id);
            if (!inserted) rep.add("EXT1", he, "shared by the images of '" + it->second + "' and '" + e.id + "'");
        }
        paths[e.id] = path;
    }

    std::map<std::string, std::string> lmap;
    std::set<std::string> limage;
    for (const auto& [a, b] : map.leaves) {
        const Leaf* la = lo.find_leaf(a);
        const Leaf* lb = hi.find_leaf(b);
        if (!la || !lb) {
            rep.add("EXT1", a, "leaf pair refers to a missing leaf");
            continue;
        }
        if (!lmap.emplace(a, b).second) rep.add("EXT1", a, "leaf mapped twice");
        if (!limage.insert(b).second) rep.add("EXT1", b, "leaf map is not injective");
        if (vmap.count(la->vertex) && vmap[la->vertex] != lb->vertex)
            rep.add("EXT1", a, "leaf image is not attached at the image of its vertex");
        if (lb->index != la->index + 1)
            rep.add("EXT3", b, "leaf index " + std::to_string(lb->index) + " but lower index + 1 = " + std::to_string(la->index + 1));
    }
    for (const auto& b : lo.leaves)
        if (!lmap.count(b.id)) rep.add("EXT1", b.id, "leaf has no image");

    // Positions of place images along their paths, for the order check.
    std::map<std::string, std::vector<std::pair<Rational, Rational>>> along;
    for (const auto& [pl, locus] : map.places) {
        const Edge* le = lo.find_edge(pl.edge);
        if (!le || !paths.count(pl.edge)) {
            rep.add("EXT1", pl.edge, "place on an unknown or unmapped edge");
            continue;
        }
        const auto& path = paths[pl.edge];
        Rational hi_radius;
        if (locus.vertex) {
            const Vertex* hv = hi.find_vertex(*locus.vertex);
            bool on_path = false;
            if (hv) {
                for (const auto& he : path)
                    if (hi.edge(he).source == hv->id || hi.edge(he).target == hv->id) on_path = true;
            }
            if (!on_path) {
                rep.add("EXT1", *locus.vertex, "place image is not on the image of '" + pl.edge + "'");
                continue;
            }
            hi_radius = hi.radius(hv->id);
        } else if (locus.place) {
            if (std::find(path.begin(), path.end(), locus.place->edge) == path.end()) {
                rep.add("EXT1", locus.place->edge, "place image is not on the image of '" + pl.edge + "'");
                continue;
            }
            hi_radius = locus.place->r;
        } else {
            rep.add("EXT1", pl.edge, "place pair without an image");
            continue;
        }
        along[pl.edge].emplace_back(pl.r, hi_radius);
    }
    for (auto& [eid, pts] : along) {
        std::sort(pts.begin(), pts.end());
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (!(pts[i].second > pts[i - 1].second) || pts[i].first == pts[i - 1].first)
                rep.add("EXT1", eid, "place map is not order preserving");
    }

    // (2) level pairs at vertices and places.
    auto record = [&](const std::string& subject, const Rational& dl, const DifferentialForm& wl, const Rational& dh,
                      const DifferentialForm& wh) {
        try {
            const LevelPairVerdict v = classify_level_pair(p, dl, wl, dh, wh);
            if (!v.ok()) rep.add("EXT2", subject, v.reason);
        } catch (const Error& e) {
            rep.add("EXT2", subject, e.what());
        }
    };
    for (const auto& v : lo.vertices) {
        if (!(v.depth > 0) || !v.omega) continue;
        const Vertex& hv = hi.vertex(vmap[v.id]);
        if (!hv.omega) {
            rep.add("EXT2", v.id, "image vertex has no differential conductor");
            continue;
        }
        record(v.id, v.depth, *v.omega, hv.depth, *hv.omega);
    }
    for (const auto& [pl, locus] : map.places) {
        try {
            const Rational dl = depth_at_place(lo, pl);
            const DifferentialForm wl = differential_at_place(lo, pl);
            if (!(dl > 0)) continue;
            const std::string subject = pl.edge + "@" + to_string(pl.r);
            if (locus.vertex) {
                const Vertex& hv = hi.vertex(*locus.vertex);
                if (!hv.omega) {
                    rep.add("EXT2", subject, "image vertex has no differential conductor");
                    continue;
                }
                record(subject, dl, wl, hv.depth, *hv.omega);
            } else if (locus.place) {
                record(subject, dl, wl, depth_at_place(hi, *locus.place), differential_at_place(hi, *locus.place));
            }
        } catch (const Error& e) {
            rep.add("EXT2", pl.edge, e.what());
        }
    }

    // (3) monodromy bump on mapped vertices.
    for (const auto& [a, b] : vmap) {
        const int ml = lo.vertex(a).monodromy;
        const int mh = hi.vertex(b).monodromy;
        if (mh != ml + 1)
            rep.add("EXT3", b, "monodromy exponent " + std::to_string(mh) + " but lower exponent + 1 = " + std::to_string(ml + 1));
    }

    // (4) new branches carry Z/p.
    for (const auto& e : hi.edges) {
        if (edge_owner.count(e.id)) continue;
        const Vertex& tv = hi.vertex(e.target);
        if (tv.monodromy != 1) rep.add("EXT4", e.id, "new edge ends at monodromy Z/p^" + std::to_string(tv.monodromy));
    }
    for (const auto& b : hi.leaves) {
        if (limage.count(b.id)) continue;
        if (b.index != 1) rep.add("EXT4", b.id, "new leaf has index " + std::to_string(b.index));
    }

    // (5) reduction type prefix.
    if (lo.is_etale() != hi.is_etale()) rep.add("EXT5", "root", "one tree is etale and the other radical");
    else if (lo.is_etale() && !is_prefix(*lo.reduction_type, *hi.reduction_type))
        rep.add("EXT5", "root", "lower reduction type is not a prefix of the upper one");
    return rep;
}

std::pair<Rational, Rational> split_segment(const Rational& rate, int upper_slope, int lower_slope, const Rational& eps0)
{
    if (upper_slope == lower_slope) throw Error(ErrorCode::NonPositiveSolution, "degenerate trunk partition");
    // rate*eps0 = upper*eps1 + lower*(eps0 - eps1)
    const Rational eps1 = (rate - lower_slope) * eps0 / Rational(upper_slope - lower_slope);
    const Rational eps2 = eps0 - eps1;
    if (!(eps1 > 0) || !(eps2 > 0))
        throw Error(ErrorCode::NonPositiveSolution,
                    "trunk partition gives (" + to_string(eps1) + ", " + to_string(eps2) + ")");
    return {eps1, eps2};
}

std::pair<Rational, Rational> partition_trunk(int conductor_prev, int p, int l, int l_prime, const Rational& eps0)
{
    if (l_prime <= 0 || l_prime >= p || (l - l_prime) % p != 0 || l < l_prime)
        throw Error(ErrorCode::PreconditionViolated, "need l = p*m + l' with 0 < l' < p");
    if (!(eps0 > 0)) throw Error(ErrorCode::NonPositiveSolution, "trunk thickness must be positive");
    const int C = conductor_prev;
    return split_segment(Rational(p * C - p), p * C - p + l, p * C - 2 * p + l_prime, eps0);
}

Elem solve_equidistant_parameter(const FieldPtr& field, Elem e, Elem c, int m)
{
    if (e.code == 0 || c.code == 0) throw Error(ErrorCode::PreconditionViolated, "coefficients must be nonzero");
    const int p = field->p();
    const long long k = static_cast<long long>(p) * (m + 1);
    const Elem rhs = field->div(e, field->pow(c, p));
    const auto roots = field->lth_roots(rhs, k);
    if (roots.empty())
        throw Error(ErrorCode::NoRootInField, "no solution of a^" + std::to_string(k) + " = " + field->to_string(rhs),
                    static_cast<int>(k));
    return roots.front();
}

Poly embed_poly(const Poly& f, const FieldEmbedding& emb)
{
    std::vector<Elem> c;
    for (Elem a : f.coeffs()) c.push_back(emb(a));
    return Poly(emb.target(), c);
}

DifferentialForm embed_form(const DifferentialForm& w, const FieldEmbedding& emb)
{
    const RatFunc& f = w.coefficient();
    return DifferentialForm(RatFunc(embed_poly(f.num(), emb), embed_poly(f.den(), emb)));
}

ReductionType embed_reduction_type(const ReductionType& rt, const FieldEmbedding& emb)
{
    ReductionType out{emb.target(), {}};
    for (const Poly& e : rt.entries) out.entries.push_back(embed_poly(e, emb));
    return out;
}

HurwitzTree embed_tree(const HurwitzTree& t, const FieldEmbedding& emb)
{
    HurwitzTree out = t;
    out.field = emb.target();
    for (auto& v : out.vertices) {
        if (v.omega) v.omega = embed_form(*v.omega, emb);
        for (auto& c : v.chart) c.point = emb(c.point);
    }
    for (auto& b : out.leaves) b.point = emb(b.point);
    if (out.reduction_type) out.reduction_type = embed_reduction_type(*out.reduction_type, emb);
    return out;
}

}  // namespace hurwitz
