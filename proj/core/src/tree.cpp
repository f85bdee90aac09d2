#include "hurwitz/tree.hpp"

#include "hurwitz/error.hpp"
#include "hurwitz/expr.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace hurwitz {

const Vertex* HurwitzTree::find_vertex(const std::string& id) const
{
    for (const auto& v : vertices)
        if (v.id == id) return &v;
    return nullptr;
}

Vertex* HurwitzTree::find_vertex(const std::string& id)
{
    for (auto& v : vertices)
        if (v.id == id) return &v;
    return nullptr;
}

const Edge* HurwitzTree::find_edge(const std::string& id) const
{
    for (const auto& e : edges)
        if (e.id == id) return &e;
    return nullptr;
}

const Leaf* HurwitzTree::find_leaf(const std::string& id) const
{
    for (const auto& b : leaves)
        if (b.id == id) return &b;
    return nullptr;
}

const Vertex& HurwitzTree::vertex(const std::string& id) const
{
    const Vertex* v = find_vertex(id);
    if (!v) throw Error(ErrorCode::PreconditionViolated, "unknown vertex '" + id + "'");
    return *v;
}

const Edge& HurwitzTree::edge(const std::string& id) const
{
    const Edge* e = find_edge(id);
    if (!e) throw Error(ErrorCode::PreconditionViolated, "unknown edge '" + id + "'");
    return *e;
}

const Edge* HurwitzTree::incoming_edge(const std::string& vertex_id) const
{
    for (const auto& e : edges)
        if (e.target == vertex_id) return &e;
    return nullptr;
}

std::vector<const Edge*> HurwitzTree::child_edges(const std::string& vertex_id) const
{
    std::vector<const Edge*> out;
    for (const auto& e : edges)
        if (e.source == vertex_id) out.push_back(&e);
    std::sort(out.begin(), out.end(), [&](const Edge* a, const Edge* b) {
        const auto pa = chart_point(vertex_id, a->id);
        const auto pb = chart_point(vertex_id, b->id);
        if (pa && pb && *pa != *pb) return *pa < *pb;
        return a->id < b->id;
    });
    return out;
}

std::vector<const Leaf*> HurwitzTree::leaves_at(const std::string& vertex_id) const
{
    std::vector<const Leaf*> out;
    for (const auto& b : leaves)
        if (b.vertex == vertex_id) out.push_back(&b);
    std::sort(out.begin(), out.end(), [](const Leaf* a, const Leaf* b) {
        if (a->point != b->point) return a->point < b->point;
        return a->id < b->id;
    });
    return out;
}

const Edge& HurwitzTree::trunk() const
{
    const auto kids = child_edges(root);
    if (kids.size() != 1) throw Error(ErrorCode::PreconditionViolated, "root must have exactly one child edge");
    return *kids.front();
}

std::optional<Elem> HurwitzTree::chart_point(const std::string& vertex_id, const std::string& child) const
{
    const Vertex* v = find_vertex(vertex_id);
    if (!v) return std::nullopt;
    for (const auto& c : v->chart)
        if (c.child == child) return c.point;
    return std::nullopt;
}

Rational HurwitzTree::radius(const std::string& vertex_id) const
{
    Rational r = root_radius;
    std::string cur = vertex_id;
    std::size_t guard = 0;
    while (cur != root) {
        const Edge* e = incoming_edge(cur);
        if (!e || ++guard > edges.size()) throw Error(ErrorCode::PreconditionViolated, "vertex '" + vertex_id + "' not below the root");
        r += e->thickness;
        cur = e->source;
    }
    return r;
}

std::pair<Rational, Rational> HurwitzTree::interval(const std::string& edge_id) const
{
    const Edge& e = edge(edge_id);
    const Rational s = radius(e.source);
    return {s, s + e.thickness};
}

int HurwitzTree::conductor() const
{
    int c = 0;
    for (const auto& b : leaves) c += b.conductor;
    return c;
}

int HurwitzTree::leaves_behind(const std::string& edge_id) const
{
    int total = 0;
    std::function<void(const std::string&)> walk = [&](const std::string& v) {
        for (const Leaf* b : leaves_at(v)) total += b->conductor;
        for (const Edge* e : child_edges(v)) walk(e->target);
    };
    walk(edge(edge_id).target);
    return total;
}

int HurwitzTree::max_leaf_index_behind(const std::string& vertex_id) const
{
    int best = 0;
    std::function<void(const std::string&)> walk = [&](const std::string& v) {
        for (const Leaf* b : leaves_at(v)) best = std::max(best, b->index);
        for (const Edge* e : child_edges(v)) walk(e->target);
    };
    walk(vertex_id);
    return best;
}

std::vector<std::string> HurwitzTree::preorder() const
{
    std::vector<std::string> out;
    std::function<void(const std::string&)> walk = [&](const std::string& v) {
        out.push_back(v);
        for (const Edge* e : child_edges(v)) walk(e->target);
    };
    if (find_vertex(root)) walk(root);
    return out;
}

void ValidationReport::add(std::string clause, std::string subject, std::string message)
{
    violations.push_back({std::move(clause), std::move(subject), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other)
{
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

bool ValidationReport::has_clause(const std::string& clause) const
{
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.clause == clause; });
}

std::optional<CanonicalShape> canonical_shape(const DifferentialForm& w)
{
    if (w.is_zero()) return std::nullopt;
    const RatFunc& f = w.coefficient();
    if (f.num().deg() != 0) return std::nullopt;
    if (!splits(f.den())) return std::nullopt;
    return CanonicalShape{f.num().coeff(0), roots_with_multiplicity(f.den())};
}

namespace {

// Principal part coefficients at a: result[j-1] is the coefficient of 1/(x-a)^j.
std::vector<Elem> principal_part(const RatFunc& f, Elem a)
{
    const FieldPtr& F = f.field();
    const int k = multiplicity_at(f.den(), a);
    if (k == 0) return {};
    const Poly cofactor = f.den() / pow(Poly::linear(F, a), k);
    const Poly num = f.num().shifted(a).truncated(k);
    const Poly den = cofactor.shifted(a).truncated(k);
    const Elem d0inv = F->inv(den.coeff(0));
    std::vector<Elem> s(k, Elem{0});
    for (int i = 0; i < k; ++i) {
        Elem acc = num.coeff(i);
        for (int j = 1; j <= i; ++j) acc = F->sub(acc, F->mul(den.coeff(j), s[i - j]));
        s[i] = F->mul(acc, d0inv);
    }
    std::vector<Elem> out(k);
    for (int j = 1; j <= k; ++j) out[j - 1] = s[k - j];
    return out;
}

}  // namespace

DifferentialForm e_part_at(const DifferentialForm& w, Elem a)
{
    const FieldPtr& F = w.field();
    const auto pp = principal_part(w.coefficient(), a);
    RatFunc acc(F);
    for (std::size_t j = 0; j < pp.size(); ++j)
        if (pp[j].code != 0)
            acc += RatFunc(Poly::constant(F, pp[j]), pow(Poly::linear(F, a), static_cast<int>(j) + 1));
    return DifferentialForm(acc);
}

Elem leading_coefficient_at(const DifferentialForm& w, Elem a)
{
    const auto pp = principal_part(w.coefficient(), a);
    if (pp.empty()) return Elem{0};
    return pp.back();
}

Rational depth_at_place(const HurwitzTree& t, const RationalPlace& place)
{
    const Edge* e = t.find_edge(place.edge);
    if (!e) throw Error(ErrorCode::PlaceOutsideEdge, "unknown edge '" + place.edge + "'");
    const auto [s, end] = t.interval(place.edge);
    if (place.r < s || place.r > end)
        throw Error(ErrorCode::PlaceOutsideEdge, "radius " + to_string(place.r) + " outside edge '" + place.edge + "'");
    return t.vertex(e->source).depth + Rational(e->slope) * (place.r - s);
}

DifferentialForm differential_at_place(const HurwitzTree& t, const RationalPlace& place)
{
    depth_at_place(t, place);
    const Edge& e = t.edge(place.edge);
    const Elem c = constant_coefficient(t, e.target);
    return DifferentialForm(RatFunc(Poly::constant(t.field, c), Poly::monomial(t.field, t.field->one(), e.slope + 1)));
}

Elem constant_coefficient(const HurwitzTree& t, const std::string& vertex_id)
{
    const Vertex& v = t.vertex(vertex_id);
    if (!v.omega || v.depth <= 0)
        throw Error(ErrorCode::PreconditionViolated, "vertex '" + vertex_id + "' has no differential conductor");
    if (vertex_id == t.root) {
        const auto pt = t.chart_point(t.root, t.trunk().id);
        if (!pt) throw Error(ErrorCode::ShapeViolation, "root has no chart point for its trunk");
        return leading_coefficient_at(*v.omega, *pt);
    }
    const auto shape = canonical_shape(*v.omega);
    if (!shape) throw Error(ErrorCode::ShapeViolation, "form at '" + vertex_id + "' is not c dx/prod(x-a_i)^m_i");
    return shape->constant;
}

DifferentialForm e_part(const HurwitzTree& t, const std::string& vertex_id, const std::string& child)
{
    const Vertex& v = t.vertex(vertex_id);
    if (!v.omega) throw Error(ErrorCode::PreconditionViolated, "vertex '" + vertex_id + "' has no differential conductor");
    const auto pt = t.chart_point(vertex_id, child);
    if (!pt) throw Error(ErrorCode::PreconditionViolated, "'" + child + "' not in the chart of '" + vertex_id + "'");
    return e_part_at(*v.omega, *pt);
}

Elem e_part_coefficient(const HurwitzTree& t, const std::string& vertex_id, const std::string& child)
{
    const Vertex& v = t.vertex(vertex_id);
    if (!v.omega) throw Error(ErrorCode::PreconditionViolated, "vertex '" + vertex_id + "' has no differential conductor");
    const auto pt = t.chart_point(vertex_id, child);
    if (!pt) throw Error(ErrorCode::PreconditionViolated, "'" + child + "' not in the chart of '" + vertex_id + "'");
    return leading_coefficient_at(*v.omega, *pt);
}

ValidationReport check_compatibility(const HurwitzTree& t)
{
    ValidationReport rep;
    const FieldPtr& F = t.field;
    for (const std::string& vid : t.preorder()) {
        const Vertex& s = t.vertex(vid);
        for (const Edge* e : t.child_edges(vid)) {
            if (!(s.depth > 0) || !s.omega) continue;
            try {
                const Elem above = e_part_coefficient(t, vid, e->id);
                const Elem below = constant_coefficient(t, e->target);
                if (above != below)
                    rep.add("COMPAT", e->id,
                            "e-part coefficient " + F->to_string(above) + " at '" + vid + "' differs from constant coefficient " +
                                F->to_string(below) + " at '" + e->target + "'");
            } catch (const Error& err) {
                rep.add("COMPAT", e->id, err.what());
            }
        }
    }
    if (t.is_etale() && t.find_vertex(t.root)) {
        const ReductionType& rt = *t.reduction_type;
        try {
            const Poly& top = rt.entries.back();
            if (!top.is_zero()) {
                const int l = top.deg();
                int prev = 0;
                if (rt.length() > 1) {
                    ReductionType head{rt.field, {rt.entries.begin(), rt.entries.end() - 1}};
                    prev = conductors(head).conductors.back();
                }
                if (l >= t.p * prev - t.p) {
                    const Elem rc = root_constant_coefficient(rt);
                    const Elem c1 = constant_coefficient(t, t.trunk().target);
                    if (rc != c1)
                        rep.add("COMPAT", t.trunk().id,
                                "root constant coefficient " + F->to_string(rc) + " differs from " + F->to_string(c1) +
                                    " at '" + t.trunk().target + "'");
                }
            }
        } catch (const Error& err) {
            rep.add("COMPAT", t.root, err.what());
        }
    }
    return rep;
}

HurwitzTree subtree(const HurwitzTree& t, const std::string& edge_id)
{
    const Edge& e = t.edge(edge_id);
    if (e.source == t.root) throw Error(ErrorCode::TrunkNotAllowed, "subtree of the trunk");
    HurwitzTree out;
    out.p = t.p;
    out.field = t.field;
    out.root = e.source;
    out.root_radius = t.radius(e.source);
    const Vertex& s = t.vertex(e.source);
    const int n_sub = t.vertex(e.target).monodromy;
    out.n = n_sub;
    Vertex r;
    r.id = s.id;
    r.depth = s.depth;
    r.monodromy = n_sub;
    if (s.omega) r.omega = e_part(t, s.id, e.id);
    r.chart.push_back({e.id, *t.chart_point(s.id, e.id)});
    out.vertices.push_back(r);
    std::function<void(const std::string&)> walk = [&](const std::string& v) {
        out.vertices.push_back(t.vertex(v));
        for (const Leaf* b : t.leaves_at(v)) out.leaves.push_back(*b);
        for (const Edge* c : t.child_edges(v)) {
            out.edges.push_back(*c);
            walk(c->target);
        }
    };
    out.edges.push_back(e);
    walk(e.target);
    return out;
}

HurwitzTree make_equidistant(const FieldPtr& field, int l, Elem a, const Rational& attach_depth,
                             const Rational& attach_radius, const std::string& prefix)
{
    const int p = field->p();
    if (l <= 0 || std::gcd(l, p) != 1) throw Error(ErrorCode::PreconditionViolated, "l must be positive and prime to p");
    if (a.code == 0) throw Error(ErrorCode::PreconditionViolated, "parameter must be nonzero");
    const Rational top(p, p - 1);
    if (attach_depth >= top) throw Error(ErrorCode::DepthTooHigh, "attach depth must be below p/(p-1)");
    if (attach_depth < 0) throw Error(ErrorCode::PreconditionViolated, "negative attach depth");
    const Poly xl = Poly::monomial(field, field->one(), l) - Poly::constant(field, a);
    const auto roots = distinct_roots(xl);
    if (static_cast<int>(roots.size()) != l) {
        Poly rest = xl;
        for (Elem r : roots) rest = rest / Poly::linear(field, r);
        const int deg = smallest_irreducible_factor_degree(rest).value_or(rest.deg());
        throw Error(ErrorCode::IrreducibleFactor, "x^" + std::to_string(l) + " - a does not split", deg);
    }
    HurwitzTree t;
    t.p = p;
    t.n = 1;
    t.field = field;
    t.root = prefix + "0";
    t.root_radius = attach_radius;
    Vertex r{t.root, attach_depth, std::nullopt, 1, {{prefix + "e", field->zero()}}};
    if (attach_depth > 0) {
        r.omega = DifferentialForm(RatFunc(Poly::constant(field, a), Poly::monomial(field, field->one(), l + 1)));
    } else {
        // -l d = a for the leading coefficient d of x^-l.
        const Elem d = field->neg(field->div(a, field->from_int(l)));
        t.reduction_type = ReductionType{field, {Poly::monomial(field, d, l)}};
    }
    Vertex v{prefix + "1", top, std::nullopt, 1, {}};
    v.omega = DifferentialForm(RatFunc(Poly::constant(field, a), Poly::x(field) * xl));
    std::vector<Elem> points{field->zero()};
    points.insert(points.end(), roots.begin(), roots.end());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string id = prefix + "b" + std::to_string(i);
        v.chart.push_back({id, points[i]});
        t.leaves.push_back({id, 1, 1, v.id, points[i]});
    }
    t.vertices = {r, v};
    t.edges.push_back({prefix + "e", r.id, v.id, (top - attach_depth) / l, l});
    return t;
}

std::string to_dot(const HurwitzTree& t)
{
    auto esc = [](const std::string& s) {
        std::string o;
        for (char c : s) {
            if (c == '"' || c == '\\') o.push_back('\\');
            o.push_back(c);
        }
        return o;
    };
    std::ostringstream os;
    os << "digraph hurwitz {\n  node [shape=box];\n";
    for (const std::string& vid : t.preorder()) {
        const Vertex& v = t.vertex(vid);
        std::string label = v.id + "\\ndelta=" + to_string(v.depth) + "\\nG=Z/p^" + std::to_string(v.monodromy);
        if (v.omega) label += "\\nomega=" + esc(v.omega->to_string());
        else if (vid == t.root && t.is_etale()) {
            label += "\\nf=(";
            for (std::size_t i = 0; i < t.reduction_type->length(); ++i) {
                if (i) label += ", ";
                label += esc(t.reduction_type->entry_in_x(i).to_string());
            }
            label += ")";
        }
        os << "  \"" << esc(v.id) << "\" [label=\"" << label << "\"];\n";
    }
    for (const auto& b : t.leaves)
        os << "  \"" << esc(b.id) << "\" [shape=point, xlabel=\"" << esc(b.id) << " h=" << b.conductor << " i=" << b.index
           << "\"];\n";
    for (const std::string& vid : t.preorder()) {
        for (const Edge* e : t.child_edges(vid))
            os << "  \"" << esc(e->source) << "\" -> \"" << esc(e->target) << "\" [label=\"" << esc(e->id)
               << " eps=" << to_string(e->thickness) << " d=" << e->slope << "\"];\n";
        for (const Leaf* b : t.leaves_at(vid))
            os << "  \"" << esc(b->vertex) << "\" -> \"" << esc(b->id) << "\" [style=dashed, label=\""
               << esc(t.field->to_string(b->point)) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace hurwitz
