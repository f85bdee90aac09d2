#include "hurwitz/error.hpp"
#include "hurwitz/tree.hpp"

#include <map>
#include <set>

namespace hurwitz {

ValidationReport check_structure(const HurwitzTree& t)
{
    ValidationReport rep;
    if (!t.field) {
        rep.add("STRUCTURE", "tree", "missing field");
        return rep;
    }
    if (t.p != t.field->p()) rep.add("STRUCTURE", "tree", "p differs from the field characteristic");
    if (t.n < 1) rep.add("STRUCTURE", "tree", "n must be positive");

    std::set<std::string> ids;
    auto unique = [&](const std::string& id, const char* kind) {
        if (id.empty()) rep.add("STRUCTURE", kind, "empty id");
        else if (!ids.insert(id).second) rep.add("STRUCTURE", id, "duplicate id");
    };
    for (const auto& v : t.vertices) unique(v.id, "vertex");
    for (const auto& e : t.edges) unique(e.id, "edge");
    for (const auto& b : t.leaves) unique(b.id, "leaf");
    if (!t.find_vertex(t.root)) {
        rep.add("STRUCTURE", t.root, "root vertex missing");
        return rep;
    }

    std::map<std::string, int> indegree;
    for (const auto& e : t.edges) {
        if (!t.find_vertex(e.source)) rep.add("STRUCTURE", e.id, "unknown source '" + e.source + "'");
        if (!t.find_vertex(e.target)) rep.add("STRUCTURE", e.id, "unknown target '" + e.target + "'");
        ++indegree[e.target];
    }
    for (const auto& b : t.leaves)
        if (!t.find_vertex(b.vertex)) rep.add("STRUCTURE", b.id, "attached to unknown vertex '" + b.vertex + "'");
    if (!rep.ok()) return rep;

    for (const auto& v : t.vertices) {
        const int in = indegree[v.id];
        if (v.id == t.root && in != 0) rep.add("STRUCTURE", v.id, "root has an incoming edge");
        if (v.id != t.root && in != 1) rep.add("STRUCTURE", v.id, "vertex must have exactly one incoming edge");
    }
    if (!rep.ok()) return rep;
    if (t.preorder().size() != t.vertices.size()) {
        rep.add("STRUCTURE", t.root, "not every vertex is reachable from the root");
        return rep;
    }

    for (const auto& v : t.vertices) {
        std::set<std::string> expected;
        for (const Edge* e : t.child_edges(v.id)) expected.insert(e->id);
        for (const Leaf* b : t.leaves_at(v.id)) expected.insert(b->id);
        std::set<std::string> seen;
        std::set<Elem> points;
        for (const auto& c : v.chart) {
            if (!expected.count(c.child)) rep.add("STRUCTURE", v.id, "chart names '" + c.child + "' which is not a child");
            if (!seen.insert(c.child).second) rep.add("STRUCTURE", v.id, "chart lists '" + c.child + "' twice");
            if (!points.insert(c.point).second) rep.add("STRUCTURE", v.id, "chart points are not distinct");
            if (c.point.code >= t.field->size()) rep.add("STRUCTURE", v.id, "chart point outside the field");
        }
        for (const auto& id : expected)
            if (!seen.count(id)) rep.add("STRUCTURE", v.id, "child '" + id + "' has no chart point");
        if (v.omega && v.omega->field() && !v.omega->field()->same_as(*t.field))
            rep.add("STRUCTURE", v.id, "form over a different field");
    }
    for (const auto& b : t.leaves) {
        const auto pt = t.chart_point(b.vertex, b.id);
        if (pt && *pt != b.point) rep.add("STRUCTURE", b.id, "attachment point differs from the vertex chart");
    }
    return rep;
}

ValidationReport validate(const HurwitzTree& t)
{
    ValidationReport rep = check_structure(t);
    if (!rep.ok()) return rep;
    const int p = t.p;
    const Rational crit(p, p - 1);
    const Vertex& root = t.vertex(t.root);

    // Root datum.
    std::optional<int> root_conductor;
    if (t.is_etale()) {
        if (root.depth != 0) rep.add("ROOT", root.id, "etale root must have depth 0");
        const ReductionType& rt = *t.reduction_type;
        if (static_cast<int>(rt.length()) != t.n) rep.add("ROOT", root.id, "reduction type length differs from n");
        try {
            const ConductorData cd = conductors(rt);
            root_conductor = cd.conductors.back();
            if (t.conductor() != *root_conductor)
                rep.add("ROOT", root.id,
                        "sum of leaf conductors " + std::to_string(t.conductor()) + " differs from conductor " +
                            std::to_string(*root_conductor));
        } catch (const Error& err) {
            rep.add("ROOT", root.id, err.what());
        }
    } else if (!(root.depth > 0)) {
        rep.add("ROOT", root.id, "radical root needs positive depth");
    }

    // H1 and presence of forms.
    for (const auto& v : t.vertices) {
        if (v.id != t.root && !(v.depth > 0)) rep.add("H1", v.id, "depth must be positive off the root");
        if (v.depth < 0) rep.add("H1", v.id, "negative depth");
        if ((v.depth > 0) != v.omega.has_value())
            rep.add("H1", v.id, v.omega ? "form present at depth 0" : "form missing at positive depth");
        if (v.omega && v.omega->is_zero()) rep.add("H2", v.id, "zero differential conductor");
    }

    // H2 and canonical shape.
    for (const auto& v : t.vertices) {
        if (!v.omega || v.omega->is_zero()) continue;
        const RatFunc& f = v.omega->coefficient();
        std::set<Elem> chart_points;
        for (const auto& c : v.chart) chart_points.insert(c.point);
        const auto roots = roots_with_multiplicity(f.den());
        int root_degree = 0;
        std::set<Elem> poles;
        for (const auto& [a, k] : roots) {
            poles.insert(a);
            root_degree += k;
        }
        if (root_degree != f.den().deg()) rep.add("H2", v.id, "poles outside the field chart");
        if (poles != chart_points) rep.add("H2", v.id, "poles are not exactly the chart points");
        if (v.id != t.root && f.num().deg() != 0) rep.add("H2", v.id, "zeros away from infinity");
    }

    // H4, H5 and the slope formula.
    for (const auto& e : t.edges) {
        const Vertex& s = t.vertex(e.source);
        const Vertex& tv = t.vertex(e.target);
        if (!(e.thickness > 0)) rep.add("H5", e.id, "thickness must be positive");
        if (e.slope < 1) rep.add("H5", e.id, "slope must be at least 1");
        if (s.depth + e.thickness * e.slope != tv.depth)
            rep.add("H5", e.id,
                    "depth(" + s.id + ") + thickness*slope = " + to_string(s.depth + e.thickness * e.slope) +
                        " but depth(" + tv.id + ") = " + to_string(tv.depth));
        if (s.omega && !s.omega->is_zero()) {
            const auto pt = t.chart_point(s.id, e.id);
            const int o = ord(*s.omega, Point::at(*pt));
            if (e.slope != -o - 1)
                rep.add("H4", e.id, "slope " + std::to_string(e.slope) + " but -ord at the source chart point - 1 = " +
                                        std::to_string(-o - 1));
        }
        if (tv.omega && !tv.omega->is_zero()) {
            const int o = ord(*tv.omega, Point::infinity());
            if (e.slope != o + 1)
                rep.add("H4", e.id,
                        "slope " + std::to_string(e.slope) + " but ord at infinity of the target + 1 = " + std::to_string(o + 1));
        }
        if (s.id == t.root && root_conductor && e.slope != *root_conductor - 1)
            rep.add("H4", e.id,
                    "trunk slope " + std::to_string(e.slope) + " differs from the top break " + std::to_string(*root_conductor - 1));
        const int behind = t.leaves_behind(e.id);
        if (e.slope != behind - 1)
            rep.add("SLOPE", e.id, "slope " + std::to_string(e.slope) + " but leaves behind minus one = " + std::to_string(behind - 1));
    }

    // H6.
    for (const auto& b : t.leaves) {
        if (b.conductor != 1) rep.add("H6", b.id, "leaf conductor must be 1");
        const Vertex& v = t.vertex(b.vertex);
        if (v.omega && !v.omega->is_zero()) {
            const int o = -ord(*v.omega, Point::at(b.point));
            if (o != b.conductor)
                rep.add("H6", b.id, "pole order " + std::to_string(o) + " at the leaf differs from its conductor");
        }
    }

    // H7.
    if (root.monodromy != t.n) rep.add("H7", root.id, "root monodromy must be Z/p^n");
    const auto trunk_edges = t.child_edges(t.root);
    if (trunk_edges.size() != 1 || !t.leaves_at(t.root).empty())
        rep.add("H7", root.id, "root must have exactly one successor");
    else if (t.vertex(trunk_edges.front()->target).monodromy != t.n)
        rep.add("H7", trunk_edges.front()->target, "successor of the root must have monodromy Z/p^n");
    for (const auto& v : t.vertices) {
        long long branching = 0;
        auto index_of = [&](int sub) {
            long long idx = 1;
            for (int k = sub; k < v.monodromy && idx < (1LL << 40); ++k) idx *= p;
            return idx;
        };
        for (const Edge* e : t.child_edges(v.id)) {
            const Vertex& c = t.vertex(e->target);
            if (c.monodromy > v.monodromy) rep.add("H7", c.id, "monodromy grows away from the root");
            else branching += index_of(c.monodromy);
        }
        for (const Leaf* b : t.leaves_at(v.id)) {
            if (b->index < 1) rep.add("H7", b->id, "leaf index must be at least 1");
            if (b->index > v.monodromy) rep.add("H7", b->id, "leaf index exceeds the vertex monodromy");
            else branching += index_of(b->index);
        }
        if (v.id != t.root && branching <= 1) rep.add("H7", v.id, "branching condition fails");
        const int expected = t.max_leaf_index_behind(v.id);
        if (v.monodromy != expected)
            rep.add("H7", v.id, "monodromy exponent " + std::to_string(v.monodromy) + " but largest leaf index behind is " +
                                    std::to_string(expected));
    }

    // Vertices carrying leaves.
    for (const auto& v : t.vertices) {
        const auto bs = t.leaves_at(v.id);
        if (bs.empty()) continue;
        for (const Leaf* b : bs) {
            const Rational want = crit + (b->index - 1);
            if (v.depth != want)
                rep.add("MIXED", b->id, "vertex depth " + to_string(v.depth) + " but a leaf of index " +
                                            std::to_string(b->index) + " needs " + to_string(want));
        }
        if (t.child_edges(v.id).empty() && v.omega && !v.omega->is_zero()) {
            const int i = bs.front()->index;
            DifferentialForm w = *v.omega;
            if ((t.n - i) % 2 != 0) w = -w;
            if (!is_logarithmic(w)) rep.add("MIXED", v.id, "form at a leaf vertex is not logarithmic");
        }
    }
    return rep;
}

}  // namespace hurwitz
