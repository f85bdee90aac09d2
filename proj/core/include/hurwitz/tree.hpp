#pragma once

#include "hurwitz/differential.hpp"
#include "hurwitz/rational.hpp"
#include "hurwitz/witt.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hurwitz {

// Child directions sit at finite chart points; the parent direction is infinity.
struct ChartEntry {
    std::string child;  // edge id or leaf id
    Elem point;
};

struct Vertex {
    std::string id;
    Rational depth;
    std::optional<DifferentialForm> omega;
    int monodromy = 0;
    std::vector<ChartEntry> chart;
};

struct Edge {
    std::string id;
    std::string source;
    std::string target;
    Rational thickness;
    int slope = 0;
};

struct Leaf {
    std::string id;
    int conductor = 1;
    int index = 1;
    std::string vertex;
    Elem point;
};

struct RationalPlace {
    std::string edge;
    Rational r;
};

class HurwitzTree {
public:
    int p = 0;
    int n = 0;
    FieldPtr field;
    std::string root;
    // Radius coordinate of the root; nonzero for extracted subtrees.
    Rational root_radius = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Leaf> leaves;
    // Present exactly for etale trees.
    std::optional<ReductionType> reduction_type;

    bool is_etale() const { return reduction_type.has_value(); }

    const Vertex* find_vertex(const std::string& id) const;
    Vertex* find_vertex(const std::string& id);
    const Edge* find_edge(const std::string& id) const;
    const Leaf* find_leaf(const std::string& id) const;
    const Vertex& vertex(const std::string& id) const;
    const Edge& edge(const std::string& id) const;

    const Edge* incoming_edge(const std::string& vertex_id) const;
    std::vector<const Edge*> child_edges(const std::string& vertex_id) const;
    std::vector<const Leaf*> leaves_at(const std::string& vertex_id) const;
    const Edge& trunk() const;

    // Chart point of a child edge or leaf at its source vertex.
    std::optional<Elem> chart_point(const std::string& vertex_id, const std::string& child) const;

    Rational radius(const std::string& vertex_id) const;
    // [s(e), t(e)] in radius coordinates.
    std::pair<Rational, Rational> interval(const std::string& edge_id) const;

    int conductor() const;
    int leaves_behind(const std::string& edge_id) const;
    int max_leaf_index_behind(const std::string& vertex_id) const;
    // Vertices in depth-first order from the root, children by chart point.
    std::vector<std::string> preorder() const;
};

struct Violation {
    std::string clause;
    std::string subject;
    std::string message;
    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string clause, std::string subject, std::string message);
    void merge(const ValidationReport& other);
    bool has_clause(const std::string& clause) const;
};

// c dx / prod (x - a_i)^m_i with the poles listed by ascending point.
struct CanonicalShape {
    Elem constant;
    std::vector<std::pair<Elem, int>> poles;
};

std::optional<CanonicalShape> canonical_shape(const DifferentialForm& w);
// Partial-fraction sub-sum of w at the pole a.
DifferentialForm e_part_at(const DifferentialForm& w, Elem a);
// Coefficient of dx/(x-a)^m with m the full pole order at a.
Elem leading_coefficient_at(const DifferentialForm& w, Elem a);

ValidationReport check_structure(const HurwitzTree& t);
ValidationReport validate(const HurwitzTree& t);

Rational depth_at_place(const HurwitzTree& t, const RationalPlace& place);
DifferentialForm differential_at_place(const HurwitzTree& t, const RationalPlace& place);

Elem constant_coefficient(const HurwitzTree& t, const std::string& vertex_id);
DifferentialForm e_part(const HurwitzTree& t, const std::string& vertex_id, const std::string& child);
Elem e_part_coefficient(const HurwitzTree& t, const std::string& vertex_id, const std::string& child);

ValidationReport check_compatibility(const HurwitzTree& t);

HurwitzTree subtree(const HurwitzTree& t, const std::string& edge_id);

// Radical Z/p tree rooted at a place of depth attach_depth whose single edge ends
// at a vertex of depth p/(p-1) carrying a dx/(x(x^l - a)) and l+1 leaves.
HurwitzTree make_equidistant(const FieldPtr& field, int l, Elem a, const Rational& attach_depth,
                             const Rational& attach_radius = 0, const std::string& prefix = "q");

std::string to_dot(const HurwitzTree& t);

}  // namespace hurwitz
