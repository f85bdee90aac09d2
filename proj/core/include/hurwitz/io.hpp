#pragma once

#include "hurwitz/extension.hpp"
#include "hurwitz/tree.hpp"
#include "hurwitz/witt.hpp"

#include <string>
#include <string_view>

namespace hurwitz {

// "p" for the prime field or "p:m0,m1,...,md" with ascending modulus coefficients.
FieldPtr parse_field_spec(std::string_view text);

HurwitzTree parse_tree(std::string_view json_text);
std::string serialize_tree(const HurwitzTree& t);

// {"p": 3, "field"?: {...}, "reduction_type": [[c0, c1, ...], ...]} with c_j the
// coefficient of x^-j; entries may also be strings such as "2/x^26+1/x^5".
ReductionType parse_reduction_type(std::string_view json_text);
std::string serialize_reduction_type(const ReductionType& rt);

VertexMap parse_vertex_map(std::string_view json_text);
std::string serialize_vertex_map(const VertexMap& m);

// Forms and reduction types inside the target are read over the given field.
ExtensionTarget parse_target(std::string_view json_text, const FieldPtr& field);
std::string serialize_target(const ExtensionTarget& t);

std::string serialize_report(const ValidationReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace hurwitz
