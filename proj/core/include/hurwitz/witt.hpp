#pragma once

#include "hurwitz/poly.hpp"
#include "hurwitz/ratfunc.hpp"

#include <vector>

namespace hurwitz {

// Entries are polynomials in u = 1/x.
struct ReductionType {
    FieldPtr field;
    std::vector<Poly> entries;

    int p() const { return field->p(); }
    std::size_t length() const { return entries.size(); }
    // Entry as a rational function of x.
    RatFunc entry_in_x(std::size_t i) const;
    bool operator==(const ReductionType& o) const { return entries == o.entries; }
};

// Builds a reduction type from rational functions in x with poles only at 0.
ReductionType reduction_type_from_functions(const FieldPtr& f, const std::vector<RatFunc>& entries);

struct ConductorData {
    std::vector<int> breaks;
    std::vector<int> conductors;
    std::vector<bool> minimal;
    // l with conductor_i = p*conductor_{i-1} - p + l + 1; 0 when minimal.
    std::vector<int> excess;
};

bool is_reduced(const ReductionType& rt);
std::vector<int> breaks(const ReductionType& rt);
ConductorData conductors(const ReductionType& rt);
Elem root_constant_coefficient(const ReductionType& rt);
bool is_prefix(const ReductionType& lo, const ReductionType& hi);

}  // namespace hurwitz
