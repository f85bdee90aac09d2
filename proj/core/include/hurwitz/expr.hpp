#pragma once

#include "hurwitz/ratfunc.hpp"

#include <string>
#include <string_view>

namespace hurwitz {

// Parses expressions such as "1/(x^3*(x+1)^4)", "2*g+1", "dx/(x^2*(x-1))".
// Integers are reduced mod p, `g` is the class of t in F_p[t]/(modulus), the
// token `dx` evaluates to 1 so differential forms can be written literally.
RatFunc parse_expression(const FieldPtr& f, std::string_view text);
Elem parse_element(const FieldPtr& f, std::string_view text);

// c*dx/(x^a*(x+1)^b*(x^2+x+1)) style rendering; linear factors over the field
// are split off, the remaining cofactor is printed expanded.
std::string format_form(const RatFunc& f);
std::string format_factored(const Poly& p);

}  // namespace hurwitz
