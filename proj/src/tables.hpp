#pragma once

// Table emitters for the enumeration results: colour statistics as CSV/JSON
// and the exact polynomial identities as JSON (coefficients as integer pairs).

#include <string>

namespace sosdw {

// Header: n,A_n,C_n,K0,K1,K2,p0,p1,p2. Rationals in num/den form.
std::string tables_csv(int n_min, int n_max);

// Same rows as a "sosdw/1" JSON document.
std::string tables_json(int n_min, int n_max);

// Cleared three-colour and 2-enumeration polynomials, coefficients as
// decimal-string pairs (a, b) meaning a + b*w or a + b*i.
std::string poly_identities_json(int n_max, int state_cap);

} // namespace sosdw
