#pragma once

#include <variant>

#include <json.hpp>

#include "starred/reduced.hpp"

namespace starred {

// Polynomial documents exchanged over stdin/stdout:
// {
//   "n": 1, "s": 2,
//   "basis": "ambient" | "fundamental",
//   "coeff_mode": "gaussian" | "hbar_rational",
//   "terms": [
//     {"P": [..], "Q": [..], "re": "p/q", "im": "p/q"}                 (gaussian)
//     {"P": [..], "Q": [..], "num": ["p/q", ..], "den": ["p/q", ..]}   (hbar_rational)
//   ]
// }
// Multi-index lengths are 1+n in the ambient basis and n in the fundamental
// basis. hbar_rational coefficient arrays list num/den polynomial
// coefficients in ascending powers of hbar; entries are scalar strings
// "a/b", "a/b+c/di" or "a/b-c/di".

using PolyVariant = std::variant<AmbientPolyQ, AmbientPolyH, ReducedPolyQ, ReducedPolyH>;

PolyVariant parse_poly_document(const nlohmann::json& doc);

nlohmann::json poly_document(const AmbientPolyQ& f);
nlohmann::json poly_document(const AmbientPolyH& f);
nlohmann::json poly_document(const ReducedPolyQ& f);
nlohmann::json poly_document(const ReducedPolyH& f);

inline nlohmann::json poly_document(const PolyVariant& v) {
    return std::visit([](const auto& f) { return poly_document(f); }, v);
}

inline const Signature& document_signature(const PolyVariant& v) {
    return std::visit([](const auto& f) -> const Signature& { return f.sig; }, v);
}

} // namespace starred
