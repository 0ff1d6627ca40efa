#include "starred/json_io.hpp"

namespace starred {

namespace {

using nlohmann::json;

MultiIndex parse_multiindex(const json& arr, size_t want_len, const char* what) {
    if (!arr.is_array()) throw ParseError(std::string(what) + ": expected an array");
    std::vector<unsigned> e;
    for (auto& x : arr) {
        if (!x.is_number_integer() || x.get<long>() < 0)
            throw ParseError(std::string(what) + ": entries must be non-negative integers");
        e.push_back((unsigned)x.get<long>());
    }
    if (e.size() != want_len) throw ParseError(std::string(what) + ": wrong multi-index length");
    return MultiIndex(std::move(e));
}

GaussianRational parse_gaussian_term(const json& t) {
    std::string re = t.value("re", "0");
    std::string im = t.value("im", "0");
    return GaussianRational(rat_from_string(re), rat_from_string(im));
}

HPoly parse_coeff_array(const json& arr, const char* what) {
    if (!arr.is_array()) throw ParseError(std::string(what) + ": expected an array of scalars");
    std::vector<GaussianRational> c;
    for (auto& x : arr) {
        if (!x.is_string()) throw ParseError(std::string(what) + ": entries must be scalar strings");
        c.push_back(gaussian_from_string(x.get<std::string>()));
    }
    return HPoly(std::move(c));
}

json coeff_array(const HPoly& p) {
    json arr = json::array();
    for (auto& c : p.c) arr.push_back(gaussian_to_string(c));
    if (arr.empty()) arr.push_back("0");
    return arr;
}

template <class Poly, class CoeffFn>
Poly parse_terms(const json& doc, const Signature& sig, size_t len, CoeffFn&& coeff) {
    Poly f(sig);
    for (auto& t : doc.at("terms")) {
        auto P = parse_multiindex(t.at("P"), len, "P");
        auto Q = parse_multiindex(t.at("Q"), len, "Q");
        f.add({std::move(P), std::move(Q)}, coeff(t));
    }
    return f;
}

json term_header(const MultiIndex& P, const MultiIndex& Q) {
    json t;
    t["P"] = P.entries();
    t["Q"] = Q.entries();
    return t;
}

} // namespace

PolyVariant parse_poly_document(const json& doc) {
    try {
        if (!doc.is_object()) throw ParseError("document must be a JSON object");
        int n = doc.at("n").get<int>();
        int s = doc.at("s").get<int>();
        Signature sig;
        try {
            sig = Signature(n, s);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
        std::string basis = doc.at("basis").get<std::string>();
        std::string mode = doc.value("coeff_mode", "gaussian");

        if (basis == "ambient") {
            size_t len = (size_t)n + 1;
            if (mode == "gaussian")
                return parse_terms<AmbientPolyQ>(doc, sig, len, parse_gaussian_term);
            if (mode == "hbar_rational")
                return parse_terms<AmbientPolyH>(doc, sig, len, [](const json& t) {
                    return HRational(parse_coeff_array(t.at("num"), "num"),
                                     parse_coeff_array(t.at("den"), "den"));
                });
            throw ParseError("unknown coeff_mode: " + mode);
        }
        if (basis == "fundamental") {
            size_t len = (size_t)n;
            if (mode == "gaussian")
                return parse_terms<ReducedPolyQ>(doc, sig, len, parse_gaussian_term);
            if (mode == "hbar_rational")
                return parse_terms<ReducedPolyH>(doc, sig, len, [](const json& t) {
                    return HRational(parse_coeff_array(t.at("num"), "num"),
                                     parse_coeff_array(t.at("den"), "den"));
                });
            throw ParseError("unknown coeff_mode: " + mode);
        }
        throw ParseError("unknown basis: " + basis);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
}

namespace {

template <class Poly>
json document_common(const Poly& f, const char* basis) {
    json doc;
    doc["n"] = f.sig.n;
    doc["s"] = f.sig.s;
    doc["basis"] = basis;
    doc["terms"] = json::array();
    return doc;
}

template <class Poly>
json gaussian_document(const Poly& f, const char* basis) {
    json doc = document_common(f, basis);
    doc["coeff_mode"] = "gaussian";
    for (auto& [k, c] : f.terms) {
        json t = term_header(k.P, k.Q);
        t["re"] = rat_to_string(c.re);
        t["im"] = rat_to_string(c.im);
        doc["terms"].push_back(std::move(t));
    }
    return doc;
}

template <class Poly>
json hrational_document(const Poly& f, const char* basis) {
    json doc = document_common(f, basis);
    doc["coeff_mode"] = "hbar_rational";
    for (auto& [k, c] : f.terms) {
        json t = term_header(k.P, k.Q);
        t["num"] = coeff_array(c.num);
        t["den"] = coeff_array(c.den);
        doc["terms"].push_back(std::move(t));
    }
    return doc;
}

} // namespace

json poly_document(const AmbientPolyQ& f) { return gaussian_document(f, "ambient"); }
json poly_document(const AmbientPolyH& f) { return hrational_document(f, "ambient"); }
json poly_document(const ReducedPolyQ& f) { return gaussian_document(f, "fundamental"); }
json poly_document(const ReducedPolyH& f) { return hrational_document(f, "fundamental"); }

} // namespace starred
