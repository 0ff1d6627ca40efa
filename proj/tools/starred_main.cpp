#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>

#include "starred/analytic.hpp"
#include "starred/json_io.hpp"
#include "starred/verify.hpp"
#include "starred/wickrot.hpp"

using namespace starred;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitOmega = 3;
constexpr int kExitSignature = 4;

json read_json(const std::string& path) {
    try {
        if (path.empty() || path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open " + path);
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

/// One or two documents: from positional files, or stdin (object or array).
std::vector<PolyVariant> read_inputs(const std::vector<std::string>& files, size_t want) {
    std::vector<json> docs;
    if (!files.empty()) {
        for (auto& f : files) docs.push_back(read_json(f));
    } else {
        json j = read_json("");
        if (j.is_array())
            for (auto& d : j) docs.push_back(d);
        else
            docs.push_back(j);
    }
    if (docs.size() != want)
        throw ParseError(fmt::format("expected {} input document(s), got {}", want, docs.size()));
    std::vector<PolyVariant> out;
    for (auto& d : docs) out.push_back(parse_poly_document(d));
    return out;
}

HbarValue parse_hbar(const std::string& text) {
    if (text == "symbolic") return SymbolicHbar{};
    if (text.find('/') != std::string::npos || text.find('.') == std::string::npos) {
        try {
            return rat_from_string(text);
        } catch (const ParseError&) {
        }
    }
    try {
        size_t pos = 0;
        double d = std::stod(text, &pos);
        if (pos != text.size()) throw ParseError("bad hbar literal: " + text);
        return d;
    } catch (const std::exception&) {
        throw ParseError("bad hbar literal: " + text);
    }
}

std::vector<std::complex<double>> parse_point(const std::string& text) {
    std::vector<std::complex<double>> pt;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = text.find(';', pos);
        if (end == std::string::npos) end = text.size();
        std::string pair = text.substr(pos, end - pos);
        size_t comma = pair.find(',');
        try {
            double re = std::stod(pair.substr(0, comma));
            double im = comma == std::string::npos ? 0.0 : std::stod(pair.substr(comma + 1));
            pt.emplace_back(re, im);
        } catch (const std::exception&) {
            throw ParseError("bad --point literal: " + text);
        }
        pos = end + 1;
    }
    if (pt.empty()) throw ParseError("empty --point literal");
    return pt;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

template <class T>
const T* get_if_poly(const PolyVariant& v) {
    return std::get_if<T>(&v);
}

int cmd_star(const std::vector<std::string>& files, const std::string& hbar_text) {
    auto in = read_inputs(files, 2);
    HbarValue h = parse_hbar(hbar_text);

    if (auto* a = get_if_poly<AmbientPolyQ>(in[0])) {
        auto* b = get_if_poly<AmbientPolyQ>(in[1]);
        if (!b) throw ParseError("star: operand bases/coefficient modes differ");
        if (is_symbolic(h))
            emit(poly_document(ambient_wick_star_symbolic(*a, *b)));
        else
            emit(poly_document(ambient_wick_star_at(*a, *b, GaussianRational(hbar_exact(h)))));
        return kExitOk;
    }
    if (auto* a = get_if_poly<AmbientPolyH>(in[0])) {
        auto* b = get_if_poly<AmbientPolyH>(in[1]);
        if (!b) throw ParseError("star: operand bases/coefficient modes differ");
        if (!is_symbolic(h)) throw ParseError("star: hbar_rational operands need --hbar symbolic");
        emit(poly_document(ambient_wick_star_symbolic(*a, *b)));
        return kExitOk;
    }
    if (auto* a = get_if_poly<ReducedPolyQ>(in[0])) {
        auto* b = get_if_poly<ReducedPolyQ>(in[1]);
        if (!b) throw ParseError("star: operand bases/coefficient modes differ");
        if (is_symbolic(h)) {
            emit(poly_document(star_red_symbolic(*a, *b)));
        } else {
            if (!in_omega(h)) throw OmegaError("star: hbar outside Omega");
            emit(poly_document(star_red_at(*a, *b, hbar_exact(h))));
        }
        return kExitOk;
    }
    auto* a = get_if_poly<ReducedPolyH>(in[0]);
    auto* b = get_if_poly<ReducedPolyH>(in[1]);
    if (!a || !b) throw ParseError("star: operand bases/coefficient modes differ");
    if (!is_symbolic(h)) throw ParseError("star: hbar_rational operands need --hbar symbolic");
    emit(poly_document(star_red_symbolic(*a, *b)));
    return kExitOk;
}

template <class FnQamb, class FnQred>
int binary_pointwise_like(const std::vector<std::string>& files, FnQamb amb, FnQred red) {
    auto in = read_inputs(files, 2);
    if (auto* a = get_if_poly<AmbientPolyQ>(in[0])) {
        auto* b = get_if_poly<AmbientPolyQ>(in[1]);
        if (!b) throw ParseError("operand bases/coefficient modes differ");
        emit(poly_document(amb(*a, *b)));
        return kExitOk;
    }
    if (auto* a = get_if_poly<ReducedPolyQ>(in[0])) {
        auto* b = get_if_poly<ReducedPolyQ>(in[1]);
        if (!b) throw ParseError("operand bases/coefficient modes differ");
        emit(poly_document(red(*a, *b)));
        return kExitOk;
    }
    throw ParseError("pointwise/bracket expect gaussian-coefficient documents");
}

int cmd_wick_rotate(const std::vector<std::string>& files) {
    auto in = read_inputs(files, 1);
    std::visit(
        [](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, AmbientPolyQ> || std::is_same_v<T, AmbientPolyH>)
                emit(poly_document(rotate_ambient(f)));
            else
                emit(poly_document(rotate_reduced(f)));
        },
        in[0]);
    return kExitOk;
}

int cmd_to_fundamental(const std::vector<std::string>& files) {
    auto in = read_inputs(files, 1);
    if (auto* a = get_if_poly<AmbientPolyQ>(in[0])) {
        emit(poly_document(reduce_ambient(*a)));
        return kExitOk;
    }
    if (auto* a = get_if_poly<AmbientPolyH>(in[0])) {
        emit(poly_document(reduce_ambient(*a)));
        return kExitOk;
    }
    throw ParseError("to-fundamental expects an ambient-basis document");
}

int cmd_eval(const std::vector<std::string>& files, const std::string& point_text) {
    auto in = read_inputs(files, 1);
    auto* f = get_if_poly<ReducedPolyQ>(in[0]);
    if (!f) throw ParseError("eval expects a fundamental-basis gaussian document");
    auto pt = parse_point(point_text);
    std::complex<double> v = eval_red(*f, pt);
    json out;
    out["value"] = {v.real(), v.imag()};
    emit(out);
    return kExitOk;
}

int cmd_seminorm(const std::vector<std::string>& files, const std::string& r_text) {
    auto in = read_inputs(files, 1);
    Rat r = rat_from_string(r_text);
    json out;
    if (auto* a = get_if_poly<AmbientPolyQ>(in[0]))
        out["seminorm"] = rat_to_string(ambient_seminorm(*a, r));
    else if (auto* b = get_if_poly<ReducedPolyQ>(in[0]))
        out["seminorm"] = rat_to_string(seminorm_red(*b, r));
    else
        throw ParseError("seminorm expects a gaussian-coefficient document");
    out["r"] = rat_to_string(r);
    emit(out);
    return kExitOk;
}

int cmd_coeffs_contour(const std::vector<std::string>& files, double radius, unsigned nodes,
                       unsigned deg) {
    auto in = read_inputs(files, 1);
    auto* f = get_if_poly<ReducedPolyQ>(in[0]);
    if (!f) throw ParseError("coeffs-contour expects a fundamental-basis gaussian document");
    const Signature& sig = f->sig;
    if (radius <= 0.0) radius = 1.0 / (2.0 * std::sqrt((double)sig.n));

    unsigned maxdeg = deg;
    if (maxdeg == 0)
        for (auto& [k, c] : f->terms)
            maxdeg = std::max({maxdeg, k.P.total(), k.Q.total()});

    ChartSampler sampler = lift_sampler(*f);
    json out = json::array();
    MultiIndex cap = MultiIndex::zero(2 * (size_t)sig.n);
    for (size_t j = 0; j < cap.size(); ++j) cap[j] = maxdeg;
    detail::for_each_below(cap, [&](const MultiIndex& T) {
        std::vector<unsigned> P((size_t)sig.n), Q((size_t)sig.n);
        unsigned dp = 0, dq = 0;
        for (int j = 0; j < sig.n; ++j) {
            P[(size_t)j] = T[(size_t)j];
            Q[(size_t)j] = T[(size_t)(sig.n + j)];
            dp += P[(size_t)j];
            dq += Q[(size_t)j];
        }
        if (dp > maxdeg || dq > maxdeg) return;
        MultiIndex Pm(P), Qm(Q);
        std::complex<double> c = contour_coefficient(sampler, Pm, Qm, sig, radius, nodes);
        json t;
        t["P"] = Pm.entries();
        t["Q"] = Qm.entries();
        t["value"] = {c.real(), c.imag()};
        out.push_back(std::move(t));
    });
    emit(out);
    return kExitOk;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opts, bool as_json) {
    VerifyReport rep;
    try {
        rep = run_verify_suite(suite, opts);
    } catch (const std::invalid_argument& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitParse;
    }
    if (as_json) {
        emit(rep.to_json());
    } else {
        fmt::print("suite {}: {} cases, {} failures ({:.1f} ms)\n", rep.suite, rep.cases,
                   rep.failures.size(), rep.wall_ms);
        for (auto& n : rep.notes) fmt::print("  note: {}\n", n);
        for (auto& f : rep.failures) fmt::print("  FAIL {}: {}\n", f.case_id, f.diff);
    }
    return rep.pass() ? kExitOk : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Wick-type star products on reduced manifolds"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::string hbar_text = "symbolic";
    std::string point_text;
    std::string sem_radius = "1";
    double radius = 0.0;
    unsigned nodes = 64;
    unsigned deg = 0;
    bool as_json = false;
    VerifyOptions vopts;
    std::string suite;
    std::string vhbar;

    auto* star = app.add_subcommand("star", "star product of two documents");
    star->add_option("files", files, "input documents (or stdin array)");
    star->add_option("--hbar", hbar_text, "deformation parameter: p/q, float, or 'symbolic'");

    auto* pointwise = app.add_subcommand("pointwise", "pointwise product");
    pointwise->add_option("files", files);

    auto* bracket = app.add_subcommand("bracket", "Poisson bracket");
    bracket->add_option("files", files);

    auto* rot = app.add_subcommand("wick-rotate", "rotate into the definite signature s = 1+n");
    rot->add_option("files", files);

    auto* tofund = app.add_subcommand(
        "to-fundamental", "expand a U(1)-invariant ambient document in the fundamental basis");
    tofund->add_option("files", files);

    auto* ev = app.add_subcommand("eval", "evaluate at a chart point");
    ev->add_option("files", files);
    ev->add_option("--point", point_text, "chart point re,im[;re,im...]")->required();

    auto* sem = app.add_subcommand("seminorm", "weighted coefficient-sum seminorm");
    sem->add_option("files", files);
    sem->add_option("--radius", sem_radius, "seminorm radius r >= 1 (rational)");

    auto* cc = app.add_subcommand("coeffs-contour", "contour-integral expansion coefficients");
    cc->add_option("files", files);
    cc->add_option("--radius", radius, "circle radius in (0, 1/sqrt(n)); default 1/(2 sqrt(n))");
    cc->add_option("--nodes", nodes, "quadrature nodes per circle (>= 8)");
    cc->add_option("--deg", deg, "scan all keys up to this degree");

    std::string suite_help = "one of:";
    for (auto& n : verify_suite_names()) suite_help += " " + n;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("suite", suite, suite_help)->required();
    ver->add_option("--seed", vopts.seed, "PRNG seed");
    ver->add_option("--n", vopts.n, "restrict to complex dimension n");
    ver->add_option("--s", vopts.s, "restrict to signature s");
    ver->add_option("--hbar", vhbar, "parameter override (rational)");
    ver->add_option("--deg", vopts.deg, "degree bound");
    ver->add_option("--k", vopts.k, "falling-rising index k");
    ver->add_option("--order", vopts.order, "truncation order");
    ver->add_option("--cases", vopts.cases, "cases per configuration");
    ver->add_option("--radius", vopts.radius, "contour radius");
    ver->add_option("--nodes", vopts.nodes, "contour nodes per circle");
    ver->add_flag("--json", as_json, "emit the report as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (star->parsed()) return cmd_star(files, hbar_text);
        if (pointwise->parsed())
            return binary_pointwise_like(
                files, [](const AmbientPolyQ& a, const AmbientPolyQ& b) { return ambient_mul(a, b); },
                [](const ReducedPolyQ& a, const ReducedPolyQ& b) { return reduced_mul(a, b); });
        if (bracket->parsed())
            return binary_pointwise_like(
                files,
                [](const AmbientPolyQ& a, const AmbientPolyQ& b) { return ambient_poisson(a, b); },
                [](const ReducedPolyQ& a, const ReducedPolyQ& b) { return poisson_red(a, b); });
        if (rot->parsed()) return cmd_wick_rotate(files);
        if (tofund->parsed()) return cmd_to_fundamental(files);
        if (ev->parsed()) return cmd_eval(files, point_text);
        if (sem->parsed()) return cmd_seminorm(files, sem_radius);
        if (cc->parsed()) return cmd_coeffs_contour(files, radius, nodes, deg);
        if (ver->parsed()) {
            if (!vhbar.empty()) {
                vopts.hbar = rat_from_string(vhbar);
                vopts.has_hbar = true;
            }
            return cmd_verify(suite, vopts, as_json);
        }
    } catch (const OmegaError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitOmega;
    } catch (const SignatureMismatch& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitSignature;
    } catch (const ParseError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitParse;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitParse;
    }
    return kExitParse;
}
