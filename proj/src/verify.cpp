#include "starred/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "starred/analytic.hpp"
#include "starred/geometry.hpp"
#include "starred/json_io.hpp"
#include "starred/series.hpp"
#include "starred/wickrot.hpp"

namespace starred {

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["cases"] = cases;
    j["failures"] = nlohmann::json::array();
    for (auto& f : failures) j["failures"].push_back({{"case", f.case_id}, {"diff", f.diff}});
    if (!notes.empty()) j["notes"] = notes;
    j["wall_time_ms"] = wall_ms;
    j["pass"] = pass();
    return j;
}

namespace {

MultiIndex rand_multiindex(std::mt19937_64& rng, size_t len, unsigned maxtotal) {
    MultiIndex m = MultiIndex::zero(len);
    unsigned d = rng() % (maxtotal + 1);
    for (unsigned j = 0; j < d; ++j) m[rng() % len]++;
    return m;
}

GaussianRational rand_coeff(std::mt19937_64& rng) {
    return GaussianRational(make_rat((long)(rng() % 9) - 4, 1 + (long)(rng() % 3)),
                            make_rat((long)(rng() % 5) - 2, 1 + (long)(rng() % 2)));
}

ReducedPolyQ rand_fund_monomial(std::mt19937_64& rng, const Signature& sig, unsigned maxdeg) {
    return ReducedPolyQ::monomial(sig, rand_multiindex(rng, (size_t)sig.n, maxdeg),
                                  rand_multiindex(rng, (size_t)sig.n, maxdeg));
}

ReducedPolyQ rand_reduced_poly(std::mt19937_64& rng, const Signature& sig, unsigned maxdeg,
                               int nterms) {
    ReducedPolyQ f(sig);
    for (int t = 0; t < nterms; ++t) f = f + rand_coeff(rng) * rand_fund_monomial(rng, sig, maxdeg);
    return f;
}

std::string describe(const ReducedPolyQ& f) { return poly_document(f).dump(); }
std::string describe(const ReducedPolyH& f) { return poly_document(f).dump(); }

std::string cfg_tag(const Signature& sig) {
    return "n=" + std::to_string(sig.n) + " s=" + std::to_string(sig.s);
}

std::vector<Signature> pick_signatures(const VerifyOptions& opts,
                                       const std::vector<Signature>& defaults) {
    if (opts.n == 0 && opts.s == 0) return defaults;
    std::vector<Signature> out;
    if (opts.n != 0 && opts.s != 0) {
        out.emplace_back(opts.n, opts.s);
    } else if (opts.n != 0) {
        for (int s = 1; s <= opts.n + 1; ++s) out.emplace_back(opts.n, s);
    } else {
        for (auto& d : defaults)
            if (d.s == opts.s) out.push_back(d);
        if (out.empty()) throw std::invalid_argument("no default configuration with requested s");
    }
    return out;
}

// all fundamental keys with |P| + |Q| <= deg
std::vector<FundamentalKey> fundamental_keys_up_to(const Signature& sig, unsigned deg) {
    std::vector<FundamentalKey> keys;
    size_t n = (size_t)sig.n;
    MultiIndex cap = MultiIndex::zero(2 * n);
    for (size_t j = 0; j < 2 * n; ++j) cap[j] = deg;
    detail::for_each_below(cap, [&](const MultiIndex& T) {
        if (T.total() > deg) return;
        std::vector<unsigned> P(n), Q(n);
        for (size_t j = 0; j < n; ++j) {
            P[j] = T[j];
            Q[j] = T[n + j];
        }
        keys.push_back(FundamentalKey{MultiIndex(std::move(P)), MultiIndex(std::move(Q))});
    });
    return keys;
}

// all fundamental keys with |P| <= deg and |Q| <= deg
std::vector<FundamentalKey> fundamental_keys_per_side(const Signature& sig, unsigned deg) {
    std::vector<FundamentalKey> keys;
    size_t n = (size_t)sig.n;
    MultiIndex cap = MultiIndex::zero(2 * n);
    for (size_t j = 0; j < 2 * n; ++j) cap[j] = deg;
    detail::for_each_below(cap, [&](const MultiIndex& T) {
        std::vector<unsigned> P(n), Q(n);
        unsigned dp = 0, dq = 0;
        for (size_t j = 0; j < n; ++j) {
            P[j] = T[j];
            Q[j] = T[n + j];
            dp += P[j];
            dq += Q[j];
        }
        if (dp > deg || dq > deg) return;
        keys.push_back(FundamentalKey{MultiIndex(std::move(P)), MultiIndex(std::move(Q))});
    });
    return keys;
}

// ---------------------------------------------------------------- suites

VerifyReport suite_associativity(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "associativity";
    unsigned deg = opts.deg ? opts.deg : 3;
    int cases = opts.cases ? opts.cases : 200;

    auto sigs = pick_signatures(opts, {Signature(1, 1), Signature(1, 2), Signature(2, 1),
                                       Signature(2, 2), Signature(2, 3)});
    for (const Signature& sig : sigs) {
        std::mt19937_64 rng(opts.seed ^ (uint64_t)(sig.n * 131 + sig.s));
        for (int it = 0; it < cases; ++it) {
            auto f = rand_fund_monomial(rng, sig, deg);
            auto g = rand_fund_monomial(rng, sig, deg);
            auto h = rand_fund_monomial(rng, sig, deg);
            auto lhs = star_red_symbolic(star_red_symbolic(f, g), to_hrational(h));
            auto rhs = star_red_symbolic(to_hrational(f), star_red_symbolic(g, h));
            ++rep.cases;
            if (!(lhs == rhs))
                rep.failures.push_back({"sym " + cfg_tag(sig) + " #" + std::to_string(it),
                                        describe(f) + " | " + describe(g) + " | " + describe(h)});
        }
    }

    if (opts.n == 0 && opts.s == 0) {
        // exact rational parameters, n = 3, degree <= 4
        const std::vector<Rat> hs{make_rat(-1), make_rat(-1, 2), make_rat(2, 3), make_rat(3, 2)};
        for (int s : {1, 2, 4}) {
            Signature sig(3, s);
            std::mt19937_64 rng(opts.seed ^ (uint64_t)(977 + s));
            for (const Rat& h : hs) {
                for (int it = 0; it < 40; ++it) {
                    auto f = rand_fund_monomial(rng, sig, 4);
                    auto g = rand_fund_monomial(rng, sig, 4);
                    auto k = rand_fund_monomial(rng, sig, 4);
                    auto lhs = star_red_at(star_red_at(f, g, h), k, h);
                    auto rhs = star_red_at(f, star_red_at(g, k, h), h);
                    ++rep.cases;
                    if (!(lhs == rhs))
                        rep.failures.push_back(
                            {"num " + cfg_tag(sig) + " hbar=" + rat_to_string(h) + " #" +
                                 std::to_string(it),
                             describe(f) + " | " + describe(g) + " | " + describe(k)});
                }
            }
        }
    }
    return rep;
}

VerifyReport suite_hermitian(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "hermitian";
    unsigned deg = opts.deg ? opts.deg : 2;
    int cases = opts.cases ? opts.cases : 40;
    auto sigs = pick_signatures(opts, {Signature(1, 1), Signature(1, 2), Signature(2, 2),
                                       Signature(2, 3)});
    for (const Signature& sig : sigs) {
        std::mt19937_64 rng(opts.seed ^ (uint64_t)(sig.n * 37 + sig.s));
        auto one = ReducedPolyQ::one(sig);
        for (int it = 0; it < cases; ++it) {
            auto f = rand_reduced_poly(rng, sig, deg, 3);
            auto g = rand_reduced_poly(rng, sig, deg, 3);
            ++rep.cases;
            bool unit_ok = star_red_symbolic(one, f) == to_hrational(f) &&
                           star_red_symbolic(f, one) == to_hrational(f);
            bool herm_ok = reduced_conj(star_red_symbolic(f, g)) ==
                           star_red_symbolic(reduced_conj(g), reduced_conj(f));
            if (!unit_ok || !herm_ok)
                rep.failures.push_back({"red " + cfg_tag(sig) + " #" + std::to_string(it),
                                        std::string(unit_ok ? "" : "unit ") +
                                            (herm_ok ? "" : "hermitian ") + describe(f)});
        }
    }
    return rep;
}

VerifyReport suite_jacobi(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "jacobi";
    unsigned deg = opts.deg ? opts.deg : 2;
    int cases = opts.cases ? opts.cases : 25;
    auto sigs = pick_signatures(opts, {Signature(1, 1), Signature(1, 2), Signature(2, 2)});
    for (const Signature& sig : sigs) {
        std::mt19937_64 rng(opts.seed ^ (uint64_t)(sig.n * 59 + sig.s));
        for (int it = 0; it < cases; ++it) {
            auto a = rand_reduced_poly(rng, sig, deg, 2);
            auto b = rand_reduced_poly(rng, sig, deg, 2);
            auto c = rand_reduced_poly(rng, sig, deg, 2);
            ++rep.cases;
            bool anti = poisson_red(a, b) == -poisson_red(b, a);
            bool leib = poisson_red(a, reduced_mul(b, c)) ==
                        reduced_mul(b, poisson_red(a, c)) + reduced_mul(poisson_red(a, b), c);
            auto jac = poisson_red(a, poisson_red(b, c)) + poisson_red(b, poisson_red(c, a)) +
                       poisson_red(c, poisson_red(a, b));
            if (!anti || !leib || !jac.is_zero())
                rep.failures.push_back({"red " + cfg_tag(sig) + " #" + std::to_string(it),
                                        std::string(anti ? "" : "antisym ") +
                                            (leib ? "" : "leibniz ") +
                                            (jac.is_zero() ? "" : "jacobi")});
        }
    }
    return rep;
}

VerifyReport suite_limits(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "limits";
    unsigned deg = opts.deg ? opts.deg : 3;
    int cases = opts.cases ? opts.cases : 25; // per configuration; 4 x 25 = 100 pairs
    auto sigs = pick_signatures(opts, {Signature(1, 1), Signature(1, 2), Signature(2, 2),
                                       Signature(2, 3)});
    for (const Signature& sig : sigs) {
        std::mt19937_64 rng(opts.seed ^ (uint64_t)(sig.n * 17 + sig.s));
        for (int it = 0; it < cases; ++it) {
            auto f = rand_reduced_poly(rng, sig, deg, 2);
            auto g = rand_reduced_poly(rng, sig, deg, 2);
            auto res = limit_commutator(f, g);
            ++rep.cases;
            if (!res.pointwise_matches_mul || !res.bracket_matches_poisson)
                rep.failures.push_back(
                    {cfg_tag(sig) + " #" + std::to_string(it),
                     std::string(res.pointwise_matches_mul ? "" : "pointwise ") +
                         (res.bracket_matches_poisson ? "" : "bracket ") + describe(f) + " | " +
                         describe(g)});
        }
    }
    return rep;
}

VerifyReport suite_wick_iso(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "wick-iso";
    unsigned deg = opts.deg ? opts.deg : 2;
    int cases = opts.cases ? opts.cases : 100;
    auto sigs = pick_signatures(opts, {Signature(1, 1), Signature(1, 2), Signature(2, 1),
                                       Signature(2, 2), Signature(2, 3)});
    for (const Signature& sig : sigs) {
        std::mt19937_64 rng(opts.seed ^ (uint64_t)(sig.n * 211 + sig.s));
        for (int it = 0; it < cases; ++it) {
            auto f = rand_reduced_poly(rng, sig, deg, 2);
            auto g = rand_reduced_poly(rng, sig, deg, 2);
            ++rep.cases;
            bool ok_mul =
                rotate_reduced(reduced_mul(f, g)) == reduced_mul(rotate_reduced(f), rotate_reduced(g));
            bool ok_poi = rotate_reduced(poisson_red(f, g)) ==
                          poisson_red(rotate_reduced(f), rotate_reduced(g));
            bool ok_star = rotate_reduced(star_red_symbolic(f, g)) ==
                           star_red_symbolic(rotate_reduced(f), rotate_reduced(g));
            if (!ok_mul || !ok_poi || !ok_star)
                rep.failures.push_back({cfg_tag(sig) + " #" + std::to_string(it),
                                        std::string(ok_mul ? "" : "mul ") + (ok_poi ? "" : "poisson ") +
                                            (ok_star ? "" : "star ") + describe(f) + " | " +
                                            describe(g)});
        }
        // conjugation witness for indefinite signatures
        if (sig.s < sig.n + 1) {
            ++rep.cases;
            auto w = ReducedPolyQ::monomial(sig, MultiIndex::unit((size_t)sig.n, (size_t)sig.n - 1),
                                            MultiIndex::zero((size_t)sig.n));
            auto lhs = rotate_reduced(reduced_conj(w));
            auto rhs = reduced_conj(rotate_reduced(w));
            if (!(lhs == -rhs) || lhs == rhs)
                rep.failures.push_back({"star-compat witness " + cfg_tag(sig), describe(w)});
            else
                rep.notes.push_back("witness " + cfg_tag(sig) +
                                    ": rotate(conj Z[e_n,0]) = -conj(rotate Z[e_n,0]) != conj(...)");
        }
    }
    return rep;
}

VerifyReport suite_oracle(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "oracle";
    unsigned deg = opts.deg ? opts.deg : 2;

    // pairing convention self-test (constant symmetric tensors, ranks <= 3)
    {
        std::mt19937_64 rng(opts.seed ^ 0x5eed);
        const size_t nv = 4;
        for (unsigned k = 1; k <= 3; ++k) {
            for (int it = 0; it < 4; ++it) {
                std::vector<SymTensor> omegas, alphas;
                auto rand_one_form = [&]() {
                    SymTensor t(1, nv);
                    for (size_t a = 0; a < nv; ++a)
                        t.set({(int)a}, ChartFunction::constant(
                                            nv, GaussianRational(make_rat((long)(rng() % 7) - 3))));
                    return t;
                };
                for (unsigned j = 0; j < k; ++j) omegas.push_back(rand_one_form());
                for (unsigned j = 0; j + 1 < k; ++j) alphas.push_back(rand_one_form());
                std::vector<GaussianRational> beta;
                for (size_t a = 0; a < nv; ++a)
                    beta.push_back(GaussianRational(make_rat((long)(rng() % 5) - 2)));

                SymTensor omega = omegas[0];
                for (unsigned j = 1; j < k; ++j) omega = sym_product(omega, omegas[j]);
                SymTensor beta_t(1, nv);
                for (size_t a = 0; a < nv; ++a)
                    beta_t.set({(int)a}, ChartFunction::constant(nv, beta[a]));
                SymTensor rhs_arg = beta_t;
                SymTensor alpha_only;
                if (!alphas.empty()) {
                    alpha_only = alphas[0];
                    for (size_t j = 1; j < alphas.size(); ++j)
                        alpha_only = sym_product(alpha_only, alphas[j]);
                    rhs_arg = sym_product(beta_t, alpha_only);
                }
                ChartFunction rhs = sym_pairing(omega, rhs_arg);
                SymTensor ins = insert_vector(omega, beta);
                ChartFunction lhs = alphas.empty() ? ins.get({}) : sym_pairing(ins, alpha_only);
                lhs = GaussianRational(Rat(1, (long)k)) * lhs;
                ++rep.cases;
                if (!(lhs == rhs))
                    rep.failures.push_back(
                        {"pairing-convention k=" + std::to_string(k) + " #" + std::to_string(it), ""});
            }
        }
    }

    // ambient flat-space diagnostic at degree <= 3 pins the H^r normalization
    for (Signature sig : {Signature(1, 1), Signature(1, 2)}) {
        ++rep.cases;
        if (!ambient_diagnostic(sig, 3))
            rep.failures.push_back({"ambient-diagnostic " + cfg_tag(sig), ""});
    }

    // geometry checks
    std::vector<Signature> geo_sigs;
    for (int n : {1, 2})
        for (int s = 1; s <= n + 1; ++s) geo_sigs.emplace_back(n, s);
    for (const Signature& sig : pick_signatures(opts, geo_sigs)) {
        GeometryReport g = check_geometry(sig);
        ++rep.cases;
        if (!g.pass())
            rep.failures.push_back(
                {"geometry " + cfg_tag(sig),
                 std::string(g.inverse_ok ? "" : "inverse ") + (g.torsion_free ? "" : "torsion ") +
                     (g.type_pure ? "" : "type ") + (g.metric_compatible ? "" : "compat ") +
                     (g.poisson_tensor_ok ? "" : "poisson")});
    }

    // oracle equivalence over all fundamental-monomial pairs of total degree <= deg
    std::vector<Signature> eq_sigs;
    if (opts.n != 0 || opts.s != 0) {
        eq_sigs = pick_signatures(opts, {});
    } else {
        eq_sigs = {Signature(1, 1), Signature(1, 2), Signature(2, 1), Signature(2, 3)};
    }
    for (const Signature& sig : eq_sigs) {
        OracleGeometry geo = make_oracle_geometry(sig);
        // per-side bound: covers every reading of "monomials of degree <= deg"
        auto keys = fundamental_keys_per_side(sig, deg);

        // per-key derivative towers, reused across pairs
        struct Tower {
            std::vector<SymTensor> anti, hol;
        };
        std::vector<Tower> towers(keys.size());
        for (size_t i = 0; i < keys.size(); ++i) {
            ChartFunction cf = chart_of(ReducedPolyQ::monomial(sig, keys[i].P, keys[i].Q));
            SymTensor A = SymTensor::scalar(cf.nvars(), cf);
            SymTensor H = A;
            while (!A.is_zero()) {
                towers[i].anti.push_back(A);
                A = sym_cov_derivative(A, geo.gamma, DerivType::Antihol);
            }
            while (!H.is_zero()) {
                towers[i].hol.push_back(H);
                H = sym_cov_derivative(H, geo.gamma, DerivType::Hol);
            }
        }

        for (size_t i = 0; i < keys.size(); ++i)
            for (size_t j = 0; j < keys.size(); ++j) {
                auto f = ReducedPolyQ::monomial(sig, keys[i].P, keys[i].Q);
                auto g = ReducedPolyQ::monomial(sig, keys[j].P, keys[j].Q);
                OracleProduct o;
                o.sig = sig;
                unsigned rmax = (unsigned)std::min(towers[i].anti.size(), towers[j].hol.size());
                for (unsigned r = 0; r < rmax; ++r) {
                    ChartFunction term =
                        pair_with_h_power(towers[i].anti[r], towers[j].hol[r], geo.H, r);
                    if (term.is_zero()) continue;
                    HPoly hnum = HPoly::one();
                    for (unsigned t = 0; t < r; ++t) hnum = hnum * HPoly::hbar();
                    HRational w(GaussianRational(Rat(1) / Rat(factorial(r))));
                    w = w * HRational(std::move(hnum), falling_scaled(r));
                    o.terms.push_back(OracleTerm{r, std::move(w), std::move(term)});
                }
                ++rep.cases;
                if (!oracle_matches_star(o, star_red_symbolic(f, g)))
                    rep.failures.push_back(
                        {"equivalence " + cfg_tag(sig), describe(f) + " | " + describe(g)});
            }

        // first-order antisymmetrized term reproduces the Poisson bracket
        std::mt19937_64 rng(opts.seed ^ (uint64_t)(sig.n * 7 + sig.s));
        for (int it = 0; it < 4; ++it) {
            auto f = rand_fund_monomial(rng, sig, deg);
            auto g = rand_fund_monomial(rng, sig, deg);
            auto Da_f = sym_cov_derivative_power(chart_of(f), 1, geo.gamma, DerivType::Antihol);
            auto Dh_f = sym_cov_derivative_power(chart_of(f), 1, geo.gamma, DerivType::Hol);
            auto Da_g = sym_cov_derivative_power(chart_of(g), 1, geo.gamma, DerivType::Antihol);
            auto Dh_g = sym_cov_derivative_power(chart_of(g), 1, geo.gamma, DerivType::Hol);
            ChartFunction fg = pair_with_h_power(Da_f, Dh_g, geo.H, 1);
            ChartFunction gf = pair_with_h_power(Da_g, Dh_f, geo.H, 1);
            ChartFunction lhs = GaussianRational(Rat(0), Rat(-1)) * (fg - gf);
            ++rep.cases;
            if (!(lhs == chart_of(poisson_red(f, g))))
                rep.failures.push_back(
                    {"poisson-term " + cfg_tag(sig), describe(f) + " | " + describe(g)});
        }

        // end-to-end public entry point on one pair per signature
        if (!keys.empty()) {
            auto f = ReducedPolyQ::monomial(sig, keys.back().P, keys.back().Q);
            ++rep.cases;
            if (!oracle_matches_star(star_red_oracle(f, f, 2 * deg + 2, geo),
                                     star_red_symbolic(f, f)))
                rep.failures.push_back({"entrypoint " + cfg_tag(sig), describe(f)});
        }
    }
    return rep;
}

VerifyReport suite_positivity(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "positivity";
    const double tol = 1e-12;

    bool witness_requested = opts.s == 2 && opts.n == 1;
    bool default_run = opts.n == 0 && opts.s == 0;

    if (default_run || !witness_requested) {
        // evaluation functionals are positive for s = 1 and negative hbar
        std::vector<int> ns = opts.n ? std::vector<int>{opts.n} : std::vector<int>{1, 2};
        std::vector<Rat> hs;
        if (opts.has_hbar)
            hs.push_back(opts.hbar);
        else
            hs = {make_rat(-1, 4), make_rat(-1, 2), make_rat(-1)};
        int cases = opts.cases ? opts.cases : 50;
        for (int n : ns) {
            Signature sig(n, 1);
            std::mt19937_64 rng(opts.seed ^ (uint64_t)(n * 313));
            for (const Rat& h : hs) {
                for (int it = 0; it < cases; ++it) {
                    auto f = rand_reduced_poly(rng, sig, 3, 3);
                    std::vector<std::vector<std::complex<double>>> pts;
                    for (int p = 0; p < 100; ++p) {
                        std::vector<std::complex<double>> w((size_t)n);
                        for (int k = 0; k < n; ++k) {
                            double re = ((double)(rng() % 2000) / 1000.0 - 1.0);
                            double im = ((double)(rng() % 2000) / 1000.0 - 1.0);
                            w[(size_t)k] = std::complex<double>(re, im) * (0.7 / std::sqrt((double)n));
                        }
                        pts.push_back(std::move(w));
                    }
                    auto r = positivity_probe(f, h, pts, tol);
                    ++rep.cases;
                    if (!r.all_above(tol))
                        rep.failures.push_back({"s=1 n=" + std::to_string(n) +
                                                    " hbar=" + rat_to_string(h) + " #" +
                                                    std::to_string(it),
                                                "min " + std::to_string(r.min_real)});
                }
            }
        }
    }

    if (default_run || witness_requested) {
        // CP^1 witness: the four-term sum is the constant 1 + hbar (exactly),
        // negative below hbar = -1, so no positive functionals survive there
        Rat h = opts.has_hbar ? opts.hbar : make_rat(-2);
        ReducedPolyH defect = cp1_defect_sum();
        ReducedPolyH want(Signature(1, 2));
        want.add(FundamentalKey{MultiIndex::zero(1), MultiIndex::zero(1)},
                 HRational(HPoly(std::vector<GaussianRational>{GaussianRational(1),
                                                               GaussianRational(1)})));
        ++rep.cases;
        if (!(defect == want)) {
            rep.failures.push_back({"cp1-defect-sum", describe(defect)});
        } else {
            GaussianRational value = GaussianRational(Rat(1) + h);
            rep.notes.push_back("witness n=1 s=2: sum_{i,j} Y[Ej,Ei]*Y[Ei,Ej] = 1+hbar; at hbar=" +
                                rat_to_string(h) + " the value is " + rat_to_string(value.re) +
                                (value.re < 0 ? " (expected-negative)" : ""));
        }
    }
    return rep;
}

VerifyReport suite_falling_rising(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "falling-rising";
    unsigned order = opts.order ? opts.order : 12;
    std::vector<unsigned> ks;
    if (opts.k)
        ks.push_back(opts.k);
    else
        for (unsigned k = 1; k <= 6; ++k) ks.push_back(k);
    for (unsigned k : ks) {
        ++rep.cases;
        if (!verify_falling_rising(k, order))
            rep.failures.push_back(
                {"k=" + std::to_string(k) + " order=" + std::to_string(order), ""});
    }
    return rep;
}

VerifyReport suite_continuity(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "continuity";
    unsigned deg = opts.deg ? opts.deg : 4; // total degree bound |P|+|Q| per factor
    std::vector<int> ns = opts.n ? std::vector<int>{opts.n} : std::vector<int>{1, 2};

    // 10 sample points of K = [-1, -1/4]
    std::vector<Rat> hsamples;
    for (int i = 0; i < 10; ++i) {
        // -1 + i * (3/4)/9
        Rat h = Rat(-1) + Rat(i) * make_rat(3, 4) / Rat(9);
        hsamples.push_back(h);
    }

    for (int n : ns) {
        for (int s = 1; s <= n + 1; ++s) {
            if (opts.s && s != opts.s) continue;
            Signature sig(n, s);
            size_t len = (size_t)n + 1;

            // U(1)-invariant monomial keys with |P| = |Q| and |P|+|Q| <= deg
            std::vector<AmbientKey> keys;
            MultiIndex cap = MultiIndex::zero(2 * len);
            for (size_t j = 0; j < 2 * len; ++j) cap[j] = deg / 2;
            detail::for_each_below(cap, [&](const MultiIndex& T) {
                std::vector<unsigned> P(len), Q(len);
                unsigned dp = 0, dq = 0;
                for (size_t j = 0; j < len; ++j) {
                    P[j] = T[j];
                    Q[j] = T[len + j];
                    dp += P[j];
                    dq += Q[j];
                }
                if (dp != dq || dp + dq > deg) return;
                keys.push_back(AmbientKey{MultiIndex(std::move(P)), MultiIndex(std::move(Q))});
            });

            // empirical constants: c^m m! <= |falling(1/h, m)| <= C^m m! over samples
            unsigned M = deg; // largest |Q|+|R| that can occur
            double c = std::numeric_limits<double>::infinity(), C = 1.0;
            for (const Rat& h : hsamples) {
                for (unsigned m = 1; m <= M; ++m) {
                    Rat a = falling_scaled(m).eval(GaussianRational(h)).re; // A(m) at h
                    Rat habs = abs(h);
                    Rat hpow(1);
                    for (unsigned t = 0; t < m; ++t) hpow *= habs;
                    double val = std::abs(to_double(a / hpow)) / to_double(Rat(factorial(m)));
                    double root = std::pow(val, 1.0 / (double)m);
                    c = std::min(c, root);
                    C = std::max(C, root);
                }
            }

            for (int sr : {1, 2}) {
                for (const Rat& h : hsamples) {
                    GaussianRational hg{h};
                    for (auto& ka : keys)
                        for (auto& kb : keys) {
                            auto fa = AmbientPolyQ::monomial(sig, ka.P, ka.Q);
                            auto fb = AmbientPolyQ::monomial(sig, kb.P, kb.Q);
                            auto prod = ambient_star_reduced_weights_at(fa, fb, hg);
                            Rat snorm = ambient_seminorm(prod, Rat(sr));
                            unsigned total = ka.P.total() + ka.Q.total() + kb.P.total() +
                                             kb.Q.total();
                            double bound = std::pow(8.0 * C * (double)sr / c, (double)total);
                            ++rep.cases;
                            if (to_double(snorm) > bound)
                                rep.failures.push_back(
                                    {"bound " + cfg_tag(sig) + " r=" + std::to_string(sr) +
                                         " hbar=" + rat_to_string(h),
                                     "seminorm " + std::to_string(to_double(snorm)) + " > " +
                                         std::to_string(bound)});
                        }
                }
            }
        }
    }
    return rep;
}

VerifyReport suite_contour(const VerifyOptions& opts) {
    VerifyReport rep;
    rep.suite = "contour";
    int n = opts.n ? opts.n : 1;
    Signature sig(n, opts.s ? opts.s : (n == 1 ? 1 : 1));
    unsigned deg = opts.deg ? opts.deg : (n == 1 ? 4 : 2);
    unsigned m = opts.nodes ? opts.nodes : 64;
    double radius = opts.radius > 0 ? opts.radius : 1.0 / (2.0 * std::sqrt((double)n));
    int cases = opts.cases ? opts.cases : 20;
    double tol = opts.tol > 0 ? opts.tol : 1e-8;

    std::mt19937_64 rng(opts.seed ^ 0xc0ff);
    for (int it = 0; it < cases; ++it) {
        ReducedPolyQ f(sig);
        for (int t = 0; t < 4; ++t) {
            // keys with |P|, |Q| <= deg
            MultiIndex P = rand_multiindex(rng, (size_t)n, deg);
            MultiIndex Q = rand_multiindex(rng, (size_t)n, deg);
            f = f + rand_coeff(rng) * ReducedPolyQ::monomial(sig, P, Q);
        }
        ChartSampler sampler = lift_sampler(f);

        // scan every key up to the degree bound; absent keys must come out near zero
        bool ok = true;
        std::string what;
        auto keys = fundamental_keys_up_to(sig, 2 * deg);
        for (auto& k : keys) {
            if (k.P.total() > deg || k.Q.total() > deg) continue;
            std::complex<double> got = contour_coefficient(sampler, k.P, k.Q, sig, radius, m);
            std::complex<double> want = 0.0;
            auto itf = f.terms.find(k);
            if (itf != f.terms.end()) want = itf->second.to_complex();
            if (std::abs(got - want) > tol) {
                ok = false;
                what = "coefficient off by " + std::to_string(std::abs(got - want));
                break;
            }
        }
        ++rep.cases;
        if (!ok) rep.failures.push_back({"roundtrip #" + std::to_string(it), what});
    }

    // spectral decay of the quadrature error in the node count
    {
        ReducedPolyQ f(sig);
        std::vector<unsigned> e((size_t)n, 0);
        e[0] = 1;
        f = f + GaussianRational(1) * ReducedPolyQ::monomial(sig, MultiIndex(e), MultiIndex(e));
        ChartSampler sampler = lift_sampler(f);
        double prev = std::numeric_limits<double>::infinity();
        bool decay = true;
        for (unsigned nodes : {16u, 32u, 64u}) {
            std::complex<double> got =
                contour_coefficient(sampler, MultiIndex(e), MultiIndex(e), sig, radius, nodes);
            double err = std::abs(got - std::complex<double>(1.0, 0.0));
            if (!(err <= prev * 0.51 || err < 1e-12)) decay = false; // at least geometric
            prev = err;
        }
        ++rep.cases;
        if (!decay) rep.failures.push_back({"spectral-decay", ""});
    }
    return rep;
}

} // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names{
        "associativity", "hermitian", "jacobi",         "limits",     "wick-iso",
        "oracle",        "positivity", "falling-rising", "continuity", "contour"};
    return names;
}

VerifyReport run_verify_suite(const std::string& name, const VerifyOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    VerifyReport rep;
    if (name == "associativity")
        rep = suite_associativity(opts);
    else if (name == "hermitian")
        rep = suite_hermitian(opts);
    else if (name == "jacobi")
        rep = suite_jacobi(opts);
    else if (name == "limits")
        rep = suite_limits(opts);
    else if (name == "wick-iso")
        rep = suite_wick_iso(opts);
    else if (name == "oracle")
        rep = suite_oracle(opts);
    else if (name == "positivity")
        rep = suite_positivity(opts);
    else if (name == "falling-rising")
        rep = suite_falling_rising(opts);
    else if (name == "continuity")
        rep = suite_continuity(opts);
    else if (name == "contour")
        rep = suite_contour(opts);
    else
        throw std::invalid_argument("unknown verify suite: " + name);
    auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

} // namespace starred
