#include "starred/geometry.hpp"

#include <functional>

namespace starred {

namespace {

/// Multiset split enumeration for the symmetric product:
/// (T v U)_tau = sum over sub-multisets sigma of size p of
/// [prod_x C(m_tau(x), m_sigma(x)) / C(p+q, p)] T_sigma U_{tau\sigma}.
void enumerate_splits(const std::vector<int>& tau, unsigned p,
                      const std::function<void(const std::vector<int>&, const std::vector<int>&, const Int&)>& fn) {
    // distinct values with multiplicities
    std::vector<std::pair<int, unsigned>> vals;
    for (int x : tau) {
        if (!vals.empty() && vals.back().first == x)
            vals.back().second++;
        else
            vals.emplace_back(x, 1);
    }
    std::vector<unsigned> take(vals.size(), 0);
    std::function<void(size_t, unsigned)> rec = [&](size_t i, unsigned left) {
        if (i == vals.size()) {
            if (left != 0) return;
            std::vector<int> sigma, rest;
            Int ways = 1;
            for (size_t j = 0; j < vals.size(); ++j) {
                ways *= binom(vals[j].second, take[j]);
                for (unsigned t = 0; t < take[j]; ++t) sigma.push_back(vals[j].first);
                for (unsigned t = take[j]; t < vals[j].second; ++t) rest.push_back(vals[j].first);
            }
            fn(sigma, rest, ways);
            return;
        }
        for (unsigned t = 0; t <= std::min(left, vals[i].second); ++t) {
            take[i] = t;
            rec(i + 1, left - t);
        }
    };
    rec(0, p);
}

/// All sorted multisets of size r over {0..m-1}.
void enumerate_multisets(unsigned r, int m, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(r, 0);
    std::function<void(unsigned, int)> rec = [&](unsigned pos, int lo) {
        if (pos == r) {
            fn(idx);
            return;
        }
        for (int v = lo; v < m; ++v) {
            idx[pos] = v;
            rec(pos + 1, v);
        }
    };
    if (r == 0)
        fn(idx);
    else
        rec(0, 0);
}

ChartFunction cf_const(size_t nv, long v) { return ChartFunction::constant(nv, GaussianRational(v)); }

/// Number of distinct tuples realizing a sorted multiset.
Int orbit_size(const std::vector<int>& idx) {
    Int perms = factorial((unsigned long)idx.size());
    size_t i = 0;
    while (i < idx.size()) {
        size_t j = i;
        while (j < idx.size() && idx[j] == idx[i]) ++j;
        perms /= factorial((unsigned long)(j - i));
        i = j;
    }
    return perms;
}

} // namespace

SymTensor sym_product(const SymTensor& a, const SymTensor& b) {
    if (a.nvars != b.nvars) throw std::invalid_argument("sym_product: variable mismatch");
    SymTensor r(a.rank + b.rank, a.nvars);
    const Int denom = binom(a.rank + b.rank, a.rank);
    // target multisets reachable from the two supports
    std::map<std::vector<int>, bool> targets;
    for (auto& [ia, fa] : a.comp)
        for (auto& [ib, fb] : b.comp) {
            std::vector<int> tau = ia;
            tau.insert(tau.end(), ib.begin(), ib.end());
            std::sort(tau.begin(), tau.end());
            targets.emplace(std::move(tau), true);
        }
    for (auto& [tau, mark] : targets) {
        (void)mark;
        ChartFunction acc = ChartFunction::zero(a.nvars);
        enumerate_splits(tau, a.rank,
                         [&](const std::vector<int>& sig, const std::vector<int>& rest, const Int& ways) {
                             auto ita = a.comp.find(sig);
                             if (ita == a.comp.end()) return;
                             auto itb = b.comp.find(rest);
                             if (itb == b.comp.end()) return;
                             acc = acc +
                                   GaussianRational(Rat(ways) / Rat(denom)) * (ita->second * itb->second);
                         });
        r.set(tau, std::move(acc));
    }
    return r;
}

ChartFunction sym_pairing(const SymTensor& a, const SymTensor& b) {
    if (a.rank != b.rank) throw std::invalid_argument("sym_pairing: rank mismatch");
    ChartFunction acc = ChartFunction::zero(a.nvars);
    for (auto& [i, f] : a.comp) {
        auto it = b.comp.find(i);
        if (it == b.comp.end()) continue;
        acc = acc + GaussianRational(Rat(orbit_size(i))) * (f * it->second);
    }
    return acc;
}

SymTensor insert_vector(const SymTensor& t, const std::vector<GaussianRational>& beta) {
    if (t.rank == 0) throw std::invalid_argument("insert_vector: rank-0 tensor");
    if (beta.size() != t.nvars) throw std::invalid_argument("insert_vector: dimension mismatch");
    SymTensor r(t.rank - 1, t.nvars);
    // (iota_beta T)_c = rank * sum_a beta^a T_{a u c}; distributing over the
    // support, each distinct value of a component's multiset feeds one target
    for (auto& [i, f] : t.comp) {
        for (size_t pos = 0; pos < i.size(); ++pos) {
            if (pos > 0 && i[pos] == i[pos - 1]) continue;
            if (beta[(size_t)i[pos]].is_zero()) continue;
            std::vector<int> rest;
            rest.reserve(i.size() - 1);
            for (size_t j = 0; j < i.size(); ++j)
                if (j != pos) rest.push_back(i[j]);
            GaussianRational w = GaussianRational(Rat((long)t.rank)) * beta[(size_t)i[pos]];
            r.add(rest, w * f);
        }
    }
    return r;
}

Metric metric_components(const Signature& sig) {
    if (sig.n > 3) throw std::invalid_argument("metric_components: n <= 3 at desk scale");
    const int n = sig.n;
    const size_t nv = 2 * (size_t)n;

    MPoly one = MPoly::constant(nv, GaussianRational(1));
    MPoly S(nv);
    for (int k = 0; k < n; ++k) {
        MPoly wk = MPoly::variable(nv, (size_t)k);
        MPoly wbk = MPoly::variable(nv, (size_t)(n + k));
        S = S + GaussianRational(Rat(sig.nu(k + 1))) * (wk * wbk);
    }
    MPoly denom = one + S;

    Metric m;
    m.n = n;
    m.g.assign(nv, std::vector<ChartFunction>(nv, ChartFunction::zero(nv)));
    // g(d_wbar^a, d_w^b) = 1/2 [ nu_a delta_ab / (1+S) - nu_a nu_b wbar^b w^a / (1+S)^2 ]
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ChartFunction first = ChartFunction::zero(nv);
            if (a == b)
                first = ChartFunction(MPoly::constant(nv, GaussianRational(Rat(sig.nu(a + 1), 2))),
                                      {{denom, 1}});
            MPoly cross = MPoly::variable(nv, (size_t)(n + b)) * MPoly::variable(nv, (size_t)a);
            ChartFunction second(
                GaussianRational(Rat(-sig.nu(a + 1) * sig.nu(b + 1), 2)) * cross, {{denom, 2}});
            ChartFunction val = first + second;
            m.g[(size_t)(n + a)][(size_t)b] = val;
            m.g[(size_t)b][(size_t)(n + a)] = val;
        }

    // Gauss-Jordan inverse over the rational function field
    std::vector<std::vector<ChartFunction>> A = m.g;
    std::vector<std::vector<ChartFunction>> I(nv, std::vector<ChartFunction>(nv, ChartFunction::zero(nv)));
    for (size_t i = 0; i < nv; ++i) I[i][i] = cf_const(nv, 1);
    for (size_t col = 0; col < nv; ++col) {
        size_t piv = col;
        while (piv < nv && A[piv][col].is_zero()) ++piv;
        if (piv == nv) throw std::domain_error("metric_components: singular metric");
        std::swap(A[piv], A[col]);
        std::swap(I[piv], I[col]);
        ChartFunction inv = cf_const(nv, 1) / A[col][col];
        for (size_t j = 0; j < nv; ++j) {
            A[col][j] = A[col][j] * inv;
            I[col][j] = I[col][j] * inv;
        }
        for (size_t row = 0; row < nv; ++row) {
            if (row == col || A[row][col].is_zero()) continue;
            ChartFunction f = A[row][col];
            for (size_t j = 0; j < nv; ++j) {
                A[row][j] = A[row][j] - f * A[col][j];
                I[row][j] = I[row][j] - f * I[col][j];
            }
        }
    }
    m.ginv = std::move(I);
    return m;
}

Christoffel christoffel(const Metric& m) {
    const size_t nv = 2 * (size_t)m.n;
    Christoffel G(nv, std::vector<std::vector<ChartFunction>>(nv, std::vector<ChartFunction>(nv, ChartFunction::zero(nv))));
    for (size_t a = 0; a < nv; ++a)
        for (size_t b = 0; b < nv; ++b)
            for (size_t c = b; c < nv; ++c) {
                ChartFunction acc = ChartFunction::zero(nv);
                for (size_t d = 0; d < nv; ++d) {
                    if (m.ginv[a][d].is_zero()) continue;
                    ChartFunction bracket =
                        m.g[d][c].derivative(b) + m.g[b][d].derivative(c) - m.g[b][c].derivative(d);
                    acc = acc + m.ginv[a][d] * bracket;
                }
                acc = GaussianRational(make_rat(1, 2)) * acc;
                G[a][b][c] = acc;
                G[a][c][b] = std::move(acc);
            }
    return G;
}

Christoffel flat_connection(size_t nvars) {
    return Christoffel(nvars, std::vector<std::vector<ChartFunction>>(
                                  nvars, std::vector<ChartFunction>(nvars, ChartFunction::zero(nvars))));
}

SymTensor sym_cov_derivative(const SymTensor& t, const Christoffel& gamma, DerivType type) {
    const size_t nv = t.nvars;
    const size_t half = nv / 2;
    SymTensor r(t.rank + 1, nv);

    auto keep_index = [&](int v) {
        if (type == DerivType::Full) return true;
        if (type == DerivType::Hol) return (size_t)v < half;
        return (size_t)v >= half;
    };

    // nabla_a T at multiset b: d_a T_b - sum_j Gamma^d_{a b_j} T_{b[j->d]};
    // positions holding the same value contribute identical terms, hence the
    // multiplicity weight
    auto nabla = [&](size_t a, const std::vector<int>& b) {
        ChartFunction acc = t.get(b).derivative(a);
        for (size_t j = 0; j < b.size(); ++j) {
            if (j > 0 && b[j] == b[j - 1]) continue;
            long mult = (long)std::count(b.begin(), b.end(), b[j]);
            for (size_t d = 0; d < nv; ++d) {
                const ChartFunction& gcomp = gamma[d][a][(size_t)b[j]];
                if (gcomp.is_zero()) continue;
                std::vector<int> swapped = b;
                swapped[j] = (int)d;
                ChartFunction tc = t.get(swapped);
                if (tc.is_zero()) continue;
                acc = acc - GaussianRational(Rat(mult)) * (gcomp * tc);
            }
        }
        return acc;
    };

    // (D^sym T)_{c_1..c_{k+1}} = 1/(k+1) sum_i (nabla_{c_i} T)_{c \ i}
    enumerate_multisets(t.rank + 1, (int)nv, [&](const std::vector<int>& c) {
        for (int v : c)
            if (!keep_index(v)) return;
        ChartFunction acc = ChartFunction::zero(nv);
        for (size_t i = 0; i < c.size(); ++i) {
            if (i > 0 && c[i] == c[i - 1]) continue;
            long mult = (long)std::count(c.begin(), c.end(), c[i]);
            std::vector<int> rest;
            rest.reserve(c.size() - 1);
            for (size_t j = 0; j < c.size(); ++j)
                if (j != i) rest.push_back(c[j]);
            acc = acc + GaussianRational(Rat(mult)) * nabla((size_t)c[i], rest);
        }
        acc = GaussianRational(Rat(1, (long)(t.rank + 1))) * acc;
        if (!acc.is_zero()) r.set(c, std::move(acc));
    });
    return r;
}

SymTensor sym_cov_derivative_power(const ChartFunction& f, unsigned r, const Christoffel& gamma,
                                   DerivType type) {
    if (r > 4) throw std::invalid_argument("sym_cov_derivative_power: r <= 4 at desk scale");
    SymTensor t = SymTensor::scalar(f.nvars(), f);
    for (unsigned j = 0; j < r; ++j) t = sym_cov_derivative(t, gamma, type);
    return t;
}

std::vector<std::vector<ChartFunction>> h_red_components(const Signature& sig) {
    if (sig.n > 3) throw std::invalid_argument("h_red_components: n <= 3 at desk scale");
    const int n = sig.n;
    const size_t nv = 2 * (size_t)n;
    MPoly S(nv);
    for (int k = 0; k < n; ++k)
        S = S + GaussianRational(Rat(sig.nu(k + 1))) *
                    (MPoly::variable(nv, (size_t)k) * MPoly::variable(nv, (size_t)(n + k)));
    MPoly pref = MPoly::constant(nv, GaussianRational(1)) + S;

    std::vector<std::vector<ChartFunction>> H(
        (size_t)n, std::vector<ChartFunction>((size_t)n, ChartFunction::zero(nv)));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            MPoly inner = MPoly::variable(nv, (size_t)(n + k)) * MPoly::variable(nv, (size_t)l);
            if (k == l) inner = inner + MPoly::constant(nv, GaussianRational(Rat(sig.nu(k + 1))));
            H[(size_t)k][(size_t)l] = ChartFunction(pref * inner);
        }
    return H;
}

ChartFunction pair_with_h_power(const SymTensor& F, const SymTensor& G,
                                const std::vector<std::vector<ChartFunction>>& H, unsigned r) {
    if (F.rank != r || G.rank != r) throw std::invalid_argument("pair_with_h_power: rank mismatch");
    const int n = (int)H.size();
    const size_t nv = F.nvars;
    ChartFunction acc = ChartFunction::zero(nv);
    if (r == 0) {
        return F.get({}) * G.get({});
    }
    // tuple sums over k-vec (antiholomorphic side) and l-vec (holomorphic side)
    std::vector<int> kv(r, 0), lv(r, 0);
    std::function<void(unsigned)> loop_l = [&](unsigned pos) {
        if (pos == r) {
            std::vector<int> fi(r), gi(r);
            for (unsigned j = 0; j < r; ++j) {
                fi[j] = n + kv[j];
                gi[j] = lv[j];
            }
            ChartFunction fF = F.get(fi);
            if (fF.is_zero()) return;
            ChartFunction fG = G.get(gi);
            if (fG.is_zero()) return;
            ChartFunction w = fF * fG;
            for (unsigned j = 0; j < r; ++j) w = w * H[(size_t)kv[j]][(size_t)lv[j]];
            acc = acc + w;
            return;
        }
        for (lv[pos] = 0; lv[pos] < n; ++lv[pos]) loop_l(pos + 1);
    };
    std::function<void(unsigned)> loop_k = [&](unsigned pos) {
        if (pos == r) {
            loop_l(0);
            return;
        }
        for (kv[pos] = 0; kv[pos] < n; ++kv[pos]) loop_k(pos + 1);
    };
    loop_k(0);
    return acc;
}

ChartFunction chart_of(const ReducedPolyQ& f) {
    const int n = f.sig.n;
    const size_t nv = 2 * (size_t)n;
    MPoly S(nv);
    for (int k = 0; k < n; ++k)
        S = S + GaussianRational(Rat(f.sig.nu(k + 1))) *
                    (MPoly::variable(nv, (size_t)k) * MPoly::variable(nv, (size_t)(n + k)));
    MPoly denom = MPoly::constant(nv, GaussianRational(1)) + S;

    ChartFunction acc = ChartFunction::zero(nv);
    for (auto& [k, c] : f.terms) {
        MPoly::Exps e(nv, 0);
        for (int j = 0; j < n; ++j) {
            e[(size_t)j] = k.P[(size_t)j];
            e[(size_t)(n + j)] = k.Q[(size_t)j];
        }
        MPoly mono(nv);
        mono.add(e, c);
        unsigned m = std::max(k.P.total(), k.Q.total());
        acc = acc + ChartFunction(std::move(mono), {{denom, (int)m}});
    }
    return acc;
}

ChartFunction OracleProduct::eval_at(const Rat& hbar) const {
    const size_t nv = 2 * (size_t)sig.n;
    ChartFunction acc = ChartFunction::zero(nv);
    GaussianRational h{hbar};
    for (auto& t : terms) acc = acc + t.weight.eval(h) * t.geom;
    return acc;
}

OracleGeometry make_oracle_geometry(const Signature& sig) {
    OracleGeometry geo;
    geo.sig = sig;
    geo.metric = metric_components(sig);
    geo.gamma = christoffel(geo.metric);
    geo.H = h_red_components(sig);
    return geo;
}

OracleProduct star_red_oracle(const ReducedPolyQ& f, const ReducedPolyQ& g, unsigned r_max) {
    ReducedPolyQ::require_same_sig(f, g);
    return star_red_oracle(f, g, r_max, make_oracle_geometry(f.sig));
}

OracleProduct star_red_oracle(const ReducedPolyQ& f, const ReducedPolyQ& g, unsigned r_max,
                              const OracleGeometry& geo) {
    ReducedPolyQ::require_same_sig(f, g);
    const Signature& sig = f.sig;
    if (sig != geo.sig) throw SignatureMismatch("star_red_oracle: geometry for a different signature");

    const Christoffel& gamma = geo.gamma;
    const auto& H = geo.H;

    ChartFunction cf = chart_of(f), cg = chart_of(g);

    OracleProduct out;
    out.sig = sig;
    SymTensor F = SymTensor::scalar(cf.nvars(), cf);
    SymTensor G = SymTensor::scalar(cg.nvars(), cg);
    for (unsigned r = 0;; ++r) {
        if (F.is_zero() || G.is_zero()) break;
        if (r > r_max)
            throw OracleTruncation("star_red_oracle: derivative series still non-zero at r_max");
        ChartFunction term = pair_with_h_power(F, G, H, r);
        if (!term.is_zero()) {
            // weight hbar^r / (r! prod_{k=0}^{r-1} (1-k hbar))
            HPoly num = HPoly::one();
            for (unsigned k = 0; k < r; ++k) num = num * HPoly::hbar();
            HRational w(GaussianRational(Rat(1) / Rat(factorial(r))));
            w = w * HRational(std::move(num), falling_scaled(r));
            out.terms.push_back(OracleTerm{r, std::move(w), std::move(term)});
        }
        F = sym_cov_derivative(F, gamma, DerivType::Antihol);
        G = sym_cov_derivative(G, gamma, DerivType::Hol);
    }
    return out;
}

bool oracle_matches_star(const OracleProduct& oracle, const ReducedPolyH& star) {
    if (oracle.sig != star.sig) return false;
    const size_t nv = 2 * (size_t)oracle.sig.n;

    // common polynomial denominator in hbar across both sides
    HPoly D = HPoly::one();
    for (auto& t : oracle.terms) D = HPoly::lcm(D, t.weight.den);
    for (auto& [k, c] : star.terms) D = HPoly::lcm(D, c.den);

    auto accumulate = [&](std::map<unsigned, ChartFunction>& acc, const HRational& coeff,
                          const ChartFunction& geom) {
        HRational scaled = coeff * HRational(D);
        if (!scaled.den.is_one())
            throw std::logic_error("oracle_matches_star: denominator not cleared");
        for (size_t j = 0; j < scaled.num.c.size(); ++j) {
            if (scaled.num.c[j].is_zero()) continue;
            auto [it, inserted] = acc.try_emplace((unsigned)j, ChartFunction::zero(nv));
            it->second = it->second + scaled.num.c[j] * geom;
        }
    };

    std::map<unsigned, ChartFunction> lhs, rhs;
    for (auto& t : oracle.terms) accumulate(lhs, t.weight, t.geom);
    for (auto& [k, c] : star.terms) {
        ReducedPolyQ mono = ReducedPolyQ::monomial(star.sig, k.P, k.Q);
        accumulate(rhs, c, chart_of(mono));
    }

    for (auto& [j, cfl] : lhs) {
        auto it = rhs.find(j);
        if (it == rhs.end()) {
            if (!cfl.is_zero()) return false;
        } else if (!(cfl == it->second)) {
            return false;
        }
    }
    for (auto& [j, cfr] : rhs)
        if (lhs.find(j) == lhs.end() && !cfr.is_zero()) return false;
    return true;
}

GeometryReport check_geometry(const Signature& sig) {
    GeometryReport rep;
    const int n = sig.n;
    const size_t nv = 2 * (size_t)n;
    const size_t half = nv / 2;

    Metric m = metric_components(sig);
    // inverse verified: g * ginv = id
    rep.inverse_ok = true;
    for (size_t i = 0; i < nv && rep.inverse_ok; ++i)
        for (size_t j = 0; j < nv && rep.inverse_ok; ++j) {
            ChartFunction acc = ChartFunction::zero(nv);
            for (size_t k = 0; k < nv; ++k) acc = acc + m.g[i][k] * m.ginv[k][j];
            ChartFunction want = (i == j) ? cf_const(nv, 1) : ChartFunction::zero(nv);
            if (!(acc == want)) rep.inverse_ok = false;
        }

    Christoffel G = christoffel(m);
    rep.torsion_free = true;
    rep.type_pure = true;
    for (size_t a = 0; a < nv; ++a)
        for (size_t b = 0; b < nv; ++b)
            for (size_t c = 0; c < nv; ++c) {
                if (!(G[a][b][c] == G[a][c][b])) rep.torsion_free = false;
                if (!G[a][b][c].is_zero()) {
                    bool ah = a < half, bh = b < half, ch = c < half;
                    if (!(ah == bh && bh == ch)) rep.type_pure = false;
                }
            }

    rep.metric_compatible = true;
    for (size_t a = 0; a < nv && rep.metric_compatible; ++a)
        for (size_t b = 0; b < nv && rep.metric_compatible; ++b)
            for (size_t c = b; c < nv; ++c) {
                ChartFunction cov = m.g[b][c].derivative(a);
                for (size_t d = 0; d < nv; ++d) {
                    if (!G[d][a][b].is_zero()) cov = cov - G[d][a][b] * m.g[d][c];
                    if (!G[d][a][c].is_zero()) cov = cov - G[d][a][c] * m.g[b][d];
                }
                if (!cov.is_zero()) {
                    rep.metric_compatible = false;
                    break;
                }
            }

    // pi_red = 2 Im(H_red): mixed block of the Poisson tensor from its own
    // displayed formula equals H/i, and H is Hermitian under barswap-transpose
    auto H = h_red_components(sig);
    MPoly S(nv);
    for (int k = 0; k < n; ++k)
        S = S + GaussianRational(Rat(sig.nu(k + 1))) *
                    (MPoly::variable(nv, (size_t)k) * MPoly::variable(nv, (size_t)(n + k)));
    MPoly pref = MPoly::constant(nv, GaussianRational(1)) + S;
    rep.poisson_tensor_ok = true;
    const GaussianRational minus_i(Rat(0), Rat(-1));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            // tensor-basis component of -2i (1+S)(.. wedge ..) on d_wbar^k (x) d_w^l
            MPoly inner = MPoly::variable(nv, (size_t)(n + k)) * MPoly::variable(nv, (size_t)l);
            if (k == l) inner = inner + MPoly::constant(nv, GaussianRational(Rat(sig.nu(k + 1))));
            ChartFunction pi_kl = ChartFunction(minus_i * (pref * inner));
            if (!(pi_kl == minus_i * H[(size_t)k][(size_t)l])) rep.poisson_tensor_ok = false;
            // Hermitian: barswap of H[l][k] equals H[k][l]
            if (!(H[(size_t)l][(size_t)k].barswap(half) == H[(size_t)k][(size_t)l]))
                rep.poisson_tensor_ok = false;
        }
    return rep;
}

bool ambient_diagnostic(const Signature& sig, unsigned maxdeg) {
    // flat space, variables z^0..z^n, zbar^0..zbar^n
    const int N = sig.n + 1;
    const size_t nv = 2 * (size_t)N;
    Christoffel flat = flat_connection(nv);
    std::vector<std::vector<ChartFunction>> H(
        (size_t)N, std::vector<ChartFunction>((size_t)N, ChartFunction::zero(nv)));
    for (int k = 0; k < N; ++k)
        H[(size_t)k][(size_t)k] = ChartFunction::constant(nv, GaussianRational(Rat(sig.nu(k))));

    auto ambient_chart = [&](const AmbientKey& k, const GaussianRational& c) {
        MPoly::Exps e(nv, 0);
        for (int j = 0; j < N; ++j) {
            e[(size_t)j] = k.P[(size_t)j];
            e[(size_t)(N + j)] = k.Q[(size_t)j];
        }
        MPoly p(nv);
        p.add(e, c);
        return ChartFunction(std::move(p));
    };

    // all monomial pairs of total degree <= maxdeg
    std::vector<AmbientKey> keys;
    MultiIndex cap = MultiIndex::zero(2 * (size_t)N);
    for (size_t j = 0; j < 2 * (size_t)N; ++j) cap[j] = maxdeg;
    detail::for_each_below(cap, [&](const MultiIndex& T) {
        if (T.total() > maxdeg) return;
        std::vector<unsigned> P((size_t)N), Q((size_t)N);
        for (int j = 0; j < N; ++j) {
            P[(size_t)j] = T[(size_t)j];
            Q[(size_t)j] = T[(size_t)(N + j)];
        }
        keys.push_back(AmbientKey{MultiIndex(P), MultiIndex(Q)});
    });

    for (auto& ka : keys)
        for (auto& kb : keys) {
            auto fa = AmbientPolyQ::monomial(sig, ka.P, ka.Q);
            auto fb = AmbientPolyQ::monomial(sig, kb.P, kb.Q);
            auto star = ambient_wick_star_symbolic(fa, fb);

            // oracle side: sum_r hbar^r/r! <(D^sym)^r f (x) (D^sym)^r g, H^r>
            SymTensor F = SymTensor::scalar(nv, ambient_chart(ka, GaussianRational(1)));
            SymTensor G = SymTensor::scalar(nv, ambient_chart(kb, GaussianRational(1)));
            std::map<unsigned, ChartFunction> lhs;
            for (unsigned r = 0;; ++r) {
                if (F.is_zero() || G.is_zero()) break;
                if (r > 2 * maxdeg + 2) return false;
                ChartFunction term = pair_with_h_power(F, G, H, r);
                if (!term.is_zero())
                    lhs.emplace(r, GaussianRational(Rat(1) / Rat(factorial(r))) * term);
                F = sym_cov_derivative(F, flat, DerivType::Antihol);
                G = sym_cov_derivative(G, flat, DerivType::Hol);
            }

            std::map<unsigned, ChartFunction> rhs;
            for (auto& [k, c] : star.terms) {
                if (!c.den.is_one()) return false;
                for (size_t j = 0; j < c.num.c.size(); ++j) {
                    if (c.num.c[j].is_zero()) continue;
                    auto [it, ins] = rhs.try_emplace((unsigned)j, ChartFunction::zero(nv));
                    it->second = it->second + ambient_chart(k, c.num.c[j]);
                }
            }

            if (lhs.size() != rhs.size()) return false;
            for (auto& [r, cf] : lhs) {
                auto it = rhs.find(r);
                if (it == rhs.end() || !(cf == it->second)) return false;
            }
        }
    return true;
}

} // namespace starred
