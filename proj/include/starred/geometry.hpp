#pragma once

#include "starred/chart.hpp"
#include "starred/reduced.hpp"

namespace starred {

// Symbolic chart geometry of M_red in the projective coordinates
// w^1..w^n, wbar^1..wbar^n (2n independent indeterminates; variable ids
// 0..n-1 are holomorphic, n..2n-1 antiholomorphic). Everything here exists
// to re-derive the reduced star product from covariant derivatives and the
// bivector H_red, independently of the structure-constant route.

/// Fully symmetric tensor of fixed rank with ChartFunction components,
/// indexed by sorted multisets of variable ids. A rank-0 tensor is a scalar.
struct SymTensor {
    unsigned rank = 0;
    size_t nvars = 0;
    std::map<std::vector<int>, ChartFunction> comp;

    SymTensor() = default;
    SymTensor(unsigned r, size_t nv) : rank(r), nvars(nv) {}

    static SymTensor scalar(size_t nv, ChartFunction f) {
        SymTensor t(0, nv);
        t.set({}, std::move(f));
        return t;
    }

    void set(std::vector<int> idx, ChartFunction f) {
        std::sort(idx.begin(), idx.end());
        if (f.is_zero())
            comp.erase(idx);
        else
            comp.insert_or_assign(std::move(idx), std::move(f));
    }
    void add(std::vector<int> idx, const ChartFunction& f) {
        if (f.is_zero()) return;
        std::sort(idx.begin(), idx.end());
        auto it = comp.find(idx);
        if (it == comp.end()) {
            comp.emplace(std::move(idx), f);
        } else {
            it->second = it->second + f;
            if (it->second.is_zero()) comp.erase(it);
        }
    }
    ChartFunction get(std::vector<int> idx) const {
        std::sort(idx.begin(), idx.end());
        auto it = comp.find(idx);
        if (it == comp.end()) return ChartFunction::zero(nvars);
        return it->second;
    }
    bool is_zero() const { return comp.empty(); }

    friend SymTensor operator+(const SymTensor& a, const SymTensor& b) {
        if (a.rank != b.rank) throw std::invalid_argument("SymTensor: rank mismatch");
        SymTensor r = a;
        for (auto& [i, f] : b.comp) r.add(i, f);
        return r;
    }
    friend SymTensor operator*(const GaussianRational& s, const SymTensor& t) {
        SymTensor r(t.rank, t.nvars);
        for (auto& [i, f] : t.comp) r.set(i, s * f);
        return r;
    }
    friend bool operator==(const SymTensor& a, const SymTensor& b) {
        if (a.rank != b.rank || a.nvars != b.nvars) return false;
        if (a.comp.size() != b.comp.size()) return false;
        for (auto& [i, f] : a.comp) {
            auto it = b.comp.find(i);
            if (it == b.comp.end() || !(f == it->second)) return false;
        }
        return true;
    }
};

/// Symmetric product with the projector normalization Sym = (1/k!) sum_sigma.
SymTensor sym_product(const SymTensor& a, const SymTensor& b);

/// Full pairing of two rank-r symmetric tensors (components in the tensor
/// power basis): sum over index tuples of products of matching components.
ChartFunction sym_pairing(const SymTensor& a, const SymTensor& b);

/// Insertion derivation iota_beta for a constant-coefficient vector beta.
SymTensor insert_vector(const SymTensor& t, const std::vector<GaussianRational>& beta);

/// g_{ab} as a bilinear form on coordinate vector fields; only mixed
/// (holomorphic x antiholomorphic) blocks are nonzero. ginv is the exact
/// matrix inverse, verified on construction.
struct Metric {
    int n = 0;
    std::vector<std::vector<ChartFunction>> g, ginv;
};

Metric metric_components(const Signature& sig);

/// Levi-Civita symbols Gamma[a][b][c] = Gamma^a_{bc}, symmetric in (b,c).
using Christoffel = std::vector<std::vector<std::vector<ChartFunction>>>;

Christoffel christoffel(const Metric& m);

/// Flat-connection symbols for the ambient diagnostic.
Christoffel flat_connection(size_t nvars);

enum class DerivType { Full, Hol, Antihol };

/// One symmetrized covariant derivative step; type selects the projection
/// applied to the new index (pure-type output requires a type-pure input).
SymTensor sym_cov_derivative(const SymTensor& t, const Christoffel& gamma, DerivType type);

/// (D^sym)^r f for a scalar chart function; desk-scale guard r <= 4.
SymTensor sym_cov_derivative_power(const ChartFunction& f, unsigned r, const Christoffel& gamma,
                                   DerivType type);

/// Mixed components H[k][l] of the (0,1) x (1,0) bivector on M_red:
/// H^{kbar l} = (1 + sum nu w wbar)(wbar^k w^l + nu_k delta_{kl}), 0-based.
std::vector<std::vector<ChartFunction>> h_red_components(const Signature& sig);

/// <F tensor G, H^r>: F rank-r antiholomorphic, G rank-r holomorphic,
/// H the mixed component matrix.
ChartFunction pair_with_h_power(const SymTensor& F, const SymTensor& G,
                                const std::vector<std::vector<ChartFunction>>& H, unsigned r);

/// Chart realization of a fundamental-basis polynomial:
/// sum c_{P,Q} w^P wbar^Q / (1 + sum nu w wbar)^{max(|P|,|Q|)}.
ChartFunction chart_of(const ReducedPolyQ& f);

/// One term of the geometric product expansion.
struct OracleTerm {
    unsigned r;
    HRational weight; // hbar^r / (r! prod_{k=0}^{r-1}(1 - k hbar))
    ChartFunction geom;
};

struct OracleProduct {
    Signature sig;
    std::vector<OracleTerm> terms;

    ChartFunction eval_at(const Rat& hbar) const;
};

/// Chart geometry bundle reused across oracle runs over one signature.
struct OracleGeometry {
    Signature sig;
    Metric metric;
    Christoffel gamma;
    std::vector<std::vector<ChartFunction>> H;
};

OracleGeometry make_oracle_geometry(const Signature& sig);

/// Derivative-series form of the reduced star product: the sum over r of
/// weight_r <(D^sym)^r f (x) (D^sym)^r g, H_red^r>, terminating because the
/// holomorphic derivative powers of polynomial charts vanish. Throws
/// OracleTruncation if r_max is reached with a non-vanishing tensor.
OracleProduct star_red_oracle(const ReducedPolyQ& f, const ReducedPolyQ& g, unsigned r_max);
OracleProduct star_red_oracle(const ReducedPolyQ& f, const ReducedPolyQ& g, unsigned r_max,
                              const OracleGeometry& geo);

/// Exact equality of the oracle expansion against a structure-constant
/// product with symbolic hbar, via a common polynomial denominator in hbar.
bool oracle_matches_star(const OracleProduct& oracle, const ReducedPolyH& star);

struct GeometryReport {
    bool inverse_ok = false;       // g * g^{-1} = 1
    bool torsion_free = false;     // Gamma symmetric in the lower indices
    bool type_pure = false;        // Gamma mixes no holomorphic/antiholomorphic types
    bool metric_compatible = false; // covariant derivative of g vanishes
    bool poisson_tensor_ok = false; // pi_red = 2 Im H_red componentwise

    bool pass() const {
        return inverse_ok && torsion_free && type_pure && metric_compatible && poisson_tensor_ok;
    }
};

GeometryReport check_geometry(const Signature& sig);

/// Flat-space cross-check pinning the pairing normalization: the derivative
/// series with Gamma = 0 and H = diag(nu) must reproduce the ambient Wick
/// structure constants with weights hbar^r / r!.
bool ambient_diagnostic(const Signature& sig, unsigned maxdeg);

} // namespace starred
