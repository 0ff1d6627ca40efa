#include "starred/analytic.hpp"

#include <cmath>
#include <limits>
#include <memory>

namespace starred {

ChartSampler lift_sampler(const ReducedPolyQ& f) {
    ChartSampler s;
    s.n = f.sig.n;
    // freeze coefficients as complex doubles once
    struct Term {
        std::vector<unsigned> P, Q;
        unsigned m;
        std::complex<double> c;
    };
    auto terms = std::make_shared<std::vector<Term>>();
    for (auto& [k, c] : f.terms) {
        Term t;
        t.P = k.P.entries();
        t.Q = k.Q.entries();
        t.m = std::max(k.P.total(), k.Q.total());
        t.c = c.to_complex();
        terms->push_back(std::move(t));
    }
    std::vector<int> nus;
    for (int k = 1; k <= f.sig.n; ++k) nus.push_back(f.sig.nu(k));
    s.sample = [terms, nus](const std::vector<std::complex<double>>& u,
                            const std::vector<std::complex<double>>& v) {
        std::complex<double> base = 1.0;
        for (size_t k = 0; k < nus.size(); ++k) base += (double)nus[k] * u[k] * v[k];
        std::complex<double> acc = 0.0;
        for (auto& t : *terms) {
            std::complex<double> w = t.c;
            for (size_t k = 0; k < t.P.size(); ++k) {
                for (unsigned j = 0; j < t.P[k]; ++j) w *= u[k];
                for (unsigned j = 0; j < t.Q[k]; ++j) w *= v[k];
            }
            for (unsigned j = 0; j < t.m; ++j) w /= base;
            acc += w;
        }
        return acc;
    };
    return s;
}

std::complex<double> contour_coefficient(const ChartSampler& f, const MultiIndex& P,
                                         const MultiIndex& Q, const Signature& sig, double radius,
                                         unsigned m) {
    const int n = sig.n;
    if ((int)P.size() != n || (int)Q.size() != n)
        throw std::invalid_argument("contour_coefficient: index length mismatch");
    if (!(radius > 0.0) || !(radius < 1.0 / std::sqrt((double)n)))
        throw std::invalid_argument("contour_coefficient: radius must lie in (0, 1/sqrt(n))");
    if (m < 8) throw std::invalid_argument("contour_coefficient: at least 8 nodes per circle");

    const unsigned mexp = std::max(P.total(), Q.total());
    // roots of unity reused across the grid
    std::vector<std::complex<double>> circle(m);
    for (unsigned j = 0; j < m; ++j) {
        double th = 2.0 * M_PI * (double)j / (double)m;
        circle[j] = std::polar(radius, th);
    }

    // After parametrizing u^k = R e^{i th}, v^k = R e^{i ph}, the measure and
    // the (-4 pi^2)^{-n} prefactor collapse to the plain grid mean of
    //   fhat(u,v) (1 + sum nu u v)^{max-1} u^{-P} v^{-Q}.
    std::vector<unsigned> idx(2 * (size_t)n, 0);
    std::vector<std::complex<double>> u((size_t)n), v((size_t)n);
    std::complex<double> acc = 0.0;
    while (true) {
        for (int k = 0; k < n; ++k) {
            u[(size_t)k] = circle[idx[(size_t)k]];
            v[(size_t)k] = circle[idx[(size_t)(n + k)]];
        }
        std::complex<double> base = 1.0;
        for (int k = 0; k < n; ++k) base += (double)sig.nu(k + 1) * u[(size_t)k] * v[(size_t)k];
        std::complex<double> w = f.sample(u, v);
        for (unsigned j = 1; j < mexp; ++j) w *= base; // base^{mexp-1}
        if (mexp == 0) w /= base;
        for (int k = 0; k < n; ++k) {
            for (unsigned j = 0; j < P[(size_t)k]; ++j) w /= u[(size_t)k];
            for (unsigned j = 0; j < Q[(size_t)k]; ++j) w /= v[(size_t)k];
        }
        acc += w;

        size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == m) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    double cells = std::pow((double)m, 2.0 * n);
    return acc / cells;
}

PositivityReport positivity_probe(const ReducedPolyQ& f, const Rat& hbar,
                                  const std::vector<std::vector<std::complex<double>>>& points,
                                  double tol) {
    if (!in_omega(HbarValue(hbar))) throw OmegaError("positivity_probe: hbar outside Omega");
    (void)tol;
    ReducedPolyQ sq = star_red_at(reduced_conj(f), f, hbar);
    PositivityReport rep;
    rep.hbar = hbar;
    rep.min_real = std::numeric_limits<double>::infinity();
    for (auto& w : points) {
        std::complex<double> val = eval_red(sq, w);
        rep.values.push_back(val);
        rep.min_real = std::min(rep.min_real, val.real());
        rep.max_abs_imag = std::max(rep.max_abs_imag, std::abs(val.imag()));
    }
    if (points.empty()) rep.min_real = 0.0;
    return rep;
}

ReducedPolyH cp1_defect_sum() {
    Signature sig(1, 2);
    ReducedPolyH total(sig);
    for (size_t i = 0; i <= 1; ++i)
        for (size_t j = 0; j <= 1; ++j) {
            auto yji =
                reduced_to_fundamental(ReducedKey{MultiIndex::unit(2, j), MultiIndex::unit(2, i)}, sig);
            auto yij =
                reduced_to_fundamental(ReducedKey{MultiIndex::unit(2, i), MultiIndex::unit(2, j)}, sig);
            total = total + star_red_symbolic(yji, yij);
        }
    return total;
}

} // namespace starred
