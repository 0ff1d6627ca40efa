#pragma once

#include <functional>

#include "starred/reduced.hpp"

namespace starred {

/// Point sampler for the holomorphic extension fhat(u, v) on the extended
/// reduced manifold; u and v are independent chart points in C^n. The caller
/// guarantees holomorphy on a polydisc larger than the quadrature radius.
struct ChartSampler {
    int n = 0;
    std::function<std::complex<double>(const std::vector<std::complex<double>>&,
                                       const std::vector<std::complex<double>>&)>
        sample;
};

/// Holomorphic lift of a polynomial: fhat(u,v) = sum c u^P v^Q / (1 + sum nu_k u^k v^k)^max.
ChartSampler lift_sampler(const ReducedPolyQ& f);

/// Expansion coefficient via the contour formula
///   c_{P,Q} = (-4 pi^2)^{-n} oint...oint fhat (1 + sum nu u v)^{max(|P|,|Q|)-1}
///             / (u^{P+1} v^{Q+1}) d^n u ^ d^n v
/// on product circles of the given radius, trapezoid rule with m nodes per
/// circle (spectrally accurate for holomorphic integrands).
std::complex<double> contour_coefficient(const ChartSampler& f, const MultiIndex& P,
                                         const MultiIndex& Q, const Signature& sig, double radius,
                                         unsigned m);

struct PositivityReport {
    Rat hbar;
    std::vector<std::complex<double>> values; // delta_w(conj(f) * f) per point
    double min_real = 0.0;
    double max_abs_imag = 0.0;
    bool all_above(double tol) const { return min_real >= -tol; }
};

/// Evaluates conj(f) *_hbar f (computed exactly) at the given chart points.
/// For s = 1 and negative hbar the evaluation functionals are positive, so
/// min_real is expected to stay above -tol; for s = 1+n this fails.
PositivityReport positivity_probe(const ReducedPolyQ& f, const Rat& hbar,
                                  const std::vector<std::vector<std::complex<double>>>& points,
                                  double tol);

/// The four-term sum over basis pairs on CP^1 (n = 1, s = 2) whose value is
/// the constant 1 + hbar: the witness that kills positive functionals below
/// hbar = -1.
ReducedPolyH cp1_defect_sum();

} // namespace starred
