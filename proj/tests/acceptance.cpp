// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include <fmt/format.h>

#include <chrono>

#include "starred/analytic.hpp"
#include "starred/geometry.hpp"
#include "starred/verify.hpp"

using namespace starred;

namespace {

int g_failures = 0;
int g_index = 0;

template <class Fn>
void criterion(const std::string& name, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        detail = fn(ok);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    ++g_index;
    if (!ok) ++g_failures;
    fmt::print("[{:>2}] {:<58} {}   ({:.2f} s){}\n", g_index, name, ok ? "PASS" : "FAIL", secs,
               detail.empty() ? "" : "  " + detail);
    std::fflush(stdout);
}

std::string suite_result(const VerifyReport& rep, bool& ok) {
    ok = rep.pass();
    std::string d = fmt::format("{} cases", rep.cases);
    if (!rep.failures.empty()) {
        d += fmt::format(", {} failures, first: {} {}", rep.failures.size(),
                         rep.failures[0].case_id, rep.failures[0].diff);
    }
    return d;
}

} // namespace

int main() {
    VerifyOptions base; // fixed default seed: reproducible

    criterion("CP^1 defect identity equals 1 + hbar exactly", [&](bool& ok) {
        ReducedPolyH defect = cp1_defect_sum();
        ReducedPolyH want(Signature(1, 2));
        want.add(FundamentalKey{MultiIndex::zero(1), MultiIndex::zero(1)},
                 HRational(HPoly(std::vector<GaussianRational>{GaussianRational(1),
                                                               GaussianRational(1)})));
        ok = defect == want;
        return std::string();
    });

    criterion("structure-constant associativity (symbolic and numeric)", [&](bool& ok) {
        return suite_result(run_verify_suite("associativity", base), ok);
    });

    criterion("oracle equivalence: derivative series vs structure constants", [&](bool& ok) {
        return suite_result(run_verify_suite("oracle", base), ok);
    });

    criterion("classical limits recover product and Poisson bracket", [&](bool& ok) {
        return suite_result(run_verify_suite("limits", base), ok);
    });

    criterion("Wick rotation intertwines all products; *-failure witnessed", [&](bool& ok) {
        return suite_result(run_verify_suite("wick-iso", base), ok);
    });

    criterion("falling/rising factorial identity, k = 1..6, order 12", [&](bool& ok) {
        return suite_result(run_verify_suite("falling-rising", base), ok);
    });

    criterion("chart geometry checks (metric, connection, Poisson tensor)", [&](bool& ok) {
        bool all = true;
        int count = 0;
        for (int n : {1, 2})
            for (int s = 1; s <= n + 1; ++s) {
                GeometryReport rep = check_geometry(Signature(n, s));
                all = all && rep.pass();
                ++count;
            }
        ok = all;
        return fmt::format("{} configurations", count);
    });

    criterion("continuity estimate on K = [-1, -1/4], r in {1,2}", [&](bool& ok) {
        return suite_result(run_verify_suite("continuity", base), ok);
    });

    criterion("contour coefficients recovered within 1e-8 at m = 64", [&](bool& ok) {
        return suite_result(run_verify_suite("contour", base), ok);
    });

    criterion("positivity for s=1 and the s=2 negative witness", [&](bool& ok) {
        return suite_result(run_verify_suite("positivity", base), ok);
    });

    fmt::print("{} of {} criteria passed\n", g_index - g_failures, g_index);
    return g_failures == 0 ? 0 : 1;
}
