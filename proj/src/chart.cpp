#include "starred/chart.hpp"

#include <algorithm>

namespace starred {

namespace {

void require_same_vars(const MPoly& a, const MPoly& b) {
    if (a.nvars != b.nvars) throw std::invalid_argument("MPoly: variable count mismatch");
}

} // namespace

MPoly MPoly::operator-() const {
    MPoly r(*this);
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    require_same_vars(a, b);
    MPoly r = a;
    for (auto& [e, c] : b.terms) r.add(e, c);
    return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
    require_same_vars(a, b);
    MPoly r(a.nvars);
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            MPoly::Exps e(a.nvars);
            for (size_t k = 0; k < a.nvars; ++k) e[k] = ea[k] + eb[k];
            r.add(e, ca * cb);
        }
    return r;
}

MPoly operator*(const GaussianRational& s, const MPoly& p) {
    MPoly r(p.nvars);
    if (s.is_zero()) return r;
    for (auto& [e, c] : p.terms) r.terms.emplace(e, s * c);
    return r;
}

bool operator<(const MPoly& a, const MPoly& b) {
    if (a.nvars != b.nvars) return a.nvars < b.nvars;
    auto ia = a.terms.begin(), ib = b.terms.begin();
    for (; ia != a.terms.end() && ib != b.terms.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (!(ia->second == ib->second)) {
            if (ia->second.re != ib->second.re) return ia->second.re < ib->second.re;
            return ia->second.im < ib->second.im;
        }
    }
    return ib != b.terms.end();
}

MPoly MPoly::pow(unsigned k) const {
    MPoly r = MPoly::constant(nvars, GaussianRational(1));
    MPoly base = *this;
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

MPoly MPoly::derivative(size_t v) const {
    MPoly r(nvars);
    for (auto& [e, c] : terms) {
        if (e[v] == 0) continue;
        Exps d = e;
        d[v]--;
        r.add(d, GaussianRational(Rat((long)e[v])) * c);
    }
    return r;
}

MPoly MPoly::barswap(size_t half) const {
    if (nvars != 2 * half) throw std::invalid_argument("barswap: variable count not 2*half");
    MPoly r(nvars);
    for (auto& [e, c] : terms) {
        Exps s(nvars);
        for (size_t k = 0; k < half; ++k) {
            s[k] = e[half + k];
            s[half + k] = e[k];
        }
        r.add(s, c.conj());
    }
    return r;
}

GaussianRational MPoly::eval(const std::vector<GaussianRational>& x) const {
    if (x.size() != nvars) throw std::invalid_argument("MPoly::eval: point dimension mismatch");
    GaussianRational acc(0);
    for (auto& [e, c] : terms) {
        GaussianRational t = c;
        for (size_t k = 0; k < nvars; ++k)
            for (unsigned j = 0; j < e[k]; ++j) t *= x[k];
        acc += t;
    }
    return acc;
}

std::complex<double> MPoly::eval(const std::vector<std::complex<double>>& x) const {
    if (x.size() != nvars) throw std::invalid_argument("MPoly::eval: point dimension mismatch");
    std::complex<double> acc = 0.0;
    for (auto& [e, c] : terms) {
        std::complex<double> t = c.to_complex();
        for (size_t k = 0; k < nvars; ++k)
            for (unsigned j = 0; j < e[k]; ++j) t *= x[k];
        acc += t;
    }
    return acc;
}

std::optional<MPoly> MPoly::try_divide(const MPoly& a, const MPoly& b) {
    require_same_vars(a, b);
    if (b.is_zero()) throw std::domain_error("MPoly: division by zero");
    MPoly q(a.nvars), r = a;
    const auto ltb = *b.terms.rbegin();
    GaussianRational ltb_inv = ltb.second.inv();
    while (!r.is_zero()) {
        const auto ltr = *r.terms.rbegin();
        Exps e(a.nvars);
        for (size_t k = 0; k < a.nvars; ++k) {
            if (ltr.first[k] < ltb.first[k]) return std::nullopt;
            e[k] = ltr.first[k] - ltb.first[k];
        }
        GaussianRational c = ltr.second * ltb_inv;
        q.add(e, c);
        // r -= (c x^e) * b
        for (auto& [eb, cb] : b.terms) {
            Exps f(a.nvars);
            for (size_t k = 0; k < a.nvars; ++k) f[k] = e[k] + eb[k];
            r.add(f, -(c * cb));
        }
    }
    return q;
}

MPoly ChartFunction::den_expanded() const {
    MPoly d = MPoly::constant(num.nvars, GaussianRational(1));
    for (auto& [f, m] : den) d = d * f.pow((unsigned)m);
    return d;
}

void ChartFunction::normalize() {
    if (num.is_zero()) {
        den.clear();
        return;
    }
    std::vector<std::pair<MPoly, int>> kept;
    for (auto& [f, m] : den) {
        if (m <= 0) continue;
        if (f.is_zero()) throw std::domain_error("ChartFunction: zero denominator factor");
        MPoly g = f;
        int mult = m;
        if (g.is_constant()) {
            GaussianRational inv = g.constant_value().inv();
            for (int j = 0; j < mult; ++j) num = inv * num;
            continue;
        }
        // pivot rule: lex-least monomial of each factor gets coefficient 1
        GaussianRational piv = g.terms.begin()->second;
        if (!(piv == GaussianRational(1))) {
            GaussianRational pinv = piv.inv();
            g = pinv * g;
            for (int j = 0; j < mult; ++j) num = pinv * num;
        }
        // cancel against the numerator
        while (mult > 0) {
            auto q = MPoly::try_divide(num, g);
            if (!q) break;
            num = std::move(*q);
            --mult;
        }
        if (mult > 0) kept.emplace_back(std::move(g), mult);
    }
    std::sort(kept.begin(), kept.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    den.clear();
    for (auto& fm : kept) { // merge equal factors
        if (!den.empty() && den.back().first == fm.first)
            den.back().second += fm.second;
        else
            den.push_back(std::move(fm));
    }
}

ChartFunction operator+(const ChartFunction& a, const ChartFunction& b) {
    if (a.num.nvars != b.num.nvars) throw std::invalid_argument("ChartFunction: variable mismatch");
    // union denominator with per-factor max multiplicity
    std::vector<std::pair<MPoly, int>> uni = a.den;
    for (auto& fm : b.den) {
        const MPoly& f = fm.first;
        auto it = std::find_if(uni.begin(), uni.end(), [&](const auto& p) { return p.first == f; });
        if (it == uni.end())
            uni.emplace_back(f, fm.second);
        else
            it->second = std::max(it->second, fm.second);
    }
    auto cofactor = [&](const std::vector<std::pair<MPoly, int>>& own) {
        MPoly c = MPoly::constant(a.num.nvars, GaussianRational(1));
        for (auto& [f, m] : uni) {
            int have = 0;
            for (auto& [g, mg] : own)
                if (g == f) have = mg;
            if (m > have) c = c * f.pow((unsigned)(m - have));
        }
        return c;
    };
    MPoly n = a.num * cofactor(a.den) + b.num * cofactor(b.den);
    return ChartFunction(std::move(n), std::move(uni));
}

ChartFunction operator*(const ChartFunction& a, const ChartFunction& b) {
    if (a.num.nvars != b.num.nvars) throw std::invalid_argument("ChartFunction: variable mismatch");
    std::vector<std::pair<MPoly, int>> d = a.den;
    for (auto& fm : b.den) {
        const MPoly& f = fm.first;
        auto it = std::find_if(d.begin(), d.end(), [&](const auto& p) { return p.first == f; });
        if (it == d.end())
            d.emplace_back(f, fm.second);
        else
            it->second += fm.second;
    }
    return ChartFunction(a.num * b.num, std::move(d));
}

ChartFunction operator*(const GaussianRational& s, const ChartFunction& f) {
    ChartFunction r = f;
    r.num = s * r.num;
    if (r.num.is_zero()) r.den.clear();
    return r;
}

ChartFunction operator/(const ChartFunction& a, const ChartFunction& b) {
    if (b.is_zero()) throw std::domain_error("ChartFunction: division by zero");
    MPoly n = a.num * b.den_expanded();
    std::vector<std::pair<MPoly, int>> d = a.den;
    d.emplace_back(b.num, 1);
    return ChartFunction(std::move(n), std::move(d));
}

bool operator==(const ChartFunction& a, const ChartFunction& b) {
    if (a.num.nvars != b.num.nvars) return false;
    return a.num * b.den_expanded() == b.num * a.den_expanded();
}

ChartFunction ChartFunction::derivative(size_t v) const {
    // d(p / prod f_i^{m_i}) = [p' prod f_i - p sum_i m_i f_i' prod_{j!=i} f_j] / prod f_i^{m_i+1}
    MPoly common = MPoly::constant(num.nvars, GaussianRational(1));
    for (auto& [f, m] : den) common = common * f;
    MPoly n = num.derivative(v) * common;
    for (size_t i = 0; i < den.size(); ++i) {
        MPoly rest = MPoly::constant(num.nvars, GaussianRational(1));
        for (size_t j = 0; j < den.size(); ++j)
            if (j != i) rest = rest * den[j].first;
        n = n - GaussianRational(Rat((long)den[i].second)) * (num * den[i].first.derivative(v) * rest);
    }
    std::vector<std::pair<MPoly, int>> d = den;
    for (auto& [f, m] : d) ++m;
    return ChartFunction(std::move(n), std::move(d));
}

ChartFunction ChartFunction::barswap(size_t half) const {
    std::vector<std::pair<MPoly, int>> d;
    d.reserve(den.size());
    for (auto& [f, m] : den) d.emplace_back(f.barswap(half), m);
    return ChartFunction(num.barswap(half), std::move(d));
}

ChartFunction ChartFunction::pow(unsigned k) const {
    ChartFunction r = ChartFunction::constant(num.nvars, GaussianRational(1));
    for (unsigned j = 0; j < k; ++j) r = r * (*this);
    return r;
}

GaussianRational ChartFunction::eval(const std::vector<GaussianRational>& x) const {
    GaussianRational d(1);
    for (auto& [f, m] : den) {
        GaussianRational v = f.eval(x);
        if (v.is_zero()) throw PoleError("ChartFunction: evaluation at a denominator zero");
        for (int j = 0; j < m; ++j) d *= v;
    }
    return num.eval(x) * d.inv();
}

std::complex<double> ChartFunction::eval(const std::vector<std::complex<double>>& x) const {
    std::complex<double> d = 1.0;
    for (auto& [f, m] : den)
        for (int j = 0; j < m; ++j) d *= f.eval(x);
    return num.eval(x) / d;
}

} // namespace starred
