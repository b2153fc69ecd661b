#pragma once

// Independent reference implementations used by the tests. Nothing here calls the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// Polynomial in up to 12 real variables with complex double coefficients. All values used
// by the tests are small dyadic rationals, so the arithmetic is exact.
using Monomial = std::array<int, 12>;
using Poly = std::map<Monomial, std::complex<double>>;

inline void add(Poly& p, const Monomial& m, std::complex<double> c) {
    auto& slot = p[m];
    slot += c;
    if (slot == std::complex<double>(0.0)) p.erase(m);
}

inline Poly norm_squared(int n) {
    Poly p;
    for (int v = 0; v < 4 * n; ++v) {
        Monomial m{};
        m[static_cast<std::size_t>(v)] = 2;
        add(p, m, 1.0);
    }
    return p;
}

inline Poly times(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            Monomial m{};
            for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
            add(out, m, ca * cb);
        }
    }
    return out;
}

inline Poly partial(const Poly& p, int v) {
    Poly out;
    const auto k = static_cast<std::size_t>(v);
    for (const auto& [m, c] : p) {
        if (m[k] == 0) continue;
        Monomial d = m;
        d[k] -= 1;
        add(out, d, c * static_cast<double>(m[k]));
    }
    return out;
}

inline Poly combine(const std::vector<std::pair<int, std::complex<double>>>& ops, const Poly& p) {
    Poly out;
    for (const auto& [v, c] : ops) {
        for (const auto& [m, val] : partial(p, v)) add(out, m, c * val);
    }
    return out;
}

// First-order operators written out per block l of coordinates x_{4l} .. x_{4l+3}.
inline Poly nabla(int j, int alpha, const Poly& p) {
    const std::complex<double> i(0.0, 1.0);
    const int l = j / 2;
    const int x0 = 4 * l, x1 = 4 * l + 1, x2 = 4 * l + 2, x3 = 4 * l + 3;
    if (j % 2 == 0) {
        if (alpha == 0) return combine({{x0, 1.0}, {x1, i}}, p);
        return combine({{x2, -1.0}, {x3, -i}}, p);
    }
    if (alpha == 0) return combine({{x2, 1.0}, {x3, -i}}, p);
    return combine({{x0, 1.0}, {x1, -i}}, p);
}

inline Poly delta(const Poly& u, int a, int b) {
    Poly out;
    for (const auto& [m, c] : nabla(a, 0, nabla(b, 1, u))) add(out, m, 0.5 * c);
    for (const auto& [m, c] : nabla(a, 1, nabla(b, 0, u))) add(out, m, -0.5 * c);
    return out;
}

// Sum over permutations s of (0 .. 2n-1) of sign(s) prod_k Delta_{s(2k) s(2k+1)} u.
inline Poly ma_density(const Poly& u, int n) {
    std::vector<int> perm(static_cast<std::size_t>(2 * n));
    std::iota(perm.begin(), perm.end(), 0);
    std::map<std::pair<int, int>, Poly> cache;
    for (int a = 0; a < 2 * n; ++a) {
        for (int b = 0; b < 2 * n; ++b) cache[{a, b}] = delta(u, a, b);
    }
    Poly out;
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < perm.size(); ++a) {
            for (std::size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b];
        }
        Poly term;
        term[Monomial{}] = inversions % 2 == 0 ? 1.0 : -1.0;
        for (int k = 0; k < n; ++k) {
            term = times(term, cache[{perm[static_cast<std::size_t>(2 * k)], perm[static_cast<std::size_t>(2 * k + 1)]}]);
        }
        for (const auto& [m, c] : term) add(out, m, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Radial extremal function of ball(r) in ball(R) on R^4: harmonic profile a + b / rho^2.
inline double radial_extremal(double rho, double r, double big_r) {
    if (rho <= r) return -1.0;
    if (rho >= big_r) return 0.0;
    return -(1.0 / (rho * rho) - 1.0 / (big_r * big_r)) / (1.0 / (r * r) - 1.0 / (big_r * big_r));
}

// Laplacian mass of the radial extremal function: outward flux |S^3| rho^3 u'(rho) = 2 pi^2 * 2 / (r^-2 - R^-2).
inline double radial_capacity(double r, double big_r) {
    return 4.0 * kPi * kPi / (1.0 / (r * r) - 1.0 / (big_r * big_r));
}

}  // namespace oracle
