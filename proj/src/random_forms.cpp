#include "qpt/random_forms.hpp"

#include <cmath>
#include <limits>

namespace qpt {

namespace {

long draw(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational random_rational(std::mt19937_64& rng, int bound) {
    Rational q(draw(rng, -bound, bound), draw(rng, 1, 3));
    q.canonicalize();
    return q;
}

}  // namespace

RealPolynomial random_polynomial(std::mt19937_64& rng, int n, const PolynomialShape& shape) {
    RealPolynomial p(n);
    const int vars = 4 * n;
    for (int t = 0; t < shape.terms; ++t) {
        Exponent e{};
        const int degree = static_cast<int>(draw(rng, 0, shape.max_degree));
        for (int k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(draw(rng, 0, vars - 1))];
        ComplexRational c(random_rational(rng, shape.coefficient_bound));
        if (shape.complex_coefficients) c = ComplexRational(c.re, random_rational(rng, shape.coefficient_bound));
        p.add_term(e, c);
    }
    return p;
}

PolyForm random_form(std::mt19937_64& rng, int n, int degree, int basis_terms, const PolynomialShape& shape) {
    PolyForm f(n, degree);
    for (int t = 0; t < basis_terms; ++t) {
        std::uint32_t mask = 0;
        while (std::popcount(mask) < degree) mask |= std::uint32_t{1} << draw(rng, 0, 2 * n - 1);
        f.add(BasisIndex::from_mask(mask), random_polynomial(rng, n, shape));
    }
    return f;
}

RealPolynomial random_psd_quadratic(std::mt19937_64& rng, int n, int scale) {
    const int m = 4 * n;
    std::vector<long> b(static_cast<std::size_t>(m * m));
    for (auto& v : b) v = draw(rng, -3, 3);
    RealPolynomial p(n);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            long a = 0;
            for (int k = 0; k < m; ++k) a += b[static_cast<std::size_t>(k * m + i)] * b[static_cast<std::size_t>(k * m + j)];
            Rational coeff = i == j ? Rational(a) + Rational(1, 4) : Rational(2 * a);
            coeff /= scale;
            Exponent e{};
            ++e[static_cast<std::size_t>(i)];
            ++e[static_cast<std::size_t>(j)];
            p.add_term(e, ComplexRational(coeff));
        }
    }
    return p;
}

double SmoothPsh::operator()(const Point4& x) const {
    double v = c * (x - center).squaredNorm() + slope.dot(x) + offset;
    for (std::size_t k = 0; k < weights.size(); ++k) v += weights[k] * std::exp(directions[k].dot(x));
    return v;
}

double SmoothPsh::laplacian(const Point4& x) const {
    double v = 8.0 * c;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        v += weights[k] * directions[k].squaredNorm() * std::exp(directions[k].dot(x));
    }
    return v;
}

SmoothPsh random_smooth_psh(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto vec = [&](double s) { return Point4(s * unit(rng), s * unit(rng), s * unit(rng), s * unit(rng)); };
    SmoothPsh f;
    f.c = 0.25 + 0.75 * (0.5 + 0.5 * unit(rng));
    f.center = vec(0.5);
    const int bumps = static_cast<int>(draw(rng, 0, 2));
    for (int k = 0; k < bumps; ++k) {
        f.weights.push_back(0.1 + 0.2 * (0.5 + 0.5 * unit(rng)));
        f.directions.push_back(vec(1.0));
    }
    f.slope = vec(0.5);
    f.offset = unit(rng);
    return f;
}

std::pair<GridFunction, GridFunction> random_psh_pair(std::mt19937_64& rng, const DomainPtr& domain) {
    SmoothPsh f = random_smooth_psh(rng);
    SmoothPsh g = random_smooth_psh(rng);
    f.c += 1.0;
    g.c *= 0.5;
    GridFunction u = GridFunction::sample(domain, [&](const Point4& x) { return f(x); });
    GridFunction v = GridFunction::sample(domain, [&](const Point4& x) { return g(x); });
    const auto s = domain->box().strides();
    double lift = -std::numeric_limits<double>::infinity();
    auto near_shell = [&](std::int32_t i) {
        for (int d = 0; d < 4; ++d) {
            if (domain->kind(static_cast<std::size_t>(i + s[d])) == PointKind::boundary ||
                domain->kind(static_cast<std::size_t>(i - s[d])) == PointKind::boundary) {
                return true;
            }
        }
        return false;
    };
    for (auto i : domain->boundary()) lift = std::max(lift, v[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i)]);
    for (auto i : domain->interior()) {
        if (near_shell(i)) lift = std::max(lift, v[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i)]);
    }
    for (auto list : {&domain->interior(), &domain->boundary()}) {
        for (auto i : *list) v.values()[i] -= lift;
    }
    return {std::move(u), std::move(v)};
}

}  // namespace qpt
