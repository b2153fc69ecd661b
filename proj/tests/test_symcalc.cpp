#include "oracle.hpp"
#include "qpt/calculus.hpp"
#include "qpt/random_forms.hpp"
#include "qpt/verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using qpt::ComplexRational;
using qpt::RealPolynomial;
using qpt::Rational;

namespace {

oracle::Poly to_oracle(const RealPolynomial& p) {
    oracle::Poly out;
    for (const auto& [e, c] : p.terms()) {
        oracle::Monomial m{};
        for (int v = 0; v < p.variables(); ++v) m[static_cast<std::size_t>(v)] = e[static_cast<std::size_t>(v)];
        oracle::add(out, m, {c.re.get_d(), c.im.get_d()});
    }
    return out;
}

bool near(const oracle::Poly& a, const oracle::Poly& b) {
    oracle::Poly diff = a;
    for (const auto& [m, c] : b) oracle::add(diff, m, -c);
    return std::all_of(diff.begin(), diff.end(), [](const auto& t) { return std::abs(t.second) < 1e-12; });
}

RealPolynomial power(const RealPolynomial& p, int k) {
    RealPolynomial out = RealPolynomial::constant(p.n(), ComplexRational(1));
    for (int t = 0; t < k; ++t) out = out * p;
    return out;
}

Rational quarter_power(int n) {
    Rational r(1);
    for (int k = 0; k < n; ++k) r /= 2;
    return r;
}

}  // namespace

TEST_CASE("density of |q|^2 matches the independent oracle") {
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        const oracle::Poly expected = oracle::ma_density(oracle::norm_squared(n), n);
        const RealPolynomial got = qpt::ma_density_power(RealPolynomial::norm_squared(n));
        CHECK(to_oracle(got) == expected);
    }
    CHECK(qpt::ma_density_power(RealPolynomial::norm_squared(1)) == RealPolynomial::constant(1, ComplexRational(8)));
    CHECK(qpt::ma_density_power(RealPolynomial::norm_squared(2)) == RealPolynomial::constant(2, ComplexRational(128)));
}

TEST_CASE("density of |q|^4 matches the oracle") {
    for (int n = 1; n <= 2; ++n) {
        const RealPolynomial q4 = power(RealPolynomial::norm_squared(n), 2);
        CHECK(to_oracle(qpt::ma_density_power(q4)) == oracle::ma_density(to_oracle(q4), n));
    }
}

TEST_CASE("first-order operators and Delta_ij match the oracle on random polynomials") {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 2; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const RealPolynomial u = qpt::random_polynomial(rng, n);
            const oracle::Poly ou = to_oracle(u);
            for (int j = 0; j < 2 * n; ++j) {
                for (int alpha = 0; alpha < 2; ++alpha) CHECK(near(to_oracle(qpt::nabla(j, alpha, u)), oracle::nabla(j, alpha, ou)));
                for (int k = 0; k < 2 * n; ++k) CHECK(near(to_oracle(qpt::delta_ij(u, j, k)), oracle::delta(ou, j, k)));
            }
        }
    }
}

TEST_CASE("mixed density is symmetric and multilinear") {
    std::mt19937_64 rng(11);
    const RealPolynomial a = qpt::random_polynomial(rng, 2);
    const RealPolynomial b = qpt::random_polynomial(rng, 2);
    const RealPolynomial c = qpt::random_polynomial(rng, 2);
    const std::vector<RealPolynomial> ab{a, b}, ba{b, a}, sum{a + c, b}, cb{c, b};
    CHECK(qpt::ma_density(ab) == qpt::ma_density(ba));
    CHECK(qpt::ma_density(sum) == qpt::ma_density(ab) + qpt::ma_density(cb));
}

TEST_CASE("Baston operator is closed under d0 and d1") {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 2; ++n) {
        const RealPolynomial u = qpt::random_polynomial(rng, n);
        const qpt::PolyForm du = qpt::baston(u);
        CHECK(du.degree() == 2);
        if (n > 1) {
            CHECK(qpt::d0(du).is_zero());
            CHECK(qpt::d1(du).is_zero());
        }
        CHECK(qpt::d0(qpt::d0(qpt::as_form(u))).is_zero());
        CHECK(qpt::d1(qpt::d1(qpt::as_form(u))).is_zero());
    }
}

TEST_CASE("Moore determinant of small hyperhermitian matrices") {
    using Q = qpt::Quaternion<Rational>;
    qpt::QuaternionMatrix<Rational> a(2);
    a(0, 0) = Q::real(3);
    a(1, 1) = Q::real(5);
    a(0, 1) = Q(1, 2, -1, 1);
    a(1, 0) = a(0, 1).conj();
    // [[a, q], [conj q, b]] has Moore determinant ab - |q|^2.
    CHECK(qpt::moore_det(a) == 3 * 5 - 7);
    CHECK(qpt::moore_det(qpt::QuaternionMatrix<Rational>::identity(3)) == 1);
    a(1, 0) = a(0, 1);
    CHECK_THROWS_AS((void)qpt::moore_det(a), std::domain_error);
}

TEST_CASE("Hessian of |q|^2 is half the identity and the ratios follow") {
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        std::vector<Rational> point(static_cast<std::size_t>(4 * n), Rational(1, 3));
        const auto h = qpt::hessian(RealPolynomial::norm_squared(n), point);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                CHECK(h(j, k) == qpt::Quaternion<Rational>::real(j == k ? Rational(1, 2) : Rational(0)));
            }
        }
        const double density = oracle::ma_density(oracle::norm_squared(n), n).at(oracle::Monomial{}).real();
        CHECK(qpt::density_to_moore_ratio(n) == Rational(static_cast<long>(density)) / quarter_power(n));
    }
    CHECK(qpt::density_to_moore_ratio(1) == 16);
    CHECK(qpt::density_to_moore_ratio(2) == 512);
}

TEST_CASE("Moore determinant squared equals the complex adjoint determinant") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 3; ++n) {
        const RealPolynomial a = qpt::random_psd_quadratic(rng, n);
        std::vector<Rational> origin(static_cast<std::size_t>(4 * n), Rational(0));
        const auto h = qpt::hessian(a, origin);
        const double md = qpt::moore_det(h).get_d();
        const double det = qpt::complex_adjoint(h, [](const Rational& q) { return q.get_d(); }).determinant().real();
        CHECK(det == doctest::Approx(md * md).epsilon(1e-10));
        CHECK(md > 0.0);
    }
}

TEST_CASE("identity suite passes and every mutation is caught") {
    CHECK(qpt::check_identities(1, 5, {1, 2}).passed);
    for (auto m : {qpt::Mutation::nabla_sign_flip, qpt::Mutation::dropped_half, qpt::Mutation::wrong_permutation_sign}) {
        CAPTURE(qpt::to_string(m));
        CHECK_FALSE(qpt::check_identities(1, 5, {1, 2}, m).passed);
    }
    CHECK(qpt::parse_mutation(qpt::to_string(qpt::Mutation::dropped_half)) == qpt::Mutation::dropped_half);
    CHECK_THROWS_AS((void)qpt::parse_mutation("bogus"), std::invalid_argument);
}

TEST_CASE("Moore ratio is constant on random PSD quadratics") {
    const qpt::CheckReport r = qpt::check_moore_ratio(2, 10, {1, 2});
    CHECK(r.passed);
    CHECK(r.instances == 20);
}

TEST_CASE("dimension errors") {
    CHECK_THROWS_AS((void)(RealPolynomial::norm_squared(1) + RealPolynomial::norm_squared(2)), std::domain_error);
    CHECK_THROWS_AS((void)qpt::nabla(2, 0, RealPolynomial::norm_squared(1)), std::domain_error);
}
