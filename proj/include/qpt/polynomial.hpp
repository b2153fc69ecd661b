#pragma once

#include "qpt/scalar.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace qpt {

/// Largest quaternionic dimension supported by the symbolic layer (4n real variables).
inline constexpr int kMaxQuaternionDim = 4;
inline constexpr int kMaxVariables = 4 * kMaxQuaternionDim;

using Exponent = std::array<std::uint8_t, kMaxVariables>;

/// Polynomial in the real coordinates x_0 .. x_{4n-1} of H^n with complex-rational
/// coefficients. Zero coefficients are never stored.
///
/// Constants are compatible with polynomials of any dimension; all other
/// mixed-dimension arithmetic is a domain error.
class RealPolynomial {
public:
    explicit RealPolynomial(int n = 1);

    static RealPolynomial constant(int n, const ComplexRational& c);
    /// The coordinate function x_m.
    static RealPolynomial variable(int n, int m);
    /// |q|^2 = sum of all squared real coordinates.
    static RealPolynomial norm_squared(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int variables() const { return 4 * n_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] bool has_real_coefficients() const;
    /// Total degree; -1 for the zero polynomial.
    [[nodiscard]] int degree() const;
    [[nodiscard]] const std::map<Exponent, ComplexRational>& terms() const { return terms_; }

    void add_term(const Exponent& e, const ComplexRational& c);
    [[nodiscard]] ComplexRational coefficient(const Exponent& e) const;

    /// Partial derivative in x_m.
    [[nodiscard]] RealPolynomial derivative(int m) const;
    [[nodiscard]] ComplexRational evaluate(std::span<const Rational> point) const;
    [[nodiscard]] double evaluate_real(std::span<const double> point) const;

    RealPolynomial& operator+=(const RealPolynomial& o);
    RealPolynomial& operator-=(const RealPolynomial& o);
    RealPolynomial& operator*=(const ComplexRational& c);

    friend RealPolynomial operator+(RealPolynomial a, const RealPolynomial& b) { return a += b; }
    friend RealPolynomial operator-(RealPolynomial a, const RealPolynomial& b) { return a -= b; }
    friend RealPolynomial operator-(RealPolynomial a) { return a *= ComplexRational(-1); }
    friend RealPolynomial operator*(RealPolynomial a, const ComplexRational& c) { return a *= c; }
    friend RealPolynomial operator*(const ComplexRational& c, RealPolynomial a) { return a *= c; }
    friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
    friend bool operator==(const RealPolynomial& a, const RealPolynomial& b) {
        return a.terms_ == b.terms_;
    }

    [[nodiscard]] std::string to_string() const;

private:
    void adopt_dimension(const RealPolynomial& o);

    int n_;
    std::map<Exponent, ComplexRational> terms_;
};

inline bool is_zero(const RealPolynomial& p) { return p.is_zero(); }

}  // namespace qpt
