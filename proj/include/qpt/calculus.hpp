#pragma once

// First-order operators nabla_{j alpha} on R^{4n}, the pair d0/d1 acting on
// polynomial-valued forms, the Baston operator d0 d1 and the Monge-Ampere density.

#include "qpt/exterior.hpp"
#include "qpt/polynomial.hpp"
#include "qpt/quaternion.hpp"

#include <array>
#include <span>
#include <vector>

namespace qpt {

using PolyForm = Multivector<RealPolynomial>;

/// One summand c * d/dx_m of a first-order operator.
struct OperatorTerm {
    int variable;
    ComplexRational coefficient;
};

/// Rows j = 0..2n-1, columns alpha = 0,1. Rows 2l and 2l+1 act on the coordinates of q_l:
///
///   nabla_{2l,0}   = d/dx_{4l}   + i d/dx_{4l+1}    nabla_{2l,1}   = -d/dx_{4l+2} - i d/dx_{4l+3}
///   nabla_{2l+1,0} = d/dx_{4l+2} - i d/dx_{4l+3}    nabla_{2l+1,1} =  d/dx_{4l}   - i d/dx_{4l+1}
class OperatorTable {
public:
    static OperatorTable standard(int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] const std::vector<OperatorTerm>& entry(int j, int alpha) const;
    [[nodiscard]] RealPolynomial apply(int j, int alpha, const RealPolynomial& p) const;

    /// Copy with every coefficient of entry (j, alpha) negated.
    [[nodiscard]] OperatorTable with_negated_entry(int j, int alpha) const;

private:
    explicit OperatorTable(int n);

    int n_;
    std::vector<std::array<std::vector<OperatorTerm>, 2>> rows_;
};

/// How the Monge-Ampere expansion weighs an index sequence (i_1 j_1 ... i_n j_n).
enum class SignRule {
    permutation,  ///< sign of the permutation onto (0 .. 2n-1)
    unsigned_,    ///< |sign|; a deliberately wrong rule used by mutation checks
};

/// The operator calculus on H^n for a fixed operator table.
class QuaternionicCalculus {
public:
    explicit QuaternionicCalculus(int n);
    QuaternionicCalculus(OperatorTable table, Rational delta_factor, SignRule sign_rule = SignRule::permutation);

    [[nodiscard]] int n() const { return table_.n(); }
    [[nodiscard]] const OperatorTable& table() const { return table_; }

    [[nodiscard]] RealPolynomial nabla(int j, int alpha, const RealPolynomial& p) const;

    /// d_alpha F = sum_{k,I} nabla_{k alpha} f_I omega^k ^ omega^I.
    [[nodiscard]] PolyForm d(int alpha, const PolyForm& f) const;
    [[nodiscard]] PolyForm d0(const PolyForm& f) const { return d(0, f); }
    [[nodiscard]] PolyForm d1(const PolyForm& f) const { return d(1, f); }

    /// Baston operator d0 d1 u, a 2-form.
    [[nodiscard]] PolyForm baston(const RealPolynomial& u) const;

    /// Delta_{ij} u = 1/2 (nabla_{i0} nabla_{j1} u - nabla_{i1} nabla_{j0} u).
    [[nodiscard]] RealPolynomial delta_ij(const RealPolynomial& u, int i, int j) const;

    /// Omega_{2n}-coefficient of Delta u_1 ^ ... ^ Delta u_n via the signed expansion in Delta_{ij}.
    [[nodiscard]] RealPolynomial ma_density(std::span<const RealPolynomial> us) const;

private:
    void check_row(int j) const;

    OperatorTable table_;
    Rational delta_factor_;
    SignRule sign_rule_;
};

/// Promotes a polynomial to a 0-form.
PolyForm as_form(const RealPolynomial& u);

// Convenience wrappers over the standard calculus of the argument's dimension.
RealPolynomial nabla(int j, int alpha, const RealPolynomial& p);
PolyForm d0(const PolyForm& f);
PolyForm d1(const PolyForm& f);
PolyForm baston(const RealPolynomial& u);
RealPolynomial delta_ij(const RealPolynomial& u, int i, int j);
RealPolynomial ma_density(std::span<const RealPolynomial> us);
/// ma_density(u, ..., u) with n copies.
RealPolynomial ma_density_power(const RealPolynomial& u);

/// Quaternionic Hessian of a real polynomial at a rational point,
///   H_{jk} = d/dqbar_j (d u / dq_k) = 1/16 sum_{a,b} u_{x_{4j+a} x_{4k+b}} e_a conj(e_b),
/// with d/dqbar_j = 1/4 sum_a e_a d/dx_{4j+a} acting from the left and
/// d/dq_k = 1/4 sum_b (d/dx_{4k+b}) conj(e_b) acting from the right.
HyperhermitianMatrix<Rational> hessian(const RealPolynomial& u, std::span<const Rational> point);

/// Exact Moore determinant over the rationals.
Rational moore_det(const HyperhermitianMatrix<Rational>& a);

/// Value of ma_density(|q|^2, ..., |q|^2) / moore_det(hessian(|q|^2)) for dimension n.
Rational density_to_moore_ratio(int n);

}  // namespace qpt
