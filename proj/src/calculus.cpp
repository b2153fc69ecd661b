#include "qpt/calculus.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qpt {

OperatorTable::OperatorTable(int n) : n_(n), rows_(static_cast<std::size_t>(2 * n)) {
    if (n < 1 || n > kMaxQuaternionDim) throw std::domain_error("operator table dimension out of range");
}

OperatorTable OperatorTable::standard(int n) {
    OperatorTable t(n);
    const ComplexRational one(1), i = ComplexRational::i();
    for (int l = 0; l < n; ++l) {
        const int b = 4 * l;
        t.rows_[2 * l][0] = {{b, one}, {b + 1, i}};
        t.rows_[2 * l][1] = {{b + 2, -one}, {b + 3, -i}};
        t.rows_[2 * l + 1][0] = {{b + 2, one}, {b + 3, -i}};
        t.rows_[2 * l + 1][1] = {{b, one}, {b + 1, -i}};
    }
    return t;
}

const std::vector<OperatorTerm>& OperatorTable::entry(int j, int alpha) const {
    if (j < 0 || j >= 2 * n_ || (alpha != 0 && alpha != 1)) {
        throw std::domain_error("operator table index out of range");
    }
    return rows_[j][alpha];
}

RealPolynomial OperatorTable::apply(int j, int alpha, const RealPolynomial& p) const {
    RealPolynomial out(n_);
    for (const auto& term : entry(j, alpha)) out += p.derivative(term.variable) * term.coefficient;
    return out;
}

OperatorTable OperatorTable::with_negated_entry(int j, int alpha) const {
    OperatorTable t = *this;
    (void)entry(j, alpha);
    for (auto& term : t.rows_[j][alpha]) term.coefficient = -term.coefficient;
    return t;
}

QuaternionicCalculus::QuaternionicCalculus(int n)
    : QuaternionicCalculus(OperatorTable::standard(n), Rational(1, 2)) {}

QuaternionicCalculus::QuaternionicCalculus(OperatorTable table, Rational delta_factor, SignRule sign_rule)
    : table_(std::move(table)), delta_factor_(std::move(delta_factor)), sign_rule_(sign_rule) {}

void QuaternionicCalculus::check_row(int j) const {
    if (j < 0 || j >= 2 * n()) throw std::domain_error("row index out of range [0, 2n-1]");
}

RealPolynomial QuaternionicCalculus::nabla(int j, int alpha, const RealPolynomial& p) const {
    return table_.apply(j, alpha, p);
}

PolyForm QuaternionicCalculus::d(int alpha, const PolyForm& f) const {
    if (f.n() != n()) throw std::domain_error("form dimension does not match the calculus");
    if (f.degree() >= 2 * n()) throw std::domain_error("d0/d1 need a form of degree below 2n");
    PolyForm out(n(), f.degree() + 1);
    for (const auto& [index, coeff] : f.terms()) {
        for (int k = 0; k < 2 * n(); ++k) {
            const int sign = merge_sign(std::uint32_t{1} << k, index.mask());
            if (sign == 0) continue;
            RealPolynomial g = nabla(k, alpha, coeff);
            if (g.is_zero()) continue;
            if (sign < 0) g = -g;
            out.add(BasisIndex::from_mask(index.mask() | (std::uint32_t{1} << k)), g);
        }
    }
    return out;
}

PolyForm QuaternionicCalculus::baston(const RealPolynomial& u) const { return d0(d1(as_form(u))); }

RealPolynomial QuaternionicCalculus::delta_ij(const RealPolynomial& u, int i, int j) const {
    check_row(i);
    check_row(j);
    RealPolynomial a = nabla(i, 0, nabla(j, 1, u));
    RealPolynomial b = nabla(i, 1, nabla(j, 0, u));
    return (a - b) * ComplexRational(delta_factor_);
}

RealPolynomial QuaternionicCalculus::ma_density(std::span<const RealPolynomial> us) const {
    const int n = this->n();
    if (static_cast<int>(us.size()) != n) throw std::domain_error("ma_density needs exactly n functions");
    const int rows = 2 * n;

    // delta[k][i][j] = Delta_{ij} u_k
    std::vector<std::vector<std::vector<RealPolynomial>>> delta(n);
    for (int k = 0; k < n; ++k) {
        delta[k].assign(rows, std::vector<RealPolynomial>(rows, RealPolynomial(n)));
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < rows; ++j) {
                if (i != j) delta[k][i][j] = delta_ij(us[k], i, j);
            }
        }
    }

    RealPolynomial total(n);
    std::vector<int> seq(rows);
    std::iota(seq.begin(), seq.end(), 0);
    do {
        int sign = perm_sign(seq);
        if (sign_rule_ == SignRule::unsigned_) sign = 1;
        RealPolynomial term = RealPolynomial::constant(n, ComplexRational(sign));
        for (int k = 0; k < n && !term.is_zero(); ++k) term = term * delta[k][seq[2 * k]][seq[2 * k + 1]];
        total += term;
    } while (std::next_permutation(seq.begin(), seq.end()));
    return total;
}

PolyForm as_form(const RealPolynomial& u) { return PolyForm::scalar(u.n(), u); }

RealPolynomial nabla(int j, int alpha, const RealPolynomial& p) {
    return QuaternionicCalculus(p.n()).nabla(j, alpha, p);
}
PolyForm d0(const PolyForm& f) { return QuaternionicCalculus(f.n()).d0(f); }
PolyForm d1(const PolyForm& f) { return QuaternionicCalculus(f.n()).d1(f); }
PolyForm baston(const RealPolynomial& u) { return QuaternionicCalculus(u.n()).baston(u); }
RealPolynomial delta_ij(const RealPolynomial& u, int i, int j) {
    return QuaternionicCalculus(u.n()).delta_ij(u, i, j);
}
RealPolynomial ma_density(std::span<const RealPolynomial> us) {
    if (us.empty()) throw std::domain_error("ma_density needs exactly n functions");
    return QuaternionicCalculus(us.front().n()).ma_density(us);
}
RealPolynomial ma_density_power(const RealPolynomial& u) {
    std::vector<RealPolynomial> copies(static_cast<std::size_t>(u.n()), u);
    return ma_density(copies);
}

HyperhermitianMatrix<Rational> hessian(const RealPolynomial& u, std::span<const Rational> point) {
    if (!u.has_real_coefficients()) throw std::domain_error("hessian needs a real-valued polynomial");
    const int n = u.n();
    if (static_cast<int>(point.size()) != 4 * n) throw std::domain_error("hessian point has wrong size");
    HyperhermitianMatrix<Rational> h(n);
    const Rational sixteenth(1, 16);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            Quaternion<Rational> entry;
            for (int a = 0; a < 4; ++a) {
                RealPolynomial ua = u.derivative(4 * j + a);
                for (int b = 0; b < 4; ++b) {
                    const Rational second = ua.derivative(4 * k + b).evaluate(point).re;
                    if (sgn(second) == 0) continue;
                    entry += (Quaternion<Rational>::unit(a) * Quaternion<Rational>::unit(b).conj()) * second;
                }
            }
            h(j, k) = entry * sixteenth;
        }
    }
    return h;
}

Rational moore_det(const HyperhermitianMatrix<Rational>& a) { return moore_det<Rational>(a); }

Rational density_to_moore_ratio(int n) {
    const RealPolynomial u = RealPolynomial::norm_squared(n);
    const std::vector<Rational> origin(static_cast<std::size_t>(4 * n), Rational(0));
    const Rational density = ma_density_power(u).evaluate(origin).re;
    return density / moore_det(hessian(u, origin));
}

}  // namespace qpt
