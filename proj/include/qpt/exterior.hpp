#pragma once

// Exterior algebra of C^{2n} with basis omega^0 .. omega^{2n-1}.
//
// A basis element omega^I = omega^{i_1} ^ ... ^ omega^{i_p} with i_1 < ... < i_p is
// stored as a bitmask; coefficients live in any commutative ring providing
// +, -, *, == and an ADL-visible is_zero().

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpt {

/// Strictly increasing multi-index I = (i_1, ..., i_p).
class BasisIndex {
public:
    BasisIndex() = default;
    BasisIndex(std::initializer_list<int> indices) : BasisIndex(std::span<const int>(indices.begin(), indices.size())) {}
    explicit BasisIndex(std::span<const int> indices) {
        int previous = -1;
        for (int i : indices) {
            if (i <= previous) throw std::domain_error("basis indices must be strictly increasing");
            if (i >= 32) throw std::domain_error("basis index too large");
            mask_ |= std::uint32_t{1} << i;
            previous = i;
        }
    }

    static BasisIndex from_mask(std::uint32_t mask) {
        BasisIndex b;
        b.mask_ = mask;
        return b;
    }

    [[nodiscard]] std::uint32_t mask() const { return mask_; }
    [[nodiscard]] int degree() const { return std::popcount(mask_); }
    [[nodiscard]] std::vector<int> indices() const {
        std::vector<int> out;
        for (int i = 0; i < 32; ++i) {
            if (mask_ & (std::uint32_t{1} << i)) out.push_back(i);
        }
        return out;
    }

    friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;

private:
    std::uint32_t mask_ = 0;
};

/// Sign of the permutation taking `seq` to (0, 1, ..., size-1); 0 on a repeated entry.
inline int perm_sign(std::span<const int> seq) {
    const int size = static_cast<int>(seq.size());
    std::uint64_t seen = 0;
    for (int v : seq) {
        if (v < 0 || v >= size) throw std::domain_error("permutation entry out of range");
        if (seen & (std::uint64_t{1} << v)) return 0;
        seen |= std::uint64_t{1} << v;
    }
    int inversions = 0;
    for (int a = 0; a < size; ++a) {
        for (int b = a + 1; b < size; ++b) inversions += seq[a] > seq[b];
    }
    return inversions % 2 == 0 ? 1 : -1;
}

inline int perm_sign(std::initializer_list<int> seq) {
    return perm_sign(std::span<const int>(seq.begin(), seq.size()));
}

/// Sign produced by moving omega^A past omega^B into increasing order: (-1)^{#{(a,b): a > b}}.
/// Returns 0 when the index sets overlap.
inline int merge_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    int swaps = 0;
    for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
        int j = std::countr_zero(rest);
        std::uint32_t above = j >= 31 ? 0u : ~((std::uint32_t{2} << j) - 1);
        swaps += std::popcount(a & above);
    }
    return swaps % 2 == 0 ? 1 : -1;
}

namespace detail {
template <class Scalar>
bool scalar_is_zero(const Scalar& c) {
    return is_zero(c);
}
}  // namespace detail

/// Homogeneous element of the p-th exterior power with coefficients in Scalar.
template <class Scalar>
class Multivector {
public:
    Multivector(int n, int degree) : n_(n), degree_(degree) {
        if (n < 1 || 2 * n > 32) throw std::domain_error("unsupported dimension for exterior algebra");
        if (degree < 0 || degree > 2 * n) throw std::domain_error("form degree out of range");
    }

    static Multivector scalar(int n, const Scalar& c) {
        Multivector f(n, 0);
        f.add(BasisIndex{}, c);
        return f;
    }
    static Multivector basis(int n, const BasisIndex& index, const Scalar& c) {
        Multivector f(n, index.degree());
        f.add(index, c);
        return f;
    }
    /// omega^0 ^ ... ^ omega^{2n-1}.
    static Multivector top(int n, const Scalar& c) {
        return basis(n, BasisIndex::from_mask(top_mask(n)), c);
    }

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] const std::map<BasisIndex, Scalar>& terms() const { return terms_; }

    void add(const BasisIndex& index, const Scalar& c) {
        if (index.degree() != degree_) throw std::domain_error("term degree does not match form degree");
        if (index.mask() & ~top_mask(n_)) throw std::domain_error("basis index outside [0, 2n-1]");
        if (is_zero_scalar(c)) return;
        auto [it, inserted] = terms_.try_emplace(index, c);
        if (!inserted) {
            it->second += c;
            if (is_zero_scalar(it->second)) terms_.erase(it);
        }
    }

    /// Coefficient of omega^I; `zero` is returned for absent terms.
    [[nodiscard]] Scalar coefficient(const BasisIndex& index, const Scalar& zero = Scalar{}) const {
        auto it = terms_.find(index);
        return it == terms_.end() ? zero : it->second;
    }

    Multivector& operator+=(const Multivector& o) {
        require_same_shape(o);
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    Multivector& operator-=(const Multivector& o) {
        require_same_shape(o);
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    Multivector& operator*=(const Scalar& s) {
        std::map<BasisIndex, Scalar> scaled;
        for (const auto& [k, c] : terms_) {
            Scalar v = c * s;
            if (!is_zero_scalar(v)) scaled.emplace(k, std::move(v));
        }
        terms_ = std::move(scaled);
        return *this;
    }

    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    friend Multivector operator-(const Multivector& a) {
        Multivector out(a.n_, a.degree_);
        for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, -c);
        return out;
    }
    friend Multivector operator*(Multivector a, const Scalar& s) { return a *= s; }
    friend Multivector operator*(const Scalar& s, Multivector a) { return a *= s; }
    friend bool operator==(const Multivector& a, const Multivector& b) {
        return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    static std::uint32_t top_mask(int n) {
        return 2 * n >= 32 ? ~0u : ((std::uint32_t{1} << (2 * n)) - 1);
    }

private:
    static bool is_zero_scalar(const Scalar& c) { return detail::scalar_is_zero(c); }

    void require_same_shape(const Multivector& o) const {
        if (o.n_ != n_) throw std::domain_error("forms over different dimensions");
        if (o.degree_ != degree_) throw std::domain_error("forms of different degree");
    }

    int n_;
    int degree_;
    std::map<BasisIndex, Scalar> terms_;
};

/// Exterior product; result degree is deg F + deg G.
template <class Scalar>
Multivector<Scalar> wedge(const Multivector<Scalar>& f, const Multivector<Scalar>& g) {
    if (f.n() != g.n()) throw std::domain_error("wedge of forms over different dimensions");
    const int degree = f.degree() + g.degree();
    if (degree > 2 * f.n()) throw std::domain_error("wedge degree exceeds 2n");
    Multivector<Scalar> out(f.n(), degree);
    for (const auto& [a, ca] : f.terms()) {
        for (const auto& [b, cb] : g.terms()) {
            const int sign = merge_sign(a.mask(), b.mask());
            if (sign == 0) continue;
            Scalar c = ca * cb;
            if (sign < 0) c = -c;
            out.add(BasisIndex::from_mask(a.mask() | b.mask()), c);
        }
    }
    return out;
}

/// The coefficient c in F = c * Omega_{2n}.
template <class Scalar>
Scalar top_coefficient(const Multivector<Scalar>& f, const Scalar& zero = Scalar{}) {
    if (f.degree() != 2 * f.n()) throw std::domain_error("top_coefficient needs a form of degree 2n");
    return f.coefficient(BasisIndex::from_mask(Multivector<Scalar>::top_mask(f.n())), zero);
}

}  // namespace qpt
