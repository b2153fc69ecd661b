#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qpt {

/// Quaternion w + x i + y j + z k over a real scalar type T.
template <class T>
struct Quaternion {
    T w{0}, x{0}, y{0}, z{0};

    Quaternion() = default;
    Quaternion(T w_, T x_, T y_, T z_) : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
    static Quaternion real(T value) { return {std::move(value), T(0), T(0), T(0)}; }
    static Quaternion unit(int axis) {
        Quaternion q;
        (axis == 0 ? q.w : axis == 1 ? q.x : axis == 2 ? q.y : q.z) = T(1);
        return q;
    }

    [[nodiscard]] Quaternion conj() const { return {w, -x, -y, -z}; }
    [[nodiscard]] T norm2() const { return w * w + x * x + y * y + z * z; }
    [[nodiscard]] bool is_real() const { return x == T(0) && y == T(0) && z == T(0); }

    Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    Quaternion& operator*=(const T& s) {
        w *= s; x *= s; y *= s; z *= s;
        return *this;
    }

    friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
    friend Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
    friend Quaternion operator*(Quaternion a, const T& s) { return a *= s; }
    friend Quaternion operator*(const T& s, Quaternion a) { return a *= s; }
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    friend bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

/// Dense n x n matrix of quaternions, row-major.
template <class T>
class QuaternionMatrix {
public:
    explicit QuaternionMatrix(int n = 1) : n_(n), entries_(static_cast<std::size_t>(n) * n) {
        if (n < 1) throw std::domain_error("matrix dimension must be positive");
    }

    static QuaternionMatrix identity(int n) {
        QuaternionMatrix m(n);
        for (int j = 0; j < n; ++j) m(j, j) = Quaternion<T>::real(T(1));
        return m;
    }

    [[nodiscard]] int size() const { return n_; }
    Quaternion<T>& operator()(int j, int k) { return entries_[static_cast<std::size_t>(j) * n_ + k]; }
    const Quaternion<T>& operator()(int j, int k) const { return entries_[static_cast<std::size_t>(j) * n_ + k]; }

    /// A_{kj} = conj(A_{jk}) for all j, k (which forces a real diagonal).
    [[nodiscard]] bool is_hyperhermitian() const {
        for (int j = 0; j < n_; ++j) {
            for (int k = j; k < n_; ++k) {
                if (!((*this)(k, j) == (*this)(j, k).conj())) return false;
            }
        }
        return true;
    }

    friend bool operator==(const QuaternionMatrix& a, const QuaternionMatrix& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    int n_;
    std::vector<Quaternion<T>> entries_;
};

/// Matrices produced by the quaternionic Hessian; always hyperhermitian.
template <class T>
using HyperhermitianMatrix = QuaternionMatrix<T>;

namespace detail {

/// Calls visit(cycles, sign) for every permutation of {0..n-1}, with each cycle listed
/// from its smallest element and cycles ordered by decreasing smallest element.
template <class Visit>
void for_each_moore_ordered_permutation(int n, Visit&& visit) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<char> used(n, 0);
        std::vector<std::vector<int>> cycles;
        for (int start = n - 1; start >= 0; --start) {
            if (used[start]) continue;
            int head = start;
            for (int v = perm[start]; v != start; v = perm[v]) head = std::min(head, v);
            if (head != start) continue;
            std::vector<int> cycle;
            int v = head;
            do {
                cycle.push_back(v);
                used[v] = 1;
                v = perm[v];
            } while (v != head);
            cycles.push_back(std::move(cycle));
        }
        const int sign = ((n - static_cast<int>(cycles.size())) % 2 == 0) ? 1 : -1;
        visit(cycles, sign);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

/// Moore determinant: sum over permutations of sign(sigma) times the ordered product of
/// entries along the cycles of sigma (each cycle from its least index, cycles by
/// decreasing least index). Real for hyperhermitian input.
template <class T>
T moore_det(const QuaternionMatrix<T>& a) {
    if (!a.is_hyperhermitian()) throw std::domain_error("moore_det requires a hyperhermitian matrix");
    const int n = a.size();
    Quaternion<T> total;
    detail::for_each_moore_ordered_permutation(n, [&](const std::vector<std::vector<int>>& cycles, int sign) {
        Quaternion<T> product = Quaternion<T>::real(T(1));
        for (const auto& cycle : cycles) {
            const int len = static_cast<int>(cycle.size());
            for (int t = 0; t < len; ++t) product = product * a(cycle[t], cycle[(t + 1) % len]);
        }
        if (sign > 0) total += product;
        else total -= product;
    });
    return total.w;
}

/// Complex 2n x 2n adjoint: q = z1 + z2 j maps to [[z1, z2], [-conj(z2), conj(z1)]].
/// For hyperhermitian A, det(adjoint) = moore_det(A)^2.
template <class T, class ToDouble>
Eigen::MatrixXcd complex_adjoint(const QuaternionMatrix<T>& a, ToDouble&& to_double) {
    const int n = a.size();
    Eigen::MatrixXcd out(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const auto& q = a(j, k);
            const std::complex<double> z1(to_double(q.w), to_double(q.x));
            const std::complex<double> z2(to_double(q.y), to_double(q.z));
            out(2 * j, 2 * k) = z1;
            out(2 * j, 2 * k + 1) = z2;
            out(2 * j + 1, 2 * k) = -std::conj(z2);
            out(2 * j + 1, 2 * k + 1) = std::conj(z1);
        }
    }
    return out;
}

}  // namespace qpt
