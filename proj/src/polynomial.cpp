#include "qpt/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qpt {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const ComplexRational& c) {
    if (c.is_real()) return c.re.get_str();
    if (sgn(c.re) == 0) return c.im.get_str() + "i";
    std::string im = c.im.get_str();
    return "(" + c.re.get_str() + (sgn(c.im) > 0 ? "+" : "") + im + "i)";
}

namespace {

void check_dimension(int n) {
    if (n < 1 || n > kMaxQuaternionDim) {
        throw std::domain_error("quaternionic dimension must lie in [1, " +
                                std::to_string(kMaxQuaternionDim) + "]");
    }
}

int total_degree(const Exponent& e) {
    int d = 0;
    for (auto k : e) d += k;
    return d;
}

}  // namespace

RealPolynomial::RealPolynomial(int n) : n_(n) { check_dimension(n); }

RealPolynomial RealPolynomial::constant(int n, const ComplexRational& c) {
    RealPolynomial p(n);
    p.add_term(Exponent{}, c);
    return p;
}

RealPolynomial RealPolynomial::variable(int n, int m) {
    RealPolynomial p(n);
    if (m < 0 || m >= 4 * n) throw std::domain_error("variable index out of range");
    Exponent e{};
    e[m] = 1;
    p.add_term(e, ComplexRational(1));
    return p;
}

RealPolynomial RealPolynomial::norm_squared(int n) {
    RealPolynomial p(n);
    for (int m = 0; m < 4 * n; ++m) {
        Exponent e{};
        e[m] = 2;
        p.add_term(e, ComplexRational(1));
    }
    return p;
}

bool RealPolynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{});
}

bool RealPolynomial::has_real_coefficients() const {
    for (const auto& [e, c] : terms_) {
        if (!c.is_real()) return false;
    }
    return true;
}

int RealPolynomial::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

void RealPolynomial::add_term(const Exponent& e, const ComplexRational& c) {
    for (int m = 4 * n_; m < kMaxVariables; ++m) {
        if (e[m] != 0) throw std::domain_error("exponent uses a variable outside x_0..x_{4n-1}");
    }
    if (c.is_zero()) return;
    ComplexRational value = c;
    value.re.canonicalize();
    value.im.canonicalize();
    auto [it, inserted] = terms_.try_emplace(e, std::move(value));
    if (!inserted) {
        it->second += c;
        it->second.re.canonicalize();
        it->second.im.canonicalize();
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ComplexRational RealPolynomial::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? ComplexRational{} : it->second;
}

RealPolynomial RealPolynomial::derivative(int m) const {
    if (m < 0 || m >= 4 * n_) throw std::domain_error("derivative variable out of range");
    RealPolynomial out(n_);
    for (const auto& [e, c] : terms_) {
        if (e[m] == 0) continue;
        Exponent f = e;
        f[m] -= 1;
        out.terms_.emplace(f, c * ComplexRational(static_cast<long>(e[m])));
    }
    return out;
}

ComplexRational RealPolynomial::evaluate(std::span<const Rational> point) const {
    if (static_cast<int>(point.size()) != 4 * n_) {
        throw std::domain_error("evaluation point has wrong number of coordinates");
    }
    ComplexRational sum;
    for (const auto& [e, c] : terms_) {
        Rational mono(1);
        for (int m = 0; m < 4 * n_; ++m) {
            for (int k = 0; k < e[m]; ++k) mono *= point[m];
        }
        sum += c * ComplexRational(mono);
    }
    return sum;
}

double RealPolynomial::evaluate_real(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != 4 * n_) {
        throw std::domain_error("evaluation point has wrong number of coordinates");
    }
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double mono = c.re.get_d();
        for (int m = 0; m < 4 * n_; ++m) mono *= std::pow(point[m], e[m]);
        sum += mono;
    }
    return sum;
}

void RealPolynomial::adopt_dimension(const RealPolynomial& o) {
    if (o.n_ == n_) return;
    if (o.is_constant()) return;
    if (is_constant()) {
        n_ = o.n_;
        return;
    }
    throw std::domain_error("polynomials over different dimensions");
}

RealPolynomial& RealPolynomial::operator+=(const RealPolynomial& o) {
    adopt_dimension(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

RealPolynomial& RealPolynomial::operator-=(const RealPolynomial& o) {
    adopt_dimension(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

RealPolynomial& RealPolynomial::operator*=(const ComplexRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
    if (a.n_ != b.n_ && !a.is_constant() && !b.is_constant()) {
        throw std::domain_error("polynomials over different dimensions");
    }
    RealPolynomial out(a.is_constant() ? b.n_ : a.n_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponent e{};
            for (int m = 0; m < kMaxVariables; ++m) {
                int s = ea[m] + eb[m];
                if (s > 255) throw std::overflow_error("polynomial exponent overflow");
                e[m] = static_cast<std::uint8_t>(s);
            }
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

std::string RealPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << qpt::to_string(c);
        for (int m = 0; m < 4 * n_; ++m) {
            if (e[m] == 0) continue;
            os << "*x" << m;
            if (e[m] > 1) os << "^" << static_cast<int>(e[m]);
        }
    }
    return os.str();
}

}  // namespace qpt
