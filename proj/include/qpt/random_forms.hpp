#pragma once

// Seeded generators for the symbolic and grid checks. All draws go through one
// std::mt19937_64 so a seed fixes every instance.

#include "qpt/calculus.hpp"
#include "qpt/grid.hpp"

#include <random>

namespace qpt {

struct PolynomialShape {
    int max_degree = 4;
    int terms = 5;
    int coefficient_bound = 5;  ///< numerators drawn from [-bound, bound]
    bool complex_coefficients = false;
};

RealPolynomial random_polynomial(std::mt19937_64& rng, int n, const PolynomialShape& shape = {});

/// Form of the given degree with `basis_terms` random basis monomials.
PolyForm random_form(std::mt19937_64& rng, int n, int degree, int basis_terms, const PolynomialShape& shape = {});

/// x^T A x with A = B^T B + I / 4 for a random integer 4n x 4n matrix B (entries in [-3, 3]),
/// divided by `scale`; the real Hessian is positive definite, so the form is strictly PSH.
RealPolynomial random_psd_quadratic(std::mt19937_64& rng, int n, int scale = 1);

/// Smooth PSH function on H^1 for grid checks:
///   c |x - a|^2 + sum_k w_k exp(<b_k, x>) + affine
/// with random a, b_k, positive c, w_k; its Laplacian is bounded below by 8c.
struct SmoothPsh {
    double c = 1.0;
    Point4 center = Point4::Zero();
    std::vector<double> weights;
    std::vector<Point4> directions;
    Point4 slope = Point4::Zero();
    double offset = 0.0;

    [[nodiscard]] double operator()(const Point4& x) const;
    [[nodiscard]] double laplacian(const Point4& x) const;
};

SmoothPsh random_smooth_psh(std::mt19937_64& rng);

/// Sampled pair (u, v) of smooth PSH functions on `domain` with u >= v on the boundary shell and
/// its interior neighbours: u is strongly convex, v is a flatter function lowered until the
/// shell condition holds, so {u < v} is typically a nonempty interior region.
std::pair<GridFunction, GridFunction> random_psh_pair(std::mt19937_64& rng, const DomainPtr& domain);

}  // namespace qpt
