#pragma once

// Reproducible checks of the operator identities, Monge-Ampere inequalities and capacity
// properties. Each check returns a CheckReport; symbolic checks use tolerance 0.

#include "qpt/calculus.hpp"
#include "qpt/potential.hpp"
#include "qpt/report.hpp"

#include <cstdint>
#include <vector>

namespace qpt {

/// Deliberate defects used to show the identity suite is not vacuous.
enum class Mutation {
    none,
    nabla_sign_flip,         ///< nabla_00 negated
    dropped_half,            ///< Delta_ij without the factor 1/2
    wrong_permutation_sign,  ///< unsigned Delta_ij expansion
};
std::string to_string(Mutation m);
Mutation parse_mutation(const std::string& s);

QuaternionicCalculus mutated_calculus(int n, Mutation m);

/// Per random polynomial u (degree <= 4) and random forms F, G:
///   d0 d0 F = d1 d1 F = 0, d0 d1 F = -d1 d0 F, Leibniz rule for F ^ G, d0 Delta u = d1 Delta u = 0,
///   Delta u = sum_ij Delta_ij u w^i ^ w^j, top coefficient of Delta u_1 ^ ... ^ Delta u_n = ma_density,
///   Delta u_1 ^ ... = d0(d1 u_1 ^ Delta u_2 ...) = Delta(u_1 Delta u_2 ^ ...),
/// and ma_density(A) = c_n moore_det(hessian(A)) for a random PSD quadratic A with c_n calibrated
/// on |q|^2. Margin per instance: 0 if all residuals vanish, else minus the residual term count.
CheckReport check_identities(std::uint64_t seed, int count, const std::vector<int>& n_range,
                             Mutation mutation = Mutation::none);

/// ma_density(A) / moore_det(hessian(A)) over `count` random PSD quadratics per n, compared
/// with the |q|^2 calibration. Margin: -(relative deviation); tolerance 1e-9.
CheckReport check_moore_ratio(std::uint64_t seed, int count, const std::vector<int>& n_range);

/// Empirical Chern-Levine-Nirenberg constant R(u) = mass of (Delta u) on L / sup_K |u| for n = 1.
/// Instances: finiteness of each ratio, invariance under u -> lambda u for lambda in {2, 10}, and
/// R on successively shrunk L never exceeding R on L. Degenerate sup_K |u| = 0 is skipped.
CheckReport check_cln(const CompactSpec& k, const CompactSpec& l, const std::vector<GridFunction>& samples,
                      const std::vector<CompactSpec>& shrunk_l = {});

/// margin = mass of (Delta u) on {u < v} - mass of (Delta v) on {u < v}.
/// Throws std::domain_error unless u >= v on the boundary shell and its interior neighbours,
/// and unless both pass psh_check with `psh_tol` (negative: 1e-6 / h^2).
CheckReport check_comparison(const GridFunction& u, const GridFunction& v, double psh_tol = -1.0);

/// Symbolic n >= 2 comparison instances u = A - 1, v = lambda (A - 1) - delta with A >= |q|^2
/// on the unit ball, {u < v} an ellipsoid; margin = vol({u < v}) (D(u) - D(v)) with exact densities.
CheckReport check_comparison_symbolic(std::uint64_t seed, int count, int n);

/// Cell-level Demailly margin: mass of (Delta rho_eps * max(u, v)) minus the indicator-weighted
/// masses of (Delta u), (Delta v), summed over eroded interior cells farther than 2 eps from
/// {|u - v| < eps}. The tolerance bounds the mollifier's second-moment bias. A second, exact
/// instance compares the unmollified max pointwise on the whole resolved interior.
CheckReport check_demailly(const GridFunction& u, const GridFunction& v, double smoothing_eps);

/// Symbolic n >= 2 instances: at random rational points off the band {|u - v| < eps}, the density
/// of max(u, v) (the active quadratic) against the indicator-weighted densities.
CheckReport check_demailly_symbolic(std::uint64_t seed, int count, int n);

/// Smooth window: 1 on |x - center| <= plateau, (1 - s^2)^3 transition with
/// s = (|x - center| - plateau) / (support - plateau) out to `support`, 0 beyond.
struct Window {
    Point4 center = Point4::Zero();
    double plateau = 0.0;
    double support = 0.5;
    [[nodiscard]] double operator()(const Point4& x) const;
};

/// Distributional window mass sum_x u(x) (Delta_h phi)(x) h^4. Throws if the window's stencil
/// reaches a non-interior point or a non-finite value of u.
double window_mass(const GridFunction& u, const Window& phi);

enum class ConvergenceKind { decreasing_mollified, increasing_truncated };
std::string to_string(ConvergenceKind k);

struct ConvergenceOptions {
    std::vector<double> eps;     ///< mollifier scales, decreasing
    std::vector<double> levels;  ///< truncation depths j for max(u, -j), increasing
    std::vector<Window> windows;
    std::vector<double> target_masses;  ///< optional; default: window_mass of the target
    double relative_tol = 0.02;
    /// Estimate the limit of a mollified sequence by one Richardson step on its last two
    /// members (mass error O(eps^2)); otherwise the final member is compared.
    bool extrapolate = true;
};

/// Window masses of the sequence against the target; the limit estimate must be within
/// relative_tol of every target mass. Trends and the final member's deviation are metrics.
CheckReport check_convergence(ConvergenceKind kind, const GridFunction& target, const ConvergenceOptions& options);

struct AxiomFamilies {
    Box4 grid = Box4(1.4, 29);
    double omega_radius = 1.0;
    double larger_omega_radius = 1.3;
    std::vector<double> nested_radii = {0.3, 0.4, 0.5};
    double limit_radius = 0.5;
    std::vector<int> limit_steps = {4, 8, 16, 32, 64, 128};
    std::vector<Ball> disjoint = {Ball{Point4(0.35, 0, 0, 0), 0.2, false}, Ball{Point4(-0.35, 0, 0, 0), 0.2, false}};
    double limit_tol = 0.03;
    SolverOptions solver;
};

/// Monotonicity in K, anti-monotonicity in Omega, subadditivity, increasing open unions and
/// decreasing compacts; every computed capacity is kept as a metric.
CheckReport check_capacity_axioms(const AxiomFamilies& families = {});

/// Solver-level properties of an extremal solution: -1 <= u <= 0, u <= obstacle, u = 0 on the
/// shell, and the complementarity dichotomy |Delta_h u| <= 8 tol / h^2 wherever u < obstacle.
CheckReport check_extremal_solution(const ExtremalSolution& s);

/// Shrinking-ball outer capacities of {0}: neighbourhoods are open balls of radius r (padded by a
/// relative 1e-9 so that lattice points on the sphere |x| = r are kept). Passes iff the fitted
/// exponent p of C ~ r^p satisfies |p - 2| <= exponent_tol.
CheckReport check_point_capacity_decay(const std::vector<double>& radii, const Box4& grid, double omega_radius,
                                       double exponent_tol = 0.1, const SolverOptions& options = {});

/// Capacities of {v < -m} ∩ window for v = -c / |q|^2: non-increasing in m and
/// max m C(m) <= growth_bound * m_1 C(m_1).
CheckReport check_sublevel_decay(double c, double window_radius, const std::vector<double>& thresholds,
                                 const Box4& grid, double omega_radius, double growth_bound = 2.0,
                                 const SolverOptions& options = {});

/// (a + b + sqrt((a - b)^2 + delta^2)) / 2, evaluated without cancellation; b = -inf gives a.
double smooth_max(double a, double b, double delta);

/// smooth_max(-1, -r^2 / |x - a|^2, delta) on the lattice of `domain`.
GridFunction smoothed_pole(const DomainPtr& domain, double r, const Point4& a, double delta);

struct BatteryOptions {
    std::uint64_t seed = 1;
    int count = 200;
    int pair_count = 20;
    int resolution = 21;
    int convergence_resolution = 41;
    Mutation mutation = Mutation::none;
};

/// Randomized grid pairs from random_psh_pair plus symbolic n = 2 instances, one report each.
CheckReport comparison_battery(std::uint64_t seed, int pairs, int resolution);
CheckReport demailly_battery(std::uint64_t seed, int pairs, int resolution);
/// Smoothed-pole samples and |q|^2 with K = ball(0.7), L = ball(0.5) and L shrinking to ball(0.1).
CheckReport cln_battery(std::uint64_t seed, int resolution);
/// Mollified smoothed pole (eps = 8h, 4h, 2h) or truncations of -0.04 / |q|^2 (j = 1, 2, 4, 8)
/// against plateau windows around the origin.
CheckReport convergence_battery(ConvergenceKind kind, int resolution, std::vector<double> target_masses = {});
std::vector<Window> convergence_windows(ConvergenceKind kind);

/// identities, moore-ratio, comparison, demailly, cln, both convergence checks, capacity-axioms.
std::vector<CheckReport> standard_battery(const BatteryOptions& options);

}  // namespace qpt
