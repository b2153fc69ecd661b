#pragma once

// Relative extremal functions and quaternionic capacities for n = 1, where the
// Monge-Ampere measure of u is its Laplacian and all solves happen on a masked
// uniform lattice over a ball Omega = B(0, R).

#include "qpt/grid.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpt {

struct Ball {
    Point4 center = Point4::Zero();
    double radius = 0.0;
    bool open = false;

    [[nodiscard]] bool contains(const Point4& x) const;
    /// Every point of this ball lies in `outer` (continuum test).
    [[nodiscard]] bool inside(const Ball& outer) const;
};

/// A set E with closure compactly inside Omega, described so it can be rasterized on any
/// lattice: empty, a finite union of balls, or {v < -threshold} intersected with a window ball.
class CompactSpec {
public:
    enum class Kind { empty, balls, sublevel };

    static CompactSpec empty();
    static CompactSpec ball(double radius, Point4 center = Point4::Zero());
    static CompactSpec open_ball(double radius, Point4 center = Point4::Zero());
    static CompactSpec union_of(std::vector<Ball> balls);
    static CompactSpec sublevel(std::shared_ptr<const GridFunction> v, double threshold, Ball window);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] const std::vector<Ball>& balls() const { return balls_; }
    [[nodiscard]] bool is_open() const;
    [[nodiscard]] std::string describe() const;

    /// Lattice points of the set. Throws std::domain_error when a member is not an interior
    /// point of the domain (the set is not compactly inside Omega).
    [[nodiscard]] std::vector<char> members(const Domain& domain) const;

private:
    Kind kind_ = Kind::empty;
    std::vector<Ball> balls_;
    std::shared_ptr<const GridFunction> level_;
    double threshold_ = 0.0;
};

struct SolverOptions {
    /// Stop once the largest update of a sweep is <= tol; negative means 1e-8 * (sup - inf of the obstacle).
    double tol = -1.0;
    long max_iterations = 1'000'000;
    /// Solve on successively coarsened lattices first (down to resolution >= 11) and prolongate.
    bool warm_start = true;
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual, long iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
    [[nodiscard]] double residual() const { return residual_; }
    [[nodiscard]] long iterations() const { return iterations_; }

private:
    double residual_;
    long iterations_;
};

struct LevelStats {
    int resolution = 0;
    long iterations = 0;
    double residual = 0.0;
};

/// Discrete relative extremal function: the fixed point of
///   u(x) <- min(obstacle(x), average of the 8 lattice neighbours of x)
/// with obstacle = -1 on E and 0 elsewhere, and u = 0 on the boundary shell.
struct ExtremalSolution {
    GridFunction u;
    GridFunction obstacle;
    long iterations = 0;   ///< sweeps on the finest lattice
    double residual = 0.0; ///< largest update in the final sweep
    double tol = 0.0;
    std::vector<LevelStats> levels;
};

ExtremalSolution extremal_function(const CompactSpec& e, double omega_radius, const Box4& grid,
                                   const SolverOptions& options = {});

enum class CapacityMethod { extremal_mass, candidate_sup, open_cover_limit };
std::string to_string(CapacityMethod m);

struct CapacityDiagnostics {
    int resolution = 0;
    long iterations = 0;
    double residual = 0.0;
    /// Share of the Monge-Ampere mass lying within 3h of the lattice boundary of K.
    double near_boundary_fraction = 1.0;
    std::vector<double> sequence;  ///< per-neighbourhood values for open-cover limits
    std::vector<std::string> notes;
};

struct CapacityValue {
    double value = 0.0;
    CapacityMethod method = CapacityMethod::extremal_mass;
    CapacityDiagnostics diagnostics;
};

/// C(K, Omega) as the Monge-Ampere mass of the solved extremal function.
CapacityValue capacity(const CompactSpec& k, double omega_radius, const Box4& grid, const SolverOptions& options = {});

/// Same, reusing a solution (e.g. for mass-location diagnostics).
CapacityValue capacity_from_solution(const CompactSpec& k, const ExtremalSolution& solution);

/// Share of the mass of mu within `width` of the lattice boundary of the member set.
double mass_fraction_near_boundary(const MeasureGrid& mu, const std::vector<char>& members, double width);

/// sup over admissible candidates (PSH, 0 <= u <= 1) of the mass of (Delta u) on K.
/// Inadmissible candidates are skipped and listed in the diagnostics notes.
CapacityValue capacity_lower(const CompactSpec& k, double omega_radius, const std::vector<GridFunction>& candidates,
                             const Box4& grid, double psh_tol = -1.0);

/// Limit of C(omega_j, Omega) over a shrinking schedule of open ball unions containing E.
/// An empty schedule is allowed for open E, in which case C(E, Omega) is returned.
CapacityValue outer_capacity(const CompactSpec& e, double omega_radius, const Box4& grid,
                             const std::vector<CompactSpec>& shrink_schedule, const SolverOptions& options = {});

/// Capacities of {v < -m} ∩ window for increasing thresholds m, relative to v's domain.
std::vector<CapacityValue> sublevel_capacity_decay(std::shared_ptr<const GridFunction> v, const Ball& window,
                                                   const std::vector<double>& thresholds,
                                                   const SolverOptions& options = {});

/// Least-squares slope of log y against log x.
double fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qpt
