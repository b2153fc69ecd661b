// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.

#include "oracle.hpp"
#include "qpt/calculus.hpp"
#include "qpt/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

Outcome identities() {
    const auto start = Clock::now();
    const auto r = qpt::check_identities(1, 200, {1, 2, 3});
    const double t = seconds_since(start);
    bool mutations_caught = true;
    for (auto m : {qpt::Mutation::nabla_sign_flip, qpt::Mutation::dropped_half, qpt::Mutation::wrong_permutation_sign}) {
        mutations_caught = mutations_caught && !qpt::check_identities(1, 20, {1, 2, 3}, m).passed;
    }
    return {r.passed && r.instances == 600 && t < 60.0 && mutations_caught,
            fmt("600 instances, worst margin %g, %.1f s, mutations caught: ", r.worst_margin, t) +
                (mutations_caught ? "all" : "not all")};
}

Outcome densities() {
    bool ok = true;
    std::string detail;
    for (int n : {1, 2}) {
        const qpt::RealPolynomial d = qpt::ma_density_power(qpt::RealPolynomial::norm_squared(n));
        const oracle::Poly expected = oracle::ma_density(oracle::norm_squared(n), n);
        const double value = expected.at(oracle::Monomial{}).real();
        const bool match = expected.size() == 1 && d.is_constant() &&
                           d == qpt::RealPolynomial::constant(n, qpt::ComplexRational(static_cast<long>(value)));
        ok = ok && match && value == (n == 1 ? 8.0 : 128.0);
        detail += "n=" + std::to_string(n) + ": " + d.to_string() + " (oracle " + fmt("%g", value) + ") ";
    }
    return {ok, detail};
}

Outcome moore() {
    const auto r = qpt::check_moore_ratio(1, 50, {1, 2});
    return {r.passed && r.instances == 100,
            fmt("%g instances, worst relative deviation %g", static_cast<double>(r.instances), std::abs(r.worst_margin))};
}

struct RadialRun {
    qpt::ExtremalSolution sol;
    double capacity = 0.0;
    double seconds = 0.0;
};

const RadialRun& radial_run() {
    static const RadialRun run = [] {
        const auto start = Clock::now();
        RadialRun r{qpt::extremal_function(qpt::CompactSpec::ball(0.5), 1.0, qpt::Box4(1.0, 41)), 0.0, 0.0};
        r.capacity = qpt::capacity_from_solution(qpt::CompactSpec::ball(0.5), r.sol).value;
        r.seconds = seconds_since(start);
        return r;
    }();
    return run;
}

Outcome capacity_ball() {
    const RadialRun& r = radial_run();
    const double target = oracle::radial_capacity(0.5, 1.0);
    const double rel = std::abs(r.capacity - target) / target;
    return {rel <= 0.1 && r.seconds < 600.0 && r.sol.levels.size() > 1,
            fmt("C = %.6g vs %.6g, relative error %.4f", r.capacity, target, rel) + fmt(", %.1f s", r.seconds)};
}

Outcome extremal_profile() {
    const RadialRun& r = radial_run();
    const auto& grid = r.sol.u.box();
    const double h = grid.spacing();
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (r.sol.u.domain().kind(i) != qpt::PointKind::interior) continue;
        const double rho = grid.point(i).norm();
        if (rho <= 0.5 + 2.0 * h) continue;
        err = std::max(err, std::abs(r.sol.u[i] - oracle::radial_extremal(rho, 0.5, 1.0)));
    }
    const double range = 1.0;
    return {err <= 0.05 && r.sol.residual <= 1e-8 * range,
            fmt("sup error %.4f outside the 2h collar, residual %g", err, r.sol.residual)};
}

Outcome inequalities() {
    const auto c = qpt::comparison_battery(1, 20, 21);
    const auto d = qpt::demailly_battery(1, 20, 21);
    return {c.passed && d.passed, fmt("comparison worst margin %g (tol %g), ", c.worst_margin, c.tolerance) +
                                      fmt("demailly worst margin %g (tol %g)", d.worst_margin, d.tolerance)};
}

Outcome axioms() {
    const auto r = qpt::check_capacity_axioms();
    return {r.passed, fmt("%g instances, worst margin %g", static_cast<double>(r.instances), r.worst_margin)};
}

Outcome polar_point() {
    const qpt::Box4 grid(1.0, 41);
    const auto shrink = qpt::check_point_capacity_decay({0.4, 0.2, 0.1, 0.05}, grid, 1.0);
    const auto sub = qpt::check_sublevel_decay(0.04, 0.5, {1, 2, 4, 8, 16}, grid, 1.0);
    return {shrink.passed && sub.passed, fmt("fitted exponent %.4f, ", shrink.metrics.at("exponent")) +
                                             fmt("sublevel worst margin %g", sub.worst_margin)};
}

Outcome convergence() {
    const auto mol = qpt::convergence_battery(qpt::ConvergenceKind::decreasing_mollified, 41);
    const auto tru = qpt::convergence_battery(qpt::ConvergenceKind::increasing_truncated, 41);
    return {mol.passed && tru.passed,
            fmt("mollified worst relative deviation %.4f, truncated %.4f", 0.02 - mol.worst_margin,
                0.02 - tru.worst_margin)};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"exact identity suite", identities},
        {"symbolic densities", densities},
        {"Moore-determinant proportionality", moore},
        {"n=1 ball capacity", capacity_ball},
        {"extremal function profile", extremal_profile},
        {"inequality battery", inequalities},
        {"capacity axioms", axioms},
        {"polar-point demonstration", polar_point},
        {"convergence of approximating sequences", convergence},
    };
    int failed = 0;
    int k = 0;
    for (const auto& [name, run] : criteria) {
        ++k;
        Outcome o{false, {}};
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.passed;
        std::printf("criterion %d %s: %s (%s)\n", k, name, o.passed ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", k - failed, k);
    return failed == 0 ? 0 : 1;
}
