#include "oracle.hpp"
#include "qpt/potential.hpp"

#include <doctest.h>

#include <cmath>

using qpt::Ball;
using qpt::Box4;
using qpt::CompactSpec;
using qpt::Point4;

TEST_CASE("ball membership") {
    const Ball closed{Point4::Zero(), 0.5, false};
    const Ball open{Point4::Zero(), 0.5, true};
    CHECK(closed.contains(Point4(0.5, 0, 0, 0)));
    CHECK_FALSE(open.contains(Point4(0.5, 0, 0, 0)));
    CHECK(open.contains(Point4(0.3, 0.3, 0, 0)));
    CHECK(Ball{Point4(0.1, 0, 0, 0), 0.2, false}.inside(Ball{Point4::Zero(), 0.4, true}));
    CHECK_FALSE(Ball{Point4(0.3, 0, 0, 0), 0.2, false}.inside(Ball{Point4::Zero(), 0.4, true}));
}

TEST_CASE("sets must be compactly inside the domain") {
    auto domain = qpt::Domain::make(Box4(1.0, 11), 1.0);
    CHECK_THROWS_AS((void)CompactSpec::ball(0.5, Point4(0.8, 0, 0, 0)).members(*domain), std::domain_error);
    CHECK_NOTHROW((void)CompactSpec::ball(0.5).members(*domain));
    CHECK(CompactSpec::union_of({Ball{Point4::Zero(), 0.3, true}}).is_open());
    CHECK_FALSE(CompactSpec::ball(0.3).is_open());
}

TEST_CASE("sublevel set of -c/|q|^2 is a ball") {
    auto domain = qpt::Domain::make(Box4(1.0, 21), 1.0);
    const double c = 0.04;
    auto v = std::make_shared<const qpt::GridFunction>(qpt::GridFunction::sample(
        domain, [c](const Point4& x) { return x.squaredNorm() == 0.0 ? -INFINITY : -c / x.squaredNorm(); }));
    for (double m : {1.3, 3.0, 7.0}) {
        CAPTURE(m);
        const auto sub = CompactSpec::sublevel(v, m, Ball{Point4::Zero(), 0.5, false}).members(*domain);
        const auto ball = CompactSpec::open_ball(std::sqrt(c / m)).members(*domain);
        CHECK(sub == ball);
    }
}

TEST_CASE("extremal function follows the radial profile") {
    const Box4 grid(1.0, 21);
    const auto sol = qpt::extremal_function(CompactSpec::ball(0.5), 1.0, grid);
    CHECK(sol.residual <= sol.tol);
    CHECK(sol.tol == doctest::Approx(1e-8));
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (sol.u.domain().kind(i) != qpt::PointKind::interior) continue;
        const double rho = grid.point(i).norm();
        if (std::abs(rho - 0.5) <= 2.0 * grid.spacing()) continue;
        err = std::max(err, std::abs(sol.u[i] - oracle::radial_extremal(rho, 0.5, 1.0)));
    }
    CHECK(err <= 0.05);
    CHECK(sol.levels.size() == 2);
}

TEST_CASE("capacity against the radial flux") {
    const auto c = qpt::capacity(CompactSpec::ball(0.5), 1.0, Box4(1.0, 21));
    // Coarse lattice (h = 0.1): the discrete ball under-resolves its boundary.
    CHECK(c.value == doctest::Approx(oracle::radial_capacity(0.5, 1.0)).epsilon(0.2));
    CHECK(c.diagnostics.near_boundary_fraction > 0.99);
    CHECK(qpt::capacity(CompactSpec::empty(), 1.0, Box4(1.0, 21)).value == 0.0);
}

TEST_CASE("capacity scales like r^2 under dilation") {
    const double base = qpt::capacity(CompactSpec::ball(0.5), 1.0, Box4(1.0, 21)).value;
    const double scaled = qpt::capacity(CompactSpec::ball(1.0), 2.0, Box4(2.0, 21)).value;
    CHECK(scaled == doctest::Approx(4.0 * base).epsilon(1e-6));
}

TEST_CASE("lower capacity from admissible candidates") {
    const Box4 grid(1.0, 21);
    auto domain = qpt::Domain::make(grid, 1.0);
    const auto k = CompactSpec::ball(0.5);
    const auto sol = qpt::extremal_function(k, 1.0, grid);
    qpt::GridFunction shifted = sol.u;
    shifted.values() += 1.0;
    const qpt::GridFunction bowl = qpt::GridFunction::sample(domain, [](const Point4& x) { return x.squaredNorm() / 1.25; });
    const qpt::GridFunction cap = qpt::GridFunction::sample(domain, [](const Point4& x) { return 1.0 - x.squaredNorm(); });
    const auto lower = qpt::capacity_lower(k, 1.0, {bowl, shifted, cap}, grid);
    CHECK(lower.value == doctest::Approx(qpt::capacity_from_solution(k, sol).value).epsilon(1e-6));
    REQUIRE(lower.diagnostics.notes.size() == 1);
    CHECK(lower.diagnostics.notes[0].rfind("candidate 2: rejected", 0) == 0);
}

TEST_CASE("solver and outer capacity errors") {
    qpt::SolverOptions tight;
    tight.max_iterations = 1;
    tight.warm_start = false;
    CHECK_THROWS_AS((void)qpt::extremal_function(CompactSpec::ball(0.5), 1.0, Box4(1.0, 21), tight), qpt::SolverError);
    const auto point = CompactSpec::ball(0.0);
    CHECK_THROWS_AS((void)qpt::outer_capacity(point, 1.0, Box4(1.0, 11), {CompactSpec::open_ball(0.2), CompactSpec::open_ball(0.4)}),
                    std::domain_error);
    CHECK_THROWS_AS((void)qpt::outer_capacity(point, 1.0, Box4(1.0, 11), {}), std::domain_error);
}

TEST_CASE("power-law fit") {
    const std::vector<double> x{0.4, 0.2, 0.1};
    CHECK(qpt::fit_power_law(x, {3 * 0.16, 3 * 0.04, 3 * 0.01}) == doctest::Approx(2.0));
    CHECK(qpt::fit_power_law(x, {0.4, 0.2, 0.1}) == doctest::Approx(1.0));
}
