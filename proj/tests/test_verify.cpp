#include "qpt/random_forms.hpp"
#include "qpt/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using qpt::Box4;
using qpt::GridFunction;
using qpt::Point4;

TEST_CASE("report margins and tolerance") {
    qpt::CheckReport r("demo", 0.5);
    CHECK(r.vacuous);
    r.record("a", 0.2);
    r.record("b", -0.4);
    CHECK(r.passed);
    CHECK(r.worst_margin == -0.4);
    r.record("c", -0.6);
    CHECK_FALSE(r.passed);
    CHECK(r.instances == 3);
    const auto back = qpt::parse_reports(qpt::serialize(r));
    REQUIRE(back.size() == 1);
    CHECK(back[0].check_id == "demo");
    CHECK(back[0].worst_margin == -0.6);
    CHECK_FALSE(back[0].passed);
}

TEST_CASE("window mass of |q|^2 is eight times the window integral") {
    auto domain = qpt::Domain::make(Box4(1.0, 21), 1.0);
    const GridFunction u = GridFunction::sample(domain, [](const Point4& x) { return x.squaredNorm(); });
    const qpt::Window w{Point4::Zero(), 0.2, 0.6};
    double integral = 0.0;
    for (std::size_t i = 0; i < domain->box().size(); ++i) integral += w(domain->box().point(i));
    integral *= std::pow(domain->spacing(), 4);
    CHECK(qpt::window_mass(u, w) == doctest::Approx(8.0 * integral).epsilon(1e-10));
    CHECK_THROWS(qpt::window_mass(u, qpt::Window{Point4::Zero(), 0.5, 0.98}));
}

TEST_CASE("window profile") {
    const qpt::Window w{Point4::Zero(), 0.2, 0.6};
    CHECK(w(Point4(0.1, 0, 0, 0)) == 1.0);
    CHECK(w(Point4(0.4, 0, 0, 0)) == doctest::Approx(std::pow(1.0 - 0.25, 3)));
    CHECK(w(Point4(0.7, 0, 0, 0)) == 0.0);
}

TEST_CASE("smooth max") {
    CHECK(qpt::smooth_max(1.0, -INFINITY, 0.1) == 1.0);
    CHECK(qpt::smooth_max(0.0, 0.0, 0.2) == doctest::Approx(0.1));
    CHECK(qpt::smooth_max(2.0, -5.0, 0.1) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(qpt::smooth_max(-1e9, -1.0, 0.1) >= -1.0);
}

TEST_CASE("comparison on a random pair and precondition errors") {
    auto domain = qpt::Domain::make(Box4(1.0, 13), 1.0);
    std::mt19937_64 rng(4);
    auto [u, v] = qpt::random_psh_pair(rng, domain);
    CHECK(qpt::check_comparison(u, v).passed);
    CHECK_THROWS_AS((void)qpt::check_comparison(v, u), std::domain_error);
    const GridFunction concave = GridFunction::sample(domain, [](const Point4& x) { return 5.0 - x.squaredNorm(); });
    CHECK_THROWS_AS((void)qpt::check_comparison(concave, v), std::domain_error);
}

TEST_CASE("symbolic comparison and Demailly instances") {
    CHECK(qpt::check_comparison_symbolic(3, 4, 2).passed);
    CHECK(qpt::check_demailly_symbolic(3, 4, 2).passed);
}

TEST_CASE("Demailly on a random pair") {
    auto domain = qpt::Domain::make(Box4(1.0, 17), 1.0);
    std::mt19937_64 rng(9);
    auto [u, v] = qpt::random_psh_pair(rng, domain);
    const auto r = qpt::check_demailly(u, v, 2.0 * domain->spacing());
    CHECK(r.passed);
    CHECK(r.instances == 2);
}

TEST_CASE("truncated convergence on a coarse grid") {
    const auto r = qpt::convergence_battery(qpt::ConvergenceKind::increasing_truncated, 21);
    CHECK(r.passed);
}

TEST_CASE("extremal solution properties") {
    const auto sol = qpt::extremal_function(qpt::CompactSpec::ball(0.4), 1.0, Box4(1.0, 17));
    CHECK(qpt::check_extremal_solution(sol).passed);
}
