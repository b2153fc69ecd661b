#include "qpt/grid.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using qpt::Box4;
using qpt::Domain;
using qpt::GridFunction;
using qpt::Point4;

namespace {

double norm2(const Point4& x) { return x.squaredNorm(); }

std::size_t interior_count(const Domain& d) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < d.box().size(); ++i) count += d.kind(i) == qpt::PointKind::interior;
    return count;
}

}  // namespace

TEST_CASE("box lattice geometry") {
    const Box4 box(Point4(0.5, 0, 0, -0.5), 1.0, 9);
    CHECK(box.spacing() == doctest::Approx(0.25));
    CHECK(box.size() == 6561);
    const auto c = box.coords(box.linear({1, 2, 3, 4}));
    CHECK(c == std::array<int, 4>{1, 2, 3, 4});
    CHECK(box.point({0, 4, 8, 4}).isApprox(Point4(-0.5, 0, 1, -0.5)));
    CHECK(box.coarsened().resolution() == 5);
    CHECK_THROWS_AS((void)box.coarsened().coarsened(), std::domain_error);
}

TEST_CASE("stencil is exact on quadratics") {
    auto domain = Domain::make(Box4(1.0, 11), 1.0);
    const GridFunction u = GridFunction::sample(domain, [](const Point4& x) { return norm2(x) + 3 * x[1] - 2; });
    const qpt::MeasureGrid mu = qpt::fd_ma_density(u);
    const double h4 = std::pow(domain->spacing(), 4);
    CHECK(mu.cell_volume() == doctest::Approx(h4));
    double max_dev = 0.0;
    for (std::size_t i = 0; i < domain->box().size(); ++i) {
        if (domain->kind(i) == qpt::PointKind::interior) max_dev = std::max(max_dev, std::abs(mu.density[static_cast<Eigen::Index>(i)] - 8.0));
    }
    CHECK(max_dev < 1e-9);
    CHECK(mu.total_mass() == doctest::Approx(8.0 * h4 * static_cast<double>(interior_count(*domain))).epsilon(1e-12));
}

TEST_CASE("regions must stay inside the domain") {
    auto domain = Domain::make(Box4(1.0, 11), 1.0);
    const auto members = qpt::region_members(*domain, [](const Point4& x) { return x.norm() < 0.33; });
    std::size_t count = 0;
    for (char m : members) count += m != 0;
    // Spacing 0.2, |x| < 0.33: origin, 8 axis points and 24 planar diagonals at 0.283.
    CHECK(count == 33);
    CHECK_THROWS_AS(qpt::region_members(*domain, [](const Point4&) { return true; }), std::domain_error);
}

TEST_CASE("psh check detects concavity") {
    auto domain = Domain::make(Box4(1.0, 9), 1.0);
    CHECK(qpt::psh_check(GridFunction::sample(domain, norm2), 0.0).passed);
    CHECK_FALSE(qpt::psh_check(GridFunction::sample(domain, [](const Point4& x) { return -norm2(x); }), 1e-6).passed);
}

TEST_CASE("max and mollify") {
    auto domain = Domain::make(Box4(1.0, 21), 1.0);
    const GridFunction a = GridFunction::sample(domain, [](const Point4& x) { return x[0]; });
    const GridFunction b = GridFunction::sample(domain, [](const Point4& x) { return -x[0]; });
    const GridFunction m = qpt::max(a, b);
    for (std::size_t i = 0; i < domain->box().size(); i += 97) {
        if (domain->kind(i) != qpt::PointKind::outside) CHECK(m[i] == std::abs(domain->box().point(i)[0]));
    }
    // A symmetric kernel reproduces affine functions.
    const GridFunction affine = GridFunction::sample(domain, [](const Point4& x) { return 2 * x[0] - x[3] + 1; });
    const GridFunction smooth = qpt::mollify(affine, 0.3);
    CHECK(((smooth.values() - affine.values()).abs().maxCoeff()) < 1e-12);
}

TEST_CASE("prolongation is exact for multilinear functions") {
    auto fine = Domain::make(Box4(1.0, 21), 1.0);
    auto coarse = Domain::make(fine->box().coarsened(), 1.0);
    const auto f = [](const Point4& x) { return 1 + x[0] - 2 * x[1] + x[2] * x[3]; };
    const GridFunction up = qpt::prolongate(GridFunction::sample(coarse, f), fine);
    double dev = 0.0;
    for (std::size_t i = 0; i < fine->box().size(); ++i) {
        if (fine->box().point(i).norm() < 0.8) dev = std::max(dev, std::abs(up[i] - f(fine->box().point(i))));
    }
    CHECK(dev < 1e-12);
}

TEST_CASE("snapshot round trip") {
    auto domain = Domain::make(Box4(Point4(0.1, 0, 0, 0), 1.0, 7), 0.9);
    const GridFunction u = GridFunction::sample(domain, [](const Point4& x) { return std::exp(x[0]) / 3.0; });
    for (auto format : {qpt::GridFormat::text, qpt::GridFormat::binary}) {
        std::stringstream ss;
        qpt::write_grid(ss, u, format);
        const GridFunction back = qpt::read_grid(ss);
        CHECK(back.box() == u.box());
        CHECK((back.values() == u.values()).all());
    }
    std::stringstream bad("qgrid n=1 center=0,0,0,0 half_width=1 resolution=3 radius=1 format=text\n1\n2\n");
    CHECK_THROWS(qpt::read_grid(bad));
}
