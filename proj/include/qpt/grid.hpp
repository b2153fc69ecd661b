#pragma once

// Uniform lattices over boxes in R^4 = H^1 and the finite-difference Monge-Ampere
// calculus on them. For n = 1 the density of (Delta u) is the Euclidean Laplacian.

#include "qpt/report.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qpt {

using Point4 = Eigen::Vector4d;

/// Axis-aligned cube [center - half_width, center + half_width]^4 sampled at m points per axis.
class Box4 {
public:
    Box4(Point4 center, double half_width, int resolution);
    explicit Box4(double half_width = 1.0, int resolution = 21) : Box4(Point4::Zero(), half_width, resolution) {}

    [[nodiscard]] const Point4& center() const { return center_; }
    [[nodiscard]] double half_width() const { return half_width_; }
    [[nodiscard]] int resolution() const { return m_; }
    [[nodiscard]] double spacing() const { return 2.0 * half_width_ / (m_ - 1); }
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::array<std::ptrdiff_t, 4> strides() const;

    [[nodiscard]] std::array<int, 4> coords(std::size_t linear) const;
    [[nodiscard]] std::size_t linear(const std::array<int, 4>& c) const;
    [[nodiscard]] Point4 point(std::size_t linear) const;
    [[nodiscard]] Point4 point(const std::array<int, 4>& c) const;

    /// Same lattice at resolution (m+1)/2; requires (m-1) even.
    [[nodiscard]] Box4 coarsened() const;

    friend bool operator==(const Box4& a, const Box4& b) {
        return a.center_ == b.center_ && a.half_width_ == b.half_width_ && a.m_ == b.m_;
    }

private:
    Point4 center_;
    double half_width_;
    int m_;
};

enum class PointKind : std::uint8_t {
    interior,  ///< strictly inside the domain ball
    boundary,  ///< outside the ball with an interior lattice neighbour; carries boundary data
    outside,   ///< never read by stencils
};

/// Ball-shaped domain Omega = B(box center, radius) together with its lattice mask.
class Domain {
public:
    static std::shared_ptr<const Domain> make(const Box4& box, double radius);

    [[nodiscard]] const Box4& box() const { return box_; }
    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] double spacing() const { return box_.spacing(); }
    [[nodiscard]] PointKind kind(std::size_t i) const { return static_cast<PointKind>(kind_[i]); }
    [[nodiscard]] const std::vector<std::int32_t>& interior() const { return interior_; }
    [[nodiscard]] const std::vector<std::int32_t>& boundary() const { return boundary_; }
    [[nodiscard]] bool same_lattice(const Domain& o) const { return box_ == o.box_ && radius_ == o.radius_; }

private:
    Domain(const Box4& box, double radius);

    Box4 box_;
    double radius_;
    std::vector<std::uint8_t> kind_;
    std::vector<std::int32_t> interior_;
    std::vector<std::int32_t> boundary_;
};

using DomainPtr = std::shared_ptr<const Domain>;

/// Values on the lattice of a domain. Interior points holding a non-finite value are
/// singular (poles) and are skipped by density accumulation and PSH checks.
class GridFunction {
public:
    GridFunction(DomainPtr domain, double fill);
    GridFunction(DomainPtr domain, Eigen::ArrayXd values);

    /// Samples f at interior and boundary points; outside points hold 0.
    static GridFunction sample(DomainPtr domain, const std::function<double(const Point4&)>& f);
    static GridFunction sample(const Box4& box, double radius, const std::function<double(const Point4&)>& f);

    [[nodiscard]] const Domain& domain() const { return *domain_; }
    [[nodiscard]] const DomainPtr& domain_ptr() const { return domain_; }
    [[nodiscard]] const Box4& box() const { return domain_->box(); }
    [[nodiscard]] double spacing() const { return domain_->spacing(); }
    [[nodiscard]] const Eigen::ArrayXd& values() const { return values_; }
    [[nodiscard]] Eigen::ArrayXd& values() { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

    /// Largest |value| over finite interior and boundary values.
    [[nodiscard]] double sup_norm() const;

private:
    DomainPtr domain_;
    Eigen::ArrayXd values_;
};

/// Pointwise maximum; both functions must live on the same domain.
GridFunction max(const GridFunction& a, const GridFunction& b);

/// Density per unit volume at lattice points; mass = sum density * h^4.
struct MeasureGrid {
    DomainPtr domain;
    Eigen::ArrayXd density;
    std::vector<char> resolved;  ///< interior point whose full stencil is finite

    [[nodiscard]] double cell_volume() const;
    [[nodiscard]] double total_mass() const;
};

/// 9-point Laplacian stencil at interior points; boundary and unresolved points get 0.
MeasureGrid fd_ma_density(const GridFunction& u);

using Region = std::function<bool(const Point4&)>;

/// Lattice membership flags of a region; throws if the region reaches a boundary or
/// outside point.
std::vector<char> region_members(const Domain& domain, const Region& region);

double ma_mass(const MeasureGrid& mu, std::span<const char> members);
double ma_mass(const MeasureGrid& mu, const Region& region);
double ma_mass(const GridFunction& u, const Region& region);

/// Interior points whose mollifier support of radius eps lies in the open domain ball.
std::vector<char> eroded_interior(const Domain& domain, double eps);

/// Convolution with the normalized discrete kernel (1 - (r/eps)^2)^3, r < eps, on the eroded
/// interior; other points keep their values.
GridFunction mollify(const GridFunction& u, double eps);

/// Passes iff the discrete Laplacian is >= -tol at every resolved interior point.
CheckReport psh_check(const GridFunction& u, double tol);

/// Multilinear interpolation of a function on the coarsened lattice onto `fine`.
GridFunction prolongate(const GridFunction& coarse, DomainPtr fine);

// Snapshot dump: one header line
//   qgrid n=1 center=c0,c1,c2,c3 half_width=W resolution=M radius=R format=text|binary
// followed by M^4 values in lexicographic (x0 slowest) order: one "%.17g" per line for
// text, raw little-endian float64 for binary.
enum class GridFormat { text, binary };
void write_grid(std::ostream& os, const GridFunction& u, GridFormat format);
void write_grid(const std::string& path, const GridFunction& u, GridFormat format);
GridFunction read_grid(std::istream& is);
GridFunction read_grid(const std::string& path);

}  // namespace qpt
