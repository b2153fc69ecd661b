#include "qpt/grid.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qpt {

Box4::Box4(Point4 center, double half_width, int resolution)
    : center_(std::move(center)), half_width_(half_width), m_(resolution) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw std::domain_error("box half-width must be positive");
    if (resolution < 5 || resolution % 2 == 0) throw std::domain_error("grid resolution must be odd and >= 5");
    if (std::pow(static_cast<double>(resolution), 4) > static_cast<double>(std::numeric_limits<std::int32_t>::max())) {
        throw std::domain_error("grid resolution too large");
    }
}

std::size_t Box4::size() const {
    const auto m = static_cast<std::size_t>(m_);
    return m * m * m * m;
}

std::array<std::ptrdiff_t, 4> Box4::strides() const {
    const std::ptrdiff_t m = m_;
    return {m * m * m, m * m, m, 1};
}

std::array<int, 4> Box4::coords(std::size_t linear) const {
    std::array<int, 4> c{};
    for (int d = 3; d >= 0; --d) {
        c[d] = static_cast<int>(linear % static_cast<std::size_t>(m_));
        linear /= static_cast<std::size_t>(m_);
    }
    return c;
}

std::size_t Box4::linear(const std::array<int, 4>& c) const {
    std::size_t i = 0;
    for (int d = 0; d < 4; ++d) i = i * static_cast<std::size_t>(m_) + static_cast<std::size_t>(c[d]);
    return i;
}

Point4 Box4::point(const std::array<int, 4>& c) const {
    const double h = spacing();
    Point4 p;
    for (int d = 0; d < 4; ++d) p[d] = center_[d] - half_width_ + h * c[d];
    return p;
}

Point4 Box4::point(std::size_t linear) const { return point(coords(linear)); }

Box4 Box4::coarsened() const {
    if ((m_ - 1) % 2 != 0 || (m_ + 1) / 2 < 5) throw std::domain_error("lattice cannot be coarsened");
    return Box4(center_, half_width_, (m_ + 1) / 2);
}

Domain::Domain(const Box4& box, double radius) : box_(box), radius_(radius), kind_(box.size()) {
    if (!(radius > 0.0)) throw std::domain_error("domain radius must be positive");
    if (radius > box.half_width() * (1.0 + 1e-12)) throw std::domain_error("domain ball must fit inside the box");
    const double limit = radius * radius * (1.0 - 1e-12);
    const std::size_t size = box.size();
    for (std::size_t i = 0; i < size; ++i) {
        const double r2 = (box.point(i) - box.center()).squaredNorm();
        kind_[i] = static_cast<std::uint8_t>(r2 < limit ? PointKind::interior : PointKind::outside);
    }
    const auto strides = box.strides();
    for (std::size_t i = 0; i < size; ++i) {
        if (kind_[i] != static_cast<std::uint8_t>(PointKind::interior)) continue;
        interior_.push_back(static_cast<std::int32_t>(i));
        for (int d = 0; d < 4; ++d) {
            for (std::ptrdiff_t s : {strides[d], -strides[d]}) {
                auto& k = kind_[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + s)];
                if (k == static_cast<std::uint8_t>(PointKind::outside)) k = static_cast<std::uint8_t>(PointKind::boundary);
            }
        }
    }
    if (interior_.empty()) throw std::domain_error("domain has no interior lattice points");
    for (std::size_t i = 0; i < size; ++i) {
        if (kind_[i] == static_cast<std::uint8_t>(PointKind::boundary)) boundary_.push_back(static_cast<std::int32_t>(i));
    }
}

DomainPtr Domain::make(const Box4& box, double radius) {
    return std::shared_ptr<const Domain>(new Domain(box, radius));
}

GridFunction::GridFunction(DomainPtr domain, double fill)
    : domain_(std::move(domain)), values_(Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(domain_->box().size()), fill)) {}

GridFunction::GridFunction(DomainPtr domain, Eigen::ArrayXd values) : domain_(std::move(domain)), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.size()) != domain_->box().size()) {
        throw std::domain_error("grid values do not match the lattice size");
    }
}

GridFunction GridFunction::sample(DomainPtr domain, const std::function<double(const Point4&)>& f) {
    GridFunction u(domain, 0.0);
    const Box4& box = domain->box();
    for (auto i : domain->interior()) u.values_[i] = f(box.point(static_cast<std::size_t>(i)));
    for (auto i : domain->boundary()) {
        const double v = f(box.point(static_cast<std::size_t>(i)));
        if (!std::isfinite(v)) throw std::domain_error("non-finite sample at a boundary point");
        u.values_[i] = v;
    }
    return u;
}

GridFunction GridFunction::sample(const Box4& box, double radius, const std::function<double(const Point4&)>& f) {
    return sample(Domain::make(box, radius), f);
}

double GridFunction::sup_norm() const {
    double s = 0.0;
    for (const auto* list : {&domain_->interior(), &domain_->boundary()}) {
        for (auto i : *list) {
            if (std::isfinite(values_[i])) s = std::max(s, std::abs(values_[i]));
        }
    }
    return s;
}

GridFunction max(const GridFunction& a, const GridFunction& b) {
    if (!a.domain().same_lattice(b.domain())) throw std::domain_error("grid functions on different domains");
    return GridFunction(a.domain_ptr(), a.values().max(b.values()));
}

double MeasureGrid::cell_volume() const { return std::pow(domain->spacing(), 4); }

double MeasureGrid::total_mass() const {
    double sum = 0.0;
    for (auto i : domain->interior()) sum += density[i];
    return sum * cell_volume();
}

MeasureGrid fd_ma_density(const GridFunction& u) {
    const Domain& dom = u.domain();
    MeasureGrid mu{u.domain_ptr(), Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(dom.box().size())),
                   std::vector<char>(dom.box().size(), 0)};
    const auto strides = dom.box().strides();
    const double inv_h2 = 1.0 / (dom.spacing() * dom.spacing());
    const double* v = u.values().data();
    for (auto i : dom.interior()) {
        const double center = v[i];
        if (!std::isfinite(center)) continue;
        double sum = 0.0;
        for (int d = 0; d < 4; ++d) sum += v[i + strides[d]] + v[i - strides[d]];
        if (!std::isfinite(sum)) continue;
        mu.density[i] = (sum - 8.0 * center) * inv_h2;
        mu.resolved[static_cast<std::size_t>(i)] = 1;
    }
    return mu;
}

std::vector<char> region_members(const Domain& domain, const Region& region) {
    const Box4& box = domain.box();
    std::vector<char> members(box.size(), 0);
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (!region(box.point(i))) continue;
        if (domain.kind(i) != PointKind::interior) {
            throw std::domain_error("region reaches lattice points outside the domain interior");
        }
        members[i] = 1;
    }
    return members;
}

double ma_mass(const MeasureGrid& mu, std::span<const char> members) {
    if (members.size() != mu.domain->box().size()) throw std::domain_error("membership mask has wrong size");
    double sum = 0.0;
    for (auto i : mu.domain->interior()) {
        if (members[static_cast<std::size_t>(i)]) sum += mu.density[i];
    }
    return sum * mu.cell_volume();
}

double ma_mass(const MeasureGrid& mu, const Region& region) {
    const auto members = region_members(*mu.domain, region);
    return ma_mass(mu, members);
}

double ma_mass(const GridFunction& u, const Region& region) { return ma_mass(fd_ma_density(u), region); }

namespace {

struct KernelTap {
    std::ptrdiff_t offset;
    double weight;
};

std::vector<KernelTap> mollifier_taps(const Box4& box, double eps, double* max_reach) {
    const double h = box.spacing();
    const int reach = static_cast<int>(std::floor(eps / h));
    const auto strides = box.strides();
    std::vector<KernelTap> taps;
    double total = 0.0;
    *max_reach = 0.0;
    for (int a = -reach; a <= reach; ++a) {
        for (int b = -reach; b <= reach; ++b) {
            for (int c = -reach; c <= reach; ++c) {
                for (int d = -reach; d <= reach; ++d) {
                    const double r = h * std::sqrt(static_cast<double>(a * a + b * b + c * c + d * d));
                    if (r >= eps) continue;
                    const double s = 1.0 - (r / eps) * (r / eps);
                    const double w = s * s * s;
                    taps.push_back({a * strides[0] + b * strides[1] + c * strides[2] + d * strides[3], w});
                    total += w;
                    *max_reach = std::max(*max_reach, r);
                }
            }
        }
    }
    for (auto& t : taps) t.weight /= total;
    return taps;
}

}  // namespace

std::vector<char> eroded_interior(const Domain& domain, double eps) {
    const double h = domain.spacing();
    if (!(eps >= h * (1.0 - 1e-12))) throw std::domain_error("mollifier radius must be at least the grid spacing");
    double reach = 0.0;
    mollifier_taps(domain.box(), eps, &reach);
    std::vector<char> out(domain.box().size(), 0);
    for (auto i : domain.interior()) {
        const double r = (domain.box().point(static_cast<std::size_t>(i)) - domain.box().center()).norm();
        if (r + reach < domain.radius() * (1.0 - 1e-12)) out[static_cast<std::size_t>(i)] = 1;
    }
    return out;
}

GridFunction mollify(const GridFunction& u, double eps) {
    const Domain& dom = u.domain();
    const auto eroded = eroded_interior(dom, eps);
    double reach = 0.0;
    const auto taps = mollifier_taps(dom.box(), eps, &reach);
    GridFunction out = u;
    const double* v = u.values().data();
    for (auto i : dom.interior()) {
        if (!eroded[static_cast<std::size_t>(i)]) continue;
        double sum = 0.0;
        for (const auto& t : taps) sum += t.weight * v[i + t.offset];
        if (std::isfinite(sum)) out.values()[i] = sum;
    }
    return out;
}

CheckReport psh_check(const GridFunction& u, double tol) {
    CheckReport report("psh", tol);
    const MeasureGrid mu = fd_ma_density(u);
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_index = 0;
    std::size_t count = 0;
    for (auto i : u.domain().interior()) {
        if (!mu.resolved[static_cast<std::size_t>(i)]) continue;
        ++count;
        if (mu.density[i] < worst) {
            worst = mu.density[i];
            worst_index = static_cast<std::size_t>(i);
        }
    }
    report.metrics["resolved_points"] = static_cast<double>(count);
    if (count == 0) {
        report.notes.push_back("no instances");
        return report;
    }
    const Point4 p = u.box().point(worst_index);
    std::ostringstream label;
    label << "worst at (" << p[0] << "," << p[1] << "," << p[2] << "," << p[3] << ")";
    report.record(label.str(), worst, "minimum discrete Laplacian");
    report.instances = count;
    return report;
}

GridFunction prolongate(const GridFunction& coarse, DomainPtr fine) {
    const Box4& fbox = fine->box();
    if (!(coarse.box() == fbox.coarsened())) throw std::domain_error("coarse grid is not the coarsening of the fine grid");
    const Box4& cbox = coarse.box();
    const double* cv = coarse.values().data();
    const auto cstrides = cbox.strides();
    GridFunction out(fine, 0.0);
    auto fill = [&](std::int32_t i) {
        const auto c = fbox.coords(static_cast<std::size_t>(i));
        std::array<int, 4> base{};
        std::array<int, 4> odd{};
        for (int d = 0; d < 4; ++d) {
            base[d] = c[d] / 2;
            odd[d] = c[d] % 2;
        }
        const std::ptrdiff_t origin = static_cast<std::ptrdiff_t>(cbox.linear(base));
        double sum = 0.0;
        int corners = 0;
        for (int mask = 0; mask < 16; ++mask) {
            bool valid = true;
            std::ptrdiff_t off = 0;
            for (int d = 0; d < 4; ++d) {
                if (mask & (1 << d)) {
                    if (!odd[d]) { valid = false; break; }
                    off += cstrides[d];
                }
            }
            if (!valid) continue;
            sum += cv[origin + off];
            ++corners;
        }
        out.values()[i] = sum / corners;
    };
    for (auto i : fine->interior()) fill(i);
    for (auto i : fine->boundary()) fill(i);
    return out;
}

}  // namespace qpt
