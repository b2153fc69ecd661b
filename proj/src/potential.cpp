#include "qpt/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qpt {

bool Ball::contains(const Point4& x) const {
    const double d2 = (x - center).squaredNorm();
    const double r2 = radius * radius;
    if (open) return d2 < r2 * (1.0 - 1e-12);
    return d2 <= r2 * (1.0 + 1e-12) + 1e-24;
}

bool Ball::inside(const Ball& outer) const {
    const double reach = (center - outer.center).norm() + radius;
    if (outer.open && !open) return reach < outer.radius * (1.0 - 1e-12);
    return reach <= outer.radius * (1.0 + 1e-12);
}

CompactSpec CompactSpec::empty() { return {}; }

CompactSpec CompactSpec::ball(double radius, Point4 center) { return union_of({Ball{std::move(center), radius, false}}); }

CompactSpec CompactSpec::open_ball(double radius, Point4 center) {
    return union_of({Ball{std::move(center), radius, true}});
}

CompactSpec CompactSpec::union_of(std::vector<Ball> balls) {
    for (const auto& b : balls) {
        if (!(b.radius >= 0.0) || !std::isfinite(b.radius)) throw std::domain_error("ball radius must be finite and >= 0");
    }
    CompactSpec s;
    s.kind_ = balls.empty() ? Kind::empty : Kind::balls;
    s.balls_ = std::move(balls);
    return s;
}

CompactSpec CompactSpec::sublevel(std::shared_ptr<const GridFunction> v, double threshold, Ball window) {
    if (!v) throw std::domain_error("sublevel set needs a level function");
    CompactSpec s;
    s.kind_ = Kind::sublevel;
    s.level_ = std::move(v);
    s.threshold_ = threshold;
    s.balls_ = {std::move(window)};
    return s;
}

bool CompactSpec::is_open() const {
    if (kind_ == Kind::empty) return true;
    if (kind_ != Kind::balls) return false;
    return std::all_of(balls_.begin(), balls_.end(), [](const Ball& b) { return b.open; });
}

namespace {

std::string format_g(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

std::string describe_ball(const Ball& b) {
    std::string s = (b.open ? "open_ball:" : "ball:") + format_g(b.radius);
    if (!b.center.isZero()) {
        s += "@" + format_g(b.center[0]) + "," + format_g(b.center[1]) + "," + format_g(b.center[2]) + "," +
             format_g(b.center[3]);
    }
    return s;
}

}  // namespace

std::string CompactSpec::describe() const {
    switch (kind_) {
        case Kind::empty: return "empty";
        case Kind::balls: {
            std::string s;
            for (const auto& b : balls_) s += (s.empty() ? "" : "+") + describe_ball(b);
            return s;
        }
        case Kind::sublevel: return "sublevel:" + format_g(threshold_) + "&" + describe_ball(balls_.front());
    }
    return "?";
}

std::vector<char> CompactSpec::members(const Domain& domain) const {
    const Box4& box = domain.box();
    std::vector<char> out(box.size(), 0);
    if (kind_ == Kind::empty) return out;

    std::function<bool(std::size_t, const Point4&)> test;
    if (kind_ == Kind::balls) {
        test = [this](std::size_t, const Point4& x) {
            return std::any_of(balls_.begin(), balls_.end(), [&](const Ball& b) { return b.contains(x); });
        };
    } else {
        const Box4& fine = level_->box();
        const bool same_frame = fine.center() == box.center() && fine.half_width() == box.half_width();
        if (!same_frame || (fine.resolution() - 1) % (box.resolution() - 1) != 0) {
            throw std::domain_error("sublevel set lattice is not a refinement of the solve lattice");
        }
        const int factor = (fine.resolution() - 1) / (box.resolution() - 1);
        test = [this, &box, &fine, factor](std::size_t i, const Point4& x) {
            if (!balls_.front().contains(x)) return false;
            auto c = box.coords(i);
            for (auto& k : c) k *= factor;
            const double v = (*level_)[fine.linear(c)];
            return !std::isnan(v) && v < -threshold_;
        };
    }
    for (std::size_t i = 0; i < box.size(); ++i) {
        const Point4 x = box.point(i);
        if (!test(i, x)) continue;
        if (domain.kind(i) != PointKind::interior) {
            throw std::domain_error("set " + describe() + " is not compactly inside the domain ball");
        }
        out[i] = 1;
    }
    return out;
}

namespace {

struct SweepResult {
    long iterations = 0;
    double residual = 0.0;
};

// Jacobi sweeps of u <- min(obstacle, neighbour average) over interior points. Boundary and
// outside entries are never written.
SweepResult jacobi_obstacle(GridFunction& u, const GridFunction& obstacle, double tol, long max_iterations) {
    const Domain& dom = u.domain();
    const auto& interior = dom.interior();
    const auto s = dom.box().strides();
    const double* obs = obstacle.values().data();
    Eigen::ArrayXd next = u.values();
    double* cur = u.values().data();
    double* nxt = next.data();
    SweepResult result;
    for (long it = 1; it <= max_iterations; ++it) {
        double max_update = 0.0;
        for (const std::int32_t i : interior) {
            const double avg = 0.125 * (cur[i + s[0]] + cur[i - s[0]] + cur[i + s[1]] + cur[i - s[1]] +
                                        cur[i + s[2]] + cur[i - s[2]] + cur[i + s[3]] + cur[i - s[3]]);
            const double value = std::min(obs[i], avg);
            max_update = std::max(max_update, std::abs(value - cur[i]));
            nxt[i] = value;
        }
        std::swap(cur, nxt);
        result.iterations = it;
        result.residual = max_update;
        if (max_update <= tol) break;
    }
    if (cur != u.values().data()) u.values() = next;
    if (result.residual > tol) {
        throw SolverError("extremal solver did not converge within " + std::to_string(max_iterations) +
                              " sweeps (residual " + std::to_string(result.residual) + ")",
                          result.residual, result.iterations);
    }
    return result;
}

GridFunction build_obstacle(const CompactSpec& e, const DomainPtr& domain) {
    GridFunction obstacle(domain, 0.0);
    const auto members = e.members(*domain);
    for (auto i : domain->interior()) {
        if (members[static_cast<std::size_t>(i)]) obstacle.values()[i] = -1.0;
    }
    return obstacle;
}

}  // namespace

ExtremalSolution extremal_function(const CompactSpec& e, double omega_radius, const Box4& grid,
                                   const SolverOptions& options) {
    std::vector<Box4> chain{grid};
    if (options.warm_start) {
        while ((chain.back().resolution() - 1) % 4 == 0 && (chain.back().resolution() + 1) / 2 >= 11) {
            chain.push_back(chain.back().coarsened());
        }
    }
    std::reverse(chain.begin(), chain.end());

    auto fine_domain = Domain::make(grid, omega_radius);
    GridFunction fine_obstacle = build_obstacle(e, fine_domain);
    double range = 0.0;
    for (auto i : fine_domain->interior()) range = std::max(range, -fine_obstacle[static_cast<std::size_t>(i)]);
    const double tol = options.tol >= 0.0 ? options.tol : 1e-8 * range;

    std::optional<GridFunction> previous;
    std::vector<LevelStats> levels;
    for (std::size_t level = 0; level < chain.size(); ++level) {
        const bool finest = level + 1 == chain.size();
        DomainPtr domain = finest ? fine_domain : Domain::make(chain[level], omega_radius);
        GridFunction obstacle = finest ? fine_obstacle : build_obstacle(e, domain);
        GridFunction u = obstacle;
        if (previous) {
            const GridFunction guess = prolongate(*previous, domain);
            for (auto i : domain->interior()) u.values()[i] = std::min(obstacle[static_cast<std::size_t>(i)], guess[static_cast<std::size_t>(i)]);
        }
        const SweepResult sweep = jacobi_obstacle(u, obstacle, tol, options.max_iterations);
        levels.push_back({chain[level].resolution(), sweep.iterations, sweep.residual});
        if (finest) {
            ExtremalSolution sol{std::move(u), std::move(obstacle), sweep.iterations, sweep.residual, tol, levels};
            return sol;
        }
        previous = std::move(u);
    }
    throw std::logic_error("unreachable");
}

std::string to_string(CapacityMethod m) {
    switch (m) {
        case CapacityMethod::extremal_mass: return "extremal-mass";
        case CapacityMethod::candidate_sup: return "candidate-sup";
        case CapacityMethod::open_cover_limit: return "open-cover-limit";
    }
    return "?";
}

double mass_fraction_near_boundary(const MeasureGrid& mu, const std::vector<char>& members, double width) {
    const Domain& dom = *mu.domain;
    const Box4& box = dom.box();
    const auto s = box.strides();
    const int reach = static_cast<int>(std::floor(width / dom.spacing() + 1e-9));
    std::vector<std::ptrdiff_t> ball_offsets;
    for (int a = -reach; a <= reach; ++a)
        for (int b = -reach; b <= reach; ++b)
            for (int c = -reach; c <= reach; ++c)
                for (int d = -reach; d <= reach; ++d)
                    if (a * a + b * b + c * c + d * d <= reach * reach)
                        ball_offsets.push_back(a * s[0] + b * s[1] + c * s[2] + d * s[3]);

    std::vector<char> near(box.size(), 0);
    const auto size = static_cast<std::ptrdiff_t>(box.size());
    for (auto i : dom.interior()) {
        bool edge = false;
        for (int d = 0; d < 4 && !edge; ++d) {
            edge = members[static_cast<std::size_t>(i + s[d])] != members[static_cast<std::size_t>(i)] ||
                   members[static_cast<std::size_t>(i - s[d])] != members[static_cast<std::size_t>(i)];
        }
        if (!edge) continue;
        for (auto off : ball_offsets) {
            const std::ptrdiff_t j = i + off;
            if (j >= 0 && j < size) near[static_cast<std::size_t>(j)] = 1;
        }
    }
    double total = 0.0, close = 0.0;
    for (auto i : dom.interior()) {
        const double m = std::abs(mu.density[i]);
        total += m;
        if (near[static_cast<std::size_t>(i)]) close += m;
    }
    return total > 0.0 ? close / total : 1.0;
}

CapacityValue capacity_from_solution(const CompactSpec& k, const ExtremalSolution& solution) {
    const MeasureGrid mu = fd_ma_density(solution.u);
    CapacityValue out;
    out.value = mu.total_mass();
    out.method = CapacityMethod::extremal_mass;
    out.diagnostics.resolution = solution.u.box().resolution();
    out.diagnostics.iterations = solution.iterations;
    out.diagnostics.residual = solution.residual;
    out.diagnostics.near_boundary_fraction =
        mass_fraction_near_boundary(mu, k.members(solution.u.domain()), 3.0 * solution.u.spacing());
    return out;
}

CapacityValue capacity(const CompactSpec& k, double omega_radius, const Box4& grid, const SolverOptions& options) {
    return capacity_from_solution(k, extremal_function(k, omega_radius, grid, options));
}

CapacityValue capacity_lower(const CompactSpec& k, double omega_radius, const std::vector<GridFunction>& candidates,
                             const Box4& grid, double psh_tol) {
    auto domain = Domain::make(grid, omega_radius);
    const auto members = k.members(*domain);
    const double h = grid.spacing();
    if (psh_tol < 0.0) psh_tol = 1e-6 / (h * h);

    CapacityValue out;
    out.method = CapacityMethod::candidate_sup;
    out.diagnostics.resolution = grid.resolution();
    bool any = false;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const GridFunction& u = candidates[c];
        const std::string tag = "candidate " + std::to_string(c) + ": ";
        if (!u.domain().same_lattice(*domain)) {
            out.diagnostics.notes.push_back(tag + "rejected, lives on a different lattice");
            continue;
        }
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto* list : {&domain->interior(), &domain->boundary()}) {
            for (auto i : *list) {
                lo = std::min(lo, u[static_cast<std::size_t>(i)]);
                hi = std::max(hi, u[static_cast<std::size_t>(i)]);
            }
        }
        if (!(lo >= -1e-12 && hi <= 1.0 + 1e-12)) {
            out.diagnostics.notes.push_back(tag + "rejected, values leave [0,1] (min " + format_g(lo) + ", max " +
                                            format_g(hi) + ")");
            continue;
        }
        const CheckReport psh = psh_check(u, psh_tol);
        if (!psh.passed) {
            out.diagnostics.notes.push_back(tag + "rejected, not plurisubharmonic: " + serialize(psh));
            continue;
        }
        const double mass = ma_mass(fd_ma_density(u), members);
        out.value = any ? std::max(out.value, mass) : mass;
        any = true;
    }
    if (!any) out.value = 0.0;
    return out;
}

CapacityValue outer_capacity(const CompactSpec& e, double omega_radius, const Box4& grid,
                             const std::vector<CompactSpec>& shrink_schedule, const SolverOptions& options) {
    if (shrink_schedule.empty()) {
        if (!e.is_open()) throw std::domain_error("outer capacity of a non-open set needs a shrink schedule");
        CapacityValue v = capacity(e, omega_radius, grid, options);
        v.method = CapacityMethod::open_cover_limit;
        v.diagnostics.sequence = {v.value};
        return v;
    }
    for (std::size_t j = 0; j < shrink_schedule.size(); ++j) {
        const auto& w = shrink_schedule[j];
        if (w.kind() != CompactSpec::Kind::balls || !w.is_open()) {
            throw std::domain_error("shrink schedule entries must be unions of open balls");
        }
        if (j == 0) continue;
        for (const auto& b : w.balls()) {
            const auto& prev = shrink_schedule[j - 1].balls();
            if (!std::any_of(prev.begin(), prev.end(), [&](const Ball& p) { return b.inside(p); })) {
                throw std::domain_error("shrink schedule is not nested");
            }
        }
    }
    auto domain = Domain::make(grid, omega_radius);
    const auto e_members = e.members(*domain);
    for (const auto& w : shrink_schedule) {
        const auto w_members = w.members(*domain);
        for (std::size_t i = 0; i < e_members.size(); ++i) {
            if (e_members[i] && !w_members[i]) throw std::domain_error("neighbourhood " + w.describe() + " misses E");
        }
    }

    CapacityValue out;
    out.method = CapacityMethod::open_cover_limit;
    out.diagnostics.resolution = grid.resolution();
    for (const auto& w : shrink_schedule) {
        const CapacityValue c = capacity(w, omega_radius, grid, options);
        out.diagnostics.sequence.push_back(c.value);
        out.diagnostics.iterations += c.diagnostics.iterations;
        out.diagnostics.residual = std::max(out.diagnostics.residual, c.diagnostics.residual);
    }
    const auto& seq = out.diagnostics.sequence;
    for (std::size_t j = 1; j < seq.size(); ++j) {
        if (seq[j] > seq[j - 1] * (1.0 + 1e-9)) out.diagnostics.notes.push_back("sequence increases at step " + std::to_string(j));
    }
    out.value = seq.back();
    return out;
}

std::vector<CapacityValue> sublevel_capacity_decay(std::shared_ptr<const GridFunction> v, const Ball& window,
                                                   const std::vector<double>& thresholds,
                                                   const SolverOptions& options) {
    if (!v) throw std::domain_error("decay study needs a level function");
    for (std::size_t j = 1; j < thresholds.size(); ++j) {
        if (!(thresholds[j] > thresholds[j - 1])) throw std::domain_error("thresholds must be strictly increasing");
    }
    std::vector<CapacityValue> out;
    for (double m : thresholds) {
        const CompactSpec k = CompactSpec::sublevel(v, m, window);
        out.push_back(capacity(k, v->domain().radius(), v->box(), options));
    }
    return out;
}

double fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::domain_error("power-law fit needs >= 2 paired samples");
    double mx = 0.0, my = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::domain_error("power-law fit needs positive samples");
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw std::domain_error("power-law fit needs distinct abscissae");
    return sxy / sxx;
}

}  // namespace qpt
