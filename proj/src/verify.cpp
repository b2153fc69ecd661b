#include "qpt/verify.hpp"

#include "qpt/random_forms.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace qpt {

std::string to_string(Mutation m) {
    switch (m) {
        case Mutation::none: return "none";
        case Mutation::nabla_sign_flip: return "nabla-sign-flip";
        case Mutation::dropped_half: return "dropped-half";
        case Mutation::wrong_permutation_sign: return "wrong-permutation-sign";
    }
    return "?";
}

Mutation parse_mutation(const std::string& s) {
    for (auto m : {Mutation::none, Mutation::nabla_sign_flip, Mutation::dropped_half, Mutation::wrong_permutation_sign}) {
        if (to_string(m) == s) return m;
    }
    throw std::invalid_argument("unknown mutation '" + s + "'");
}

QuaternionicCalculus mutated_calculus(int n, Mutation m) {
    OperatorTable table = OperatorTable::standard(n);
    Rational half(1, 2);
    SignRule rule = SignRule::permutation;
    switch (m) {
        case Mutation::none: break;
        case Mutation::nabla_sign_flip: table = table.with_negated_entry(0, 0); break;
        case Mutation::dropped_half: half = 1; break;
        case Mutation::wrong_permutation_sign: rule = SignRule::unsigned_; break;
    }
    return QuaternionicCalculus(std::move(table), half, rule);
}

namespace {

std::size_t residual_terms(const PolyForm& f) {
    std::size_t count = 0;
    for (const auto& [k, c] : f.terms()) count += c.terms().size();
    return count;
}

std::size_t residual_terms(const RealPolynomial& p) { return p.terms().size(); }

PolyForm delta_expansion(const QuaternionicCalculus& calc, const RealPolynomial& u) {
    const int n = calc.n();
    PolyForm out(n, 2);
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = 0; j < 2 * n; ++j) {
            if (i == j) continue;
            RealPolynomial c = calc.delta_ij(u, i, j);
            if (i > j) c = -c;
            out.add(BasisIndex{std::min(i, j), std::max(i, j)}, c);
        }
    }
    return out;
}

Rational constant_term(const RealPolynomial& p) { return p.coefficient(Exponent{}).re; }

Rational calibration(const QuaternionicCalculus& calc) {
    const int n = calc.n();
    const RealPolynomial q2 = RealPolynomial::norm_squared(n);
    const std::vector<RealPolynomial> copies(static_cast<std::size_t>(n), q2);
    const std::vector<Rational> origin(static_cast<std::size_t>(4 * n));
    return constant_term(calc.ma_density(copies)) / moore_det(hessian(q2, origin));
}

}  // namespace

CheckReport check_identities(std::uint64_t seed, int count, const std::vector<int>& n_range, Mutation mutation) {
    CheckReport report("identities", 0.0);
    report.metrics["seed"] = static_cast<double>(seed);
    report.metrics["count"] = count;
    if (mutation != Mutation::none) report.notes.push_back("mutation " + to_string(mutation));

    for (int n : n_range) {
        const QuaternionicCalculus calc = mutated_calculus(n, mutation);
        std::mt19937_64 rng(seed * 1000003u + static_cast<std::uint64_t>(n));
        const Rational ratio = calibration(calc);
        const std::vector<Rational> origin(static_cast<std::size_t>(4 * n));
        std::uniform_int_distribution<int> pick_degree(0, 2 * n - 2);
        for (int t = 0; t < count; ++t) {
            PolynomialShape shape;
            shape.complex_coefficients = true;
            const int p = pick_degree(rng);
            const PolyForm f = random_form(rng, n, p, 2, shape);
            const PolyForm g = random_form(rng, n, 2 * n - 1 - p, 1, shape);

            PolynomialShape real_shape;
            std::vector<RealPolynomial> us;
            for (int k = 0; k < n; ++k) us.push_back(random_polynomial(rng, n, real_shape));
            const RealPolynomial& u = us.front();

            std::size_t bad = 0;
            std::vector<std::string> failed;
            auto tally = [&](const char* name, std::size_t r) {
                if (r) failed.emplace_back(name);
                bad += r;
            };
            tally("d0d0", residual_terms(calc.d0(calc.d0(f))));
            tally("d1d1", residual_terms(calc.d1(calc.d1(f))));
            tally("anticommute", residual_terms(calc.d0(calc.d1(f)) + calc.d1(calc.d0(f))));
            for (int alpha = 0; alpha < 2; ++alpha) {
                const PolyForm lhs = calc.d(alpha, wedge(f, g));
                PolyForm rhs = wedge(calc.d(alpha, f), g);
                const PolyForm second = wedge(f, calc.d(alpha, g));
                rhs += p % 2 == 0 ? second : -second;
                tally("leibniz", residual_terms(lhs - rhs));
            }
            const PolyForm lap = calc.baston(u);
            if (n >= 2) {
                tally("d0-baston", residual_terms(calc.d0(lap)));
                tally("d1-baston", residual_terms(calc.d1(lap)));
            }
            tally("delta-expansion", residual_terms(lap - delta_expansion(calc, u)));

            PolyForm product = calc.baston(us[0]);
            PolyForm tail = PolyForm::scalar(n, RealPolynomial::constant(n, 1));
            for (int k = 1; k < n; ++k) {
                product = wedge(product, calc.baston(us[static_cast<std::size_t>(k)]));
                tail = wedge(tail, calc.baston(us[static_cast<std::size_t>(k)]));
            }
            tally("top-coefficient", residual_terms(top_coefficient(product, RealPolynomial(n)) - calc.ma_density(us)));
            tally("d0-form", residual_terms(product - calc.d0(wedge(calc.d1(as_form(u)), tail))));
            tally("d1-form", residual_terms(product + calc.d1(wedge(calc.d0(as_form(u)), tail))));
            PolyForm inner = tail;
            inner *= u;
            tally("baston-form", residual_terms(product - calc.d0(calc.d1(inner))));

            const RealPolynomial a = random_psd_quadratic(rng, n);
            const std::vector<RealPolynomial> copies(static_cast<std::size_t>(n), a);
            const Rational dens = constant_term(calc.ma_density(copies));
            if (dens != ratio * moore_det(hessian(a, origin))) tally("moore", 1);

            std::string note;
            for (const auto& s : failed) note += (note.empty() ? "" : ",") + s;
            report.record("n=" + std::to_string(n) + " #" + std::to_string(t), 0.0 - static_cast<double>(bad), note);
        }
    }
    if (report.vacuous) report.notes.push_back("no instances");
    return report;
}

CheckReport check_moore_ratio(std::uint64_t seed, int count, const std::vector<int>& n_range) {
    CheckReport report("moore-ratio", 1e-9);
    for (int n : n_range) {
        const QuaternionicCalculus calc(n);
        const Rational calib = calibration(calc);
        report.metrics["ratio.n" + std::to_string(n)] = calib.get_d();
        std::mt19937_64 rng(seed * 7919u + static_cast<std::uint64_t>(n));
        const std::vector<Rational> origin(static_cast<std::size_t>(4 * n));
        for (int t = 0; t < count; ++t) {
            const RealPolynomial a = random_psd_quadratic(rng, n, 1 + t % 3);
            const std::vector<RealPolynomial> copies(static_cast<std::size_t>(n), a);
            const Rational dens = constant_term(calc.ma_density(copies));
            const Rational det = moore_det(hessian(a, origin));
            if (sgn(det) <= 0) {
                report.fail("non-positive Moore determinant for a PSD quadratic");
                continue;
            }
            const Rational ratio = dens / det;
            const double rel = std::abs(Rational((ratio - calib) / calib).get_d());
            report.record("n=" + std::to_string(n) + " #" + std::to_string(t), 0.0 - rel, "ratio " + to_string(ratio));
        }
    }
    if (report.vacuous) report.notes.push_back("no instances");
    return report;
}

CheckReport check_cln(const CompactSpec& k, const CompactSpec& l, const std::vector<GridFunction>& samples,
                      const std::vector<CompactSpec>& shrunk_l) {
    CheckReport report("cln", 1e-9);
    double empirical = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const GridFunction& u = samples[s];
        const Domain& dom = u.domain();
        const auto k_members = k.members(dom);
        const auto l_members = l.members(dom);
        for (std::size_t i = 0; i < l_members.size(); ++i) {
            if (l_members[i] && !k_members[i]) throw std::domain_error("L is not contained in K");
        }
        double sup = 0.0;
        for (std::size_t i = 0; i < k_members.size(); ++i) {
            if (k_members[i]) sup = std::max(sup, std::abs(u[i]));
        }
        const std::string tag = "sample " + std::to_string(s);
        if (sup == 0.0) {
            report.notes.push_back(tag + " skipped: sup_K |u| = 0");
            continue;
        }
        const MeasureGrid mu = fd_ma_density(u);
        const double ratio = ma_mass(mu, l_members) / sup;
        if (!std::isfinite(ratio)) {
            report.fail(tag + ": non-finite ratio");
            continue;
        }
        report.record(tag + " finite", 0.0, "R = " + std::to_string(ratio));
        empirical = std::max(empirical, ratio);
        for (double lambda : {2.0, 10.0}) {
            GridFunction scaled(u.domain_ptr(), Eigen::ArrayXd(lambda * u.values()));
            double sup_scaled = 0.0;
            for (std::size_t i = 0; i < k_members.size(); ++i) {
                if (k_members[i]) sup_scaled = std::max(sup_scaled, std::abs(scaled[i]));
            }
            const double r = ma_mass(fd_ma_density(scaled), l_members) / sup_scaled;
            report.record(tag + " scale " + std::to_string(lambda), -std::abs(r - ratio) / std::max(std::abs(ratio), 1e-300));
        }
        double previous = ratio;
        for (std::size_t j = 0; j < shrunk_l.size(); ++j) {
            const double r = ma_mass(mu, shrunk_l[j].members(dom)) / sup;
            report.record(tag + " shrink " + shrunk_l[j].describe(), (previous - r) / std::max(std::abs(ratio), 1e-300));
            report.metrics["shrink." + std::to_string(s) + "." + std::to_string(j)] = r;
            previous = r;
        }
    }
    report.metrics["empirical_constant"] = empirical;
    if (report.vacuous) report.notes.push_back("no instances");
    return report;
}

namespace {

double default_psh_tol(const GridFunction& u) { return 1e-6 / (u.spacing() * u.spacing()); }

void require_psh(const GridFunction& u, double tol, const char* name) {
    const CheckReport r = psh_check(u, tol);
    if (!r.passed) throw std::domain_error(std::string(name) + " fails the PSH check");
}

double abs_mass(const MeasureGrid& mu) {
    double s = 0.0;
    for (auto i : mu.domain->interior()) s += std::abs(mu.density[i]);
    return s * mu.cell_volume();
}

}  // namespace

CheckReport check_comparison(const GridFunction& u, const GridFunction& v, double psh_tol) {
    if (!u.domain().same_lattice(v.domain())) throw std::domain_error("u and v live on different lattices");
    const Domain& dom = u.domain();
    if (psh_tol < 0.0) psh_tol = default_psh_tol(u);
    require_psh(u, psh_tol, "u");
    require_psh(v, psh_tol, "v");

    const auto s = dom.box().strides();
    auto check_shell = [&](std::size_t i) {
        const double slack = 1e-12 * std::max({1.0, std::abs(u[i]), std::abs(v[i])});
        if (!(u[i] - v[i] >= -slack)) {
            throw std::domain_error("boundary hypothesis violated: u < v near the boundary");
        }
    };
    for (auto b : dom.boundary()) check_shell(static_cast<std::size_t>(b));
    for (auto i : dom.interior()) {
        for (int d = 0; d < 4; ++d) {
            if (dom.kind(static_cast<std::size_t>(i + s[d])) == PointKind::boundary ||
                dom.kind(static_cast<std::size_t>(i - s[d])) == PointKind::boundary) {
                check_shell(static_cast<std::size_t>(i));
                break;
            }
        }
    }

    std::vector<char> set(dom.box().size(), 0);
    std::size_t count = 0;
    for (auto i : dom.interior()) {
        if (u[static_cast<std::size_t>(i)] < v[static_cast<std::size_t>(i)]) {
            set[static_cast<std::size_t>(i)] = 1;
            ++count;
        }
    }
    const MeasureGrid mu = fd_ma_density(u);
    const MeasureGrid mv = fd_ma_density(v);
    const double tol = 1e-10 * (abs_mass(mu) + abs_mass(mv)) + 1e-12;
    CheckReport report("comparison", tol);
    const double mass_u = ma_mass(mu, set);
    const double mass_v = ma_mass(mv, set);
    report.record("{u<v}", mass_u - mass_v, std::to_string(count) + " points");
    report.metrics["mass_u"] = mass_u;
    report.metrics["mass_v"] = mass_v;
    report.metrics["set_points"] = static_cast<double>(count);
    return report;
}

namespace {

double unit_ball_volume(int d) { return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0); }

Eigen::MatrixXd quadratic_matrix(const RealPolynomial& a) {
    const int m = a.variables();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (const auto& [e, c] : a.terms()) {
        std::vector<int> idx;
        for (int k = 0; k < m; ++k) {
            for (int r = 0; r < e[static_cast<std::size_t>(k)]; ++r) idx.push_back(k);
        }
        if (idx.size() != 2) throw std::domain_error("expected a homogeneous quadratic");
        const double v = c.re.get_d();
        if (idx[0] == idx[1]) {
            out(idx[0], idx[0]) += v;
        } else {
            out(idx[0], idx[1]) += v / 2;
            out(idx[1], idx[0]) += v / 2;
        }
    }
    return out;
}

}  // namespace

CheckReport check_comparison_symbolic(std::uint64_t seed, int count, int n) {
    CheckReport report("comparison-symbolic", 0.0);
    const QuaternionicCalculus calc(n);
    std::mt19937_64 rng(seed * 104729u + static_cast<std::uint64_t>(n));
    const Rational lambdas[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    const RealPolynomial one = RealPolynomial::constant(n, 1);
    for (int t = 0; t < count; ++t) {
        const RealPolynomial a =
            random_psd_quadratic(rng, n) + RealPolynomial::norm_squared(n) * ComplexRational(Rational(3, 4));
        const Eigen::MatrixXd am = quadratic_matrix(a);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(am);
        if (eig.eigenvalues().minCoeff() < 1.0 - 1e-12) {
            throw std::domain_error("boundary hypothesis violated: A - |q|^2 is not PSD");
        }
        const Rational lambda = lambdas[t % 3];
        const Rational delta = (1 - lambda) / 2;
        const RealPolynomial u = a - one;
        const RealPolynomial v = (a - one) * ComplexRational(lambda) - RealPolynomial::constant(n, delta);
        const Rational du = constant_term(calc.ma_density(std::vector<RealPolynomial>(static_cast<std::size_t>(n), u)));
        const Rational dv = constant_term(calc.ma_density(std::vector<RealPolynomial>(static_cast<std::size_t>(n), v)));
        // {u < v} = {A < 1 - delta / (1 - lambda)}
        const double level = Rational(1 - delta / (1 - lambda)).get_d();
        const double vol = unit_ball_volume(4 * n) * std::pow(level, 2.0 * n) / std::sqrt(am.determinant());
        report.record("n=" + std::to_string(n) + " #" + std::to_string(t), vol * Rational(du - dv).get_d(),
                      "lambda " + to_string(lambda));
    }
    if (report.vacuous) report.notes.push_back("no instances");
    return report;
}

namespace {

// Marks every point within a cube of half-width `reach` lattice steps around a flagged point.
std::vector<char> dilate(const Box4& box, std::vector<char> flags, int reach) {
    const auto s = box.strides();
    const int m = box.resolution();
    std::vector<char> next(flags.size());
    for (int axis = 0; axis < 4; ++axis) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t i = 0; i < flags.size(); ++i) {
            if (!flags[i]) continue;
            const int c = box.coords(i)[static_cast<std::size_t>(axis)];
            for (int d = std::max(-reach, -c); d <= std::min(reach, m - 1 - c); ++d) {
                next[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + d * s[static_cast<std::size_t>(axis)])] = 1;
            }
        }
        std::swap(flags, next);
    }
    return flags;
}

double kernel_second_moment(double eps, double h) {
    const int reach = static_cast<int>(std::floor(eps / h));
    double total = 0.0, moment = 0.0;
    for (int a = -reach; a <= reach; ++a)
        for (int b = -reach; b <= reach; ++b)
            for (int c = -reach; c <= reach; ++c)
                for (int d = -reach; d <= reach; ++d) {
                    const double r2 = h * h * (a * a + b * b + c * c + d * d);
                    if (r2 >= eps * eps) continue;
                    const double w = std::pow(1.0 - r2 / (eps * eps), 3);
                    total += w;
                    moment += w * r2;
                }
    return moment / total;
}

}  // namespace

CheckReport check_demailly(const GridFunction& u, const GridFunction& v, double smoothing_eps) {
    if (!u.domain().same_lattice(v.domain())) throw std::domain_error("u and v live on different lattices");
    const Domain& dom = u.domain();
    const Box4& box = dom.box();
    const double h = dom.spacing();
    const auto s = box.strides();

    const GridFunction w = max(u, v);
    const MeasureGrid mw = fd_ma_density(w);
    const MeasureGrid mu = fd_ma_density(u);
    const MeasureGrid mv = fd_ma_density(v);
    const MeasureGrid ms = fd_ma_density(mollify(w, smoothing_eps));

    std::vector<char> band(box.size(), 0);
    for (auto i : dom.interior()) {
        const auto k = static_cast<std::size_t>(i);
        if (std::abs(u[k] - v[k]) < smoothing_eps || std::isnan(u[k] - v[k])) band[k] = 1;
    }
    const std::vector<char> near = dilate(box, band, static_cast<int>(std::ceil(2.0 * smoothing_eps / h)));
    const std::vector<char> eroded = eroded_interior(dom, smoothing_eps + h);

    auto bilaplacian = [&](const MeasureGrid& m, std::int32_t i) {
        double acc = -8.0 * m.density[i];
        for (int d = 0; d < 4; ++d) acc += m.density[i + s[d]] + m.density[i - s[d]];
        return acc / (h * h);
    };
    const double second_moment = kernel_second_moment(smoothing_eps, h);
    const double cell = mw.cell_volume();

    double margin = 0.0, bias = 0.0, scale = 0.0, pointwise = std::numeric_limits<double>::infinity();
    std::size_t cells = 0;
    for (auto i : dom.interior()) {
        const auto k = static_cast<std::size_t>(i);
        if (!mw.resolved[k] || !mu.resolved[k] || !mv.resolved[k]) continue;
        const bool u_active = u[k] >= v[k];
        const MeasureGrid& active = u_active ? mu : mv;
        const double pm = (mw.density[i] - active.density[i]) * cell;
        pointwise = std::min(pointwise, pm);
        scale += (std::abs(mw.density[i]) + std::abs(active.density[i])) * cell;
        if (!eroded[k] || near[k]) continue;
        bool stencil_ok = true;
        for (int d = 0; d < 4 && stencil_ok; ++d) {
            stencil_ok = active.resolved[static_cast<std::size_t>(i + s[d])] && active.resolved[static_cast<std::size_t>(i - s[d])];
        }
        if (!stencil_ok) continue;
        margin += (ms.density[i] - active.density[i]) * cell;
        bias += second_moment / 8.0 * std::abs(bilaplacian(active, i)) * cell;
        ++cells;
    }
    if (!std::isfinite(pointwise)) pointwise = 0.0;
    const double rounding = 1e-10 * scale + 1e-12;
    CheckReport report("demailly", 2.0 * bias + rounding);
    report.record("mollified eps=" + std::to_string(smoothing_eps), margin, std::to_string(cells) + " cells");
    report.record("pointwise unmollified", pointwise, "min over resolved interior, cell-mass units");
    report.metrics["cells"] = static_cast<double>(cells);
    report.metrics["mollifier_bias_bound"] = 2.0 * bias;
    return report;
}

CheckReport check_demailly_symbolic(std::uint64_t seed, int count, int n) {
    CheckReport report("demailly-symbolic", 0.0);
    const QuaternionicCalculus calc(n);
    std::mt19937_64 rng(seed * 15485863u + static_cast<std::uint64_t>(n));
    std::uniform_int_distribution<int> coord(-8, 8);
    const Rational eps(1, 20);
    const RealPolynomial one = RealPolynomial::constant(n, 1);
    for (int t = 0; t < count; ++t) {
        const RealPolynomial u = random_psd_quadratic(rng, n, 4) - one;
        const RealPolynomial v = random_psd_quadratic(rng, n, 4) - one;
        auto density = [&](const RealPolynomial& p) {
            return constant_term(calc.ma_density(std::vector<RealPolynomial>(static_cast<std::size_t>(n), p)));
        };
        const Rational du = density(u), dv = density(v);
        int used = 0;
        Rational worst = 0;
        for (int trial = 0; trial < 16; ++trial) {
            std::vector<Rational> x(static_cast<std::size_t>(4 * n));
            for (auto& c : x) {
                c = Rational(coord(rng), 16);
                c.canonicalize();
            }
            const Rational uv = u.evaluate(x).re - v.evaluate(x).re;
            if (abs(uv) < eps) continue;
            const bool u_active = uv >= 0;
            const Rational dmax = density(u_active ? u : v);
            const Rational m = dmax - (u_active ? du : dv);
            worst = used == 0 ? m : std::min(worst, m);
            ++used;
        }
        if (used == 0) continue;
        report.record("n=" + std::to_string(n) + " #" + std::to_string(t), worst.get_d(),
                      std::to_string(used) + " points off the band");
    }
    if (report.vacuous) report.notes.push_back("no instances");
    return report;
}

double Window::operator()(const Point4& x) const {
    const double r = (x - center).norm();
    if (r <= plateau) return 1.0;
    if (r >= support) return 0.0;
    const double t = (r - plateau) / (support - plateau);
    return std::pow(1.0 - t * t, 3);
}

double window_mass(const GridFunction& u, const Window& phi) {
    const Domain& dom = u.domain();
    const Box4& box = dom.box();
    const double h = dom.spacing();
    const auto s = box.strides();
    const double reach = phi.support + h * (1.0 + 1e-9);
    double mass = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i) {
        const Point4 x = box.point(i);
        if ((x - phi.center).norm() >= reach) continue;
        if (dom.kind(i) != PointKind::interior) throw std::domain_error("window reaches the domain boundary");
        double lap = -8.0 * phi(x);
        for (int d = 0; d < 4; ++d) {
            lap += phi(box.point(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + s[d])));
            lap += phi(box.point(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) - s[d])));
        }
        if (lap == 0.0) continue;
        if (!std::isfinite(u[i])) throw std::domain_error("window pairing meets a non-finite value");
        mass += u[i] * lap / (h * h);
    }
    return mass * std::pow(h, 4);
}

std::string to_string(ConvergenceKind k) {
    return k == ConvergenceKind::decreasing_mollified ? "decreasing-mollified" : "increasing-truncated";
}

CheckReport check_convergence(ConvergenceKind kind, const GridFunction& target, const ConvergenceOptions& options) {
    CheckReport report("convergence-" + to_string(kind), 0.0);
    if (options.windows.empty()) {
        report.notes.push_back("no instances");
        return report;
    }
    std::vector<GridFunction> sequence;
    std::vector<double> params;
    if (kind == ConvergenceKind::decreasing_mollified) {
        for (std::size_t j = 1; j < options.eps.size(); ++j) {
            if (!(options.eps[j] < options.eps[j - 1])) throw std::domain_error("mollifier scales must decrease");
        }
        for (double e : options.eps) sequence.push_back(mollify(target, e));
        params = options.eps;
    } else {
        for (std::size_t j = 1; j < options.levels.size(); ++j) {
            if (!(options.levels[j] > options.levels[j - 1])) throw std::domain_error("truncation levels must increase");
        }
        for (double level : options.levels) {
            GridFunction t = target;
            for (auto& x : t.values()) {
                if (!(x >= -level)) x = -level;
            }
            sequence.push_back(std::move(t));
        }
        params = options.levels;
    }
    if (sequence.empty()) {
        report.notes.push_back("no instances");
        return report;
    }
    for (std::size_t w = 0; w < options.windows.size(); ++w) {
        const double goal = w < options.target_masses.size() ? options.target_masses[w]
                                                             : window_mass(target, options.windows[w]);
        report.metrics["w" + std::to_string(w) + ".target"] = goal;
        std::vector<double> masses;
        for (std::size_t j = 0; j < sequence.size(); ++j) {
            masses.push_back(window_mass(sequence[j], options.windows[w]));
            report.metrics["w" + std::to_string(w) + ".m" + std::to_string(j)] = masses.back();
        }
        const double scale = std::max(std::abs(goal), 1e-300);
        double limit = masses.back();
        if (kind == ConvergenceKind::decreasing_mollified && options.extrapolate && masses.size() >= 2) {
            const double q = options.eps[masses.size() - 2] / options.eps.back();
            limit += (masses.back() - masses[masses.size() - 2]) / (q * q - 1.0);
        }
        report.metrics["w" + std::to_string(w) + ".limit"] = limit;
        report.metrics["w" + std::to_string(w) + ".final_rel_dev"] = std::abs(masses.back() - goal) / scale;
        const double rel = std::abs(limit - goal) / scale;
        report.record("window " + std::to_string(w), options.relative_tol - rel,
                      "limit " + std::to_string(limit) + " target " + std::to_string(goal));
    }
    for (std::size_t j = 0; j < params.size(); ++j) report.metrics["param" + std::to_string(j)] = params[j];
    return report;
}

CheckReport check_capacity_axioms(const AxiomFamilies& f) {
    CheckReport report("capacity-axioms", 1e-9);
    auto cap = [&](const CompactSpec& k, double omega, const std::string& key) {
        const double c = capacity(k, omega, f.grid, f.solver).value;
        report.metrics["C." + key] = c;
        return c;
    };
    auto rel = [](double slack, double ref) { return slack / std::max(std::abs(ref), 1e-300); };

    std::vector<double> nested;
    for (double r : f.nested_radii) nested.push_back(cap(CompactSpec::ball(r), f.omega_radius, "ball" + std::to_string(r)));
    for (std::size_t j = 1; j < nested.size(); ++j) {
        report.record("monotone r=" + std::to_string(f.nested_radii[j]), rel(nested[j] - nested[j - 1], nested[j - 1]));
    }

    const CompactSpec k = CompactSpec::ball(f.limit_radius);
    const double c_small = cap(k, f.omega_radius, "omega_small");
    const double c_large = cap(k, f.larger_omega_radius, "omega_large");
    report.record("anti-monotone in omega", rel(c_small - c_large, c_small));

    double sum = 0.0;
    for (std::size_t j = 0; j < f.disjoint.size(); ++j) {
        sum += cap(CompactSpec::union_of({f.disjoint[j]}), f.omega_radius, "piece" + std::to_string(j));
    }
    const double joint = cap(CompactSpec::union_of(f.disjoint), f.omega_radius, "union");
    report.record("subadditive", rel(sum - joint, sum));

    const double c_open = cap(CompactSpec::open_ball(f.limit_radius), f.omega_radius, "open_limit");
    double previous = 0.0, last_up = 0.0;
    for (int j : f.limit_steps) {
        const double c = cap(CompactSpec::open_ball(f.limit_radius - 1.0 / j), f.omega_radius, "up" + std::to_string(j));
        report.record("increasing j=" + std::to_string(j), rel(c - previous, c_open), "sequence non-decreasing");
        previous = last_up = c;
    }
    report.record("increasing limit", f.limit_tol - std::abs(rel(last_up - c_open, c_open)));

    double prev_down = std::numeric_limits<double>::infinity(), last_down = 0.0;
    for (int j : f.limit_steps) {
        const double c = cap(CompactSpec::ball(f.limit_radius + 1.0 / j), f.omega_radius, "down" + std::to_string(j));
        if (std::isfinite(prev_down)) report.record("decreasing j=" + std::to_string(j), rel(prev_down - c, c_small));
        prev_down = last_down = c;
    }
    report.record("decreasing limit", f.limit_tol - std::abs(rel(last_down - c_small, c_small)));
    return report;
}

CheckReport check_extremal_solution(const ExtremalSolution& sol) {
    const GridFunction& u = sol.u;
    const Domain& dom = u.domain();
    const double h = dom.spacing();
    const double lap_bound = 8.0 * sol.tol / (h * h);
    CheckReport report("extremal", 1e-12);
    double range = 0.0, below = 0.0, shell = 0.0, complement = 0.0;
    const MeasureGrid mu = fd_ma_density(u);
    for (auto i : dom.interior()) {
        const auto k = static_cast<std::size_t>(i);
        range = std::min({range, u[k] + 1.0, -u[k]});
        below = std::min(below, sol.obstacle[k] - u[k]);
        if (u[k] < sol.obstacle[k]) complement = std::min(complement, lap_bound - std::abs(mu.density[i]));
    }
    for (auto b : dom.boundary()) shell = std::min(shell, -std::abs(u[static_cast<std::size_t>(b)]));
    report.record("-1 <= u <= 0", range);
    report.record("u <= obstacle", below);
    report.record("u = 0 on shell", shell);
    report.record("complementarity", complement / std::max(lap_bound, 1e-300), "scaled by 8 tol / h^2");
    report.metrics["residual"] = sol.residual;
    report.metrics["tol"] = sol.tol;
    report.metrics["iterations"] = static_cast<double>(sol.iterations);
    return report;
}

CheckReport check_point_capacity_decay(const std::vector<double>& radii, const Box4& grid, double omega_radius,
                                       double exponent_tol, const SolverOptions& options) {
    CheckReport report("decay-shrinking", 0.0);
    for (std::size_t j = 1; j < radii.size(); ++j) {
        if (!(radii[j] < radii[j - 1])) throw std::domain_error("radii must decrease");
    }
    std::vector<CompactSpec> schedule;
    for (double r : radii) schedule.push_back(CompactSpec::open_ball(r * (1.0 + 1e-9)));
    const CapacityValue c = outer_capacity(CompactSpec::ball(0.0), omega_radius, grid, schedule, options);
    const auto& seq = c.diagnostics.sequence;
    for (std::size_t j = 0; j < seq.size(); ++j) {
        report.metrics["C.r" + std::to_string(j)] = seq[j];
        report.metrics["r" + std::to_string(j)] = radii[j];
        if (j > 0) report.record("decreasing r=" + std::to_string(radii[j]), (seq[j - 1] - seq[j]) / seq[0]);
    }
    const double p = fit_power_law(radii, seq);
    report.metrics["exponent"] = p;
    report.record("exponent", exponent_tol - std::abs(p - 2.0), "p = " + std::to_string(p));
    for (const auto& note : c.diagnostics.notes) report.notes.push_back(note);
    return report;
}

CheckReport check_sublevel_decay(double c, double window_radius, const std::vector<double>& thresholds,
                                 const Box4& grid, double omega_radius, double growth_bound,
                                 const SolverOptions& options) {
    CheckReport report("decay-sublevel", 0.0);
    auto domain = Domain::make(grid, omega_radius);
    auto v = std::make_shared<const GridFunction>(GridFunction::sample(domain, [c](const Point4& x) {
        const double q = x.squaredNorm();
        return q == 0.0 ? -std::numeric_limits<double>::infinity() : -c / q;
    }));
    const auto values = sublevel_capacity_decay(v, Ball{Point4::Zero(), window_radius, false}, thresholds, options);
    double first = 0.0, worst = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double mc = thresholds[j] * values[j].value;
        report.metrics["C.m" + std::to_string(j)] = values[j].value;
        report.metrics["mC.m" + std::to_string(j)] = mc;
        report.metrics["m" + std::to_string(j)] = thresholds[j];
        if (j == 0) first = mc;
        else report.record("non-increasing m=" + std::to_string(thresholds[j]), (values[j - 1].value - values[j].value) / values[0].value);
        worst = std::max(worst, mc);
    }
    if (first > 0.0) report.record("m C bounded", (growth_bound * first - worst) / first, "max m C / m_1 C_1 <= " + std::to_string(growth_bound));
    else report.fail("first sublevel capacity vanished");
    return report;
}

double smooth_max(double a, double b, double delta) {
    if (b == -std::numeric_limits<double>::infinity()) return a;
    if (a == -std::numeric_limits<double>::infinity()) return b;
    const double t = b - a;
    const double root = std::sqrt(t * t + delta * delta);
    return t < 0.0 ? a + delta * delta / (2.0 * (root - t)) : b + delta * delta / (2.0 * (root + t));
}

GridFunction smoothed_pole(const DomainPtr& domain, double r, const Point4& a, double delta) {
    return GridFunction::sample(domain, [&](const Point4& x) {
        const double q = (x - a).squaredNorm();
        return smooth_max(-1.0, q == 0.0 ? -std::numeric_limits<double>::infinity() : -r * r / q, delta);
    });
}

CheckReport comparison_battery(std::uint64_t seed, int pairs, int resolution) {
    CheckReport report("comparison", 0.0);
    auto domain = Domain::make(Box4(1.0, resolution), 1.0);
    std::mt19937_64 rng(seed);
    int empty = 0;
    for (int t = 0; t < pairs; ++t) {
        auto [u, v] = random_psh_pair(rng, domain);
        const CheckReport r = check_comparison(u, v);
        report.tolerance = std::max(report.tolerance, r.tolerance);
        if (r.metrics.at("set_points") == 0.0) ++empty;
        report.absorb(r, "pair " + std::to_string(t) + " ");
    }
    report.absorb(check_comparison_symbolic(seed, std::max(1, pairs / 2), 2), "");
    report.metrics["empty_sets"] = empty;
    return report;
}

CheckReport demailly_battery(std::uint64_t seed, int pairs, int resolution) {
    CheckReport report("demailly", 0.0);
    auto domain = Domain::make(Box4(1.0, resolution), 1.0);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < pairs; ++t) {
        auto [u, v] = random_psh_pair(rng, domain);
        const CheckReport r = check_demailly(u, v, 2.0 * domain->spacing());
        // Each pair carries its own stencil-derived tolerance, so margins are stored relative to it.
        for (const auto& d : r.details) {
            report.record("pair " + std::to_string(t) + " " + d.label, d.margin / r.tolerance + 1.0, d.note);
        }
    }
    report.absorb(check_demailly_symbolic(seed, std::max(1, pairs / 2), 2), "");
    report.notes.push_back("grid margins are margin / tol + 1 per pair; >= 0 means within tolerance");
    return report;
}

CheckReport cln_battery(std::uint64_t seed, int resolution) {
    auto domain = Domain::make(Box4(1.0, resolution), 1.0);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-0.1, 0.1);
    std::vector<GridFunction> samples;
    samples.push_back(GridFunction::sample(domain, [](const Point4& x) { return x.squaredNorm(); }));
    for (int t = 0; t < 4; ++t) {
        samples.push_back(smoothed_pole(domain, 0.3, Point4(unit(rng), unit(rng), unit(rng), unit(rng)), 0.1));
    }
    std::vector<CompactSpec> shrunk;
    for (double r : {0.4, 0.3, 0.2, 0.1}) shrunk.push_back(CompactSpec::ball(r));
    return check_cln(CompactSpec::ball(0.7), CompactSpec::ball(0.5), samples, shrunk);
}

std::vector<Window> convergence_windows(ConvergenceKind kind) {
    if (kind == ConvergenceKind::decreasing_mollified) {
        return {Window{Point4::Zero(), 0.1, 0.5}, Window{Point4(0.1, 0, 0, 0), 0.05, 0.4},
                Window{Point4(0, 0.1, 0.1, 0), 0.0, 0.35}};
    }
    return {Window{Point4::Zero(), 0.3, 0.7}, Window{Point4(0.05, 0, 0, 0), 0.25, 0.6},
            Window{Point4(0, 0, 0.05, 0.05), 0.2, 0.5}};
}

CheckReport convergence_battery(ConvergenceKind kind, int resolution, std::vector<double> target_masses) {
    auto domain = Domain::make(Box4(1.0, resolution), 1.0);
    const double h = domain->spacing();
    ConvergenceOptions options;
    options.windows = convergence_windows(kind);
    options.target_masses = std::move(target_masses);
    if (kind == ConvergenceKind::decreasing_mollified) {
        options.eps = {8 * h, 4 * h, 2 * h};
        return check_convergence(kind, smoothed_pole(domain, 0.3, Point4::Zero(), 0.1), options);
    }
    options.levels = {1, 2, 4, 8};
    const GridFunction pole = GridFunction::sample(domain, [](const Point4& x) {
        const double q = x.squaredNorm();
        return q == 0.0 ? -std::numeric_limits<double>::infinity() : -0.04 / q;
    });
    return check_convergence(kind, pole, options);
}

std::vector<CheckReport> standard_battery(const BatteryOptions& o) {
    std::vector<CheckReport> out;
    out.push_back(check_identities(o.seed, o.count, {1, 2, 3}, o.mutation));
    out.push_back(check_moore_ratio(o.seed, 50, {1, 2}));
    out.push_back(comparison_battery(o.seed, o.pair_count, o.resolution));
    out.push_back(demailly_battery(o.seed, o.pair_count, o.resolution));
    out.push_back(cln_battery(o.seed, o.resolution));
    out.push_back(convergence_battery(ConvergenceKind::decreasing_mollified, o.convergence_resolution));
    out.push_back(convergence_battery(ConvergenceKind::increasing_truncated, o.convergence_resolution));
    out.push_back(check_capacity_axioms());
    return out;
}

}  // namespace qpt
