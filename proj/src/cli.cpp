#include "qpt/cli.hpp"

#include "qpt/calculus.hpp"
#include "qpt/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qpt {

namespace {

constexpr const char* kVersion = "1.0.0";

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
}

long to_long(const std::string& s) {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
}

// Keys, defaults and help text per subcommand.
struct Key {
    const char* name;
    const char* fallback;
    const char* help;
};

const std::map<std::string, std::vector<Key>>& command_keys() {
    static const std::map<std::string, std::vector<Key>> keys = {
        {"identities",
         {{"seed", "1", "random seed"},
          {"count", "200", "random instances per n"},
          {"n", "1,2,3", "quaternionic dimensions"},
          {"mutation", "none", "none|nabla-sign-flip|dropped-half|wrong-permutation-sign"}}},
        {"ma-density", {{"function", "normsq", "normsq|normsq2|coordinate"}, {"n", "1", "quaternionic dimension"}}},
        {"extremal",
         {{"K", "ball:0.5", "set E"},
          {"omega", "1", "domain ball radius"},
          {"res", "41", "lattice points per axis"},
          {"tol", "-1", "sweep tolerance; negative selects 1e-8 * range"},
          {"max-iter", "1000000", "sweep cap"},
          {"format", "text", "snapshot format text|binary"}}},
        {"capacity",
         {{"K", "ball:0.5", "sets, ';'-separated for a family"},
          {"omega", "1", "domain ball radius"},
          {"res", "41", "lattice points per axis"},
          {"tol", "-1", "sweep tolerance; negative selects 1e-8 * range"},
          {"max-iter", "1000000", "sweep cap"}}},
        {"decay",
         {{"study", "shrinking", "shrinking|sublevel"},
          {"radii", "0.4,0.2,0.1,0.05", "shrinking neighbourhood radii"},
          {"c", "0.04", "pole coefficient of v = -c / |q|^2"},
          {"window", "0.5", "window ball radius"},
          {"thresholds", "1,2,4,8,16", "sublevel thresholds m"},
          {"omega", "1", "domain ball radius"},
          {"res", "41", "lattice points per axis"},
          {"tol", "-1", "sweep tolerance; negative selects 1e-8 * range"},
          {"max-iter", "1000000", "sweep cap"}}},
        {"verify-all",
         {{"seed", "1", "random seed"},
          {"count", "200", "symbolic instances per n"},
          {"res", "21", "lattice for pair and cln checks"},
          {"conv-res", "41", "lattice for convergence checks"},
          {"mutation", "none", "defect injected into the identity suite"}}},
    };
    return keys;
}

std::string command_help(const std::string& command) {
    static const std::map<std::string, std::string> help = {
        {"identities", "randomized symbolic operator identities"},
        {"ma-density", "exact Monge-Ampere density of a named polynomial"},
        {"extremal", "solve the relative extremal function and write a grid snapshot"},
        {"capacity", "relative capacities of one or more sets"},
        {"decay", "shrinking-ball or sublevel capacity decay study"},
        {"verify-all", "full verification battery"},
    };
    return help.at(command);
}

void require_command(const std::string& command) {
    if (!command_keys().count(command)) throw ConfigError("unknown subcommand '" + command + "'");
}

}  // namespace

Settings parse_settings(std::istream& is, const std::string& source) {
    Settings out;
    std::string line, section;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(source + ":" + std::to_string(line_no) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
        if (section.empty() || section == "config") out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

Settings read_settings_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file '" + path + "'");
    return parse_settings(is, path);
}

CompactSpec parse_compact_spec(const std::string& text) {
    const std::string t = trim(text);
    if (t == "empty") return CompactSpec::empty();
    std::vector<Ball> balls;
    for (const auto& part : split(t, '+')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) throw ConfigError("set '" + text + "': expected ball:R or open_ball:R");
        const std::string kind = part.substr(0, colon);
        if (kind != "ball" && kind != "open_ball") throw ConfigError("set '" + text + "': unknown kind '" + kind + "'");
        std::string rest = part.substr(colon + 1);
        Ball b;
        b.open = kind == "open_ball";
        const auto at = rest.find('@');
        try {
            if (at != std::string::npos) {
                const auto coords = split(rest.substr(at + 1), ',');
                if (coords.size() != 4) throw ConfigError("set '" + text + "': centre needs four coordinates");
                for (int k = 0; k < 4; ++k) b.center[k] = to_double(coords[static_cast<std::size_t>(k)]);
                rest = rest.substr(0, at);
            }
            b.radius = to_double(rest);
        } catch (const std::invalid_argument&) {
            throw ConfigError("set '" + text + "': bad number");
        } catch (const std::out_of_range&) {
            throw ConfigError("set '" + text + "': number out of range");
        }
        if (!(b.radius >= 0.0)) throw ConfigError("set '" + text + "': negative radius");
        balls.push_back(b);
    }
    if (balls.empty()) throw ConfigError("empty set specification");
    return CompactSpec::union_of(std::move(balls));
}

ExperimentConfig make_config(const std::string& command, const Settings& settings) {
    require_command(command);
    Settings merged;
    for (const auto& k : command_keys().at(command)) merged[k.name] = k.fallback;

    std::vector<std::string> errors;
    for (const auto& [key, value] : settings) {
        if (key == "command") {
            if (value != command) errors.push_back("command: settings are for '" + value + "', not '" + command + "'");
            continue;
        }
        if (key == "out") continue;
        if (!merged.count(key)) {
            errors.push_back(key + ": unknown setting for " + command);
            continue;
        }
        merged[key] = value;
    }

    ExperimentConfig c;
    c.command = command;
    auto field = [&](const std::string& key, auto&& apply) {
        if (!merged.count(key)) return;
        try {
            apply(merged.at(key));
        } catch (const ConfigError& e) {
            errors.push_back(key + ": " + e.what());
        } catch (const std::exception&) {
            errors.push_back(key + ": invalid value '" + merged.at(key) + "'");
        }
    };
    auto positive_int = [](const std::string& s, int lo) {
        const long v = to_long(s);
        if (v < lo || v > 1'000'000'000) throw ConfigError("must be an integer >= " + std::to_string(lo));
        return static_cast<int>(v);
    };
    auto double_list = [](const std::string& s) {
        std::vector<double> out;
        for (const auto& item : split(s, ',')) out.push_back(to_double(item));
        if (out.empty()) throw ConfigError("empty list");
        return out;
    };

    field("seed", [&](const std::string& s) {
        const long v = to_long(s);
        if (v < 0) throw ConfigError("must be >= 0");
        c.seed = static_cast<std::uint64_t>(v);
    });
    field("count", [&](const std::string& s) { c.count = positive_int(s, 0); });
    field("n", [&](const std::string& s) {
        c.n_range.clear();
        for (const auto& item : split(s, ',')) {
            const int n = positive_int(item, 1);
            if (n > kMaxQuaternionDim) throw ConfigError("n must be <= " + std::to_string(kMaxQuaternionDim));
            c.n_range.push_back(n);
        }
        if (c.n_range.empty()) throw ConfigError("empty list");
        if (command == "ma-density" && c.n_range.size() != 1) throw ConfigError("expects a single dimension");
        c.n = c.n_range.front();
    });
    field("mutation", [&](const std::string& s) {
        try {
            (void)parse_mutation(s);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        c.mutation = s;
    });
    field("function", [&](const std::string& s) {
        if (s != "normsq" && s != "normsq2" && s != "coordinate") throw ConfigError("unknown function '" + s + "'");
        c.function = s;
    });
    field("K", [&](const std::string& s) {
        c.sets = split(s, ';');
        if (c.sets.empty()) throw ConfigError("no set given");
        for (const auto& spec : c.sets) (void)parse_compact_spec(spec);
    });
    field("omega", [&](const std::string& s) {
        c.omega_radius = to_double(s);
        if (!(c.omega_radius > 0.0)) throw ConfigError("must be > 0");
    });
    auto resolution = [&](const std::string& s) {
        const int m = positive_int(s, 5);
        if (m % 2 == 0) throw ConfigError("must be odd");
        return m;
    };
    field("res", [&](const std::string& s) { c.resolution = resolution(s); });
    field("conv-res", [&](const std::string& s) { c.convergence_resolution = resolution(s); });
    field("tol", [&](const std::string& s) { c.tol = to_double(s); });
    field("max-iter", [&](const std::string& s) {
        c.max_iterations = to_long(s);
        if (c.max_iterations < 1) throw ConfigError("must be >= 1");
    });
    field("format", [&](const std::string& s) {
        if (s != "text" && s != "binary") throw ConfigError("must be text or binary");
        c.format = s;
    });
    field("study", [&](const std::string& s) {
        if (s != "shrinking" && s != "sublevel") throw ConfigError("must be shrinking or sublevel");
        c.study = s;
    });
    field("radii", [&](const std::string& s) { c.radii = double_list(s); });
    field("thresholds", [&](const std::string& s) { c.thresholds = double_list(s); });
    field("c", [&](const std::string& s) {
        c.pole_coefficient = to_double(s);
        if (!(c.pole_coefficient > 0.0)) throw ConfigError("must be > 0");
    });
    field("window", [&](const std::string& s) {
        c.window_radius = to_double(s);
        if (!(c.window_radius > 0.0)) throw ConfigError("must be > 0");
    });
    if (c.omega_radius > 0.0 && merged.count("omega") && merged.count("window") && c.window_radius >= c.omega_radius) {
        errors.push_back("window: must be smaller than omega");
    }

    if (!errors.empty()) {
        std::string msg = "invalid configuration for " + command + ":";
        for (const auto& e : errors) msg += "\n  " + e;
        throw ConfigError(msg);
    }
    c.echo = merged;
    c.echo["command"] = command;
    const auto out = settings.find("out");
    if (out != settings.end()) {
        c.output_dir = out->second;
    } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
        c.output_dir = env;
    }
    return c;
}

namespace {

class Outputs {
public:
    explicit Outputs(const ExperimentConfig& c) : dir_(c.output_dir), command_(c.command) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        const auto probe = dir_ / (command_ + ".manifest");
        std::ofstream test(probe, std::ios::app);
        if (ec || !test) throw OutputError("cannot write to output directory '" + dir_.string() + "'");
    }

    void write(const std::string& name, const std::string& content) const {
        const auto path = dir_ / name;
        std::ofstream os(path, std::ios::binary);
        os << content;
        if (!os) throw OutputError("cannot write '" + path.string() + "'");
    }

    [[nodiscard]] std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    std::filesystem::path dir_;
    std::string command_;
};

SolverOptions solver_options(const ExperimentConfig& c) {
    SolverOptions o;
    o.tol = c.tol;
    o.max_iterations = c.max_iterations;
    return o;
}

std::string omega_spec(double r) {
    std::ostringstream os;
    os.precision(10);
    os << "ball:" << r;
    return os.str();
}

Box4 grid_for(const ExperimentConfig& c) { return Box4(c.omega_radius, c.resolution); }

std::string serialize_all(const std::vector<CheckReport>& reports) {
    std::string s;
    for (const auto& r : reports) s += serialize(r);
    return s;
}

std::string check_table(const std::vector<CheckReport>& reports) {
    std::string s = "check\tinstances\tworst_margin\ttolerance\tpassed\n";
    for (const auto& r : reports) {
        s += r.check_id + "\t" + std::to_string(r.instances) + "\t" + fmt(r.worst_margin) + "\t" + fmt(r.tolerance) +
             "\t" + (r.passed ? "true" : "false") + "\n";
    }
    return s;
}

bool all_passed(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
}

RealPolynomial named_function(const std::string& name, int n) {
    const RealPolynomial q2 = RealPolynomial::norm_squared(n);
    if (name == "normsq") return q2;
    if (name == "normsq2") return q2 * q2;
    const RealPolynomial x0 = RealPolynomial::variable(n, 0);
    return x0 * x0;
}

void print_summary(std::ostream& out, const std::vector<CheckReport>& reports) {
    for (const auto& r : reports) {
        out << r.check_id << ": " << (r.passed ? "PASS" : "FAIL") << " worst_margin=" << fmt(r.worst_margin)
            << " tolerance=" << fmt(r.tolerance) << " instances=" << r.instances << (r.vacuous ? " (no instances)" : "")
            << "\n";
    }
}

}  // namespace

int run(const ExperimentConfig& c, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const Outputs outputs(c);
    std::string table;
    std::vector<CheckReport> reports;

    if (c.command == "identities") {
        reports.push_back(check_identities(c.seed, c.count, c.n_range, parse_mutation(c.mutation)));
        table = check_table(reports);
    } else if (c.command == "ma-density") {
        const RealPolynomial u = named_function(c.function, c.n);
        const RealPolynomial d = ma_density_power(u);
        table = "function\tn\tdensity\n" + c.function + "\t" + std::to_string(c.n) + "\t" + d.to_string() + "\n";
        out << d.to_string() << "\n";
    } else if (c.command == "extremal") {
        const CompactSpec k = parse_compact_spec(c.sets.front());
        const ExtremalSolution sol = extremal_function(k, c.omega_radius, grid_for(c), solver_options(c));
        write_grid(outputs.path("extremal.qgrid"), sol.u, c.format == "binary" ? GridFormat::binary : GridFormat::text);
        table = "K\tomega\tresolution\titerations\tresidual\ttol\n" + k.describe() + "\t" + omega_spec(c.omega_radius) +
                "\t" + std::to_string(c.resolution) + "\t" + std::to_string(sol.iterations) + "\t" + fmt(sol.residual) +
                "\t" + fmt(sol.tol) + "\n";
        reports.push_back(check_extremal_solution(sol));
        out << "iterations " << sol.iterations << " residual " << fmt(sol.residual) << "\n";
    } else if (c.command == "capacity") {
        table = "K\tomega\tresolution\tvalue\tmethod\tresidual\titerations\tnear_boundary_fraction\n";
        for (const auto& spec : c.sets) {
            const CompactSpec k = parse_compact_spec(spec);
            const CapacityValue v = capacity(k, c.omega_radius, grid_for(c), solver_options(c));
            table += k.describe() + "\t" + omega_spec(c.omega_radius) + "\t" + std::to_string(c.resolution) + "\t" +
                     fmt(v.value) + "\t" + to_string(v.method) + "\t" + fmt(v.diagnostics.residual) + "\t" +
                     std::to_string(v.diagnostics.iterations) + "\t" + fmt(v.diagnostics.near_boundary_fraction) + "\n";
            out << k.describe() << " capacity " << fmt(v.value) << " residual " << fmt(v.diagnostics.residual)
                << " iterations " << v.diagnostics.iterations << "\n";
        }
    } else if (c.command == "decay") {
        if (c.study == "shrinking") {
            const CheckReport r = check_point_capacity_decay(c.radii, grid_for(c), c.omega_radius, 0.1, solver_options(c));
            table = "radius\tcapacity\n";
            for (std::size_t j = 0; j < c.radii.size(); ++j) table += fmt(c.radii[j]) + "\t" + fmt(r.metrics.at("C.r" + std::to_string(j))) + "\n";
            out << "fitted exponent " << fmt(r.metrics.at("exponent")) << "\n";
            reports.push_back(r);
        } else {
            const CheckReport r = check_sublevel_decay(c.pole_coefficient, c.window_radius, c.thresholds, grid_for(c),
                                                       c.omega_radius, 2.0, solver_options(c));
            table = "threshold\tcapacity\n";
            for (std::size_t j = 0; j < c.thresholds.size(); ++j) table += fmt(c.thresholds[j]) + "\t" + fmt(r.metrics.at("C.m" + std::to_string(j))) + "\n";
            reports.push_back(r);
        }
    } else if (c.command == "verify-all") {
        BatteryOptions o;
        o.seed = c.seed;
        o.count = c.count;
        o.resolution = c.resolution;
        o.convergence_resolution = c.convergence_resolution;
        o.mutation = parse_mutation(c.mutation);
        reports = standard_battery(o);
        table = check_table(reports);
    }

    if (!table.empty()) outputs.write(c.command + ".tsv", table);
    if (!reports.empty()) {
        outputs.write(c.command + ".report", serialize_all(reports));
        print_summary(out, reports);
    }

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string manifest = "# qpt run manifest; rerun with: qpt run <this file>\n[config]\n";
    for (const auto& [k, v] : c.echo) manifest += k + " = " + v + "\n";
    manifest += "[run]\nversion = " + std::string(kVersion) + "\ntiming.seconds = " + fmt(seconds) + "\n";
    outputs.write(c.command + ".manifest", manifest);
    return all_passed(reports) ? kExitPass : kExitCheckFailed;
}

namespace {

struct TwoColumn {
    std::string x_name;
    std::vector<double> x, y;
};

TwoColumn read_two_column(std::istream& is, const std::string& header, const std::string& file) {
    TwoColumn t;
    t.x_name = header.substr(0, header.find('\t'));
    std::string line;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cols = split(line, '\t');
        try {
            if (cols.size() != 2) throw std::invalid_argument(line);
            t.x.push_back(to_double(cols[0]));
            t.y.push_back(to_double(cols[1]));
        } catch (const std::exception&) {
            throw ConfigError("corrupt table '" + file + "' at line " + std::to_string(line_no));
        }
    }
    return t;
}

}  // namespace

int report(const std::vector<std::string>& files, std::ostream& out) {
    if (files.empty()) throw ConfigError("report needs at least one table file");
    std::vector<CheckReport> reports;
    std::vector<std::pair<std::string, TwoColumn>> plots;
    for (const auto& file : files) {
        std::ifstream is(file);
        if (!is) throw ConfigError("missing table '" + file + "'");
        std::string first;
        std::getline(is, first);
        if (first.rfind("[check ", 0) == 0) {
            std::stringstream text;
            text << first << "\n" << is.rdbuf();
            try {
                for (auto& r : parse_reports(text.str())) reports.push_back(std::move(r));
            } catch (const std::invalid_argument& e) {
                throw ConfigError("corrupt report '" + file + "': " + e.what());
            }
        } else if (first == "radius\tcapacity" || first == "threshold\tcapacity") {
            plots.emplace_back(file, read_two_column(is, first, file));
        } else {
            throw ConfigError("unrecognized table '" + file + "'");
        }
    }

    std::vector<std::string> failed;
    for (const auto& r : reports) {
        out << r.check_id << "\t" << (r.passed ? "PASS" : "FAIL") << "\tworst_margin=" << fmt(r.worst_margin)
            << "\ttolerance=" << fmt(r.tolerance) << "\n";
        if (!r.passed) failed.push_back(r.check_id);
    }
    if (!reports.empty()) {
        if (failed.empty()) {
            out << "PASS " << reports.size() << "/" << reports.size() << "\n";
        } else {
            out << "FAIL " << failed.size() << "/" << reports.size() << ":";
            for (const auto& id : failed) out << " " << id;
            out << "\n";
        }
    }
    for (const auto& [file, t] : plots) {
        out << "# " << file << "\n" << t.x_name << "\tcapacity" << (t.x_name == "threshold" ? "\tm_times_capacity" : "") << "\n";
        for (std::size_t j = 0; j < t.x.size(); ++j) {
            out << fmt(t.x[j]) << "\t" << fmt(t.y[j]);
            if (t.x_name == "threshold") out << "\t" << fmt(t.x[j] * t.y[j]);
            out << "\n";
        }
        if (t.x_name == "radius" && t.x.size() >= 2) out << "fitted_exponent\t" << fmt(fit_power_law(t.x, t.y)) << "\n";
    }
    return failed.empty() ? kExitPass : kExitCheckFailed;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Quaternionic pluripotential experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::map<std::string, std::string> flag_values;
    std::map<std::string, std::string> config_paths;
    std::map<std::string, std::string> out_dirs;
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const auto& [command, keys] : command_keys()) {
        CLI::App* sub = app.add_subcommand(command, command_help(command));
        sub->add_option("--config", config_paths[command], "key = value settings or manifest file");
        sub->add_option("--out", out_dirs[command], std::string("output directory (default $") + kOutputDirEnv + " or .)");
        for (const auto& k : keys) {
            sub->add_option("--" + std::string(k.name), flag_values[command + "/" + k.name],
                            std::string(k.help) + " [" + k.fallback + "]");
        }
        subs.emplace_back(command, sub);
    }
    std::vector<std::string> report_files;
    CLI::App* report_cmd = app.add_subcommand("report", "summarize .report files and decay tables");
    report_cmd->add_option("files", report_files, "table files")->required();
    std::string manifest;
    CLI::App* rerun = app.add_subcommand("run", "rerun from a manifest");
    rerun->add_option("manifest", manifest, "manifest file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (report_cmd->parsed()) return report(report_files, std::cout);
        if (rerun->parsed()) {
            Settings s = read_settings_file(manifest);
            const auto cmd = s.find("command");
            if (cmd == s.end()) throw ConfigError("manifest '" + manifest + "' has no command");
            const std::string command = cmd->second;
            require_command(command);
            if (const char* env = std::getenv(kOutputDirEnv); !(env && *env)) {
                s["out"] = std::filesystem::path(manifest).parent_path().string();
                if (s["out"].empty()) s["out"] = ".";
            }
            return run(make_config(command, s), std::cout);
        }
        for (const auto& [command, sub] : subs) {
            if (!sub->parsed()) continue;
            Settings s;
            if (!config_paths[command].empty()) s = read_settings_file(config_paths[command]);
            for (const auto& k : command_keys().at(command)) {
                auto* opt = sub->get_option("--" + std::string(k.name));
                if (opt->count() > 0) s[k.name] = flag_values[command + "/" + k.name];
            }
            if (sub->get_option("--out")->count() > 0) s["out"] = out_dirs[command];
            return run(make_config(command, s), std::cout);
        }
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OutputError& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qpt
