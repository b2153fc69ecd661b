#include "qpt/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qpt {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '|', '/');
    return s;
}

}  // namespace

void CheckReport::record(std::string label, double margin, std::string note) {
    if (vacuous || margin < worst_margin || std::isnan(margin)) worst_margin = margin;
    vacuous = false;
    ++instances;
    details.push_back({std::move(label), margin, std::move(note)});
    passed = !forced_failure_ && !std::isnan(worst_margin) && worst_margin >= -tolerance;
}

void CheckReport::absorb(const CheckReport& other, const std::string& prefix) {
    for (const auto& d : other.details) record(prefix + d.label, d.margin, d.note);
    for (const auto& [k, v] : other.metrics) metrics[prefix + k] = v;
    for (const auto& n : other.notes) notes.push_back(prefix + n);
    if (!other.passed) fail(prefix + "sub-check failed");
}

void CheckReport::fail(std::string reason) {
    forced_failure_ = true;
    passed = false;
    notes.push_back(std::move(reason));
}

std::string serialize(const CheckReport& r) {
    std::ostringstream os;
    os << "[check " << r.check_id << "]\n";
    os << "instances = " << r.instances << "\n";
    os << "worst_margin = " << format_double(r.worst_margin) << "\n";
    os << "tolerance = " << format_double(r.tolerance) << "\n";
    os << "passed = " << (r.passed ? "true" : "false") << "\n";
    os << "vacuous = " << (r.vacuous ? "true" : "false") << "\n";
    for (const auto& [k, v] : r.metrics) os << "metric." << k << " = " << format_double(v) << "\n";
    for (const auto& n : r.notes) os << "note = " << sanitize(n) << "\n";
    for (const auto& d : r.details) {
        os << "instance = " << sanitize(d.label) << " | " << format_double(d.margin) << " | " << sanitize(d.note)
           << "\n";
    }
    os << "[end]\n";
    return os.str();
}

std::vector<CheckReport> parse_reports(std::string_view text) {
    std::vector<CheckReport> out;
    std::istringstream is{std::string(text)};
    std::string line;
    CheckReport* current = nullptr;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("report line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(is, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.rfind("[check ", 0) == 0 && t.back() == ']') {
            if (current) fail("nested [check]");
            out.emplace_back(trim(std::string_view(t).substr(7, t.size() - 8)));
            current = &out.back();
            continue;
        }
        if (t == "[end]") {
            if (!current) fail("[end] without [check]");
            current = nullptr;
            continue;
        }
        if (!current) fail("content outside a [check] block");
        const auto eq = t.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        try {
            if (key == "instances") current->instances = std::stoul(value);
            else if (key == "worst_margin") current->worst_margin = parse_double(value);
            else if (key == "tolerance") current->tolerance = parse_double(value);
            else if (key == "passed") current->passed = value == "true";
            else if (key == "vacuous") current->vacuous = value == "true";
            else if (key.rfind("metric.", 0) == 0) current->metrics[key.substr(7)] = parse_double(value);
            else if (key == "note") current->notes.push_back(value);
            else if (key == "instance") {
                const auto p1 = value.find('|');
                const auto p2 = value.find('|', p1 == std::string::npos ? p1 : p1 + 1);
                if (p1 == std::string::npos || p2 == std::string::npos) fail("malformed instance");
                current->details.push_back({trim(std::string_view(value).substr(0, p1)),
                                            parse_double(trim(std::string_view(value).substr(p1 + 1, p2 - p1 - 1))),
                                            trim(std::string_view(value).substr(p2 + 1))});
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            if (std::string(e.what()).rfind("report line", 0) == 0) throw;
            fail(e.what());
        } catch (const std::out_of_range&) {
            fail("number out of range");
        }
    }
    if (current) throw std::invalid_argument("unterminated [check] block");
    return out;
}

}  // namespace qpt
