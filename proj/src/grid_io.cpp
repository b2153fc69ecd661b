#include "qpt/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qpt {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

}  // namespace

void write_grid(std::ostream& os, const GridFunction& u, GridFormat format) {
    const Box4& box = u.box();
    const Point4& c = box.center();
    os << "qgrid n=1 center=" << format_double(c[0]) << ',' << format_double(c[1]) << ',' << format_double(c[2])
       << ',' << format_double(c[3]) << " half_width=" << format_double(box.half_width())
       << " resolution=" << box.resolution() << " radius=" << format_double(u.domain().radius())
       << " format=" << (format == GridFormat::text ? "text" : "binary") << '\n';
    const auto& v = u.values();
    if (format == GridFormat::text) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double x = v[i];
            if (std::isnan(x)) os << "nan\n";
            else if (std::isinf(x)) os << (x > 0 ? "inf\n" : "-inf\n");
            else os << format_double(x) << '\n';
        }
    } else {
        static_assert(std::endian::native == std::endian::little, "binary snapshots assume little-endian hosts");
        os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    }
    if (!os) throw std::runtime_error("failed writing grid snapshot");
}

void write_grid(const std::string& path, const GridFunction& u, GridFormat format) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_grid(os, u, format);
}

GridFunction read_grid(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("empty grid snapshot");
    std::istringstream hs(header);
    std::string magic;
    hs >> magic;
    if (magic != "qgrid") throw std::invalid_argument("not a qgrid snapshot");
    std::map<std::string, std::string> fields;
    std::string tok;
    while (hs >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("malformed header field '" + tok + "'");
        fields[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    for (const char* key : {"n", "center", "half_width", "resolution", "radius", "format"}) {
        if (!fields.count(key)) throw std::invalid_argument(std::string("snapshot header lacks '") + key + "'");
    }
    if (fields["n"] != "1") throw std::invalid_argument("only n=1 grids are supported");
    Point4 center;
    {
        std::istringstream cs(fields["center"]);
        std::string part;
        for (int d = 0; d < 4; ++d) {
            if (!std::getline(cs, part, ',')) throw std::invalid_argument("center needs 4 coordinates");
            center[d] = parse_double(part);
        }
    }
    const Box4 box(center, parse_double(fields["half_width"]), std::stoi(fields["resolution"]));
    auto domain = Domain::make(box, parse_double(fields["radius"]));
    Eigen::ArrayXd values(static_cast<Eigen::Index>(box.size()));
    if (fields["format"] == "text") {
        std::string line;
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            if (!std::getline(is, line)) throw std::invalid_argument("snapshot truncated");
            values[i] = parse_double(line);
        }
    } else if (fields["format"] == "binary") {
        is.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
        if (is.gcount() != static_cast<std::streamsize>(values.size() * sizeof(double))) {
            throw std::invalid_argument("snapshot truncated");
        }
    } else {
        throw std::invalid_argument("unknown snapshot format '" + fields["format"] + "'");
    }
    return GridFunction(std::move(domain), std::move(values));
}

GridFunction read_grid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    return read_grid(is);
}

}  // namespace qpt
