#include "fracnet/io.hpp"

#include "fracnet/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fracnet::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double to_double(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + s + "'", line);
    }
}

int to_int(const std::string& s, int line) {
    int v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError("not an integer: '" + s + "'", line);
    return v;
}

void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
}

} // namespace

std::string network_csv(const FractureNetwork& net) {
    std::string out = "id,x1,y1,x2,y2,aperture,kind,hub_id\n";
    for (const Fracture& f : net.fractures) {
        out += std::to_string(f.id) + ',' + fixed6(f.segment.a.x) + ',' + fixed6(f.segment.a.y) + ',' +
               fixed6(f.segment.b.x) + ',' + fixed6(f.segment.b.y) + ',' + fixed6(f.aperture) + ',' +
               to_string(f.kind) + ',' + (f.hub_id ? std::to_string(*f.hub_id) : std::string{}) + '\n';
    }
    return out;
}

void write_network_csv(const FractureNetwork& net, const fs::path& path) { write_text(path, network_csv(net)); }

FractureNetwork read_network_csv(const fs::path& path, const GeneratorConfig& config) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    FractureNetwork net;
    net.config = config;
    net.domain = config.n;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (lineno == 1) {
            if (line != "id,x1,y1,x2,y2,aperture,kind,hub_id") throw ParseError("unexpected network header", 1);
            continue;
        }
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 8) throw ParseError("expected 8 columns", lineno);
        Fracture f;
        f.id = to_int(cols[0], lineno);
        f.segment = {{to_double(cols[1], lineno), to_double(cols[2], lineno)},
                     {to_double(cols[3], lineno), to_double(cols[4], lineno)}};
        f.aperture = to_double(cols[5], lineno);
        if (cols[6] == "hub") f.kind = FractureKind::Hub;
        else if (cols[6] == "background") f.kind = FractureKind::Background;
        else throw ParseError("unknown fracture kind '" + cols[6] + "'", lineno);
        if (!cols[7].empty()) f.hub_id = to_int(cols[7], lineno);
        f.center = 0.5 * (f.segment.a + f.segment.b);
        const Vec2 d = f.segment.b - f.segment.a;
        f.length = std::hypot(d.x, d.y);
        double az = std::atan2(d.y, d.x) * 180.0 / 3.14159265358979323846;
        f.azimuth = az < 0.0 ? az + 360.0 : az;
        net.fractures.push_back(f);
    }
    if (lineno == 0) throw ParseError("empty network file");
    return net;
}

void write_edge_list(const FractureGraph& g, const fs::path& path) {
    std::string out = "# nodes=" + std::to_string(g.n_nodes()) + "\n";
    for (auto [i, j] : g.edges()) out += std::to_string(i) + ',' + std::to_string(j) + '\n';
    write_text(path, out);
}

FractureGraph read_edge_list(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (lineno == 1) {
            const std::string prefix = "# nodes=";
            if (line.rfind(prefix, 0) != 0) throw ParseError("expected '# nodes=N' header", 1);
            n = to_int(line.substr(prefix.size()), 1);
            continue;
        }
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 2) throw ParseError("expected 'i,j'", lineno);
        edges.emplace_back(to_int(cols[0], lineno), to_int(cols[1], lineno));
    }
    if (n < 0) throw ParseError("empty edge list");
    return FractureGraph::from_edges(n, edges);
}

void write_metrics(const MetricsReport& r, const fs::path& dir) {
    fs::create_directories(dir);
    {
        std::string out = "k,count,frequency\n";
        for (const auto& b : r.degree.bins)
            out += std::to_string(b.k) + ',' + std::to_string(b.count) + ',' + format_double(b.frequency) + '\n';
        write_text(dir / "degree_hist.csv", out);
    }
    {
        std::string out = "k,mean_c\n";
        for (auto [k, c] : r.ck.points) out += std::to_string(k) + ',' + format_double(c) + '\n';
        write_text(dir / "ck.csv", out);
    }
    {
        std::string out = "class,index,count\n";
        for (std::size_t c = 0; c < r.census.size(); ++c)
            out += std::string(kMotif4Names[c]) + ',' + std::to_string(c + 1) + ',' + std::to_string(r.census[c]) +
                   '\n';
        write_text(dir / "census.csv", out);
    }
    {
        std::string out;
        const int n = r.paths.n;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j) out += ',';
                out += std::to_string(r.paths.distance(i, j));
            }
            out += '\n';
        }
        write_text(dir / "distances.csv", out);
    }
    {
        auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
        std::string out = "C,L,giant_fraction,degree_slope,degree_r2,ck_slope,ck_r2\n";
        out += format_double(r.C) + ',' + opt(r.paths.mean_length) + ',' + format_double(r.paths.giant_fraction) +
               ',' + opt(r.degree.fit ? std::optional(r.degree.fit->slope) : std::nullopt) + ',' +
               opt(r.degree.fit ? std::optional(r.degree.fit->r2) : std::nullopt) + ',' +
               opt(r.ck.fit ? std::optional(r.ck.fit->slope) : std::nullopt) + ',' +
               opt(r.ck.fit ? std::optional(r.ck.fit->r2) : std::nullopt) + '\n';
        write_text(dir / "summary.csv", out);
    }
}

void write_steady_state(const std::vector<double>& u, const fs::path& path) {
    std::string out = "node,u\n";
    for (std::size_t i = 0; i < u.size(); ++i) out += std::to_string(i) + ',' + format_double(u[i]) + '\n';
    write_text(path, out);
}

void write_histogram(const Histogram& h, const fs::path& path) {
    std::string out = "bin_center,count,frequency\n";
    for (std::size_t b = 0; b < h.centers.size(); ++b)
        out += format_double(h.centers[b]) + ',' + format_double(h.counts[b]) + ',' + format_double(h.frequency[b]) +
               '\n';
    write_text(path, out);
}

void write_pgm(const lbm::Mask& mask, const fs::path& path, PgmFormat format) {
    auto out = open_out(path);
    const bool binary = format == PgmFormat::Binary;
    out << (binary ? "P5" : "P2") << '\n' << mask.width << ' ' << mask.height << "\n255\n";
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            const unsigned char v = mask.is_fluid(x, y) ? 255 : 0;
            if (binary) {
                out.put(static_cast<char>(v));
            } else {
                out << (x ? " " : "") << static_cast<int>(v);
            }
        }
        if (!binary) out << '\n';
    }
}

lbm::Mask read_pgm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    auto token = [&]() {
        std::string t;
        char c;
        while (in.get(c)) {
            if (c == '#') {
                std::string skip;
                std::getline(in, skip);
                if (!t.empty()) break;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!t.empty()) break;
                continue;
            }
            t += c;
        }
        return t;
    };
    const std::string magic = token();
    if (magic != "P2" && magic != "P5") throw ParseError("not a PGM file (magic '" + magic + "')");
    const int w = to_int(token(), 0);
    const int h = to_int(token(), 0);
    const int maxval = to_int(token(), 0);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) throw ParseError("unsupported PGM dimensions or depth");
    lbm::Mask mask(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int v = 0;
            if (magic == "P5") {
                char c;
                if (!in.get(c)) throw ParseError("truncated PGM data");
                v = static_cast<unsigned char>(c);
            } else {
                const std::string t = token();
                if (t.empty()) throw ParseError("truncated PGM data");
                v = to_int(t, 0);
            }
            mask.set(x, y, v > maxval / 2);
        }
    }
    return mask;
}

void write_raster_csv(const std::vector<double>& values, int width, int height, const fs::path& path) {
    std::string out;
    out.reserve(values.size() * 12);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (x) out += ',';
            out += format_double(values[static_cast<std::size_t>(y) * width + x]);
        }
        out += '\n';
    }
    write_text(path, out);
}

void write_flow_fields(const lbm::FlowField& flow, const fs::path& dir) {
    fs::create_directories(dir);
    write_raster_csv(flow.vx, flow.width, flow.height, dir / "vx.csv");
    write_raster_csv(flow.vy, flow.width, flow.height, dir / "vy.csv");
    write_raster_csv(flow.rho, flow.width, flow.height, dir / "rho.csv");
    std::vector<double> speed(flow.vx.size());
    for (std::size_t k = 0; k < speed.size(); ++k) {
        const double s = std::hypot(flow.vx[k], flow.vy[k]);
        speed[k] = s > 0.0 ? std::log10(s) : std::nan("");
    }
    write_raster_csv(speed, flow.width, flow.height, dir / "speed_log10.csv");
}

void append_csv_row(const fs::path& path, const std::vector<std::string>& header,
                    const std::vector<std::string>& row) {
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for appending");
    auto join = [](const std::vector<std::string>& cols) {
        std::string s;
        for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
        return s;
    };
    if (fresh) out << join(header) << '\n';
    out << join(row) << '\n';
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
}

} // namespace fracnet::io
