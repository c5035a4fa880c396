#include "momap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace momap::io {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string format_vec(const RatVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += format_rat(v[i]);
    }
    return s;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::string expect_field(std::istream& is, const std::string& key) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("polytope file: truncated");
    if (line.rfind(key, 0) != 0) {
        throw std::runtime_error("polytope file: expected '" + key + "', got '" + line + "'");
    }
    std::string rest = line.substr(key.size());
    while (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
    return rest;
}

}  // namespace

void write_polytope(std::ostream& os, const poly::Polytope& p, const std::string& lattice) {
    os << "momap-polytope v1\n";
    os << "ambient_dim: " << p.ambient_dim() << "\n";
    os << "lattice: " << lattice << "\n";
    os << "dim: " << p.dim() << "\n";
    os << "vertices: " << p.vertices().size() << "\n";
    for (const RatVec& v : p.vertices()) os << format_vec(v) << "\n";
    if (p.is_empty()) {
        os << "equalities: 0\n";
        os << "inequalities: 0\n";
        return;
    }
    const poly::HRep& h = p.hrep();
    os << "equalities: " << h.eqs.size() << "\n";
    for (const poly::HalfSpace& e : h.eqs) {
        os << format_vec(e.normal) << " = " << format_rat(e.offset) << "\n";
    }
    os << "inequalities: " << h.ineqs.size() << "\n";
    for (const poly::HalfSpace& e : h.ineqs) {
        os << format_vec(e.normal) << " <= " << format_rat(e.offset) << "\n";
    }
}

PolytopeFile read_polytope(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "momap-polytope v1") {
        throw std::runtime_error("polytope file: bad header");
    }
    int ambient = std::stoi(expect_field(is, "ambient_dim:"));
    PolytopeFile out;
    out.lattice = expect_field(is, "lattice:");
    expect_field(is, "dim:");
    int nverts = std::stoi(expect_field(is, "vertices:"));
    std::vector<RatVec> verts;
    for (int i = 0; i < nverts; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error("polytope file: truncated vertices");
        RatVec v;
        for (const std::string& tok : split_ws(line)) v.push_back(parse_rat(tok));
        if (static_cast<int>(v.size()) != ambient) {
            throw std::runtime_error("polytope file: vertex arity mismatch");
        }
        verts.push_back(std::move(v));
    }
    // H-rep lines are validation-only; the polytope is rebuilt from vertices
    out.polytope = poly::Polytope::from_points(ambient, std::move(verts));
    return out;
}

void write_polytope_file(const std::string& path, const poly::Polytope& p,
                         const std::string& lattice) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    write_polytope(os, p, lattice);
}

PolytopeFile read_polytope_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path);
    return read_polytope(is);
}

void write_report(std::ostream& os, const theorems::VerificationReport& rep,
                  const std::string& config) {
    os << "momap-report v1\n";
    os << "tool: " << kToolVersion << "\n";
    os << "theorem: " << rep.theorem_id << "\n";
    os << "inputs: " << rep.inputs_digest << "\n";
    os << "seed: " << rep.seed << "\n";
    os << "samples: requested=" << rep.samples_requested << " used=" << rep.samples_used
       << " skipped=" << rep.samples_skipped << "\n";
    os << "config: " << config << "\n";
    for (const std::string& n : rep.notes) os << "note: " << n << "\n";
    for (const theorems::CheckResult& c : rep.checks) {
        os << "check " << c.name << ": " << (c.pass ? "PASS" : "FAIL")
           << " gap=" << format_double(c.gap) << " tol=" << format_double(c.tol);
        if (!c.note.empty()) os << " # " << c.note;
        os << "\n";
    }
    os << "result: " << (rep.all_pass() ? "PASS" : "FAIL") << "\n";
}

void write_report_file(const std::string& path, const theorems::VerificationReport& rep,
                       const std::string& config) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    write_report(os, rep, config);
}

void write_cloud(std::ostream& os, const std::vector<CloudRow>& rows, int dim) {
    os << "# momap-cloud v1\n";
    for (int i = 0; i < dim; ++i) os << "c" << i << ",";
    os << "off_chamber_norm,weight_id\n";
    for (const CloudRow& r : rows) {
        for (int i = 0; i < dim; ++i) os << format_double(r.coords[i]) << ",";
        os << format_double(r.off_chamber_norm) << "," << r.weight_id << "\n";
    }
}

void write_cloud_file(const std::string& path, const std::vector<CloudRow>& rows, int dim) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    write_cloud(os, rows, dim);
}

std::vector<CloudRow> read_cloud_file(const std::string& path, int* dim_out) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(is, line) || line != "# momap-cloud v1") {
        throw std::runtime_error("cloud file: bad header");
    }
    if (!std::getline(is, line)) throw std::runtime_error("cloud file: missing columns");
    int dim = 0;
    {
        std::istringstream hs(line);
        std::string col;
        while (std::getline(hs, col, ',')) {
            if (col.size() > 1 && col[0] == 'c') ++dim;
        }
    }
    if (dim_out) *dim_out = dim;
    std::vector<CloudRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        CloudRow row;
        for (int i = 0; i < dim; ++i) {
            std::getline(ls, cell, ',');
            row.coords.push_back(std::stod(cell));
        }
        std::getline(ls, cell, ',');
        row.off_chamber_norm = std::stod(cell);
        std::getline(ls, cell, ',');
        row.weight_id = std::stol(cell);
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

std::string fmt_coord(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

struct Viewport {
    double xmin, xmax, ymin, ymax;
    double width = 640, height = 640, margin = 40;

    double sx(double x) const {
        return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin);
    }
    double sy(double y) const {
        return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
    }
};

std::vector<std::vector<double>> ordered_outline(const poly::Polytope& p) {
    std::vector<std::vector<double>> pts;
    for (const RatVec& v : p.vertices()) {
        pts.push_back({to_double(v[0]), v.size() > 1 ? to_double(v[1]) : 0.0});
    }
    if (pts.size() <= 2) return pts;
    double cx = 0, cy = 0;
    for (const auto& q : pts) {
        cx += q[0];
        cy += q[1];
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        return std::atan2(a[1] - cy, a[0] - cx) < std::atan2(b[1] - cy, b[0] - cx);
    });
    return pts;
}

}  // namespace

void write_svg(std::ostream& os, const PlotInput& in) {
    if (in.dim > 2 || in.dim < 1) {
        throw std::invalid_argument("write_svg: only dimensions 1 and 2 are drawable");
    }
    // bounds over everything drawn (points embedded on the x-axis when dim==1)
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    auto grow = [&](double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    for (const poly::Polytope& p : in.polytopes) {
        for (const RatVec& v : p.vertices()) {
            grow(to_double(v[0]), v.size() > 1 ? to_double(v[1]) : 0.0);
        }
    }
    for (const CloudRow& r : in.cloud) {
        grow(r.coords[0], r.coords.size() > 1 ? r.coords[1] : 0.0);
    }
    double padx = 0.15 * (xmax - xmin), pady = 0.15 * (ymax - ymin);
    Viewport vp{xmin - padx, xmax + padx, ymin - pady, ymax + pady};

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << vp.width << "\" height=\""
       << vp.height << "\" viewBox=\"0 0 " << vp.width << " " << vp.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // lattice dots
    for (long ix = static_cast<long>(std::ceil(vp.xmin)); ix <= static_cast<long>(std::floor(vp.xmax)); ++ix) {
        if (in.dim == 1) {
            os << "<circle cx=\"" << fmt_coord(vp.sx(static_cast<double>(ix))) << "\" cy=\""
               << fmt_coord(vp.sy(0)) << "\" r=\"2\" fill=\"#c8c8c8\"/>\n";
            continue;
        }
        for (long iy = static_cast<long>(std::ceil(vp.ymin)); iy <= static_cast<long>(std::floor(vp.ymax)); ++iy) {
            os << "<circle cx=\"" << fmt_coord(vp.sx(static_cast<double>(ix))) << "\" cy=\""
               << fmt_coord(vp.sy(static_cast<double>(iy))) << "\" r=\"2\" fill=\"#c8c8c8\"/>\n";
        }
    }

    // chamber walls: the coordinate hyperplanes, with the dominant rays solid
    auto line = [&](double x1, double y1, double x2, double y2, const char* color, int width) {
        os << "<line x1=\"" << fmt_coord(vp.sx(x1)) << "\" y1=\"" << fmt_coord(vp.sy(y1))
           << "\" x2=\"" << fmt_coord(vp.sx(x2)) << "\" y2=\"" << fmt_coord(vp.sy(y2))
           << "\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>\n";
    };
    if (in.dim == 1) {
        line(vp.xmin, 0, vp.xmax, 0, "#a0a0a0", 1);
        line(0, -0.1, 0, 0.1, "#404040", 2);
    } else {
        line(vp.xmin, 0, vp.xmax, 0, "#e0e0e0", 1);
        line(0, vp.ymin, 0, vp.ymax, "#e0e0e0", 1);
        line(0, 0, vp.xmax, 0, "#808080", 2);  // dominant chamber walls
        line(0, 0, 0, vp.ymax, "#808080", 2);
    }

    // sample cloud
    for (const CloudRow& r : in.cloud) {
        double x = r.coords[0], y = r.coords.size() > 1 ? r.coords[1] : 0.0;
        os << "<circle cx=\"" << fmt_coord(vp.sx(x)) << "\" cy=\"" << fmt_coord(vp.sy(y))
           << "\" r=\"1.5\" fill=\"#4878cf\" fill-opacity=\"0.5\"/>\n";
    }

    // polytopes
    int color_idx = 0;
    const char* colors[] = {"#d05050", "#50a050", "#9050c0", "#c08030"};
    for (const poly::Polytope& p : in.polytopes) {
        const char* color = colors[color_idx++ % 4];
        if (p.is_empty()) {
            os << "<text x=\"" << fmt_coord(vp.margin) << "\" y=\""
               << fmt_coord(vp.margin + 14.0 * color_idx)
               << "\" fill=\"" << color << "\" font-size=\"13\">empty polytope</text>\n";
            continue;
        }
        std::vector<std::vector<double>> outline = ordered_outline(p);
        if (outline.size() == 1) {
            os << "<circle cx=\"" << fmt_coord(vp.sx(outline[0][0])) << "\" cy=\""
               << fmt_coord(vp.sy(outline[0][1])) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
            continue;
        }
        os << "<path d=\"";
        for (std::size_t i = 0; i < outline.size(); ++i) {
            os << (i ? "L" : "M") << fmt_coord(vp.sx(outline[i][0])) << " "
               << fmt_coord(vp.sy(outline[i][1]));
        }
        os << "Z\" fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";
        for (const auto& q : outline) {
            os << "<circle cx=\"" << fmt_coord(vp.sx(q[0])) << "\" cy=\"" << fmt_coord(vp.sy(q[1]))
               << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
    }
    os << "</svg>\n";
}

void write_svg_file(const std::string& path, const PlotInput& in) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    write_svg(os, in);
}

}  // namespace momap::io
