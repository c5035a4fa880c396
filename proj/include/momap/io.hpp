// File formats: exact polytope files (string rationals, never floats),
// deterministic report files, CSV sample clouds, and SVG plots for rank <= 2.

#ifndef MOMAP_IO_HPP
#define MOMAP_IO_HPP

#include "momap/polytope.hpp"
#include "momap/theorems.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace momap::io {

inline constexpr const char* kToolVersion = "momap 1.0.0";

// %.17g formatting: shortest round-trip representation, stable across runs
std::string format_double(double x);

struct PolytopeFile {
    poly::Polytope polytope;
    std::string lattice;  // free-form lattice label
};

void write_polytope(std::ostream& os, const poly::Polytope& p, const std::string& lattice);
PolytopeFile read_polytope(std::istream& is);

void write_polytope_file(const std::string& path, const poly::Polytope& p,
                         const std::string& lattice);
PolytopeFile read_polytope_file(const std::string& path);

// Report serialization embeds the tool version, the caller's config string,
// the seed, and every check with its tolerance; output is byte-deterministic.
void write_report(std::ostream& os, const theorems::VerificationReport& rep,
                  const std::string& config);
void write_report_file(const std::string& path, const theorems::VerificationReport& rep,
                       const std::string& config);

struct CloudRow {
    std::vector<double> coords;
    double off_chamber_norm = 0;
    long weight_id = -1;
};

void write_cloud(std::ostream& os, const std::vector<CloudRow>& rows, int dim);
void write_cloud_file(const std::string& path, const std::vector<CloudRow>& rows, int dim);
std::vector<CloudRow> read_cloud_file(const std::string& path, int* dim_out = nullptr);

// SVG plot of 1- or 2-dimensional data: polytope outlines, lattice dots,
// chamber wall rays, optional sample cloud.  Throws on higher dimensions.
struct PlotInput {
    std::vector<poly::Polytope> polytopes;
    std::vector<CloudRow> cloud;
    int dim = 2;
};

void write_svg(std::ostream& os, const PlotInput& in);
void write_svg_file(const std::string& path, const PlotInput& in);

}  // namespace momap::io

#endif  // MOMAP_IO_HPP
