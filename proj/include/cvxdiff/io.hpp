#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvxdiff/correction.hpp"

namespace cvxdiff::io {

inline constexpr int kFormatVersion = 1;

/// On-disk polytope: {"dim": n, "vertices": [["p/q", ...], ...], "name": "..."}.
struct PolytopeFile {
  std::size_t dim = 0;
  std::vector<Point> vertices;
  std::string name;
};

/// Throws ParseError on malformed input or dim outside [1, 4].
PolytopeFile parse_polytope_file(const std::string& text);
PolytopeFile read_polytope_file(const std::string& path);

/// Hull of the file's points; DegenerateInput if they are not full-dimensional.
Polytope to_polytope(const PolytopeFile& file);

/// Normalized form: irredundant vertices in canonical order.
std::string serialize(const Polytope& p, const std::string& name = "");

nlohmann::json point_json(std::span<const Rational> p);
nlohmann::json face_json(const Polytope& p, const Face& f);

nlohmann::json decomposition_report(const Decomposition& d, const DegreeDifferenceReport& degrees,
                                    const std::string& k1_name, const std::string& k2_name);

nlohmann::json measure_report(const SphereMeasure& s);

/// Planar figure: K2 with its correction sets shaded, K1 on top, and the witness
/// rays of the difference subdivision in a side panel. Byte-stable.
std::string render_svg(const Decomposition& d);

/// Entry point of the command-line tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvxdiff::io
