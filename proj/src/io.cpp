#include "cvxdiff/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "cvxdiff/error.hpp"
#include "cvxdiff/oracle.hpp"
#include "cvxdiff/smooth2d.hpp"

namespace cvxdiff::io {

using nlohmann::json;

PolytopeFile parse_polytope_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("vertices"))
    fail(ErrorCode::ParseError, "polytope file needs 'dim' and 'vertices'");
  if (!doc["dim"].is_number_integer()) fail(ErrorCode::ParseError, "'dim' must be an integer");
  const auto dim = doc["dim"].get<long>();
  if (dim < 1 || dim > static_cast<long>(kMaxDimension))
    fail(ErrorCode::ParseError, "dim must be between 1 and " + std::to_string(kMaxDimension));
  PolytopeFile file;
  file.dim = static_cast<std::size_t>(dim);
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail(ErrorCode::ParseError, "'name' must be a string");
    file.name = doc["name"].get<std::string>();
  }
  if (!doc["vertices"].is_array() || doc["vertices"].empty())
    fail(ErrorCode::ParseError, "'vertices' must be a nonempty array");
  for (const auto& v : doc["vertices"]) {
    if (!v.is_array() || v.size() != file.dim)
      fail(ErrorCode::ParseError, "every vertex needs exactly dim coordinates");
    Point p;
    for (const auto& c : v) {
      if (c.is_string()) {
        p.push_back(parse_rational(c.get<std::string>()));
      } else if (c.is_number_integer()) {
        p.push_back(parse_rational(std::to_string(c.get<long long>())));
      } else {
        fail(ErrorCode::ParseError, "coordinates must be \"p/q\" strings or integers");
      }
    }
    file.vertices.push_back(std::move(p));
  }
  return file;
}

PolytopeFile read_polytope_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_polytope_file(ss.str());
}

Polytope to_polytope(const PolytopeFile& file) { return convex_hull(file.vertices); }

json point_json(std::span<const Rational> p) {
  json a = json::array();
  for (const auto& x : p) a.push_back(format_rational(x));
  return a;
}

namespace {

json points_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

json int_vector_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json body_json(const Polytope& p, const std::string& name) {
  json b;
  b["name"] = name;
  b["vertices"] = points_json(p.vertices());
  b["volume"] = format_rational(volume(p));
  return b;
}

}  // namespace

json face_json(const Polytope& p, const Face& f) {
  json j;
  j["dim"] = f.dim;
  j["vertices"] = points_json(face_points(p, f));
  return j;
}

std::string serialize(const Polytope& p, const std::string& name) {
  json doc;
  doc["dim"] = p.dim();
  doc["vertices"] = points_json(p.vertices());
  if (!name.empty()) doc["name"] = name;
  return doc.dump(2) + "\n";
}

json decomposition_report(const Decomposition& d, const DegreeDifferenceReport& degrees,
                          const std::string& k1_name, const std::string& k2_name) {
  const Polytope& k1 = d.k1.polytope();
  const Polytope& k2 = d.k2.polytope();
  json doc;
  doc["version"] = kFormatVersion;
  doc["dim"] = k1.dim();
  doc["k1"] = body_json(k1, k1_name);
  doc["k2"] = body_json(k2, k2_name);

  json pieces = json::array();
  std::size_t full = 0;
  for (const auto& piece : d.pieces) {
    json j;
    j["k1_face"] = face_json(k1, d.k1.face(piece.pair.f1));
    j["k2_face"] = face_json(k2, d.k2.face(piece.pair.f2));
    j["witness"] = int_vector_json(piece.pair.witness);
    j["dim"] = piece.hull.dim;
    j["vertices"] = points_json(piece.hull.vertices);
    j["volume"] = format_rational(piece.volume);
    if (piece.hull.full_dimensional()) ++full;
    pieces.push_back(std::move(j));
  }
  doc["pieces"] = std::move(pieces);

  json sets = json::array();
  const auto cs = d.correction_sets();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    json j;
    j["face"] = face_json(k2, d.k2.face(cs[i].face));
    j["pieces"] = cs[i].pieces;
    j["c_volume"] = format_rational(cs[i].c_volume);
    const auto& r = degrees.reports.at(i);
    j["c_measure"] = format_rational(r.c_measure);
    json terms = json::array();
    for (const auto& t : r.terms) terms.push_back(format_rational(t));
    j["terms"] = std::move(terms);
    sets.push_back(std::move(j));
  }
  doc["correction_sets"] = std::move(sets);

  json totals;
  totals["volume_difference"] = format_rational(volume(k2) - volume(k1));
  totals["pieces_volume"] = format_rational(d.total_volume());
  totals["degree_difference"] = format_rational(degrees.degree_difference);
  totals["sum_c_volume"] = format_rational(degrees.sum_c_volume);
  totals["sum_c_measure"] = format_rational(degrees.sum_c_measure);
  totals["full_dimensional_pieces"] = full;
  doc["totals"] = std::move(totals);
  return doc;
}

json measure_report(const SphereMeasure& s) {
  json doc;
  doc["version"] = kFormatVersion;
  doc["dim"] = s.dim;
  json atoms = json::array();
  for (const auto& [r, w] : s.atoms) {
    json a;
    a["direction"] = int_vector_json(r);
    a["lattice_weight"] = format_rational(w);
    atoms.push_back(std::move(a));
  }
  doc["atoms"] = std::move(atoms);
  doc["resultant"] = point_json(s.resultant());
  doc["euclidean_mass"] = s.euclidean_mass();
  return doc;
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::fabs(x) < 5e-4 ? 0.0 : x);
  return buf;
}

constexpr const char* kPalette[] = {"#f2c80f", "#d62728", "#1f77b4", "#2ca02c",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string render_svg(const Decomposition& d) {
  const Polytope& k1 = d.k1.polytope();
  const Polytope& k2 = d.k2.polytope();
  if (k2.dim() != 2) fail(ErrorCode::DimensionMismatch, "figures are planar only");

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& v : k2.vertices()) {
    xmin = std::min(xmin, to_double(v[0]));
    xmax = std::max(xmax, to_double(v[0]));
    ymin = std::min(ymin, to_double(v[1]));
    ymax = std::max(ymax, to_double(v[1]));
  }
  const double extent = std::max(xmax - xmin, ymax - ymin);
  const double panel = 400, margin = 20;
  const double s = (panel - 2 * margin) / extent;
  auto px = [&](const Rational& x) { return margin + (to_double(x) - xmin) * s; };
  auto py = [&](const Rational& y) { return panel - margin - (to_double(y) - ymin) * s; };

  // Boundary order of a planar polygon: walk the facets by normal angle.
  auto polygon = [&](const std::vector<Point>& verts) {
    std::vector<Point> pts = verts;
    double cx = 0, cy = 0;
    for (const auto& p : pts) {
      cx += to_double(p[0]);
      cy += to_double(p[1]);
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
      return std::atan2(to_double(a[1]) - cy, to_double(a[0]) - cx) <
             std::atan2(to_double(b[1]) - cy, to_double(b[0]) - cx);
    });
    std::string out;
    for (const auto& p : pts) {
      if (!out.empty()) out += ' ';
      out += fmt(px(p[0])) + "," + fmt(py(p[1]));
    }
    return out;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * panel << "\" height=\"" << panel
      << "\" viewBox=\"0 0 " << 2 * panel << " " << panel << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << 2 * panel << "\" height=\"" << panel << "\" fill=\"white\"/>\n";
  svg << "<polygon points=\"" << polygon(k2.vertices()) << "\" fill=\"#eeeeee\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  // Colour order: higher-dimensional faces first, then by face centroid (y, then x).
  const auto sets = d.correction_sets();
  std::vector<std::tuple<std::size_t, Rational, Rational, std::size_t>> order;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].c_volume == 0) continue;
    const Face& f = d.k2.face(sets[i].face);
    Rational cx = 0, cy = 0;
    for (const auto& v : face_points(k2, f)) {
      cx += v[0];
      cy += v[1];
    }
    order.emplace_back(2 - f.dim, cy / f.vertices.size(), cx / f.vertices.size(), i);
  }
  std::sort(order.begin(), order.end());
  std::size_t color = 0;
  for (const auto& entry : order) {
    const auto& cs = sets[std::get<3>(entry)];
    const char* fill = kPalette[color++ % std::size(kPalette)];
    svg << "<g class=\"correction-set\" data-c=\"" << format_rational(cs.c_volume) << "\">\n";
    for (auto i : cs.pieces) {
      const auto& piece = d.pieces[i];
      if (!piece.hull.full_dimensional()) continue;
      svg << "<polygon points=\"" << polygon(piece.hull.vertices) << "\" fill=\"" << fill
          << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "<polygon points=\"" << polygon(k1.vertices()) << "\" fill=\"#888888\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  const double cx = panel + panel / 2, cy = panel / 2, radius = panel / 2 - margin;
  svg << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(radius)
      << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
  for (const auto& piece : d.pieces) {
    const double wx = piece.pair.witness[0].get_d(), wy = piece.pair.witness[1].get_d();
    const double norm = std::hypot(wx, wy);
    const bool facet_ray = d.k1.face(piece.pair.f1).dim == 1 || d.k2.face(piece.pair.f2).dim == 1;
    svg << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(cy) << "\" x2=\"" << fmt(cx + radius * wx / norm)
        << "\" y2=\"" << fmt(cy - radius * wy / norm) << "\" stroke=\"" << (facet_ray ? "black" : "#999999")
        << "\" stroke-width=\"1\"" << (facet_ray ? "" : " stroke-dasharray=\"4 3\"") << "/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

enum Exit : int {
  kOk = 0,
  kFailed = 1,
  kParse = 2,
  kNotNested = 3,
  kDegenerate = 4,
  kMismatch = 5,
  kNonConvergence = 6,
  kNotPlanar = 7,
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return kParse;
    case ErrorCode::NotNested: return kNotNested;
    case ErrorCode::DegenerateInput: return kDegenerate;
    case ErrorCode::MismatchDetected:
    case ErrorCode::ConventionMismatch: return kMismatch;
    case ErrorCode::NonConvergence: return kNonConvergence;
    default: return kFailed;
  }
}

void report_error(std::ostream& err, std::string_view code, int exit, const std::string& message) {
  json line;
  line["error"] = code;
  line["exit"] = exit;
  line["message"] = message;
  err << line.dump() << "\n";
}

struct Loaded {
  Polytope polytope;
  std::string name;
};

Loaded load(const std::string& path) {
  PolytopeFile f = read_polytope_file(path);
  std::string name = f.name.empty() ? path : f.name;
  return {to_polytope(f), name};
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::ParseError, "cannot write '" + path + "'");
  f << text;
}

// Bumps the weight of the first atom whose support gap is nonzero, so the
// corruption is visible to the measure route.
CorrectionOptions fault_options(bool inject, const Polytope& k1, const Polytope& k2) {
  CorrectionOptions opts;
  if (inject) {
    opts.tamper = [&k1, &k2, done = false](std::size_t, SphereMeasure& s) mutable {
      if (done) return;
      for (auto& [r, w] : s.atoms) {
        const std::span<const Integer> dir(r);
        if (support_eval(k1, dir) != support_eval(k2, dir)) {
          w += 1;
          done = true;
          return;
        }
      }
    };
  }
  return opts;
}

int cmd_decompose(const std::string& k1_path, const std::string& k2_path, const std::string& out_path,
                  bool inject, std::ostream& out) {
  Loaded a = load(k1_path), b = load(k2_path);
  Decomposition d = canonical_decomposition(a.polytope, b.polytope);
  DegreeDifferenceReport degrees = degree_difference_report(d, fault_options(inject, a.polytope, b.polytope));
  json doc = decomposition_report(d, degrees, a.name, b.name);
  doc["command"] = "decompose";
  write_output(out_path, doc.dump(2) + "\n", out);
  return kOk;
}

int cmd_verify(const std::string& k1_path, const std::string& k2_path, std::uint64_t samples,
               std::uint64_t seed, bool inject, std::ostream& out) {
  Loaded a = load(k1_path), b = load(k2_path);
  Decomposition d = canonical_decomposition(a.polytope, b.polytope);
  DegreeDifferenceReport degrees = degree_difference_report(d, fault_options(inject, a.polytope, b.polytope));
  out << "degree_difference " << format_rational(degrees.degree_difference) << "\n";
  out << "sum_c_volume " << format_rational(degrees.sum_c_volume) << "\n";
  out << "sum_c_measure " << format_rational(degrees.sum_c_measure) << "\n";
  out << "route_equality PASS (" << degrees.reports.size() << " faces)\n";

  const Rational diff = volume(b.polytope) - volume(a.polytope);
  if (d.total_volume() != diff)
    fail(ErrorCode::MismatchDetected, "piece volumes do not sum to the volume difference");
  out << "volume_partition PASS\n";

  std::vector<Polytope> full;
  for (const auto& piece : d.pieces) {
    if (!piece.hull.full_dimensional()) continue;
    if (!piece_contact_holds(d, piece)) fail(ErrorCode::MismatchDetected, "a piece meets K1 outside its face");
    full.push_back(*piece.hull.local);
  }
  out << "piece_contact PASS (" << full.size() << " full-dimensional pieces)\n";

  if (samples > 0) {
    oracle::McConfig cfg{seed, samples, oracle::bounding_box(b.polytope)};
    const auto doubles = oracle::mc_overlap_count(full, cfg);
    if (doubles != 0)
      fail(ErrorCode::MismatchDetected, std::to_string(doubles) + " samples lie in two piece interiors");
    out << "mc_disjointness PASS (0 double hits in " << samples << " samples)\n";
  }
  out << "PASS\n";
  return kOk;
}

int cmd_monja(int panels, double tol, std::ostream& out) {
  smooth2d::Config cfg;
  cfg.panels = panels;
  cfg.tolerance = tol;
  const auto phi1 = smooth2d::builtin("monja_phi1");
  const auto phi2 = smooth2d::builtin("monja_phi2");
  const auto c = smooth2d::numeric_correction(phi1, phi2, 0.0, std::numbers::pi / 2, cfg);
  const auto v1 = smooth2d::numeric_volume(phi1, cfg);
  const auto v2 = smooth2d::numeric_volume(phi2, cfg);
  const double target = 1.0 / 3.0;
  const double err = std::fabs(c.value - target);
  char buf[128];
  auto line = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s %.12f\n", key, v);
    out << buf;
  };
  line("c_numeric", c.value);
  out << "target 1/3\n";
  std::snprintf(buf, sizeof buf, "abs_error %.3e\nrichardson_error %.3e\npanels %d\n", err, c.error, c.panels);
  out << buf;
  line("volume_k1", v1.value);
  line("volume_k2", v2.value);
  line("degree_difference", 2 * v2.value - 2 * v1.value);
  const bool pass = err <= tol;
  out << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kOk : kFailed;
}

int cmd_svg(const std::string& k1_path, const std::string& k2_path, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
  Loaded a = load(k1_path), b = load(k2_path);
  if (a.polytope.dim() != 2 || b.polytope.dim() != 2) {
    report_error(err, "NotPlanar", kNotPlanar, "svg output needs two-dimensional inputs");
    return kNotPlanar;
  }
  write_output(out_path, render_svg(canonical_decomposition(a.polytope, b.polytope)), out);
  return kOk;
}

int cmd_mixed_volume(const std::vector<std::string>& paths, std::ostream& out) {
  std::vector<Polytope> bodies;
  for (const auto& p : paths) bodies.push_back(load(p).polytope);
  json doc;
  doc["version"] = kFormatVersion;
  const Rational mv = mixed_volume_ie(bodies);
  doc["mixed_volume"] = format_rational(mv);
  doc["normalized"] = format_rational(mixed_volume_via_measure(bodies));
  doc["mixed_degree_via_measure"] = format_rational(mixed_degree_via_measure(bodies));
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_measure(const std::string& path, std::ostream& out) {
  Loaded a = load(path);
  json doc = measure_report(surface_area_measure(a.polytope));
  doc["volume"] = format_rational(volume(a.polytope));
  doc["pairing_with_own_support"] = format_rational(pair(a.polytope, surface_area_measure(a.polytope)));
  out << doc.dump(2) << "\n";
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical decomposition of nested convex bodies and their correction terms"};
  app.require_subcommand(1);

  std::string k1, k2, output;
  std::uint64_t samples = 20000, seed = 1;
  bool inject = false;
  int panels = 1024;
  double tol = 1e-4;
  std::vector<std::string> files;

  auto* decompose = app.add_subcommand("decompose", "write the decomposition report of K2 \\ K1");
  decompose->add_option("k1", k1, "inner body")->required();
  decompose->add_option("k2", k2, "outer body")->required();
  decompose->add_option("-o,--output", output, "report path (default: stdout)");
  decompose->add_flag("--fault-inject", inject, "corrupt one measure atom");

  auto* verify = app.add_subcommand("verify", "check the degree identity by every route");
  verify->add_option("k1", k1, "inner body")->required();
  verify->add_option("k2", k2, "outer body")->required();
  verify->add_option("--samples", samples, "Monte-Carlo samples for the disjointness check");
  verify->add_option("--seed", seed, "Monte-Carlo seed");
  verify->add_flag("--fault-inject", inject, "corrupt one measure atom");

  auto* monja = app.add_subcommand("monja", "numeric correction term of the planar smooth example");
  monja->add_option("--panels", panels, "Simpson panels per smooth arc");
  monja->add_option("--tol", tol, "acceptance and convergence tolerance");

  auto* svg = app.add_subcommand("svg", "draw a planar decomposition");
  svg->add_option("k1", k1, "inner body")->required();
  svg->add_option("k2", k2, "outer body")->required();
  svg->add_option("-o,--output", output, "svg path (default: stdout)");

  auto* mixed = app.add_subcommand("mixed-volume", "mixed volume of n bodies in R^n");
  mixed->add_option("bodies", files, "polytope files")->required();

  auto* measure = app.add_subcommand("measure", "surface area measure of one body");
  measure->add_option("body", k1, "polytope file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*decompose) return cmd_decompose(k1, k2, output, inject, out);
    if (*verify) return cmd_verify(k1, k2, samples, seed, inject, out);
    if (*monja) return cmd_monja(panels, tol, out);
    if (*svg) return cmd_svg(k1, k2, output, out, err);
    if (*mixed) return cmd_mixed_volume(files, out);
    if (*measure) return cmd_measure(k1, out);
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    std::string message = e.what();
    message.erase(0, to_string(e.code()).size() + 2);
    report_error(err, to_string(e.code()), code, message);
    if (e.code() == ErrorCode::MismatchDetected) out << "FAIL\n";
    return code;
  }
  return kFailed;
}

}  // namespace cvxdiff::io
