#pragma once

#include <map>
#include <vector>

#include "cvxdiff/polytope.hpp"

namespace cvxdiff {

/// A nonempty face of a polytope, identified by the parent vertices it contains.
/// The improper face (the polytope itself) has no active facets.
struct Face {
  std::vector<std::size_t> vertices;  // sorted indices into the parent's vertices
  std::vector<std::size_t> facets;    // parent facets tight on the face
  int dim = 0;

  bool improper() const { return facets.empty(); }
  friend bool operator==(const Face&, const Face&) = default;
};

std::vector<Point> face_points(const Polytope& p, const Face& f);

/// Face spanned by a set of parent vertices (which must already be the vertex
/// set of a face, e.g. an argmin set).
Face make_face(const Polytope& p, std::vector<std::size_t> vertex_ids);

/// Normal cone sigma_F = { v : F lies in the argmin of <., v> }. Its rays are the
/// normals of the facets containing F.
struct NormalCone {
  Face face;
  std::vector<IntVector> rays;
  std::size_t dim() const;
};

/// Every nonempty face (improper face last), sorted by dimension and then by vertex list.
std::vector<Face> exposed_faces(const Polytope& p);

/// Indexed face lattice of one polytope; argmin queries resolve to face indices.
class FaceLattice {
 public:
  explicit FaceLattice(const Polytope& p);

  const Polytope& polytope() const { return poly_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(std::size_t i) const { return faces_[i]; }
  std::size_t size() const { return faces_.size(); }

  std::size_t index_of(const std::vector<std::size_t>& vertex_ids) const;
  std::size_t argmin(std::span<const Integer> v) const;
  std::size_t argmin(const Direction& v) const { return argmin(std::span<const Integer>(v.primitive())); }

 private:
  Polytope poly_;
  std::vector<Face> faces_;
  std::map<std::vector<std::size_t>, std::size_t> index_;
};

struct NormalFan {
  std::vector<NormalCone> cones;  // parallel to exposed_faces(p)
};

NormalFan normal_fan(const Polytope& p);

/// Face minimizing <., v>; equals the face whose normal cone has v in its relative interior.
Face argmin_face(const Polytope& p, const Direction& v);
std::vector<std::size_t> argmin_vertices(const Polytope& p, std::span<const Integer> v);

/// v in relint(C), decided as argmin_face(parent, v) == C.face.
bool relint_contains(const Polytope& parent, const NormalCone& c, const Direction& v);

}  // namespace cvxdiff
