#include "cvxdiff/duality.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "cvxdiff/error.hpp"

namespace cvxdiff {

std::vector<Point> face_points(const Polytope& p, const Face& f) {
  std::vector<Point> pts;
  pts.reserve(f.vertices.size());
  for (auto i : f.vertices) pts.push_back(p.vertices()[i]);
  return pts;
}

Face make_face(const Polytope& p, std::vector<std::size_t> vertex_ids) {
  std::sort(vertex_ids.begin(), vertex_ids.end());
  Face f;
  f.vertices = std::move(vertex_ids);
  for (std::size_t k = 0; k < p.facets().size(); ++k) {
    const auto& fv = p.facets()[k].vertices;
    if (std::includes(fv.begin(), fv.end(), f.vertices.begin(), f.vertices.end())) f.facets.push_back(k);
  }
  f.dim = affine_dimension(face_points(p, f));
  return f;
}

std::size_t NormalCone::dim() const {
  std::vector<Point> rows;
  for (const auto& r : rays) rows.push_back(to_point(r));
  return rank(rows);
}

std::vector<Face> exposed_faces(const Polytope& p) {
  // Proper faces are exactly the nonempty intersections of facets.
  std::set<std::vector<std::size_t>> seen;
  std::deque<std::vector<std::size_t>> queue;
  for (const auto& f : p.facets()) {
    if (seen.insert(f.vertices).second) queue.push_back(f.vertices);
  }
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (const auto& f : p.facets()) {
      std::vector<std::size_t> meet;
      std::set_intersection(cur.begin(), cur.end(), f.vertices.begin(), f.vertices.end(),
                            std::back_inserter(meet));
      if (meet.empty()) continue;
      if (seen.insert(meet).second) queue.push_back(std::move(meet));
    }
  }
  std::vector<Face> faces;
  faces.reserve(seen.size() + 1);
  for (const auto& s : seen) faces.push_back(make_face(p, s));
  std::vector<std::size_t> all(p.vertices().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Face whole;
  whole.vertices = std::move(all);
  whole.dim = static_cast<int>(p.dim());
  faces.push_back(std::move(whole));
  std::stable_sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertices < b.vertices;
  });
  return faces;
}

FaceLattice::FaceLattice(const Polytope& p) : poly_(p), faces_(exposed_faces(p)) {
  for (std::size_t i = 0; i < faces_.size(); ++i) index_.emplace(faces_[i].vertices, i);
}

std::size_t FaceLattice::index_of(const std::vector<std::size_t>& vertex_ids) const {
  auto it = index_.find(vertex_ids);
  if (it == index_.end()) fail(ErrorCode::DomainError, "vertex set is not a face");
  return it->second;
}

std::size_t FaceLattice::argmin(std::span<const Integer> v) const {
  return index_of(argmin_vertices(poly_, v));
}

NormalFan normal_fan(const Polytope& p) {
  NormalFan fan;
  for (auto& f : exposed_faces(p)) {
    NormalCone c;
    for (auto k : f.facets) c.rays.push_back(p.facets()[k].normal);
    c.face = std::move(f);
    fan.cones.push_back(std::move(c));
  }
  return fan;
}

std::vector<std::size_t> argmin_vertices(const Polytope& p, std::span<const Integer> v) {
  if (v.size() != p.dim()) fail(ErrorCode::DimensionMismatch, "direction dimension");
  if (is_zero(v)) fail(ErrorCode::ZeroDirection, "argmin at the zero direction");
  std::vector<std::size_t> ids;
  Rational best;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    Rational val = dot(std::span<const Rational>(p.vertices()[i]), v);
    if (ids.empty() || val < best) {
      best = val;
      ids.assign(1, i);
    } else if (val == best) {
      ids.push_back(i);
    }
  }
  return ids;
}

Face argmin_face(const Polytope& p, const Direction& v) {
  return make_face(p, argmin_vertices(p, v.primitive()));
}

bool relint_contains(const Polytope& parent, const NormalCone& c, const Direction& v) {
  return argmin_vertices(parent, v.primitive()) == c.face.vertices;
}

}  // namespace cvxdiff
