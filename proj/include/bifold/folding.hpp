// Copyright 2026 The bifold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "bifold/biaffine.hpp"

namespace bifold {

/// Line alpha*x + beta*y = gamma, normalized so max(|alpha|,|beta|) = 1 and
/// the leading nonzero of (alpha, beta) is positive.
template <typename Scalar>
struct Line {
  Scalar alpha, beta, gamma;

  Line(Scalar a, Scalar b, Scalar g) : alpha(a), beta(b), gamma(g) {
    using std::abs;
    const Scalar scale = std::max(abs(alpha), abs(beta));
    if (!(scale > Scalar(0))) {
      throw IllConditionedError("line has zero normal vector");
    }
    alpha /= scale;
    beta /= scale;
    gamma /= scale;
    if (alpha < Scalar(0) || (alpha == Scalar(0) && beta < Scalar(0))) {
      alpha = -alpha;
      beta = -beta;
      gamma = -gamma;
    }
  }

  static Line through(const Vec2<Scalar>& p, const Vec2<Scalar>& q) {
    const Vec2<Scalar> t = q - p;
    return Line(-t.y(), t.x(), -t.y() * p.x() + t.x() * p.y());
  }

  static Line from_point_direction(const Vec2<Scalar>& p,
                                   const Vec2<Scalar>& dir) {
    return through(p, p + dir);
  }

  Scalar signed_value(const Vec2<Scalar>& p) const {
    return alpha * p.x() + beta * p.y() - gamma;
  }

  Scalar distance(const Vec2<Scalar>& p) const {
    using std::abs;
    return abs(signed_value(p)) / std::hypot(alpha, beta);
  }

  /// Whether the line is a graph y(x); always true for folding lines.
  bool graph_over_x() const {
    using std::abs;
    return abs(beta) >= abs(alpha);
  }

  /// Graph parametrization over the better-conditioned axis: the parameter
  /// is the x coordinate when the line is a graph over x, else the y
  /// coordinate.
  Vec2<Scalar> point_at(Scalar t) const {
    if (graph_over_x()) return {t, (gamma - alpha * t) / beta};
    return {(gamma - beta * t) / alpha, t};
  }

  /// Direction matching point_at: point_at(t) = point_at(0) + t * direction.
  Vec2<Scalar> direction() const {
    if (graph_over_x()) return {Scalar(1), -alpha / beta};
    return {-beta / alpha, Scalar(1)};
  }

  Vec2<Scalar> reflect(const Vec2<Scalar>& p) const {
    const Vec2<Scalar> n(alpha, beta);
    return p - Scalar(2) * signed_value(p) / n.squaredNorm() * n;
  }
};

using Lined = Line<double>;

/// Parametric parabola r(t) = u + v t + w t^2. Degenerate when v and w are
/// linearly dependent (a line, or a ray doubling back on itself).
template <typename Scalar>
struct Parabola {
  Vec2<Scalar> u, v, w;

  Vec2<Scalar> point_at(Scalar t) const { return u + v * t + w * (t * t); }
  Vec2<Scalar> velocity_at(Scalar t) const { return v + Scalar(2) * t * w; }

  bool degenerate(Scalar eps = Scalar(kDegeneracyEps)) const {
    return parallel(v, w, eps);
  }
};

using Parabolad = Parabola<double>;

template <typename Scalar>
struct Circle {
  Vec2<Scalar> center;
  Scalar radius;
};

using Circled = Circle<double>;

namespace detail {

template <typename Scalar>
inline void require_non_degenerate(const BiAffineMap<Scalar>& f) {
  if (classify(f) != DegeneracyClass::NonDegenerate) {
    throw DegenerateMapError("bi-affine map is degenerate");
  }
}

}  // namespace detail

/// The folding line |b d| x + |d c| y = |c b|, on which the Jacobian of f
/// vanishes. Not parallel to either axis for non-degenerate maps.
template <typename Scalar>
inline Line<Scalar> folding_line(const BiAffineMap<Scalar>& f) {
  detail::require_non_degenerate(f);
  const auto k = folding_coefficients(f);
  return Line<Scalar>(k.bd, k.dc, k.cb);
}

/// The mirror point p* with f(p) = f(p*); an involution fixing the folding
/// line pointwise.
template <typename Scalar>
inline Vec2<Scalar> fold_point(const BiAffineMap<Scalar>& f,
                               const Vec2<Scalar>& p) {
  detail::require_non_degenerate(f);
  const auto k = folding_coefficients(f);
  return {(k.cb - k.dc * p.y()) / k.bd, (k.cb - k.bd * p.x()) / k.dc};
}

/// Image of a line under f, as a parametric parabola sharing the line's
/// graph parametrization. w = 0 (a line) exactly when L is axis-parallel.
template <typename Scalar>
inline Parabola<Scalar> line_image(const BiAffineMap<Scalar>& f,
                                   const Line<Scalar>& L) {
  const Vec2<Scalar> p0 = L.point_at(Scalar(0));
  const Vec2<Scalar> dir = L.direction();
  return {f(p0),
          f.b * dir.x() + f.c * dir.y() +
              f.d * (p0.x() * dir.y() + p0.y() * dir.x()),
          f.d * (dir.x() * dir.y())};
}

/// The folding parabola P_f = f(L_f), obtained by substituting the folding
/// line's graph parametrization into the map. Non-degenerate whenever f is.
template <typename Scalar>
inline Parabola<Scalar> folding_parabola(const BiAffineMap<Scalar>& f) {
  return line_image(f, folding_line(f));
}

/// Tangent line to the folding parabola at f(A), for A on the folding line.
/// Equals the image of both axis-parallel lines through A; its direction is
/// c + d * A.x.
template <typename Scalar>
inline Line<Scalar> tangent_at(const BiAffineMap<Scalar>& f,
                               const Vec2<Scalar>& A,
                               Scalar tol = Scalar(1e-9)) {
  detail::require_non_degenerate(f);
  const Line<Scalar> lf = folding_line(f);
  if (lf.distance(A) > tol * (Scalar(1) + A.norm())) {
    throw NotOnFoldingLineError("point is not on the folding line");
  }
  return Line<Scalar>::from_point_direction(f(A), f.c + f.d * A.x());
}

/// Image of p as the intersection of the two parabola tangents picked out
/// by the axis-parallel lines through p. Cross-validation construction; the
/// production path is plain evaluation.
template <typename Scalar>
inline Vec2<Scalar> image_via_tangents(const BiAffineMap<Scalar>& f,
                                       const Vec2<Scalar>& p,
                                       Scalar tol = Scalar(1e-9)) {
  using std::abs;
  detail::require_non_degenerate(f);
  const auto k = folding_coefficients(f);
  // The tangent pair is parallel exactly when the Jacobian vanishes at p.
  const Scalar jac = k.bd * p.x() + k.dc * p.y() - k.cb;
  if (abs(jac) <= tol * (abs(k.bd) + abs(k.dc))) {
    throw OnFoldingLineError("point lies on the folding line");
  }
  const Vec2<Scalar> A(p.x(), (k.cb - k.bd * p.x()) / k.dc);
  const Vec2<Scalar> B((k.cb - k.dc * p.y()) / k.bd, p.y());
  const Vec2<Scalar> fa = f(A);
  const Vec2<Scalar> fb = f(B);
  const Vec2<Scalar> dir_a = f.c + f.d * A.x();
  const Vec2<Scalar> dir_b = f.b + f.d * B.y();
  const Scalar s = det2<Scalar>(fb - fa, dir_b) / det2(dir_a, dir_b);
  return fa + s * dir_a;
}

/// Intersection of the tangent lines at parameters s and t: the classic
/// u + v (s+t)/2 + w s t.
template <typename Scalar>
inline Vec2<Scalar> tangent_intersection(const Parabola<Scalar>& P, Scalar s,
                                         Scalar t) {
  return P.u + P.v * ((s + t) / Scalar(2)) + P.w * (s * t);
}

template <typename Scalar>
inline Circle<Scalar> circumcircle(const Vec2<Scalar>& p,
                                   const Vec2<Scalar>& q,
                                   const Vec2<Scalar>& r) {
  const Vec2<Scalar> d1 = q - p;
  const Vec2<Scalar> d2 = r - p;
  const Scalar det = det2(d1, d2);
  if (det == Scalar(0)) {
    throw IllConditionedError("circumcircle of collinear points");
  }
  Eigen::Matrix<Scalar, 2, 2> m;
  m << d1.x(), d1.y(), d2.x(), d2.y();
  const Vec2<Scalar> rhs(d1.squaredNorm() / Scalar(2),
                         d2.squaredNorm() / Scalar(2));
  const Vec2<Scalar> center = p + m.inverse() * rhs;
  return {center, (center - p).norm()};
}

namespace detail {

/// Of the two intersection points of circles a and b, the one lying on
/// circle c (within conditioning limits).
template <typename Scalar>
inline Vec2<Scalar> circle_pair_point(const Circle<Scalar>& a,
                                      const Circle<Scalar>& b,
                                      const Circle<Scalar>& c) {
  using std::abs;
  using std::sqrt;
  const Vec2<Scalar> delta = b.center - a.center;
  const Scalar dist = delta.norm();
  if (dist <= Scalar(0)) {
    throw IllConditionedError("concentric tangent-triangle circumcircles");
  }
  const Scalar along =
      (dist * dist + a.radius * a.radius - b.radius * b.radius) /
      (Scalar(2) * dist);
  const Scalar h2 = a.radius * a.radius - along * along;
  const Scalar h = sqrt(std::max(h2, Scalar(0)));
  const Vec2<Scalar> axis = delta / dist;
  const Vec2<Scalar> base = a.center + along * axis;
  const Vec2<Scalar> perp(-axis.y(), axis.x());
  const Vec2<Scalar> cand1 = base + h * perp;
  const Vec2<Scalar> cand2 = base - h * perp;
  const Scalar err1 = abs((cand1 - c.center).norm() - c.radius);
  const Scalar err2 = abs((cand2 - c.center).norm() - c.radius);
  return err1 <= err2 ? cand1 : cand2;
}

}  // namespace detail

/// Focus and directrix of a non-degenerate parabola by the Lambert
/// construction: circumcircles of tangent triangles all pass through the
/// focus, and reflecting the focus about two tangents gives the directrix.
template <typename Scalar>
inline std::pair<Vec2<Scalar>, Line<Scalar>> focus_directrix(
    const Parabola<Scalar>& P, Scalar eps = Scalar(kDegeneracyEps)) {
  if (P.degenerate(eps)) {
    throw DegenerateParabolaError("parabola is degenerate");
  }
  const Vec2<Scalar> axis = P.w.normalized();
  const Vec2<Scalar> v_perp = P.v - P.v.dot(axis) * axis;
  // Vertex parameter and the natural transverse scale of the parabola.
  const Scalar t_vertex = -P.v.dot(P.w) / (Scalar(2) * P.w.squaredNorm());
  const Scalar t_scale = v_perp.norm() / (Scalar(2) * P.w.norm());
  const std::array<Scalar, 4> offsets{Scalar(-1), Scalar(0), Scalar(1),
                                      Scalar(2)};
  std::array<Scalar, 4> ts;
  for (int i = 0; i < 4; ++i) ts[i] = t_vertex + t_scale * offsets[i];

  auto tri_circle = [&](int i, int j, int k) {
    return circumcircle(tangent_intersection(P, ts[i], ts[j]),
                        tangent_intersection(P, ts[i], ts[k]),
                        tangent_intersection(P, ts[j], ts[k]));
  };
  const Circle<Scalar> c0 = tri_circle(0, 1, 2);
  const Circle<Scalar> c1 = tri_circle(0, 1, 3);
  const Circle<Scalar> c2 = tri_circle(0, 2, 3);

  // Three pairwise intersections, disambiguated by the remaining circle,
  // averaged to damp conditioning error.
  const Vec2<Scalar> f01 = detail::circle_pair_point(c0, c1, c2);
  const Vec2<Scalar> f02 = detail::circle_pair_point(c0, c2, c1);
  const Vec2<Scalar> f12 = detail::circle_pair_point(c1, c2, c0);
  const Vec2<Scalar> focus = (f01 + f02 + f12) / Scalar(3);

  auto tangent_line = [&](Scalar t) {
    return Line<Scalar>::from_point_direction(P.point_at(t),
                                              P.velocity_at(t));
  };
  const Vec2<Scalar> d1 = tangent_line(ts[0]).reflect(focus);
  const Vec2<Scalar> d2 = tangent_line(ts[3]).reflect(focus);
  return {focus, Line<Scalar>::through(d1, d2)};
}

/// Whether the folding line misses the open unit square (touching the
/// boundary is allowed), so that f is injective on the square and maps its
/// sides to a convex quadrilateral. Affine maps are proper by convention;
/// line-range maps never are. Point-fold maps are tested against their
/// (axis-parallel) Jacobian zero line.
template <typename Scalar>
inline bool is_proper(const BiAffineMap<Scalar>& f,
                      Scalar eps = Scalar(kDegeneracyEps)) {
  switch (classify(f, eps)) {
    case DegeneracyClass::Affine: return true;
    case DegeneracyClass::LineRange: return false;
    default: break;
  }
  using std::abs;
  const auto k = folding_coefficients(f);
  const Scalar tol = eps * (abs(k.bd) + abs(k.dc) + abs(k.cb));
  bool pos = false, neg = false;
  const Quad<Scalar> sq = Quad<Scalar>::unit_square();
  for (int i = 0; i < 4; ++i) {
    const Vec2<Scalar> p = sq.corner(i);
    const Scalar j = k.bd * p.x() + k.dc * p.y() - k.cb;
    if (j > tol) pos = true;
    if (j < -tol) neg = true;
  }
  return !(pos && neg);
}

}  // namespace bifold
