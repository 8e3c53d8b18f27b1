// Copyright 2026 The bifold Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace bifold {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Vec2d = Vec2<double>;

/// Relative tolerance used by all parallelism / degeneracy decisions.
inline constexpr double kDegeneracyEps = 1e-10;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateMapError : Error { using Error::Error; };
struct DegenerateParabolaError : Error { using Error::Error; };
struct NotOnFoldingLineError : Error { using Error::Error; };
struct OnFoldingLineError : Error { using Error::Error; };
struct OutsideImageError : Error { using Error::Error; };
struct IllConditionedError : Error { using Error::Error; };
struct InversionFailedError : Error { using Error::Error; };
struct DepthCapError : Error { using Error::Error; };

/// Determinant of the 2x2 matrix with columns u and v.
template <typename Scalar>
inline Scalar det2(const Vec2<Scalar>& u, const Vec2<Scalar>& v) {
  return u.x() * v.y() - u.y() * v.x();
}

/// True when u and v are linearly dependent up to a relative tolerance.
/// The zero vector counts as parallel to everything.
template <typename Scalar>
inline bool parallel(const Vec2<Scalar>& u, const Vec2<Scalar>& v,
                     Scalar eps = Scalar(kDegeneracyEps)) {
  using std::abs;
  return abs(det2(u, v)) <= eps * u.norm() * v.norm();
}

/// The map f(x, y) = a + b x + c y + d x y, affine in each variable
/// separately. Horizontal and vertical lines go to lines, and proportions
/// along them are preserved.
template <typename Scalar>
struct BiAffineMap {
  Vec2<Scalar> a, b, c, d;

  Vec2<Scalar> operator()(Scalar x, Scalar y) const {
    return a + b * x + c * y + d * (x * y);
  }
  Vec2<Scalar> operator()(const Vec2<Scalar>& p) const {
    return (*this)(p.x(), p.y());
  }

  static BiAffineMap identity() {
    return {Vec2<Scalar>(0, 0), Vec2<Scalar>(1, 0), Vec2<Scalar>(0, 1),
            Vec2<Scalar>(0, 0)};
  }
};

using BiAffineMapd = BiAffineMap<double>;

/// Images of the unit-square corners (0,0), (1,0), (1,1), (0,1), in order.
template <typename Scalar>
struct Quad {
  Vec2<Scalar> p0, p1, p2, p3;

  Vec2<Scalar> corner(int i) const {
    switch (i & 3) {
      case 0: return p0;
      case 1: return p1;
      case 2: return p2;
      default: return p3;
    }
  }

  friend bool operator==(const Quad& a, const Quad& b) {
    return a.p0 == b.p0 && a.p1 == b.p1 && a.p2 == b.p2 && a.p3 == b.p3;
  }

  static Quad unit_square() {
    return {Vec2<Scalar>(0, 0), Vec2<Scalar>(1, 0), Vec2<Scalar>(1, 1),
            Vec2<Scalar>(0, 1)};
  }
};

using Quadd = Quad<double>;

/// The unique bi-affine map sending the unit-square corners to the quad.
template <typename Scalar>
inline BiAffineMap<Scalar> biaffine_from_quad(const Quad<Scalar>& q) {
  return {q.p0, q.p1 - q.p0, q.p3 - q.p0, q.p2 + q.p0 - q.p1 - q.p3};
}

enum class DegeneracyClass {
  Affine,         ///< d = 0
  LineRange,      ///< d != 0, both b and c parallel to d (range is a line)
  PointFold,      ///< d != 0, exactly one of b, c parallel to d
  NonDegenerate,  ///< d != 0, neither b nor c parallel to d
};

inline const char* to_string(DegeneracyClass c) {
  switch (c) {
    case DegeneracyClass::Affine: return "affine";
    case DegeneracyClass::LineRange: return "line-range";
    case DegeneracyClass::PointFold: return "point-fold";
    default: return "non-degenerate";
  }
}

inline std::ostream& operator<<(std::ostream& os, DegeneracyClass c) {
  return os << to_string(c);
}

template <typename Scalar>
inline DegeneracyClass classify(const BiAffineMap<Scalar>& f,
                                Scalar eps = Scalar(kDegeneracyEps)) {
  if (f.d.norm() <= eps * (f.b.norm() + f.c.norm())) {
    return DegeneracyClass::Affine;
  }
  const bool b_par = parallel(f.b, f.d, eps);
  const bool c_par = parallel(f.c, f.d, eps);
  if (b_par && c_par) return DegeneracyClass::LineRange;
  if (b_par || c_par) return DegeneracyClass::PointFold;
  return DegeneracyClass::NonDegenerate;
}

/// The three determinants of the folding-line equation
/// |b d| x + |d c| y = |c b|.
template <typename Scalar>
struct FoldingCoefficients {
  Scalar bd, dc, cb;
};

template <typename Scalar>
inline FoldingCoefficients<Scalar> folding_coefficients(
    const BiAffineMap<Scalar>& f) {
  return {det2(f.b, f.d), det2(f.d, f.c), det2(f.c, f.b)};
}

/// Jacobian determinant of f at p: |b d| x + |d c| y - |c b|.
/// Vanishes exactly on the folding line.
template <typename Scalar>
inline Scalar jacobian_det(const BiAffineMap<Scalar>& f,
                           const Vec2<Scalar>& p) {
  const auto k = folding_coefficients(f);
  return k.bd * p.x() + k.dc * p.y() - k.cb;
}

}  // namespace bifold
