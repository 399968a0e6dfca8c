#pragma once

// Discrete spherical space over string numbers.  A point is a nonnegative
// radial string number plus two angle indices on the 2^-n lattice:
// theta = i*2^-n in [0, pi], phi = k*2^-n in [0, 2pi).  A scale section e
// holds the radial shells m*2^(-n)*2^(2n*e), m = 1 .. 2^(2n)-1, each carrying
// floor(2^n*pi) * floor(2^(n+1)*pi) lattice directions.

#include "io_util.hpp"
#include "string_number.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace rn {

inline std::int64_t polar_count(precision p) {
  if (p.n() > 60) throw std::domain_error("polar_count: n too large to enumerate angles");
  return floor_pow2_pi(p.n()).convert_to<std::int64_t>();
}

inline std::int64_t azimuth_count(precision p) {
  if (p.n() > 60) throw std::domain_error("azimuth_count: n too large to enumerate angles");
  return floor_pow2_pi(p.n() + 1).convert_to<std::int64_t>();
}

enum class singularity_class { none, origin_3d, z_axis_2d, phi0_plane_1d };

inline const char* to_string(singularity_class c) {
  switch (c) {
    case singularity_class::origin_3d: return "origin-3d";
    case singularity_class::z_axis_2d: return "z-axis-2d";
    case singularity_class::phi0_plane_1d: return "phi0-plane-1d";
    default: return "none";
  }
}

class space_point {
 public:
  // angle indices are clamped to 0 at the origin, where directions degenerate
  space_point(string_number r, std::int64_t theta_index, std::int64_t phi_index)
      : r_(std::move(r)), theta_index_(theta_index), phi_index_(phi_index) {
    if (r_.sign() < 0) throw std::invalid_argument("space_point: r must be >= 0");
    if (r_.is_zero()) {
      theta_index_ = phi_index_ = 0;
      return;
    }
    if (theta_index_ < 0 || theta_index_ > polar_count(r_.prec()))
      throw std::invalid_argument("space_point: theta index out of [0, floor(2^n pi)]");
    if (phi_index_ < 0 || phi_index_ > azimuth_count(r_.prec()))
      throw std::invalid_argument("space_point: phi index out of [0, floor(2^(n+1) pi)]");
  }

  static space_point origin(precision p) { return space_point(string_number::zero(p), 0, 0); }

  static space_point from_angles(string_number r, const string_number& theta,
                                 const string_number& phi) {
    if (!(r.prec() == theta.prec()) || !(r.prec() == phi.prec()))
      throw std::invalid_argument("space_point: precision mismatch");
    return space_point(std::move(r), angle_index(theta), angle_index(phi));
  }

  const string_number& r() const noexcept { return r_; }
  std::int64_t theta_index() const noexcept { return theta_index_; }
  std::int64_t phi_index() const noexcept { return phi_index_; }
  precision prec() const noexcept { return r_.prec(); }
  bool is_origin() const noexcept { return r_.is_zero(); }

  big_rational theta() const { return big_rational(theta_index_) * pow2_exact(-prec().n()); }
  big_rational phi() const { return big_rational(phi_index_) * pow2_exact(-prec().n()); }

  // angles as scale-0 string numbers; defined only while the index fits the
  // mantissa range (all indices from n >= 3 on; small n has out-of-range corners)
  string_number theta_number() const { return angle_number(theta_index_); }
  string_number phi_number() const { return angle_number(phi_index_); }

  friend bool operator==(const space_point&, const space_point&) = default;

 private:
  static std::int64_t angle_index(const string_number& a) {
    if (a.is_zero()) return 0;
    if (a.sign() < 0 || a.scale() != 0)
      throw std::invalid_argument("space_point: angles must be scale-0 values in [0, 2pi)");
    return a.mantissa().convert_to<std::int64_t>();
  }

  string_number angle_number(std::int64_t k) const {
    if (k == 0) return string_number::zero(prec());
    if (big_int(k) > prec().mantissa_limit())
      throw std::domain_error("angle index exceeds the scale-0 mantissa range");
    return string_number::from_parts(1, k, 0, prec());
  }

  string_number r_;
  std::int64_t theta_index_;
  std::int64_t phi_index_;
};

struct scale_section {
  precision p;
  std::int64_t e;
};

inline big_int section_point_count(const scale_section& s) {
  return s.p.mantissa_limit() * polar_count(s.p) * azimuth_count(s.p);
}

// theta = pi is never a lattice angle, so only theta = 0 marks the polar axis
inline singularity_class classify_singularity(const space_point& q) {
  if (q.is_origin()) return singularity_class::origin_3d;
  if (q.theta_index() == 0) return singularity_class::z_axis_2d;
  if (q.phi_index() == 0) return singularity_class::phi0_plane_1d;
  return singularity_class::none;
}

inline space_point transform_out(const space_point& q) {
  if (q.is_origin()) throw std::domain_error("transform_out: undefined at the origin");
  return space_point(successor(q.r()), q.theta_index(), q.phi_index());
}

// the radial grid accumulates at 0, so stepping inward never reaches the origin
inline space_point transform_in(const space_point& q) {
  if (q.is_origin()) throw std::domain_error("transform_in: undefined at the origin");
  return space_point(predecessor(q.r()), q.theta_index(), q.phi_index());
}

// Euclidean chord length, rounded back onto the radial grid.  Exact when one
// point is the origin (no rounding) or both share a direction (single rounding).
inline string_number distance(const space_point& p2, const space_point& p1,
                              tie_policy ties = tie_policy::toward_zero) {
  if (!(p2.prec() == p1.prec())) throw std::invalid_argument("distance: precision mismatch");
  const precision p = p2.prec();
  if (p1.is_origin()) return p2.r();
  if (p2.is_origin()) return p1.r();
  if (p2.theta_index() == p1.theta_index() && p2.phi_index() == p1.phi_index())
    return round_to(abs(value_of(p2.r()) - value_of(p1.r())), p, ties);
  const int bits = 4 * p.n() + 24;
  const auto [s1, c1] = sin_cos(p1.theta(), bits);
  const auto [s2, c2] = sin_cos(p2.theta(), bits);
  const auto sc = sin_cos(p2.phi() - p1.phi(), bits);
  const big_rational cos_psi = c1 * c2 + s1 * s2 * sc.second;
  const big_rational r1 = value_of(p1.r());
  const big_rational r2 = value_of(p2.r());
  big_rational d2 = r1 * r1 + r2 * r2 - 2 * r1 * r2 * cos_psi;
  if (d2.sign() < 0) d2 = 0;  // guard against approximation noise at coincident points
  return round_to(sqrt_approx(d2, bits), p, ties);
}

// visits section points in (m, theta index, phi index) lexicographic order
template <typename Fn>
inline void for_each_point(const scale_section& s, const big_int& max_points, Fn&& fn) {
  if (section_point_count(s) > max_points)
    throw std::length_error("for_each_point: section larger than the point cap");
  const big_int top = s.p.mantissa_limit();
  const std::int64_t tc = polar_count(s.p);
  const std::int64_t kc = azimuth_count(s.p);
  for (big_int m = 1; m <= top; ++m) {
    const string_number r = string_number::from_parts(1, m, s.e, s.p);
    for (std::int64_t ti = 0; ti < tc; ++ti)
      for (std::int64_t ki = 0; ki < kc; ++ki) fn(space_point(r, ti, ki));
  }
}

inline std::vector<space_point> enumerate_section(const scale_section& s,
                                                  const big_int& max_points = 10000000) {
  const big_int count = section_point_count(s);
  if (count > max_points) throw std::length_error("enumerate_section: section larger than the point cap");
  std::vector<space_point> out;
  out.reserve(count.convert_to<std::size_t>());
  for_each_point(s, max_points, [&](space_point q) { out.push_back(std::move(q)); });
  return out;
}

inline void write_section_csv(std::ostream& os, const scale_section& s,
                              const big_int& max_points = 10000000) {
  os << "r_exact_num,r_exact_den,e,theta_index,phi_index,singularity\n";
  for_each_point(s, max_points, [&](const space_point& q) {
    const big_rational v = value_of(q.r());
    os << join_csv({numerator(v).str(), denominator(v).str(), std::to_string(s.e),
                    std::to_string(q.theta_index()), std::to_string(q.phi_index()),
                    to_string(classify_singularity(q))});
  });
}

}  // namespace rn
