#pragma once

#include "bix/bytes.hpp"

namespace bix {

/// Elliptic-curve group with scalar arithmetic modulo the order of the base
/// point. Scalars and coordinates travel as fixed-width big-endian bytes.
class EcGroup {
 public:
  struct Point {
    Bytes x;
    Bytes y;
    bool infinity = false;
  };

  virtual ~EcGroup() = default;

  virtual size_t scalar_width() const = 0;
  virtual size_t coord_width() const = 0;

  // Scalar arithmetic mod n.
  virtual Bytes scalar_reduce(ByteView wide) const = 0;
  virtual Bytes scalar_add(ByteView a, ByteView b) const = 0;
  virtual Bytes scalar_mul(ByteView a, ByteView b) const = 0;
  virtual Bytes scalar_inv(ByteView a) const = 0;
  virtual bool scalar_is_zero(ByteView a) const = 0;
  /// 0 < value < n, for an exact scalar_width() input.
  virtual bool scalar_in_range(ByteView a) const = 0;

  virtual Point base() const = 0;
  virtual Point add(const Point& p, const Point& q) const = 0;
  virtual Point mul(ByteView scalar, const Point& p) const = 0;
  virtual bool valid_point(const Point& p) const = 0;

  /// x-coordinate interpreted as an integer, reduced mod n.
  virtual Bytes coord_mod_order(ByteView x) const = 0;
};

Bytes encode_point(const EcGroup& group, const EcGroup::Point& p);
/// Returns nullopt-like empty point on bad width; callers treat a point that
/// fails valid_point() as a verification failure, not an error.
EcGroup::Point decode_point(const EcGroup& group, ByteView data);

}  // namespace bix
