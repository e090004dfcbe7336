#pragma once

#include <cstdint>

#include "bix/ec.hpp"

namespace bix {

/// Short-Weierstrass curve over a small prime field, all arithmetic in
/// uint64 with __int128 intermediates. Small enough that tests can brute
/// force secrets and enumerate every scalar.
class SmallCurveGroup final : public EcGroup {
 public:
  SmallCurveGroup(uint64_t q, uint64_t a, uint64_t b, uint64_t gx, uint64_t gy,
                  uint64_t n);

  size_t scalar_width() const override { return scalar_width_; }
  size_t coord_width() const override { return coord_width_; }

  Bytes scalar_reduce(ByteView wide) const override;
  Bytes scalar_add(ByteView a, ByteView b) const override;
  Bytes scalar_mul(ByteView a, ByteView b) const override;
  Bytes scalar_inv(ByteView a) const override;
  bool scalar_is_zero(ByteView a) const override;
  bool scalar_in_range(ByteView a) const override;

  Point base() const override;
  Point add(const Point& p, const Point& q) const override;
  Point mul(ByteView scalar, const Point& p) const override;
  bool valid_point(const Point& p) const override;
  Bytes coord_mod_order(ByteView x) const override;

  uint64_t order() const { return n_; }
  uint64_t field_modulus() const { return q_; }

  // uint64 views of the group operations, for exhaustive tests.
  struct RawPoint {
    uint64_t x = 0;
    uint64_t y = 0;
    bool infinity = false;
  };
  RawPoint raw_base() const { return {gx_, gy_, false}; }
  RawPoint raw_add(const RawPoint& p, const RawPoint& q) const;
  RawPoint raw_mul(uint64_t k, const RawPoint& p) const;
  bool raw_on_curve(const RawPoint& p) const;

  Point from_raw(const RawPoint& p) const;
  RawPoint to_raw(const Point& p) const;

 private:
  uint64_t q_, a_, b_, gx_, gy_, n_;
  size_t coord_width_, scalar_width_;
};

/// y^2 = x^3 + 2x + 2 over F_17, P = (5, 1), n = 19.
const SmallCurveGroup& toy_curve_f17();

}  // namespace bix
