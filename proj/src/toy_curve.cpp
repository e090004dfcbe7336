#include "bix/toy_curve.hpp"

#include "bix/errors.hpp"

namespace bix {

namespace {

using u128 = unsigned __int128;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((u128)a * b % m);
}

uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(((u128)a + b) % m);
}

uint64_t submod(uint64_t a, uint64_t b, uint64_t m) { return addmod(a, m - b % m, m); }

// Extended Euclid; m prime, a != 0 mod m.
uint64_t invmod(uint64_t a, uint64_t m) {
  int64_t t = 0, newt = 1;
  int64_t r = static_cast<int64_t>(m), newr = static_cast<int64_t>(a % m);
  while (newr != 0) {
    int64_t qq = r / newr;
    int64_t tmp = t - qq * newt;
    t = newt;
    newt = tmp;
    tmp = r - qq * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw ParameterError("non-invertible element");
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

size_t byte_width(uint64_t v) {
  size_t w = 1;
  while (v > 0xff) {
    v >>= 8;
    ++w;
  }
  return w;
}

uint64_t load_be(ByteView b) {
  uint64_t v = 0;
  for (uint8_t c : b) v = (v << 8) | c;
  return v;
}

uint64_t load_be_mod(ByteView b, uint64_t m) {
  uint64_t v = 0;
  for (uint8_t c : b) v = addmod(mulmod(v, 256, m), c % m, m);
  return v;
}

Bytes store_be(uint64_t v, size_t width) {
  Bytes out(width);
  for (size_t i = 0; i < width; ++i)
    out[width - 1 - i] = static_cast<uint8_t>(v >> (8 * i));
  return out;
}

}  // namespace

SmallCurveGroup::SmallCurveGroup(uint64_t q, uint64_t a, uint64_t b,
                                 uint64_t gx, uint64_t gy, uint64_t n)
    : q_(q), a_(a), b_(b), gx_(gx), gy_(gy), n_(n) {
  if (n_ < 2) throw ParameterError("degenerate group order");
  if (!is_prime(q_)) throw ParameterError("field modulus not prime");
  if (!is_prime(n_)) throw ParameterError("group order not prime");
  if (!raw_on_curve({gx_, gy_, false}))
    throw ParameterError("base point not on curve");
  if (!raw_mul(n_, {gx_, gy_, false}).infinity)
    throw ParameterError("base point order mismatch");
  coord_width_ = byte_width(q_ - 1);
  scalar_width_ = byte_width(n_ - 1);
}

bool SmallCurveGroup::raw_on_curve(const RawPoint& p) const {
  if (p.infinity) return true;
  if (p.x >= q_ || p.y >= q_) return false;
  uint64_t lhs = mulmod(p.y, p.y, q_);
  uint64_t rhs = addmod(addmod(mulmod(mulmod(p.x, p.x, q_), p.x, q_),
                               mulmod(a_ % q_, p.x, q_), q_),
                        b_ % q_, q_);
  return lhs == rhs;
}

SmallCurveGroup::RawPoint SmallCurveGroup::raw_add(const RawPoint& p,
                                                   const RawPoint& q) const {
  if (p.infinity) return q;
  if (q.infinity) return p;
  uint64_t lambda;
  if (p.x == q.x) {
    if (addmod(p.y, q.y, q_) == 0) return RawPoint{0, 0, true};
    // doubling
    uint64_t num = addmod(mulmod(3, mulmod(p.x, p.x, q_), q_), a_ % q_, q_);
    lambda = mulmod(num, invmod(addmod(p.y, p.y, q_), q_), q_);
  } else {
    uint64_t num = submod(q.y, p.y, q_);
    uint64_t den = submod(q.x, p.x, q_);
    lambda = mulmod(num, invmod(den, q_), q_);
  }
  uint64_t x3 = submod(submod(mulmod(lambda, lambda, q_), p.x, q_), q.x, q_);
  uint64_t y3 = submod(mulmod(lambda, submod(p.x, x3, q_), q_), p.y, q_);
  return RawPoint{x3, y3, false};
}

SmallCurveGroup::RawPoint SmallCurveGroup::raw_mul(uint64_t k,
                                                   const RawPoint& p) const {
  RawPoint acc{0, 0, true};
  RawPoint addend = p;
  while (k) {
    if (k & 1) acc = raw_add(acc, addend);
    addend = raw_add(addend, addend);
    k >>= 1;
  }
  return acc;
}

EcGroup::Point SmallCurveGroup::from_raw(const RawPoint& p) const {
  if (p.infinity) return Point{{}, {}, true};
  return Point{store_be(p.x, coord_width_), store_be(p.y, coord_width_), false};
}

SmallCurveGroup::RawPoint SmallCurveGroup::to_raw(const Point& p) const {
  if (p.infinity) return RawPoint{0, 0, true};
  return RawPoint{load_be(p.x), load_be(p.y), false};
}

Bytes SmallCurveGroup::scalar_reduce(ByteView wide) const {
  return store_be(load_be_mod(wide, n_), scalar_width_);
}

Bytes SmallCurveGroup::scalar_add(ByteView a, ByteView b) const {
  return store_be(addmod(load_be_mod(a, n_), load_be_mod(b, n_), n_),
                  scalar_width_);
}

Bytes SmallCurveGroup::scalar_mul(ByteView a, ByteView b) const {
  return store_be(mulmod(load_be_mod(a, n_), load_be_mod(b, n_), n_),
                  scalar_width_);
}

Bytes SmallCurveGroup::scalar_inv(ByteView a) const {
  return store_be(invmod(load_be_mod(a, n_), n_), scalar_width_);
}

bool SmallCurveGroup::scalar_is_zero(ByteView a) const {
  return load_be_mod(a, n_) == 0;
}

bool SmallCurveGroup::scalar_in_range(ByteView a) const {
  if (a.size() != scalar_width_) return false;
  uint64_t v = load_be(a);
  return v > 0 && v < n_;
}

EcGroup::Point SmallCurveGroup::base() const {
  return from_raw({gx_, gy_, false});
}

EcGroup::Point SmallCurveGroup::add(const Point& p, const Point& q) const {
  return from_raw(raw_add(to_raw(p), to_raw(q)));
}

EcGroup::Point SmallCurveGroup::mul(ByteView scalar, const Point& p) const {
  return from_raw(raw_mul(load_be_mod(scalar, n_), to_raw(p)));
}

bool SmallCurveGroup::valid_point(const Point& p) const {
  if (p.infinity) return false;
  if (p.x.size() != coord_width_ || p.y.size() != coord_width_) return false;
  RawPoint r = to_raw(p);
  return raw_on_curve(r);
}

Bytes SmallCurveGroup::coord_mod_order(ByteView x) const {
  return store_be(load_be_mod(x, n_), scalar_width_);
}

const SmallCurveGroup& toy_curve_f17() {
  static const SmallCurveGroup g(17, 2, 2, 5, 1, 19);
  return g;
}

}  // namespace bix
