#include "bix/p256.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <memory>

#include "bix/errors.hpp"

namespace bix {

namespace {

struct BnDeleter {
  void operator()(BIGNUM* p) const { BN_free(p); }
};
struct CtxDeleter {
  void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
struct PointDeleter {
  void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};

using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using CtxPtr = std::unique_ptr<BN_CTX, CtxDeleter>;
using EcPointPtr = std::unique_ptr<EC_POINT, PointDeleter>;

constexpr size_t kWidth = 32;

BnPtr bn_from(ByteView b) {
  BnPtr bn(BN_bin2bn(b.data(), static_cast<int>(b.size()), nullptr));
  if (!bn) throw ParameterError("BN_bin2bn failed");
  return bn;
}

Bytes bn_to(const BIGNUM* bn, size_t width) {
  Bytes out(width);
  if (BN_bn2binpad(bn, out.data(), static_cast<int>(width)) < 0)
    throw ParameterError("BN_bn2binpad failed");
  return out;
}

class P256Group final : public EcGroup {
 public:
  P256Group() {
    group_ = EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1);
    if (!group_) throw ParameterError("cannot build P-256 group");
    order_ = BN_new();
    CtxPtr ctx(BN_CTX_new());
    if (!EC_GROUP_get_order(group_, order_, ctx.get()))
      throw ParameterError("cannot read P-256 order");
  }

  ~P256Group() override {
    BN_free(order_);
    EC_GROUP_free(group_);
  }

  size_t scalar_width() const override { return kWidth; }
  size_t coord_width() const override { return kWidth; }

  Bytes scalar_reduce(ByteView wide) const override {
    CtxPtr ctx(BN_CTX_new());
    BnPtr v = bn_from(wide);
    BnPtr r(BN_new());
    if (!BN_nnmod(r.get(), v.get(), order_, ctx.get()))
      throw ParameterError("mod failed");
    return bn_to(r.get(), kWidth);
  }

  Bytes scalar_add(ByteView a, ByteView b) const override {
    CtxPtr ctx(BN_CTX_new());
    BnPtr ba = bn_from(a), bb = bn_from(b), r(BN_new());
    if (!BN_mod_add(r.get(), ba.get(), bb.get(), order_, ctx.get()))
      throw ParameterError("mod_add failed");
    return bn_to(r.get(), kWidth);
  }

  Bytes scalar_mul(ByteView a, ByteView b) const override {
    CtxPtr ctx(BN_CTX_new());
    BnPtr ba = bn_from(a), bb = bn_from(b), r(BN_new());
    if (!BN_mod_mul(r.get(), ba.get(), bb.get(), order_, ctx.get()))
      throw ParameterError("mod_mul failed");
    return bn_to(r.get(), kWidth);
  }

  Bytes scalar_inv(ByteView a) const override {
    CtxPtr ctx(BN_CTX_new());
    BnPtr ba = bn_from(a), r(BN_new());
    if (!BN_mod_inverse(r.get(), ba.get(), order_, ctx.get()))
      throw ParameterError("non-invertible scalar");
    return bn_to(r.get(), kWidth);
  }

  bool scalar_is_zero(ByteView a) const override {
    BnPtr ba = bn_from(a);
    CtxPtr ctx(BN_CTX_new());
    BnPtr r(BN_new());
    if (!BN_nnmod(r.get(), ba.get(), order_, ctx.get()))
      throw ParameterError("mod failed");
    return BN_is_zero(r.get());
  }

  bool scalar_in_range(ByteView a) const override {
    if (a.size() != kWidth) return false;
    BnPtr ba = bn_from(a);
    return !BN_is_zero(ba.get()) && BN_cmp(ba.get(), order_) < 0;
  }

  Point base() const override {
    const EC_POINT* g = EC_GROUP_get0_generator(group_);
    return to_point(g);
  }

  Point add(const Point& p, const Point& q) const override {
    CtxPtr ctx(BN_CTX_new());
    EcPointPtr ep = from_point(p), eq = from_point(q), r(EC_POINT_new(group_));
    if (!EC_POINT_add(group_, r.get(), ep.get(), eq.get(), ctx.get()))
      throw ParameterError("point add failed");
    return to_point(r.get());
  }

  Point mul(ByteView scalar, const Point& p) const override {
    CtxPtr ctx(BN_CTX_new());
    BnPtr k = bn_from(scalar);
    EcPointPtr ep = from_point(p), r(EC_POINT_new(group_));
    if (!EC_POINT_mul(group_, r.get(), nullptr, ep.get(), k.get(), ctx.get()))
      throw ParameterError("point mul failed");
    return to_point(r.get());
  }

  bool valid_point(const Point& p) const override {
    if (p.infinity) return false;
    if (p.x.size() != kWidth || p.y.size() != kWidth) return false;
    CtxPtr ctx(BN_CTX_new());
    BnPtr x = bn_from(p.x), y = bn_from(p.y);
    EcPointPtr ep(EC_POINT_new(group_));
    if (!EC_POINT_set_affine_coordinates(group_, ep.get(), x.get(), y.get(),
                                         ctx.get()))
      return false;
    return EC_POINT_is_on_curve(group_, ep.get(), ctx.get()) == 1;
  }

  Bytes coord_mod_order(ByteView x) const override { return scalar_reduce(x); }

 private:
  EcPointPtr from_point(const Point& p) const {
    CtxPtr ctx(BN_CTX_new());
    EcPointPtr ep(EC_POINT_new(group_));
    if (p.infinity) {
      if (!EC_POINT_set_to_infinity(group_, ep.get()))
        throw ParameterError("set_to_infinity failed");
      return ep;
    }
    BnPtr x = bn_from(p.x), y = bn_from(p.y);
    if (!EC_POINT_set_affine_coordinates(group_, ep.get(), x.get(), y.get(),
                                         ctx.get()))
      throw ParameterError("point not on curve");
    return ep;
  }

  Point to_point(const EC_POINT* ep) const {
    if (EC_POINT_is_at_infinity(group_, ep)) return Point{{}, {}, true};
    CtxPtr ctx(BN_CTX_new());
    BnPtr x(BN_new()), y(BN_new());
    if (!EC_POINT_get_affine_coordinates(group_, ep, x.get(), y.get(),
                                         ctx.get()))
      throw ParameterError("get_affine failed");
    return Point{bn_to(x.get(), kWidth), bn_to(y.get(), kWidth), false};
  }

  EC_GROUP* group_;
  BIGNUM* order_;
};

}  // namespace

const EcGroup& p256_curve() {
  static const P256Group g;
  return g;
}

}  // namespace bix
