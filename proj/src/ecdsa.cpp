#include "bix/ecdsa.hpp"

#include <algorithm>

#include "bix/errors.hpp"
#include "bix/p256.hpp"
#include "bix/toy_curve.hpp"

namespace bix {

namespace {

constexpr int kRetryBudget = 128;

// One scalar draw: width + 8 bytes reduced mod n keeps the modular bias
// negligible while staying predictable for scripted rngs.
Bytes draw_scalar(const EcGroup& g, Rng& rng) {
  Bytes wide = rng.bytes(g.scalar_width() + 8);
  return g.scalar_reduce(wide);
}

Bytes nonzero_scalar(const EcGroup& g, Rng& rng) {
  for (int i = 0; i < kRetryBudget; ++i) {
    Bytes d = draw_scalar(g, rng);
    if (!g.scalar_is_zero(d)) return d;
  }
  throw SigningError("rng produced only zero scalars");
}

Bytes message_scalar(const EcGroup& g, const SchemeHandle& scheme,
                     ByteView message) {
  // Standard conversion: digest as a big-endian integer, reduced mod n.
  return g.scalar_reduce(hash(scheme.hash_id, message));
}

}  // namespace

const EcGroup& curve_for(SigId id) {
  switch (id) {
    case SigId::ToyF17:
      return toy_curve_f17();
    case SigId::P256:
      return p256_curve();
  }
  throw ConfigError("unknown signature scheme id");
}

size_t signature_component_width(SigId id) {
  return curve_for(id).scalar_width();
}

size_t public_key_width(SigId id) { return 2 * curve_for(id).coord_width(); }

Bytes encode_signature(const Signature& sig) {
  Bytes out;
  out.reserve(sig.r.size() + sig.s.size());
  append(out, sig.r);
  append(out, sig.s);
  return out;
}

Signature decode_signature(SigId id, ByteView data) {
  const size_t w = signature_component_width(id);
  if (data.size() != 2 * w) throw DecodeError("bad signature length");
  Signature sig;
  sig.r.assign(data.begin(), data.begin() + w);
  sig.s.assign(data.begin() + w, data.end());
  return sig;
}

KeyPair ecdsa_keygen(const SchemeHandle& scheme, Rng& rng) {
  const EcGroup& g = curve_for(scheme.sig_id);
  Bytes d = nonzero_scalar(g, rng);
  EcGroup::Point q = g.mul(d, g.base());
  KeyPair kp;
  kp.secret = std::move(d);
  kp.public_key = encode_point(g, q);
  return kp;
}

Signature ecdsa_sign(ByteView message, const KeyPair& key,
                     const SchemeHandle& scheme, Rng& rng) {
  const EcGroup& g = curve_for(scheme.sig_id);
  Bytes e = message_scalar(g, scheme, message);
  for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
    Bytes k = draw_scalar(g, rng);
    if (g.scalar_is_zero(k)) continue;
    EcGroup::Point kp = g.mul(k, g.base());
    if (kp.infinity) continue;
    Bytes r = g.coord_mod_order(kp.x);
    if (g.scalar_is_zero(r)) continue;
    Bytes s = g.scalar_mul(g.scalar_inv(k), g.scalar_add(e, g.scalar_mul(key.secret, r)));
    if (g.scalar_is_zero(s)) continue;
    return Signature{std::move(r), std::move(s)};
  }
  throw SigningError("signing retry budget exhausted");
}

bool ecdsa_verify(ByteView message, const Signature& sig, ByteView public_key,
                  const SchemeHandle& scheme) {
  const EcGroup& g = curve_for(scheme.sig_id);
  if (!g.scalar_in_range(sig.r) || !g.scalar_in_range(sig.s)) return false;
  EcGroup::Point q = decode_point(g, public_key);
  if (!g.valid_point(q)) return false;
  Bytes e = message_scalar(g, scheme, message);
  Bytes w = g.scalar_inv(sig.s);
  Bytes u1 = g.scalar_mul(e, w);
  Bytes u2 = g.scalar_mul(sig.r, w);
  EcGroup::Point x = g.add(g.mul(u1, g.base()), g.mul(u2, q));
  if (x.infinity) return false;
  return g.coord_mod_order(x.x) == sig.r;
}

bool dss_game_referee(ByteView message, const Signature& sig,
                      const std::vector<Bytes>& queried, ByteView public_key,
                      const SchemeHandle& scheme) {
  Bytes m(message.begin(), message.end());
  if (std::find(queried.begin(), queried.end(), m) != queried.end())
    return false;
  return ecdsa_verify(message, sig, public_key, scheme);
}

}  // namespace bix
