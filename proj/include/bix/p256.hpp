#pragma once

#include "bix/ec.hpp"

namespace bix {

/// NIST P-256 backed by OpenSSL bignum/EC point arithmetic. The signing and
/// verification procedure itself lives in ecdsa.cpp and is shared with the
/// toy curve.
const EcGroup& p256_curve();

}  // namespace bix
