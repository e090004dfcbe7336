#pragma once

#include "bix/bytes.hpp"

namespace bix {

enum class HashId : uint8_t {
  Sha256 = 1,
  // First octet of SHA-256. Deliberately breakable; used by the collision
  // harness and nothing else.
  Trunc8 = 2,
};

using Digest = Bytes;

size_t digest_length(HashId id);

Digest hash(HashId id, ByteView input);

/// True iff the inputs differ and their digests are equal.
bool collision_oracle(HashId id, ByteView m1, ByteView m2);

}  // namespace bix
