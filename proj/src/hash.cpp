#include "bix/hash.hpp"

#include <openssl/sha.h>

#include <algorithm>

#include "bix/errors.hpp"

namespace bix {

size_t digest_length(HashId id) {
  switch (id) {
    case HashId::Sha256:
      return 32;
    case HashId::Trunc8:
      return 1;
  }
  throw ConfigError("unknown hash id");
}

Digest hash(HashId id, ByteView input) {
  uint8_t full[SHA256_DIGEST_LENGTH];
  static const uint8_t kEmpty = 0;
  const uint8_t* data = input.empty() ? &kEmpty : input.data();
  switch (id) {
    case HashId::Sha256:
      SHA256(data, input.size(), full);
      return Digest(full, full + 32);
    case HashId::Trunc8:
      SHA256(data, input.size(), full);
      return Digest(full, full + 1);
  }
  throw ConfigError("unknown hash id");
}

bool collision_oracle(HashId id, ByteView m1, ByteView m2) {
  if (m1.size() == m2.size() && std::equal(m1.begin(), m1.end(), m2.begin()))
    return false;
  return hash(id, m1) == hash(id, m2);
}

}  // namespace bix
