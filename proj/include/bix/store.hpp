#pragma once

#include <filesystem>
#include <string>

#include "bix/issuance.hpp"

namespace bix {

/// On-disk layout rooted at a store directory:
///   chain.bixc        the certificate chain (binary chain format)
///   keys/<hex>.key    one secret key per party, named by bix id
///   scripts/          scenario scripts for the simulator
struct StoreLayout {
  std::filesystem::path root;

  std::filesystem::path chain_file() const { return root / "chain.bixc"; }
  std::filesystem::path keys_dir() const { return root / "keys"; }
  std::filesystem::path scripts_dir() const { return root / "scripts"; }
  std::filesystem::path key_file(const Bytes& bix_id) const;
};

/// Creates the store directories; existing directories are fine.
void init_store(const StoreLayout& layout);

/// Atomic-rename write of the chain file. Throws StoreError on I/O failure.
void save_chain(const CertificateChain& chain,
                const std::filesystem::path& path);

/// Throws StoreError when the file is missing or unreadable, DecodeError
/// (distinct messages for bad magic / truncation / unknown scheme) when the
/// bytes do not parse.
CertificateChain load_chain(const std::filesystem::path& path);

/// Secret keys are stored as plaintext hex with a warning line; this is a
/// test harness, not a key vault.
void save_identity(const StoreLayout& layout, const Identity& identity);
Identity load_identity(const StoreLayout& layout, const Bytes& bix_id,
                       const SchemeHandle& scheme);

Bytes read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, ByteView data);

}  // namespace bix
