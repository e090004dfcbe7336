#include "bix/store.hpp"

#include <fstream>
#include <sstream>

#include "bix/errors.hpp"

namespace bix {

namespace fs = std::filesystem;

std::filesystem::path StoreLayout::key_file(const Bytes& bix_id) const {
  return keys_dir() / (to_hex(bix_id) + ".key");
}

void init_store(const StoreLayout& layout) {
  std::error_code ec;
  fs::create_directories(layout.keys_dir(), ec);
  if (ec) throw StoreError("cannot create " + layout.keys_dir().string());
  fs::create_directories(layout.scripts_dir(), ec);
  if (ec) throw StoreError("cannot create " + layout.scripts_dir().string());
}

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof())
    throw StoreError("cannot read " + path.string());
  std::string s = buf.str();
  return Bytes(s.begin(), s.end());
}

void write_file_atomic(const fs::path& path, ByteView data) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw StoreError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw StoreError("cannot rename " + tmp.string() + " into place");
}

void save_chain(const CertificateChain& chain, const fs::path& path) {
  write_file_atomic(path, encode_chain(chain));
}

CertificateChain load_chain(const fs::path& path) {
  Bytes data = read_file(path);
  return decode_chain(data);
}

void save_identity(const StoreLayout& layout, const Identity& identity) {
  std::ostringstream os;
  os << "# WARNING: plaintext secret key; test harness only, never reuse\n";
  os << "bix_id: " << to_hex(identity.bix_id) << "\n";
  os << "secret: " << to_hex(identity.keys.secret) << "\n";
  os << "public_key: " << to_hex(identity.keys.public_key) << "\n";
  std::string s = os.str();
  write_file_atomic(layout.key_file(identity.bix_id),
                    ByteView(reinterpret_cast<const uint8_t*>(s.data()),
                             s.size()));
}

Identity load_identity(const StoreLayout& layout, const Bytes& bix_id,
                       const SchemeHandle& scheme) {
  Bytes raw = read_file(layout.key_file(bix_id));
  std::istringstream is(std::string(raw.begin(), raw.end()));
  std::string line;
  Identity out;
  bool have_id = false, have_secret = false, have_public = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(": ");
    if (colon == std::string::npos)
      throw StoreError("malformed key file line: " + line);
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 2);
    if (key == "bix_id") {
      out.bix_id = from_hex(value);
      have_id = true;
    } else if (key == "secret") {
      out.keys.secret = from_hex(value);
      have_secret = true;
    } else if (key == "public_key") {
      out.keys.public_key = from_hex(value);
      have_public = true;
    } else {
      throw StoreError("unknown key file field: " + key);
    }
  }
  if (!have_id || !have_secret || !have_public)
    throw StoreError("incomplete key file");
  if (out.bix_id != bix_id) throw StoreError("key file bix id mismatch");
  if (out.keys.public_key.size() != public_key_width(scheme.sig_id))
    throw StoreError("key file public key width mismatch");
  return out;
}

}  // namespace bix
