#include "bix/certificate.hpp"

#include <sstream>

#include "bix/errors.hpp"

namespace bix {

namespace {

void append_lp(Bytes& out, ByteView payload) {
  if (payload.size() > 0xffff) throw EncodingError("field too long");
  append_u16_be(out, static_cast<uint16_t>(payload.size()));
  append(out, payload);
}

struct Reader {
  ByteView data;
  size_t pos = 0;

  ByteView take(size_t n) {
    if (pos + n > data.size()) throw DecodeError("truncated certificate");
    ByteView out = data.subspan(pos, n);
    pos += n;
    return out;
  }

  Bytes take_lp() {
    ByteView len = take(2);
    size_t n = (static_cast<size_t>(len[0]) << 8) | len[1];
    ByteView payload = take(n);
    return Bytes(payload.begin(), payload.end());
  }

  uint64_t take_u64() {
    ByteView b = take(8);
    uint64_t v = 0;
    for (uint8_t c : b) v = (v << 8) | c;
    return v;
  }

  void expect_end() const {
    if (pos != data.size()) throw DecodeError("trailing bytes");
  }
};

Header read_header(Reader& r) {
  Header h;
  h.sequence = r.take_u64();
  Bytes v = r.take_lp();
  h.version.assign(v.begin(), v.end());
  Bytes d = r.take_lp();
  h.date.assign(d.begin(), d.end());
  return h;
}

SubjectBlock read_block(Reader& r) {
  SubjectBlock b;
  b.bix_id = r.take_lp();
  if (b.bix_id.size() != kBixIdLen) throw DecodeError("bad bix id length");
  b.public_key = r.take_lp();
  return b;
}

Signature read_signature(Reader& r, SigId id) {
  const size_t w = signature_component_width(id);
  ByteView bytes = r.take(2 * w);
  return decode_signature(id, bytes);
}

}  // namespace

Bytes canonical_bytes(const SubjectBlock& block) {
  if (block.bix_id.size() != kBixIdLen)
    throw EncodingError("bix id must be exactly 20 octets");
  Bytes out;
  append_lp(out, block.bix_id);
  append_lp(out, block.public_key);
  return out;
}

Bytes encode_header(const Header& header) {
  Bytes out;
  append_u64_be(out, header.sequence);
  append_lp(out, bytes_of(header.version));
  append_lp(out, bytes_of(header.date));
  return out;
}

Bytes backward_message(const Header& header, const SubjectBlock& issuer,
                       const SubjectBlock& subject,
                       const SchemeHandle& scheme) {
  Bytes out = encode_header(header);
  append(out, hash(scheme.hash_id, canonical_bytes(issuer)));
  append(out, hash(scheme.hash_id, canonical_bytes(subject)));
  return out;
}

Bytes forward_message(const Header& header, const SubjectBlock& subject,
                      const SubjectBlock& next_subject,
                      const SchemeHandle& scheme) {
  // Same concatenation rule as backward_message; the caller decides which
  // header and blocks to bind.
  return backward_message(header, subject, next_subject, scheme);
}

Signature sign_subject(const SubjectBlock& block, const KeyPair& key,
                       const SchemeHandle& scheme, Rng& rng) {
  return ecdsa_sign(canonical_bytes(block), key, scheme, rng);
}

bool verify_subject_signature(const SubjectBlock& block, const Signature& sig,
                              ByteView public_key,
                              const SchemeHandle& scheme) {
  return ecdsa_verify(canonical_bytes(block), sig, public_key, scheme);
}

Certificate make_root(const SubjectBlock& subject, const KeyPair& key,
                      const SchemeHandle& scheme, Rng& rng,
                      const std::string& version, const std::string& date) {
  Certificate c;
  c.header = Header{0, version, date};
  c.issuer = subject;
  c.subject = subject;
  c.issuer_signature = sign_subject(subject, key, scheme, rng);
  c.subject_signature = sign_subject(subject, key, scheme, rng);
  Bytes msg = backward_message(c.header, c.issuer, c.subject, scheme);
  c.backward_cross.first = ecdsa_sign(msg, key, scheme, rng);
  c.backward_cross.second = ecdsa_sign(msg, key, scheme, rng);
  return c;
}

Bytes encode_certificate(const Certificate& cert, const SchemeHandle& scheme) {
  if (!cert.is_tail_form() && !cert.is_complete_form())
    throw EncodingError("next-subject fields must be absent or present together");
  Bytes out;
  out.push_back(cert.is_complete_form() ? 0x01 : 0x00);
  append(out, encode_header(cert.header));
  append(out, canonical_bytes(cert.issuer));
  append(out, canonical_bytes(cert.subject));
  if (cert.next_subject) append(out, canonical_bytes(*cert.next_subject));
  append(out, encode_signature(cert.issuer_signature));
  append(out, encode_signature(cert.subject_signature));
  if (cert.next_subject_signature)
    append(out, encode_signature(*cert.next_subject_signature));
  append(out, encode_signature(cert.backward_cross.first));
  append(out, encode_signature(cert.backward_cross.second));
  if (cert.forward_cross) {
    append(out, encode_signature(cert.forward_cross->first));
    append(out, encode_signature(cert.forward_cross->second));
  }
  return out;
}

Certificate decode_certificate(ByteView data, const SchemeHandle& scheme) {
  Reader r{data};
  ByteView flags = r.take(1);
  if (flags[0] > 0x01) throw DecodeError("bad presence flags");
  bool complete = flags[0] == 0x01;
  Certificate c;
  c.header = read_header(r);
  c.issuer = read_block(r);
  c.subject = read_block(r);
  if (complete) c.next_subject = read_block(r);
  c.issuer_signature = read_signature(r, scheme.sig_id);
  c.subject_signature = read_signature(r, scheme.sig_id);
  if (complete) c.next_subject_signature = read_signature(r, scheme.sig_id);
  c.backward_cross.first = read_signature(r, scheme.sig_id);
  c.backward_cross.second = read_signature(r, scheme.sig_id);
  if (complete) {
    CrossSignaturePair fwd;
    fwd.first = read_signature(r, scheme.sig_id);
    fwd.second = read_signature(r, scheme.sig_id);
    c.forward_cross = fwd;
  }
  r.expect_end();
  return c;
}

bool blocks_equal(const SubjectBlock& a, const SubjectBlock& b) {
  return canonical_bytes(a) == canonical_bytes(b);
}

Certificate strip_next_fields(const Certificate& cert) {
  Certificate c = cert;
  c.next_subject.reset();
  c.next_subject_signature.reset();
  c.forward_cross.reset();
  return c;
}

std::string render_certificate(const Certificate& cert,
                               const SchemeHandle& scheme) {
  std::ostringstream os;
  os << "header.sequence: " << cert.header.sequence << "\n";
  os << "header.version: " << cert.header.version << "\n";
  os << "header.date: " << cert.header.date << "\n";
  auto block = [&os](const char* name, const SubjectBlock& b) {
    os << name << ".bix_id: " << to_hex(b.bix_id) << "\n";
    os << name << ".public_key: " << to_hex(b.public_key) << "\n";
  };
  auto sig = [&os](const char* name, const Signature& s) {
    os << name << ": " << to_hex(encode_signature(s)) << "\n";
  };
  block("issuer", cert.issuer);
  block("subject", cert.subject);
  sig("issuer_signature", cert.issuer_signature);
  sig("subject_signature", cert.subject_signature);
  sig("backward_cross.first", cert.backward_cross.first);
  sig("backward_cross.second", cert.backward_cross.second);
  if (cert.is_complete_form()) {
    block("next_subject", *cert.next_subject);
    sig("next_subject_signature", *cert.next_subject_signature);
    sig("forward_cross.first", cert.forward_cross->first);
    sig("forward_cross.second", cert.forward_cross->second);
  } else {
    os << "next_subject: (absent, tail form)\n";
  }
  (void)scheme;
  return os.str();
}

}  // namespace bix
