#include "bix/ec.hpp"

#include "bix/errors.hpp"

namespace bix {

Bytes encode_point(const EcGroup& group, const EcGroup::Point& p) {
  if (p.infinity) throw EncodingError("cannot encode point at infinity");
  Bytes out;
  out.reserve(2 * group.coord_width());
  append(out, p.x);
  append(out, p.y);
  return out;
}

EcGroup::Point decode_point(const EcGroup& group, ByteView data) {
  const size_t w = group.coord_width();
  EcGroup::Point p;
  if (data.size() != 2 * w) {
    p.infinity = true;  // sentinel; fails valid_point()
    return p;
  }
  p.x.assign(data.begin(), data.begin() + w);
  p.y.assign(data.begin() + w, data.end());
  return p;
}

}  // namespace bix
