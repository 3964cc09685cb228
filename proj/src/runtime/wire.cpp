#include "mpst/runtime/wire.hpp"

namespace mpst::runtime {

std::string to_string(WireError::Kind k) {
  switch (k) {
    case WireError::Kind::Malformed: return "Malformed";
    case WireError::Kind::SortMismatch: return "SortMismatch";
    case WireError::Kind::NegativeNat: return "NegativeNat";
    case WireError::Kind::Truncated: return "Truncated";
    case WireError::Kind::OversizeFrame: return "OversizeFrame";
  }
  return "?";
}

std::uint32_t read_u32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

void write_u32(std::uint32_t x, Bytes& out) {
  for (int sh = 24; sh >= 0; sh -= 8) out.push_back(static_cast<std::uint8_t>(x >> sh));
}

namespace {

void write_u64(std::uint64_t x, Bytes& out) {
  for (int sh = 56; sh >= 0; sh -= 8) out.push_back(static_cast<std::uint8_t>(x >> sh));
}

struct Reader {
  std::span<const std::uint8_t> in;
  std::size_t pos = 0;

  const std::uint8_t* take(std::size_t n) {
    if (in.size() - pos < n) throw WireError{WireError::Kind::Malformed, "payload ends early"};
    const std::uint8_t* p = in.data() + pos;
    pos += n;
    return p;
  }
};

// True when every value of s encodes to zero bytes.
bool zero_width(const Sort& s) {
  switch (s.kind()) {
    case Sort::Kind::Unit: return true;
    case Sort::Kind::Pair: return zero_width(s.left()) && zero_width(s.right());
    default: return false;
  }
}

Value decode(Reader& r, const Sort& s) {
  switch (s.kind()) {
    case Sort::Kind::Nat: {
      const std::uint8_t* p = r.take(8);
      std::uint64_t x = (std::uint64_t{read_u32(p)} << 32) | read_u32(p + 4);
      if (x > kNatMax) throw WireError{WireError::Kind::NegativeNat, "nat payload has the sign bit set"};
      return Value::nat(x);
    }
    case Sort::Kind::Int: {
      const std::uint8_t* p = r.take(8);
      std::uint64_t x = (std::uint64_t{read_u32(p)} << 32) | read_u32(p + 4);
      return Value::integer(static_cast<std::int64_t>(x));
    }
    case Sort::Kind::Bool: {
      std::uint8_t b = *r.take(1);
      if (b > 1) throw WireError{WireError::Kind::Malformed, "bool byte is not 0 or 1"};
      return Value::boolean(b == 1);
    }
    case Sort::Kind::Unit:
      return Value::unit();
    case Sort::Kind::Pair: {
      Value a = decode(r, s.left());
      return Value::pair(std::move(a), decode(r, s.right()));
    }
    case Sort::Kind::Sum: {
      std::uint8_t t = *r.take(1);
      if (t > 1) throw WireError{WireError::Kind::Malformed, "sum tag is not 0 or 1"};
      return t == 0 ? Value::inl(decode(r, s.left())) : Value::inr(decode(r, s.right()));
    }
    case Sort::Kind::Seq: {
      std::uint32_t n = read_u32(r.take(4));
      // Every element of a non-zero-width sort takes at least one byte.
      if (zero_width(s.elem()) ? n > kMaxFrameLength : n > r.in.size() - r.pos)
        throw WireError{WireError::Kind::Malformed, "seq count exceeds payload"};
      std::vector<Value> items;
      items.reserve(n);
      for (std::uint32_t i = 0; i < n; ++i) items.push_back(decode(r, s.elem()));
      return Value::seq(std::move(items));
    }
  }
  throw WireError{WireError::Kind::Malformed, "unknown sort"};
}

}  // namespace

void encode_value_into(const Value& v, const Sort& s, Bytes& out) {
  switch (s.kind()) {
    case Sort::Kind::Nat:
      write_u64(v.as_nat(), out);
      return;
    case Sort::Kind::Int:
      write_u64(static_cast<std::uint64_t>(v.as_int()), out);
      return;
    case Sort::Kind::Bool:
      out.push_back(v.as_bool() ? 1 : 0);
      return;
    case Sort::Kind::Unit:
      return;
    case Sort::Kind::Pair:
      encode_value_into(v.first(), s.left(), out);
      encode_value_into(v.second(), s.right(), out);
      return;
    case Sort::Kind::Sum:
      out.push_back(v.is_right() ? 1 : 0);
      encode_value_into(v.payload(), v.is_right() ? s.right() : s.left(), out);
      return;
    case Sort::Kind::Seq:
      write_u32(static_cast<std::uint32_t>(v.items().size()), out);
      for (const auto& x : v.items()) encode_value_into(x, s.elem(), out);
      return;
  }
}

Expected<Bytes, WireError> encode_value(const Value& v, const Sort& s) {
  if (!inhabits(v, s))
    return unexpected(WireError{WireError::Kind::SortMismatch, v.to_string() + " is not of sort " + s.to_string()});
  Bytes out;
  encode_value_into(v, s, out);
  return out;
}

Expected<Value, WireError> decode_value(std::span<const std::uint8_t> bytes, const Sort& s) {
  Reader r{bytes};
  try {
    Value v = decode(r, s);
    if (r.pos != bytes.size()) return unexpected(WireError{WireError::Kind::Malformed, "trailing bytes after value"});
    return v;
  } catch (const WireError& e) {
    return unexpected(e);
  }
}

Expected<Bytes, WireError> frame(const WireMessage& m) {
  if (m.payload.size() > kMaxFrameLength - 4)
    return unexpected(WireError{WireError::Kind::OversizeFrame, "frame exceeds 16 MiB"});
  Bytes out;
  out.reserve(8 + m.payload.size());
  write_u32(static_cast<std::uint32_t>(4 + m.payload.size()), out);
  write_u32(m.label_id, out);
  out.insert(out.end(), m.payload.begin(), m.payload.end());
  return out;
}

Expected<Deframed, WireError> deframe(std::span<const std::uint8_t> stream) {
  if (stream.size() < 4) return unexpected(WireError{WireError::Kind::Truncated, "missing frame length"});
  const std::uint32_t len = read_u32(stream.data());
  if (len > kMaxFrameLength) return unexpected(WireError{WireError::Kind::OversizeFrame, "frame exceeds 16 MiB"});
  if (len < 4) return unexpected(WireError{WireError::Kind::Malformed, "frame shorter than its label id"});
  if (stream.size() - 4 < len) return unexpected(WireError{WireError::Kind::Truncated, "frame ends early"});
  Deframed d;
  d.message.label_id = read_u32(stream.data() + 4);
  d.message.payload.assign(stream.begin() + 8, stream.begin() + 4 + len);
  d.consumed = 4 + len;
  return d;
}

}  // namespace mpst::runtime
