// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

// field_split, concat and interpret: the codecs parsers compile down to, so
// frontends never need decoder-side knowledge.

#include <charconv>
#include <numeric>

#include "codecs/common.hpp"

namespace gp {

using namespace codec_util;

namespace {

std::vector<uint64_t> read_width_list(ByteView params, const char* codec, ErrorCode code) {
  ByteReader in(params);
  std::vector<uint64_t> widths;
  try {
    uint64_t m = in.varint_max(in.remaining(), "field count");
    widths.resize(m);
    for (auto& w : widths) w = in.varint();
  } catch (const Error&) {
    fail(code, std::string(codec) + ": malformed parameters");
  }
  if (!in.at_end() || widths.empty()) fail(code, std::string(codec) + ": malformed parameters");
  for (uint64_t w : widths) {
    if (w == 0 || w > UINT32_MAX) fail(code, std::string(codec) + ": field widths must be positive");
  }
  return widths;
}

Bytes width_list_from_text(std::string_view text, const char* codec) {
  Bytes out;
  for (auto& [k, v] : split_kv(text, codec)) {
    if (k != "widths") fail(ErrorCode::Config, std::string(codec) + ": unknown parameter '" + k + "'");
    std::vector<uint64_t> widths;
    size_t pos = 0;
    while (pos <= v.size()) {
      size_t end = v.find('.', pos);
      if (end == std::string::npos) end = v.size();
      widths.push_back(parse_uint(std::string_view(v).substr(pos, end - pos), codec));
      pos = end + 1;
    }
    out.clear();
    append_varint(out, widths.size());
    for (uint64_t w : widths) append_varint(out, w);
  }
  read_width_list(out, codec, ErrorCode::Config);
  return out;
}

std::string width_list_to_text(ByteView params) {
  std::string out = "widths=";
  auto widths = read_width_list(params, "field_split", ErrorCode::Param);
  for (size_t i = 0; i < widths.size(); ++i) out += (i ? "." : "") + std::to_string(widths[i]);
  return out;
}

}  // namespace

// Params: varint field count, then varint widths. For struct(k) inputs the
// widths are byte widths summing to k; for string inputs they count elements
// per field in each record.
CodecEntry make_field_split_codec() {
  static const TypeConstraint accepted = TypeConstraint::of({TypeTag::Struct, TypeTag::String});
  CodecEntry e;
  e.id = id_of(CodecId::FieldSplit);
  e.name = "field_split";
  e.cost = {0.5, 0.5};
  e.signature = [](ByteView params) {
    auto widths = read_width_list(params, "field_split", ErrorCode::Param);
    return CodecSignature{{accepted}, std::vector<TypeConstraint>(widths.size(), accepted)};
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    auto widths = read_width_list(params, "field_split", ErrorCode::Param);
    const Stream& s = in[0];
    expect_type(s, accepted, "field_split");
    const uint64_t record = std::accumulate(widths.begin(), widths.end(), uint64_t{0});
    EncodeResult r;
    r.wire_params.assign(params.begin(), params.end());
    if (s.type.tag == TypeTag::Struct) {
      if (record != s.type.width) {
        fail(ErrorCode::Param, "field_split: widths sum to " + std::to_string(record) + ", record width is " +
                                   std::to_string(s.type.width));
      }
      const size_t n = s.element_count();
      size_t field_offset = 0;
      for (uint64_t w : widths) {
        Stream out{MessageType::structure(static_cast<uint32_t>(w)), Bytes(n * w), {}};
        for (size_t i = 0; i < n; ++i) {
          std::copy_n(s.payload.data() + i * record + field_offset, w, out.payload.data() + i * w);
        }
        field_offset += w;
        r.outputs.push_back(std::move(out));
      }
      return r;
    }
    const size_t n = s.element_count();
    if (n % record != 0) {
      fail(ErrorCode::Param, "field_split: " + std::to_string(n) + " strings do not form whole records of " +
                                 std::to_string(record));
    }
    r.outputs.assign(widths.size(), Stream{MessageType::string(), {}, {}});
    size_t offset = 0;
    for (size_t i = 0; i < n;) {
      for (size_t f = 0; f < widths.size(); ++f) {
        for (uint64_t j = 0; j < widths[f]; ++j, ++i) {
          uint64_t len = s.lengths[i];
          r.outputs[f].payload.insert(r.outputs[f].payload.end(), s.payload.begin() + offset,
                                      s.payload.begin() + offset + len);
          r.outputs[f].lengths.push_back(len);
          offset += len;
        }
      }
    }
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits& limits) {
    auto widths = read_width_list(params, "field_split", ErrorCode::Corrupt);
    expect_count(out, widths.size(), "field_split", "outputs");
    const TypeTag tag = out[0].type.tag;
    if (!accepted.accepts(out[0].type)) fail(ErrorCode::Corrupt, "field_split: bad output type");
    const uint64_t record = std::accumulate(widths.begin(), widths.end(), uint64_t{0});
    uint64_t records = 0;
    uint64_t total = 0;
    for (size_t f = 0; f < widths.size(); ++f) {
      if (out[f].type.tag != tag) fail(ErrorCode::Corrupt, "field_split: mixed output types");
      if (tag == TypeTag::Struct && out[f].type.width != widths[f]) fail(ErrorCode::Corrupt, "field_split: width mismatch");
      uint64_t count = out[f].element_count();
      if (tag == TypeTag::String) {
        if (count % widths[f] != 0) fail(ErrorCode::Corrupt, "field_split: partial record");
        count /= widths[f];
      }
      if (f == 0) records = count;
      if (count != records) fail(ErrorCode::Corrupt, "field_split: record count mismatch");
      total += out[f].payload.size() + 8 * out[f].lengths.size();
    }
    charge(limits, total, "field_split");
    Stream s;
    if (tag == TypeTag::Struct) {
      if (record > UINT32_MAX) fail(ErrorCode::Corrupt, "field_split: record too wide");
      s = Stream{MessageType::structure(static_cast<uint32_t>(record)), Bytes(records * record), {}};
      size_t field_offset = 0;
      for (size_t f = 0; f < widths.size(); ++f) {
        const uint64_t w = widths[f];
        for (size_t i = 0; i < records; ++i) {
          std::copy_n(out[f].payload.data() + i * w, w, s.payload.data() + i * record + field_offset);
        }
        field_offset += w;
      }
    } else {
      s = Stream{MessageType::string(), {}, {}};
      std::vector<size_t> idx(widths.size(), 0), off(widths.size(), 0);
      for (uint64_t i = 0; i < records; ++i) {
        for (size_t f = 0; f < widths.size(); ++f) {
          for (uint64_t j = 0; j < widths[f]; ++j) {
            uint64_t len = out[f].lengths[idx[f]++];
            s.payload.insert(s.payload.end(), out[f].payload.begin() + off[f], out[f].payload.begin() + off[f] + len);
            s.lengths.push_back(len);
            off[f] += len;
          }
        }
      }
    }
    return std::vector<Stream>{std::move(s)};
  };
  e.params_to_text = width_list_to_text;
  e.params_from_text = [](std::string_view text) { return width_list_from_text(text, "field_split"); };
  return e;
}

namespace {

uint64_t concat_arity(ByteView params, ErrorCode code) {
  ByteReader in(params);
  uint64_t m = 0;
  try {
    m = in.varint();
  } catch (const Error&) {
    fail(code, "concat: malformed parameters");
  }
  if (!in.at_end() || m == 0 || m > 65536) fail(code, "concat: input count must be in 1..65536");
  return m;
}

}  // namespace

// Params: varint input count. Outputs the merged stream and the element count
// of each input as numeric(8).
CodecEntry make_concat_codec() {
  CodecEntry e;
  e.id = id_of(CodecId::Concat);
  e.name = "concat";
  e.cost = {0.2, 0.2};
  e.signature = [](ByteView params) {
    uint64_t m = concat_arity(params, ErrorCode::Param);
    return CodecSignature{std::vector<TypeConstraint>(m, TypeConstraint::any()),
                          {TypeConstraint::same_as(0), TypeConstraint::of({TypeTag::Numeric}, 8)}};
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    uint64_t m = concat_arity(params, ErrorCode::Param);
    if (in.size() != m) fail(ErrorCode::Param, "concat: input count does not match parameters");
    Stream merged{in[0].type, {}, {}};
    Stream bounds{MessageType::numeric(8), {}, {}};
    for (const Stream& s : in) {
      if (s.type != merged.type) {
        fail(ErrorCode::Type, "concat: mixed input types " + merged.type.to_string() + " and " + s.type.to_string());
      }
      merged.payload.insert(merged.payload.end(), s.payload.begin(), s.payload.end());
      merged.lengths.insert(merged.lengths.end(), s.lengths.begin(), s.lengths.end());
      append_le(bounds.payload, s.element_count(), 8);
    }
    EncodeResult r;
    r.outputs.push_back(std::move(merged));
    r.outputs.push_back(std::move(bounds));
    r.wire_params.assign(params.begin(), params.end());
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits& limits) {
    uint64_t m = concat_arity(params, ErrorCode::Corrupt);
    expect_count(out, 2, "concat", "outputs");
    const Stream& merged = out[0];
    const Stream& bounds = out[1];
    if (bounds.type != MessageType::numeric(8) || bounds.element_count() != m) {
      fail(ErrorCode::Corrupt, "concat: boundary stream does not match input count");
    }
    charge(limits, merged.payload.size() + 8 * merged.lengths.size(), "concat");
    const uint64_t total = merged.element_count();
    const uint64_t w = merged.type.element_width();
    std::vector<Stream> ins;
    uint64_t elem = 0;
    size_t byte = 0;
    for (uint64_t j = 0; j < m; ++j) {
      uint64_t count = bounds.value(j);
      if (count > total - elem) fail(ErrorCode::Corrupt, "concat: boundaries exceed merged stream");
      Stream s{merged.type, {}, {}};
      size_t bytes = 0;
      if (merged.type.tag == TypeTag::String) {
        s.lengths.assign(merged.lengths.begin() + elem, merged.lengths.begin() + elem + count);
        for (uint64_t len : s.lengths) bytes += len;
      } else {
        bytes = count * w;
      }
      s.payload.assign(merged.payload.begin() + byte, merged.payload.begin() + byte + bytes);
      byte += bytes;
      elem += count;
      ins.push_back(std::move(s));
    }
    if (elem != total) fail(ErrorCode::Corrupt, "concat: boundaries do not cover merged stream");
    return ins;
  };
  e.params_to_text = [](ByteView params) { return "inputs=" + std::to_string(concat_arity(params, ErrorCode::Param)); };
  e.params_from_text = [](std::string_view text) {
    Bytes out;
    for (auto& [k, v] : split_kv(text, "concat")) {
      if (k != "inputs") fail(ErrorCode::Config, "concat: unknown parameter '" + k + "'");
      out.clear();
      append_varint(out, parse_uint(v, "concat"));
    }
    concat_arity(out, ErrorCode::Config);
    return out;
  };
  return e;
}

// ---------------------------------------------------------------------------
// interpret

namespace {

enum class InterpretMode : uint8_t { Retype = 0, Segment = 1, Decimal = 2 };

struct InterpretParams {
  InterpretMode mode = InterpretMode::Retype;
  MessageType target;
  uint8_t delimiter = ',';
  uint8_t quote = '"';
};

InterpretParams parse_interpret(ByteReader& in) {
  InterpretParams p;
  uint8_t mode = in.u8();
  if (mode > 2) fail(ErrorCode::Param, "interpret: unknown mode");
  p.mode = static_cast<InterpretMode>(mode);
  switch (p.mode) {
    case InterpretMode::Retype:
      p.target = read_type(in);
      if (p.target.tag == TypeTag::String) fail(ErrorCode::Param, "interpret: retype target cannot be string");
      break;
    case InterpretMode::Segment:
      p.target = MessageType::string();
      p.delimiter = in.u8();
      p.quote = in.u8();
      break;
    case InterpretMode::Decimal: p.target = MessageType::numeric(8); break;
  }
  return p;
}

InterpretParams configured(ByteView params) {
  try {
    ByteReader in(params);
    InterpretParams p = parse_interpret(in);
    if (!in.at_end()) fail(ErrorCode::Param, "interpret: trailing parameter bytes");
    return p;
  } catch (const Error& err) {
    fail(ErrorCode::Param, err.what());
  }
}

}  // namespace

Stream segment_delimited(ByteView data, uint8_t delim, uint8_t quote) {
  Stream s{MessageType::string(), Bytes(data.begin(), data.end()), {}};
  const size_t n = data.size();
  size_t pos = 0;
  bool need_cell = n > 0;
  while (need_cell) {
    size_t start = pos;
    bool quoted = false;
    size_t sep = 0;
    while (pos < n) {
      uint8_t c = data[pos];
      if (c == quote) {
        quoted = !quoted;
      } else if (!quoted) {
        if (c == delim || c == '\n') {
          sep = 1;
          break;
        }
        if (c == '\r' && pos + 1 < n && data[pos + 1] == '\n') {
          sep = 2;
          break;
        }
      }
      ++pos;
    }
    s.lengths.push_back(pos - start);
    s.lengths.push_back(sep);
    need_cell = sep == 1 && data[pos] == delim;
    pos += sep;
    if (pos < n) need_cell = true;
  }
  return s;
}

namespace {

bool parse_canonical_int(std::string_view text, int64_t& out) {
  if (text.empty() || text.size() > 20) return false;
  size_t digits = text[0] == '-' ? 1 : 0;
  if (digits == text.size()) return false;
  if (text[digits] == '0' && (text.size() > digits + 1 || digits == 1)) return false;
  for (size_t i = digits; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

bool is_canonical_int64(std::string_view text) {
  int64_t v;
  return parse_canonical_int(text, v);
}

// Configured params: mode byte, then the target type (retype) or delimiter and
// quote bytes (segment). Wire params append the source type for retype.
CodecEntry make_interpret_codec() {
  CodecEntry e;
  e.id = id_of(CodecId::Interpret);
  e.name = "interpret";
  e.cost = {0.05, 0.05};
  e.signature = [](ByteView params) {
    InterpretParams p = configured(params);
    switch (p.mode) {
      case InterpretMode::Retype:
        return CodecSignature{{TypeConstraint::of({TypeTag::Bytes, TypeTag::Struct, TypeTag::Numeric})},
                              {TypeConstraint::of({p.target.tag}, p.target.width)}};
      case InterpretMode::Segment:
        return CodecSignature{{TypeConstraint::of({TypeTag::Bytes})}, {TypeConstraint::of({TypeTag::String})}};
      case InterpretMode::Decimal:
        return CodecSignature{{TypeConstraint::of({TypeTag::String})}, {TypeConstraint::of({TypeTag::Numeric}, 8)}};
    }
    fail(ErrorCode::Param, "interpret: unknown mode");
  };
  e.encode = [](ByteView params, std::span<const Stream> in) {
    InterpretParams p = configured(params);
    const Stream& s = in[0];
    EncodeResult r;
    r.wire_params.assign(params.begin(), params.end());
    switch (p.mode) {
      case InterpretMode::Retype: {
        expect_type(s, TypeConstraint::of({TypeTag::Bytes, TypeTag::Struct, TypeTag::Numeric}), "interpret");
        uint32_t w = p.target.element_width();
        if (s.payload.size() % w != 0) {
          fail(ErrorCode::Type, "interpret: " + std::to_string(s.payload.size()) + " bytes do not divide into " +
                                    p.target.to_string());
        }
        r.outputs.push_back(Stream{p.target, s.payload, {}});
        append_type(r.wire_params, s.type);
        break;
      }
      case InterpretMode::Segment:
        expect_type(s, TypeConstraint::of({TypeTag::Bytes}), "interpret");
        r.outputs.push_back(segment_delimited(s.payload, p.delimiter, p.quote));
        break;
      case InterpretMode::Decimal: {
        expect_type(s, TypeConstraint::of({TypeTag::String}), "interpret");
        Stream out{MessageType::numeric(8), {}, {}};
        out.payload.reserve(s.lengths.size() * 8);
        size_t offset = 0;
        for (uint64_t len : s.lengths) {
          std::string_view text(reinterpret_cast<const char*>(s.payload.data()) + offset, len);
          int64_t v;
          if (!parse_canonical_int(text, v)) {
            fail(ErrorCode::Type, "interpret: '" + std::string(text.substr(0, 32)) + "' is not a canonical integer");
          }
          append_le(out.payload, static_cast<uint64_t>(v), 8);
          offset += len;
        }
        r.outputs.push_back(std::move(out));
        break;
      }
    }
    return r;
  };
  e.decode = [](ByteView params, std::span<const Stream> out, const DecodeLimits& limits) {
    expect_count(out, 1, "interpret", "outputs");
    ByteReader in(params);
    InterpretParams p;
    try {
      p = parse_interpret(in);
    } catch (const Error& err) {
      fail(ErrorCode::Corrupt, err.what());
    }
    const Stream& s = out[0];
    if (s.type != p.target) fail(ErrorCode::Corrupt, "interpret: stream type does not match parameters");
    switch (p.mode) {
      case InterpretMode::Retype: {
        MessageType source = read_type(in);
        if (!in.at_end() || source.tag == TypeTag::String) fail(ErrorCode::Corrupt, "interpret: bad source type");
        if (s.payload.size() % source.element_width() != 0) fail(ErrorCode::Corrupt, "interpret: size mismatch");
        return std::vector<Stream>{Stream{source, s.payload, {}}};
      }
      case InterpretMode::Segment:
        if (!in.at_end()) fail(ErrorCode::Corrupt, "interpret: trailing parameter bytes");
        return std::vector<Stream>{Stream::of_bytes(s.payload)};
      case InterpretMode::Decimal: {
        if (!in.at_end()) fail(ErrorCode::Corrupt, "interpret: trailing parameter bytes");
        const size_t n = s.element_count();
        charge_product(limits, n, 28, "interpret");
        Stream text{MessageType::string(), {}, {}};
        text.lengths.reserve(n);
        char buf[24];
        for (size_t i = 0; i < n; ++i) {
          auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), static_cast<int64_t>(s.value(i)));
          text.payload.insert(text.payload.end(), buf, ptr);
          text.lengths.push_back(static_cast<uint64_t>(ptr - buf));
        }
        return std::vector<Stream>{std::move(text)};
      }
    }
    fail(ErrorCode::Corrupt, "interpret: unknown mode");
  };
  e.params_to_text = [](ByteView params) -> std::string {
    InterpretParams p = configured(params);
    switch (p.mode) {
      case InterpretMode::Retype: return "to=" + type_text(p.target);
      case InterpretMode::Segment:
        return "delim=" + std::to_string(p.delimiter) + ",mode=segment,quote=" + std::to_string(p.quote);
      case InterpretMode::Decimal: return "mode=decimal";
    }
    return {};
  };
  e.params_from_text = [](std::string_view text) {
    InterpretParams p;
    bool have_target = false;
    for (auto& [k, v] : split_kv(text, "interpret")) {
      if (k == "to") {
        p.target = parse_type_text(v, "interpret");
        have_target = true;
      } else if (k == "mode") {
        if (v == "segment") p.mode = InterpretMode::Segment;
        else if (v == "decimal") p.mode = InterpretMode::Decimal;
        else if (v == "retype") p.mode = InterpretMode::Retype;
        else fail(ErrorCode::Config, "interpret: unknown mode '" + v + "'");
      } else if (k == "delim") {
        p.delimiter = static_cast<uint8_t>(parse_uint(v, "interpret"));
      } else if (k == "quote") {
        p.quote = static_cast<uint8_t>(parse_uint(v, "interpret"));
      } else {
        fail(ErrorCode::Config, "interpret: unknown parameter '" + k + "'");
      }
    }
    Bytes out{static_cast<uint8_t>(p.mode)};
    if (p.mode == InterpretMode::Retype) {
      if (!have_target || p.target.tag == TypeTag::String) fail(ErrorCode::Config, "interpret: retype needs to=<type>");
      append_type(out, p.target);
    } else if (p.mode == InterpretMode::Segment) {
      out.push_back(p.delimiter);
      out.push_back(p.quote);
    }
    return out;
  };
  return e;
}

}  // namespace gp
