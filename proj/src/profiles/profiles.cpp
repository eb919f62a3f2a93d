// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "profiles/profiles.hpp"

#include <charconv>

#include "codecs/common.hpp"
#include "engine/description.hpp"
#include "engine/engine.hpp"
#include "engine/selectors.hpp"
#include "format/frame.hpp"

namespace gp {

namespace {

constexpr size_t kMaxCsvColumns = 4096;

uint32_t add_codec(GraphBuilder& b, std::string_view name, const std::string& params_text = {}) {
  const CodecEntry& e = CodecRegistry::standard().get(name);
  return b.codec(e.id, params_text.empty() ? Bytes{} : e.params_from_text(params_text));
}

std::string width_list(const std::vector<uint64_t>& widths) {
  std::string out = "widths=";
  for (size_t i = 0; i < widths.size(); ++i) out += (i ? "." : "") + std::to_string(widths[i]);
  return out;
}

struct CsvShape {
  Stream segments;
  size_t columns = 0;
  size_t rows = 0;
  bool header = false;
};

bool row_end(uint64_t sep_len, const Stream& s, size_t offset) {
  return sep_len == 0 || s.payload[offset] == '\n' || sep_len == 2;
}

std::optional<CsvShape> csv_shape(const Stream& file, const CsvOptions& options) {
  if (file.type != MessageType::bytes() || file.payload.empty()) return std::nullopt;
  CsvShape shape;
  shape.segments = segment_delimited(file.payload, options.delimiter, options.quote);
  const Stream& s = shape.segments;
  size_t offset = 0;
  size_t cells = 0;
  for (size_t i = 0; i < s.lengths.size(); i += 2) {
    offset += s.lengths[i];
    ++cells;
    const uint64_t sep = s.lengths[i + 1];
    if (row_end(sep, s, offset)) {
      if (shape.rows == 0) shape.columns = cells;
      if (cells != shape.columns) return std::nullopt;
      ++shape.rows;
      cells = 0;
    }
    offset += sep;
  }
  if (shape.columns > kMaxCsvColumns) return std::nullopt;
  shape.header = options.header && shape.rows >= 2;
  return shape;
}

std::vector<bool> numeric_columns(const CsvShape& shape) {
  const Stream& s = shape.segments;
  std::vector<bool> numeric(shape.columns, shape.rows > (shape.header ? 1u : 0u));
  size_t offset = 0;
  for (size_t i = 0; i < s.lengths.size(); i += 2) {
    const size_t cell = i / 2;
    const size_t r = cell / shape.columns;
    const size_t j = cell % shape.columns;
    if ((!shape.header || r > 0) && numeric[j]) {
      std::string_view text(reinterpret_cast<const char*>(s.payload.data()) + offset, s.lengths[i]);
      if (!is_canonical_int64(text)) numeric[j] = false;
    }
    offset += s.lengths[i] + s.lengths[i + 1];
  }
  return numeric;
}

Stream decimal_stream(const Stream& text) {
  Stream out{MessageType::numeric(8), {}, {}};
  size_t offset = 0;
  for (uint64_t len : text.lengths) {
    int64_t v = 0;
    std::from_chars(reinterpret_cast<const char*>(text.payload.data()) + offset,
                    reinterpret_cast<const char*>(text.payload.data()) + offset + len, v);
    append_le(out.payload, static_cast<uint64_t>(v), 8);
    offset += len;
  }
  return out;
}

std::vector<std::string> decimal_text(const Stream& s) {
  std::vector<std::string> out;
  for (uint64_t v : s.values()) out.push_back(std::to_string(static_cast<int64_t>(v)));
  return out;
}

std::optional<size_t> parse_suffix(std::string_view tag, std::string_view prefix) {
  if (!tag.starts_with(prefix) || tag.size() == prefix.size()) return std::nullopt;
  size_t k = 0;
  auto [ptr, ec] = std::from_chars(tag.data() + prefix.size(), tag.data() + tag.size(), k);
  if (ec != std::errc() || ptr != tag.data() + tag.size()) return std::nullopt;
  return k;
}

GraphPtr default_graph(MessageType type) {
  static const GraphPtr numeric = build_graph("@numeric");
  static const GraphPtr string = build_graph("@string");
  static const GraphPtr generic = build_graph("@generic");
  if (type.tag == TypeTag::Numeric) return numeric;
  if (type.tag == TypeTag::String) return string;
  return generic;
}

struct Routing {
  std::vector<Cluster> clusters;
  std::vector<GraphPtr> backends;
};

GraphPtr route(FrontendPlan plan, const Routing& routing) {
  GraphBuilder& b = plan.builder;
  const auto& ports = plan.ports;
  std::map<std::string, size_t> by_tag;
  size_t columns = 0;
  for (size_t i = 0; i < ports.size(); ++i) {
    by_tag[ports[i].tag] = i;
    if (parse_suffix(ports[i].tag, "col")) ++columns;
  }
  auto resolve = [&](const std::string& tag) -> std::optional<size_t> {
    if (auto it = by_tag.find(tag); it != by_tag.end()) return it->second;
    if (columns == 0) return std::nullopt;
    for (std::string_view prefix : {"col", "sep"}) {
      if (auto k = parse_suffix(tag, prefix)) {
        auto it = by_tag.find(std::string(prefix) + std::to_string(*k % columns));
        if (it != by_tag.end()) return it->second;
      }
    }
    return std::nullopt;
  };

  std::vector<bool> claimed(ports.size(), false);
  for (size_t ci = 0; ci < routing.clusters.size(); ++ci) {
    const Cluster& cluster = routing.clusters[ci];
    std::vector<size_t> members;
    for (const std::string& tag : cluster.streams) {
      auto idx = resolve(tag);
      if (!idx || claimed[*idx]) continue;
      const MessageType t = ports[*idx].type;
      if (cluster.type ? t != *cluster.type : (!members.empty() && t != ports[members[0]].type)) continue;
      claimed[*idx] = true;
      members.push_back(*idx);
    }
    if (members.empty()) continue;
    const uint32_t backend = b.embed(*routing.backends[ci]);
    if (members.size() == 1) {
      b.connect(ports[members[0]].node, ports[members[0]].output, backend, 0);
      continue;
    }
    const uint32_t cat = add_codec(b, "concat", "inputs=" + std::to_string(members.size()));
    for (size_t m = 0; m < members.size(); ++m) {
      b.connect(ports[members[m]].node, ports[members[m]].output, cat, static_cast<uint32_t>(m));
    }
    b.connect(cat, 0, backend, 0);
  }
  for (size_t i = 0; i < ports.size(); ++i) {
    if (claimed[i]) continue;
    b.connect(ports[i].node, ports[i].output, b.embed(*default_graph(ports[i].type)), 0);
  }
  return b.build(plan.root);
}

void collect_codecs(const Description& d, std::vector<std::string>& out) {
  if (d.is_leaf()) return;
  out.push_back(d.name);
  for (const Description& c : d.children) collect_codecs(c, out);
}

}  // namespace

std::vector<NamedStream> sao_parse(const Stream& file) {
  const size_t n = file.payload.size();
  if (file.type.tag == TypeTag::String || n <= kSaoHeaderSize || (n - kSaoHeaderSize) % kSaoRecordSize != 0) {
    fail(ErrorCode::Format, "sao: " + std::to_string(n) + " bytes is not a 28-byte header plus whole 28-byte records");
  }
  static const std::pair<const char*, uint32_t> fields[] = {{"sra0", 8}, {"sdec0", 8}, {"is", 2},
                                                            {"mag", 2},  {"xrpm", 4},  {"xdpm", 4}};
  const size_t records = (n - kSaoHeaderSize) / kSaoRecordSize;
  std::vector<NamedStream> out;
  out.push_back({"header", Stream::of_struct(kSaoHeaderSize, Bytes(file.payload.begin(), file.payload.begin() + 28))});
  size_t field_offset = kSaoHeaderSize;
  for (const auto& [tag, w] : fields) {
    Stream s = Stream::of_struct(w, Bytes(records * w));
    for (size_t r = 0; r < records; ++r) {
      std::copy_n(file.payload.data() + field_offset + r * kSaoRecordSize, w, s.payload.data() + r * w);
    }
    if (std::string_view(tag) == "sra0") s.type = MessageType::numeric(8);
    out.push_back({tag, std::move(s)});
    field_offset += w;
  }
  return out;
}

Stream sao_unparse(const std::vector<NamedStream>& streams) {
  if (streams.size() != 7 || streams[0].stream.payload.size() != kSaoHeaderSize) {
    fail(ErrorCode::Format, "sao: expected a 28-byte header and six field streams");
  }
  const size_t records = streams[1].stream.payload.size() / 8;
  Bytes out(kSaoHeaderSize + records * kSaoRecordSize);
  std::copy(streams[0].stream.payload.begin(), streams[0].stream.payload.end(), out.begin());
  size_t field_offset = kSaoHeaderSize;
  for (size_t f = 1; f < 7; ++f) {
    const Stream& s = streams[f].stream;
    const size_t w = s.type.element_width();
    if (s.payload.size() != records * w) fail(ErrorCode::Format, "sao: field streams disagree on record count");
    for (size_t r = 0; r < records; ++r) {
      std::copy_n(s.payload.data() + r * w, w, out.data() + field_offset + r * kSaoRecordSize);
    }
    field_offset += w;
  }
  return Stream::of_bytes(std::move(out));
}

std::optional<std::vector<NamedStream>> csv_parse(const Stream& file, const CsvOptions& options) {
  std::vector<NamedStream> out;
  if (file.type == MessageType::bytes() && file.payload.empty()) return out;
  auto shape = csv_shape(file, options);
  if (!shape) return std::nullopt;
  const Stream& s = shape->segments;
  const size_t c = shape->columns;
  std::vector<Stream> parts(2 * c, Stream{MessageType::string(), {}, {}});
  Stream header{MessageType::string(), {}, {}};
  size_t offset = 0;
  for (size_t i = 0; i < s.lengths.size(); ++i) {
    const uint64_t len = s.lengths[i];
    Stream& dst = shape->header && i < 2 * c ? header : parts[i % (2 * c)];
    dst.payload.insert(dst.payload.end(), s.payload.begin() + offset, s.payload.begin() + offset + len);
    dst.lengths.push_back(len);
    offset += len;
  }
  const std::vector<bool> numeric = numeric_columns(*shape);
  if (shape->header) out.push_back({"header", std::move(header)});
  for (size_t j = 0; j < c; ++j) {
    Stream col = numeric[j] ? decimal_stream(parts[2 * j]) : std::move(parts[2 * j]);
    out.push_back({"col" + std::to_string(j), std::move(col)});
    out.push_back({"sep" + std::to_string(j), std::move(parts[2 * j + 1])});
  }
  return out;
}

Stream csv_unparse(const std::vector<NamedStream>& streams) {
  Bytes out;
  size_t first = 0;
  if (!streams.empty() && streams[0].tag == "header") {
    out = streams[0].stream.payload;
    first = 1;
  }
  const size_t c = (streams.size() - first) / 2;
  std::vector<std::vector<std::string>> parts(2 * c);
  for (size_t k = 0; k < 2 * c; ++k) {
    const Stream& s = streams[first + k].stream;
    parts[k] = s.type.tag == TypeTag::Numeric ? decimal_text(s) : s.strings();
  }
  const size_t rows = c == 0 ? 0 : parts[0].size();
  for (size_t r = 0; r < rows; ++r) {
    for (size_t k = 0; k < 2 * c; ++k) {
      if (r >= parts[k].size()) fail(ErrorCode::Format, "csv: column streams disagree on row count");
      out.insert(out.end(), parts[k][r].begin(), parts[k][r].end());
    }
  }
  return Stream::of_bytes(std::move(out));
}

std::optional<FrontendPlan> plan_frontend(ParserKind parser, const CsvOptions& options, const Stream& input) {
  if (input.type != MessageType::bytes()) return std::nullopt;
  const size_t n = input.payload.size();
  FrontendPlan plan;
  GraphBuilder& b = plan.builder;
  switch (parser) {
    case ParserKind::None:
      return std::nullopt;
    case ParserKind::Sao: {
      if (n <= kSaoHeaderSize || (n - kSaoHeaderSize) % kSaoRecordSize != 0 || n > UINT32_MAX) return std::nullopt;
      const uint32_t whole = add_codec(b, "interpret", "to=struct" + std::to_string(n));
      const uint32_t header = add_codec(b, "field_split", width_list({kSaoHeaderSize, n - kSaoHeaderSize}));
      const uint32_t records = add_codec(b, "interpret", "to=struct" + std::to_string(kSaoRecordSize));
      const uint32_t fields = add_codec(b, "field_split", "widths=8.8.2.2.4.4");
      const uint32_t sra0 = add_codec(b, "interpret", "to=numeric8");
      b.connect(whole, 0, header, 0);
      b.connect(header, 1, records, 0);
      b.connect(records, 0, fields, 0);
      b.connect(fields, 0, sra0, 0);
      plan.root = whole;
      plan.ports = {{"header", header, 0, MessageType::structure(kSaoHeaderSize)},
                    {"sra0", sra0, 0, MessageType::numeric(8)},
                    {"sdec0", fields, 1, MessageType::structure(8)},
                    {"is", fields, 2, MessageType::structure(2)},
                    {"mag", fields, 3, MessageType::structure(2)},
                    {"xrpm", fields, 4, MessageType::structure(4)},
                    {"xdpm", fields, 5, MessageType::structure(4)}};
      return plan;
    }
    case ParserKind::Csv: {
      auto shape = csv_shape(input, options);
      if (!shape) return std::nullopt;
      const size_t c = shape->columns;
      const uint32_t seg = add_codec(b, "interpret", "delim=" + std::to_string(options.delimiter) +
                                                         ",mode=segment,quote=" + std::to_string(options.quote));
      plan.root = seg;
      uint32_t body = seg;
      uint32_t body_output = 0;
      if (shape->header) {
        const uint32_t split = add_codec(b, "field_split", width_list({2 * c, 2 * c * (shape->rows - 1)}));
        b.connect(seg, 0, split, 0);
        plan.ports.push_back({"header", split, 0, MessageType::string()});
        body = split;
        body_output = 1;
      }
      const uint32_t cols = add_codec(b, "field_split", width_list(std::vector<uint64_t>(2 * c, 1)));
      b.connect(body, body_output, cols, 0);
      const std::vector<bool> numeric = numeric_columns(*shape);
      for (size_t j = 0; j < c; ++j) {
        const std::string tag = "col" + std::to_string(j);
        const uint32_t out = static_cast<uint32_t>(2 * j);
        if (numeric[j]) {
          const uint32_t dec = add_codec(b, "interpret", "mode=decimal");
          b.connect(cols, out, dec, 0);
          plan.ports.push_back({tag, dec, 0, MessageType::numeric(8)});
        } else {
          plan.ports.push_back({tag, cols, out, MessageType::string()});
        }
        plan.ports.push_back({"sep" + std::to_string(j), cols, out + 1, MessageType::string()});
      }
      return plan;
    }
  }
  return std::nullopt;
}

std::string default_backend(MessageType type) {
  if (type.tag == TypeTag::Numeric) return "@numeric";
  if (type.tag == TypeTag::String) return "@string";
  return "@generic";
}

Compressor::Compressor(CompressorConfig config, const CodecRegistry& registry)
    : config_(std::move(config)), registry_(&registry) {
  auto routing = std::make_shared<Routing>();
  routing->clusters = config_.clusters;
  for (const Cluster& c : config_.clusters) routing->backends.push_back(build_graph(c.backend, registry));
  backends_ = routing->backends;

  if (config_.parser == ParserKind::None) {
    graph_ = default_graph(MessageType::bytes());
    for (size_t i = 0; i < config_.clusters.size(); ++i) {
      const auto& s = config_.clusters[i].streams;
      if (std::find(s.begin(), s.end(), "input") != s.end()) {
        graph_ = backends_[i];
        break;
      }
    }
    return;
  }
  const ParserKind parser = config_.parser;
  const CsvOptions options = config_.csv;
  GraphBuilder b(registry);
  graph_ = b.build(b.selector("frontend", 1, [=](std::span<const Stream> in) -> GraphPtr {
    auto plan = plan_frontend(parser, options, in[0]);
    if (!plan) return default_graph(MessageType::bytes());
    return route(std::move(*plan), *routing);
  }));
}

void Compressor::check_format_version(uint32_t format_version) const {
  if (format_version < kMinFormatVersion || format_version > kMaxFormatVersion) {
    fail(ErrorCode::Version, "format version " + std::to_string(format_version) + " is outside the supported range " +
                                 std::to_string(kMinFormatVersion) + ".." + std::to_string(kMaxFormatVersion));
  }
  std::vector<std::string> names;
  for (const Cluster& c : config_.clusters) collect_codecs(parse_description(c.backend, *registry_), names);
  if (config_.parser != ParserKind::None) {
    names.insert(names.end(), {"interpret", "field_split", "concat"});
  }
  for (const std::string& name : names) {
    if (name[0] == '@') continue;
    const CodecEntry& e = registry_->get(name);
    if (!check_version(e.spec(), format_version)) {
      fail(ErrorCode::Version, "codec '" + name + "' requires format version " + std::to_string(e.min_format_version) +
                                   ", requested " + std::to_string(format_version));
    }
  }
}

Bytes Compressor::compress(ByteView input, uint32_t format_version) const {
  check_format_version(format_version);
  CompressResult r = gp::compress(*graph_, Stream::of_bytes(Bytes(input.begin(), input.end())), format_version, *registry_);
  return write_frame(r.trace, r.stored, format_version, *registry_);
}

CompressorConfig generic_config() {
  CompressorConfig c;
  c.name = "generic";
  c.parser = ParserKind::None;
  c.clusters = {{{"input"}, "lz>huffman", std::nullopt}};
  return c;
}

CompressorConfig sao_config() {
  CompressorConfig c;
  c.name = "sao";
  c.parser = ParserKind::Sao;
  const std::string tokens = "tokenize{lz>huffman,huffman}";
  c.clusters = {
      {{"header"}, "lz>huffman", MessageType::structure(28)},
      {{"sra0"}, "delta>lz>huffman", MessageType::numeric(8)},
      {{"sdec0"}, "transpose>lz>huffman", MessageType::structure(8)},
      {{"is"}, tokens, MessageType::structure(2)},
      {{"mag"}, tokens, MessageType::structure(2)},
      {{"xrpm"}, tokens, MessageType::structure(4)},
      {{"xdpm"}, tokens, MessageType::structure(4)},
  };
  return c;
}

CompressorConfig csv_config(const CsvOptions& options) {
  CompressorConfig c;
  c.name = "csv";
  c.parser = ParserKind::Csv;
  c.csv = options;
  return c;
}

std::vector<std::string> profile_names() { return {"generic", "sao", "csv"}; }

CompressorConfig profile_config(std::string_view name) {
  if (name == "generic") return generic_config();
  if (name == "sao") return sao_config();
  if (name == "csv") return csv_config();
  fail(ErrorCode::NotFound, "unknown profile '" + std::string(name) + "'");
}

}  // namespace gp
