// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "engine/description.hpp"

#include "codecs/common.hpp"
#include "engine/selectors.hpp"

namespace gp {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const CodecRegistry& registry) : text_(text), registry_(registry) {}

  Description parse() {
    Description d = node();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return d;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::Config, "graph description at offset " + std::to_string(pos_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n')) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static bool name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '@';
  }

  std::string word(bool value) {
    skip_space();
    size_t start = pos_;
    while (pos_ < text_.size() && (name_char(text_[pos_]) || (value && (text_[pos_] == '.' || text_[pos_] == '-')))) {
      ++pos_;
    }
    if (start == pos_) error(value ? "expected a value" : "expected a codec name");
    return std::string(text_.substr(start, pos_ - start));
  }

  Description node() {
    if (++depth_ > 256) error("nesting too deep");
    Description d;
    const size_t at = pos_;
    d.name = word(false);
    if (d.is_selector()) {
      if (find_selector(d.name.substr(1)) == nullptr) {
        pos_ = at;
        error("unknown selector '" + d.name + "'");
      }
    } else if (!d.is_leaf() && registry_.find(d.name) == nullptr) {
      pos_ = at;
      error("unknown codec '" + d.name + "'");
    }
    if (eat('(')) {
      if (d.is_leaf() || d.is_selector()) error("'" + d.name + "' takes no parameters");
      std::string raw;
      do {
        std::string key = word(false);
        if (!eat('=')) error("expected '='");
        std::string value = word(true);
        if (!raw.empty()) raw += ",";
        raw += key + "=" + value;
      } while (eat(','));
      if (!eat(')')) error("expected ')'");
      const CodecEntry& entry = registry_.get(d.name);
      if (!entry.params_from_text) error("codec '" + d.name + "' takes no parameters");
      try {
        d.params = entry.params_to_text(entry.params_from_text(raw));
      } catch (const Error& e) {
        error(e.what());
      }
    }
    if (eat('>')) {
      if (d.is_leaf()) error("'_' cannot have successors");
      d.children.push_back(node());
    } else if (eat('{')) {
      if (d.is_leaf()) error("'_' cannot have successors");
      do {
        d.children.push_back(node());
      } while (eat(','));
      if (!eat('}')) error("expected '}'");
    }
    --depth_;
    return d;
  }

  std::string_view text_;
  const CodecRegistry& registry_;
  size_t pos_ = 0;
  int depth_ = 0;
};

uint32_t add(GraphBuilder& b, const Description& d, const CodecRegistry& registry) {
  if (d.is_selector()) {
    if (!d.children.empty()) fail(ErrorCode::Config, "selector '" + d.name + "' cannot have successors");
    return b.embed(*selector_graph(d.name.substr(1)));
  }
  uint32_t id = b.codec(registry.get(d.name).id, description_params(d, registry));
  const size_t outputs = registry.get(d.name).signature(description_params(d, registry)).outputs.size();
  if (d.children.size() > outputs) {
    fail(ErrorCode::Config, "'" + d.name + "' has " + std::to_string(outputs) + " outputs but " +
                                std::to_string(d.children.size()) + " successors");
  }
  for (size_t j = 0; j < d.children.size(); ++j) {
    if (d.children[j].is_leaf()) continue;
    uint32_t child = add(b, d.children[j], registry);
    b.connect(id, static_cast<uint32_t>(j), child, 0);
  }
  return id;
}

std::vector<std::pair<std::string, std::string>> kv(const Description& d) {
  return codec_util::split_kv(d.params, d.name.c_str());
}

// Output types for input `in`; width 0 on a fixed-width tag means unknown.
std::vector<MessageType> infer_outputs(const Description& d, MessageType in, const CodecEntry& entry,
                                       const CodecRegistry& registry) {
  switch (static_cast<CodecId>(entry.id)) {
    case CodecId::Store:
    case CodecId::Transpose:
    case CodecId::Bitpack:
    case CodecId::Huffman:
    case CodecId::Lz:
      return {MessageType::bytes()};
    case CodecId::Delta:
    case CodecId::Mtf:
      return {in};
    case CodecId::Tokenize:
      return {in, MessageType::numeric(0)};
    case CodecId::Rle:
      return {in, MessageType::numeric(4)};
    case CodecId::Concat:
      return {in, MessageType::numeric(8)};
    case CodecId::FieldSplit: {
      std::vector<MessageType> out;
      for (const auto& [k, v] : kv(d)) {
        if (k != "widths") continue;
        size_t pos = 0;
        while (pos <= v.size()) {
          size_t end = v.find('.', pos);
          if (end == std::string::npos) end = v.size();
          uint64_t w = codec_util::parse_uint(std::string_view(v).substr(pos, end - pos), "field_split");
          out.push_back(in.tag == TypeTag::String ? MessageType::string()
                                                  : MessageType::structure(static_cast<uint32_t>(w)));
          pos = end + 1;
        }
      }
      return out;
    }
    case CodecId::Interpret: {
      for (const auto& [k, v] : kv(d)) {
        if (k == "to") return {codec_util::parse_type_text(v, "interpret")};
        if (k == "mode" && v == "segment") return {MessageType::string()};
        if (k == "mode" && v == "decimal") return {MessageType::numeric(8)};
      }
      return {MessageType::bytes()};
    }
  }
  std::vector<MessageType> out;
  for (const TypeConstraint& c : entry.signature(description_params(d, registry)).outputs) {
    if (c.same_as_input >= 0) {
      out.push_back(in);
    } else {
      TypeTag tag = TypeTag::Bytes;
      for (unsigned t = 0; t < 4; ++t) {
        if (c.tags & (1u << t)) {
          tag = static_cast<TypeTag>(t);
          break;
        }
      }
      out.push_back(MessageType{tag, c.width});
    }
  }
  return out;
}

}  // namespace

std::vector<MessageType> output_types(const Description& d, MessageType in, const CodecRegistry& registry) {
  return infer_outputs(d, in, registry.get(d.name), registry);
}

Description parse_description(std::string_view text, const CodecRegistry& registry) {
  return Parser(text, registry).parse();
}

std::string to_text(const Description& d) {
  std::string out = d.name;
  if (!d.params.empty()) out += "(" + d.params + ")";
  if (d.children.size() == 1) {
    out += ">" + to_text(d.children[0]);
  } else if (!d.children.empty()) {
    out += "{";
    for (size_t i = 0; i < d.children.size(); ++i) {
      if (i) out += ",";
      out += to_text(d.children[i]);
    }
    out += "}";
  }
  return out;
}

Bytes description_params(const Description& d, const CodecRegistry& registry) {
  if (d.params.empty()) return {};
  const CodecEntry& entry = registry.get(d.name);
  if (!entry.params_from_text) fail(ErrorCode::Config, "codec '" + d.name + "' takes no parameters");
  return entry.params_from_text(d.params);
}

size_t node_count(const Description& d) {
  if (d.is_leaf()) return 0;
  size_t n = 1;
  for (const Description& c : d.children) n += node_count(c);
  return n;
}

GraphPtr build_graph(const Description& d, const CodecRegistry& registry) {
  if (d.is_leaf()) fail(ErrorCode::Config, "a graph cannot consist of '_' alone");
  GraphBuilder b(registry);
  uint32_t root = add(b, d, registry);
  return b.build(root);
}

GraphPtr build_graph(std::string_view text, const CodecRegistry& registry) {
  return build_graph(parse_description(text, registry), registry);
}

std::optional<std::string> check_types(const Description& d, MessageType in, const CodecRegistry& registry) {
  if (d.is_leaf() || d.is_selector()) return std::nullopt;
  const CodecEntry& entry = registry.get(d.name);
  CodecSignature sig = entry.signature(description_params(d, registry));
  if (sig.inputs.size() != 1) return d.name + " needs " + std::to_string(sig.inputs.size()) + " inputs";
  if (!sig.inputs[0].accepts(in)) return d.name + " does not accept " + in.to_string();
  if (entry.id == id_of(CodecId::FieldSplit) && in.tag == TypeTag::Struct) {
    uint64_t sum = 0;
    for (MessageType t : infer_outputs(d, in, entry, registry)) sum += t.width;
    if (sum != in.width) return "field_split widths do not sum to " + std::to_string(in.width);
  }
  std::vector<MessageType> outs = infer_outputs(d, in, entry, registry);
  if (d.children.size() > outs.size()) return d.name + " has more successors than outputs";
  for (size_t j = 0; j < d.children.size(); ++j) {
    if (auto err = check_types(d.children[j], outs[j], registry)) return err;
  }
  return std::nullopt;
}

}  // namespace gp
