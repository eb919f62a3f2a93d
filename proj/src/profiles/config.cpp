// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "profiles/config.hpp"

#include "json.hpp"

#include "codecs/common.hpp"
#include "engine/description.hpp"

namespace gp {

using nlohmann::json;

std::string parser_name(ParserKind p) {
  switch (p) {
    case ParserKind::None: return "none";
    case ParserKind::Sao: return "sao";
    case ParserKind::Csv: return "csv";
  }
  return "none";
}

ParserKind parse_parser_name(std::string_view name) {
  if (name == "none") return ParserKind::None;
  if (name == "sao") return ParserKind::Sao;
  if (name == "csv") return ParserKind::Csv;
  fail(ErrorCode::Config, "unknown parser '" + std::string(name) + "'");
}

std::string serialize_compressor(const CompressorConfig& config) {
  json j;
  j["name"] = config.name;
  j["format_version"] = config.format_version;
  j["parser"] = parser_name(config.parser);
  if (config.parser == ParserKind::Csv) {
    j["csv"] = {{"delimiter", config.csv.delimiter}, {"quote", config.csv.quote}, {"header", config.csv.header}};
  }
  j["clusters"] = json::array();
  for (const Cluster& c : config.clusters) {
    json jc;
    jc["streams"] = c.streams;
    jc["backend"] = to_text(parse_description(c.backend));
    if (c.type) jc["type"] = codec_util::type_text(*c.type);
    j["clusters"].push_back(std::move(jc));
  }
  return j.dump(2) + "\n";
}

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& msg) {
  fail(ErrorCode::Config, "config " + where + ": " + msg);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) config_error(where, std::string("missing '") + key + "'");
  return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) config_error(where, "unknown key '" + it.key() + "'");
  }
}

uint8_t byte_value(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() || v.get<uint64_t>() > 255) config_error(where, "expected a byte value 0..255");
  return static_cast<uint8_t>(v.get<uint64_t>());
}

}  // namespace

CompressorConfig deserialize_compressor(std::string_view text, const CodecRegistry& registry) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Map the byte position to line:column.
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    config_error("line " + std::to_string(line) + " column " + std::to_string(col), "syntax error");
  }
  if (!j.is_object()) config_error("$", "expected an object");
  check_keys(j, {"name", "format_version", "parser", "csv", "clusters"}, "$");

  CompressorConfig c;
  try {
    c.name = member(j, "name", "$").get<std::string>();
    const json& v = member(j, "format_version", "$");
    if (!v.is_number_unsigned()) config_error("$.format_version", "expected an unsigned integer");
    uint64_t version = v.get<uint64_t>();
    if (version < kMinFormatVersion || version > kMaxFormatVersion) {
      config_error("$.format_version", "unsupported format version " + std::to_string(version));
    }
    c.format_version = static_cast<uint32_t>(version);
    c.parser = parse_parser_name(member(j, "parser", "$").get<std::string>());
    if (j.contains("csv")) {
      if (c.parser != ParserKind::Csv) config_error("$.csv", "only valid with the csv parser");
      const json& o = j["csv"];
      if (!o.is_object()) config_error("$.csv", "expected an object");
      check_keys(o, {"delimiter", "quote", "header"}, "$.csv");
      c.csv.delimiter = byte_value(member(o, "delimiter", "$.csv"), "$.csv.delimiter");
      c.csv.quote = byte_value(member(o, "quote", "$.csv"), "$.csv.quote");
      c.csv.header = member(o, "header", "$.csv").get<bool>();
      if (c.csv.delimiter == c.csv.quote || c.csv.delimiter == '\n' || c.csv.delimiter == '\r') {
        config_error("$.csv", "delimiter must differ from the quote and newline bytes");
      }
    } else if (c.parser == ParserKind::Csv) {
      config_error("$", "missing 'csv'");
    }
    const json& clusters = member(j, "clusters", "$");
    if (!clusters.is_array()) config_error("$.clusters", "expected an array");
    for (size_t i = 0; i < clusters.size(); ++i) {
      const std::string where = "$.clusters[" + std::to_string(i) + "]";
      const json& jc = clusters[i];
      if (!jc.is_object()) config_error(where, "expected an object");
      check_keys(jc, {"streams", "backend", "type"}, where);
      Cluster cl;
      cl.streams = member(jc, "streams", where).get<std::vector<std::string>>();
      if (cl.streams.empty()) config_error(where + ".streams", "must not be empty");
      try {
        cl.backend = to_text(parse_description(member(jc, "backend", where).get<std::string>(), registry));
      } catch (const Error& e) {
        config_error(where + ".backend", e.what());
      }
      if (jc.contains("type")) {
        try {
          cl.type = codec_util::parse_type_text(jc["type"].get<std::string>(), "type");
        } catch (const Error& e) {
          config_error(where + ".type", e.what());
        }
      }
      c.clusters.push_back(std::move(cl));
    }
  } catch (const json::exception& e) {
    config_error("$", e.what());
  }
  return c;
}

}  // namespace gp
