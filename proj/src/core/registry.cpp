// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/registry.hpp"

namespace gp {

bool check_version(const CodecSpec& spec, uint32_t active_format_version) {
  return spec.min_format_version <= active_format_version;
}

bool TypeConstraint::accepts(MessageType t) const {
  if ((tags & bit(t.tag)) == 0) return false;
  return width == 0 || t.width == width;
}

std::string TypeConstraint::to_string() const {
  if (same_as_input >= 0) return "same-as-input-" + std::to_string(same_as_input);
  if (tags == 0x0F && width == 0) return "any";
  std::string out;
  static const char* names[] = {"bytes", "struct", "numeric", "string"};
  for (unsigned i = 0; i < 4; ++i) {
    if (tags & (1u << i)) {
      if (!out.empty()) out += "|";
      out += names[i];
      if (width != 0 && (i == 1 || i == 2)) out += "(" + std::to_string(width) + ")";
    }
  }
  return out;
}

void CodecRegistry::register_codec(CodecEntry entry) {
  if (entries_.count(entry.id) != 0) {
    fail(ErrorCode::Usage, "codec id " + std::to_string(entry.id) + " is already registered");
  }
  if (find(entry.name) != nullptr) fail(ErrorCode::Usage, "codec name '" + entry.name + "' is already registered");
  if (!entry.signature || !entry.encode || !entry.decode) {
    fail(ErrorCode::Usage, "codec '" + entry.name + "' is missing a signature, encoder or decoder");
  }
  uint32_t id = entry.id;
  entries_.emplace(id, std::move(entry));
}

const CodecEntry* CodecRegistry::find(uint32_t id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second;
}

const CodecEntry* CodecRegistry::find(std::string_view name) const {
  for (const auto& [id, entry] : entries_) {
    if (entry.name == name) return &entry;
  }
  return nullptr;
}

const CodecEntry& CodecRegistry::get(uint32_t id) const {
  if (const CodecEntry* e = find(id)) return *e;
  fail(ErrorCode::NotFound, "unknown codec id " + std::to_string(id));
}

const CodecEntry& CodecRegistry::get(std::string_view name) const {
  if (const CodecEntry* e = find(name)) return *e;
  fail(ErrorCode::NotFound, "unknown codec '" + std::string(name) + "'");
}

std::vector<uint32_t> CodecRegistry::ids() const {
  std::vector<uint32_t> out;
  for (const auto& [id, entry] : entries_) out.push_back(id);
  return out;
}

const CodecRegistry& CodecRegistry::standard() {
  static const CodecRegistry registry = [] {
    CodecRegistry r;
    register_standard_codecs(r);
    return r;
  }();
  return registry;
}

}  // namespace gp
