// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "format/frame.hpp"

#include <boost/crc.hpp>
#include <sstream>

namespace gp {

namespace {

std::string at(size_t offset) { return " at offset " + std::to_string(offset); }

std::string hex(ByteView b) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (uint8_t c : b) {
    out += digits[c >> 4];
    out += digits[c & 15];
  }
  return out;
}

}  // namespace

uint32_t crc32c(ByteView data) {
  boost::crc_optimal<32, 0x1EDC6F41, 0xFFFFFFFF, 0xFFFFFFFF, true, true> crc;
  crc.process_bytes(data.data(), data.size());
  return crc.checksum();
}

Bytes write_frame(const ResolvedTrace& trace, const std::vector<Stream>& stored, uint32_t format_version,
                  const CodecRegistry& registry) {
  if (format_version < kMinFormatVersion || format_version > kMaxFormatVersion) {
    fail(ErrorCode::Version, "cannot write format version " + std::to_string(format_version));
  }
  validate_trace(trace);
  if (stored.size() != trace.stored_slots.size()) fail(ErrorCode::Usage, "stored stream count mismatch");
  for (const Instruction& ins : trace.instructions) {
    const CodecEntry& entry = registry.get(ins.codec_id);
    if (!check_version(entry.spec(), format_version)) {
      fail(ErrorCode::Version, "codec '" + entry.name + "' requires format version " +
                                   std::to_string(entry.min_format_version) + ", frame version is " +
                                   std::to_string(format_version));
    }
  }

  Bytes out(kFrameMagic.begin(), kFrameMagic.end());
  append_varint(out, format_version);
  append_varint(out, trace.instructions.size());
  for (const Instruction& ins : trace.instructions) {
    append_varint(out, ins.codec_id);
    append_varint(out, ins.params.size());
    out.insert(out.end(), ins.params.begin(), ins.params.end());
    append_varint(out, ins.inputs.size());
    for (uint64_t s : ins.inputs) append_varint(out, s);
    append_varint(out, ins.output_count);
  }
  append_varint(out, stored.size());
  for (size_t k = 0; k < stored.size(); ++k) {
    const Stream& s = stored[k];
    require_valid(s, "stored stream");
    append_varint(out, trace.stored_slots[k]);
    out.push_back(static_cast<uint8_t>(s.type.tag));
    if (s.type.has_width()) append_varint(out, s.type.width);
    append_varint(out, s.element_count());
    for (uint64_t len : s.lengths) append_varint(out, len);
    append_varint(out, s.payload.size());
  }
  for (const Stream& s : stored) out.insert(out.end(), s.payload.begin(), s.payload.end());
  uint32_t crc = crc32c(ByteView(out).subspan(kFrameMagic.size()));
  append_le(out, crc, 4);
  return out;
}

ReadResult read_frame(ByteView data, const CodecRegistry& registry) {
  ByteReader in(data);
  ByteView magic = in.take(kFrameMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kFrameMagic.begin())) fail(ErrorCode::Format, "bad magic" + at(0));

  ReadResult r;
  Frame& f = r.frame;
  size_t pos = in.offset();
  uint64_t version = in.varint();
  if (version < kMinFormatVersion || version > kMaxFormatVersion) {
    fail(ErrorCode::Version, "unsupported format version " + std::to_string(version) + " (supported " +
                                 std::to_string(kMinFormatVersion) + ".." + std::to_string(kMaxFormatVersion) + ")" +
                                 at(pos));
  }
  f.format_version = static_cast<uint32_t>(version);

  // Every slot is either consumed by a later instruction or listed in the
  // stored table, so slot counts are bounded by the frame size.
  const uint64_t max_slots = 1 + 2 * uint64_t{data.size()};
  uint64_t count = in.varint_max(in.remaining(), "instruction count");
  f.trace.instructions.resize(count);
  uint64_t produced = 1;
  std::vector<uint8_t> consumed(1, 0);
  for (uint64_t i = 0; i < count; ++i) {
    Instruction& ins = f.trace.instructions[i];
    pos = in.offset();
    uint64_t id = in.varint();
    const CodecEntry* entry = id <= UINT32_MAX ? registry.find(static_cast<uint32_t>(id)) : nullptr;
    if (entry == nullptr) fail(ErrorCode::Corrupt, "unknown codec id " + std::to_string(id) + at(pos));
    if (entry->min_format_version > f.format_version) {
      fail(ErrorCode::Version, "codec '" + entry->name + "' is not available at format version " +
                                   std::to_string(f.format_version) + at(pos));
    }
    ins.codec_id = entry->id;
    uint64_t plen = in.varint_max(in.remaining(), "parameter length");
    ByteView p = in.take(plen);
    ins.params.assign(p.begin(), p.end());
    uint64_t nin = in.varint_max(in.remaining(), "input count");
    ins.inputs.resize(nin);
    for (auto& s : ins.inputs) {
      pos = in.offset();
      s = in.varint();
      if (s >= produced) fail(ErrorCode::Corrupt, "slot " + std::to_string(s) + " read before it is produced" + at(pos));
      if (consumed[s]) fail(ErrorCode::Corrupt, "slot " + std::to_string(s) + " consumed twice" + at(pos));
      consumed[s] = 1;
    }
    pos = in.offset();
    ins.output_count = in.varint_max(max_slots - produced, "output count");
    produced += ins.output_count;
    consumed.resize(produced, 0);
  }
  f.trace.slot_count = produced;

  pos = in.offset();
  uint64_t nstored = in.varint_max(in.remaining(), "stored stream count");
  struct Entry {
    MessageType type;
    uint64_t elements;
    std::vector<uint64_t> lengths;
    uint64_t payload_len;
  };
  std::vector<Entry> table(nstored);
  uint64_t total_payload = 0;
  uint64_t next_unconsumed = 0;
  auto advance = [&](uint64_t from) {
    while (from < produced && consumed[from]) ++from;
    return from;
  };
  next_unconsumed = advance(0);
  for (uint64_t k = 0; k < nstored; ++k) {
    Entry& e = table[k];
    pos = in.offset();
    uint64_t slot = in.varint();
    if (slot != next_unconsumed) {
      fail(ErrorCode::Corrupt, "stored slot " + std::to_string(slot) + " is not the next unconsumed slot" + at(pos));
    }
    f.trace.stored_slots.push_back(slot);
    next_unconsumed = advance(slot + 1);
    pos = in.offset();
    uint8_t tag = in.u8();
    if (tag > 3) fail(ErrorCode::Corrupt, "bad type tag " + std::to_string(tag) + at(pos));
    e.type.tag = static_cast<TypeTag>(tag);
    if (e.type.has_width()) {
      pos = in.offset();
      e.type.width = static_cast<uint32_t>(in.varint_max(UINT32_MAX, "type width"));
      if (!e.type.valid()) fail(ErrorCode::Corrupt, "invalid type " + e.type.to_string() + at(pos));
    }
    pos = in.offset();
    e.elements = in.varint();
    if (e.type.tag == TypeTag::String) {
      if (e.elements > in.remaining()) fail(ErrorCode::Corrupt, "string count out of range" + at(pos));
      e.lengths.resize(e.elements);
      for (auto& len : e.lengths) len = in.varint_max(data.size(), "string length");
    }
    pos = in.offset();
    e.payload_len = in.varint_max(data.size(), "payload length");
    bool consistent = true;
    switch (e.type.tag) {
      case TypeTag::Bytes: consistent = e.elements == e.payload_len; break;
      case TypeTag::Struct:
      case TypeTag::Numeric:
        consistent = e.payload_len % e.type.width == 0 && e.payload_len / e.type.width == e.elements;
        break;
      case TypeTag::String: {
        uint64_t sum = 0;
        for (uint64_t len : e.lengths) sum += len;  // each len <= data.size(), no overflow
        consistent = sum == e.payload_len;
        break;
      }
    }
    if (!consistent) fail(ErrorCode::Corrupt, "declared lengths are inconsistent for slot " + std::to_string(slot) + at(pos));
    total_payload += e.payload_len;
    if (total_payload > data.size()) fail(ErrorCode::Corrupt, "payload lengths exceed frame" + at(pos));
  }
  if (next_unconsumed != produced) {
    fail(ErrorCode::Corrupt, "slot " + std::to_string(next_unconsumed) + " is neither consumed nor stored" + at(in.offset()));
  }

  pos = in.offset();
  if (total_payload > in.remaining()) fail(ErrorCode::Corrupt, "truncated payload section" + at(pos));
  for (Entry& e : table) {
    ByteView p = in.take(e.payload_len);
    f.stored.push_back(Stream{e.type, Bytes(p.begin(), p.end()), std::move(e.lengths)});
  }
  const size_t body_end = in.offset();
  pos = body_end;
  uint32_t expected = static_cast<uint32_t>(in.le(4));
  uint32_t actual = crc32c(data.subspan(kFrameMagic.size(), body_end - kFrameMagic.size()));
  if (expected != actual) fail(ErrorCode::Corrupt, "checksum mismatch" + at(pos));
  r.consumed = in.offset();
  return r;
}

Stream decompress(ByteView data, const DecodeOptions& options, const CodecRegistry& registry) {
  ReadResult r = read_frame(data, registry);
  if (r.consumed != data.size()) fail(ErrorCode::Format, "trailing bytes after frame" + at(r.consumed));
  return decompress_trace(r.frame.trace, std::move(r.frame.stored), registry, options.max_output_bytes);
}

Bytes decompress_all(ByteView data, const DecodeOptions& options, const CodecRegistry& registry) {
  Bytes out;
  size_t offset = 0;
  do {
    ReadResult r;
    try {
      r = read_frame(data.subspan(offset), registry);
    } catch (const Error& e) {
      if (offset == 0) throw;
      fail(e.code(), "frame at offset " + std::to_string(offset) + ": " + e.what());
    }
    Stream s = decompress_trace(r.frame.trace, std::move(r.frame.stored), registry, options.max_output_bytes);
    out.insert(out.end(), s.payload.begin(), s.payload.end());
    offset += r.consumed;
  } while (offset < data.size());
  return out;
}

std::string inspect(const Frame& frame, size_t frame_size, const CodecRegistry& registry) {
  std::ostringstream os;
  os << "format version " << frame.format_version << ", " << frame_size << " bytes, "
     << frame.trace.instructions.size() << " instructions, " << frame.trace.slot_count << " slots\n";
  uint64_t next = 1;
  for (size_t i = 0; i < frame.trace.instructions.size(); ++i) {
    const Instruction& ins = frame.trace.instructions[i];
    const CodecEntry* e = registry.find(ins.codec_id);
    os << "  #" << i << " " << (e ? e->name : "codec" + std::to_string(ins.codec_id));
    if (!ins.params.empty()) os << " [" << hex(ins.params) << "]";
    os << " (";
    for (size_t j = 0; j < ins.inputs.size(); ++j) os << (j ? " " : "") << ins.inputs[j];
    os << ") -> (";
    for (uint64_t j = 0; j < ins.output_count; ++j) os << (j ? " " : "") << next + j;
    os << ")\n";
    next += ins.output_count;
  }
  os << "stored streams:\n";
  for (size_t k = 0; k < frame.stored.size(); ++k) {
    const Stream& s = frame.stored[k];
    os << "  slot " << frame.trace.stored_slots[k] << " " << s.type.to_string() << " " << s.element_count()
       << " elements, " << s.payload.size() << " bytes\n";
  }
  return os.str();
}

}  // namespace gp
