// Copyright 2026 The graphpress Authors
// SPDX-License-Identifier: Apache-2.0

#include "engine/engine.hpp"

#include <map>

namespace gp {

namespace {

constexpr uint64_t kMinExpansionBudget = 64;

struct Task {
  GraphPtr graph;
  uint64_t instance = 0;
  uint32_t node = 0;
  std::vector<uint64_t> inputs;
  uint64_t depth = 0;  // nested selector expansions above this task
};

class Executor {
 public:
  Executor(const CodecRegistry& registry, uint32_t version, uint64_t budget)
      : registry_(registry), version_(version), budget_(budget) {}

  CompressResult run(const Graph& root, Stream input) {
    GraphPtr g(std::shared_ptr<const Graph>(), &root);  // non-owning alias
    if (root.node(root.root()).input_arity != 1) fail(ErrorCode::Usage, "root node must take exactly one input");
    slots_.emplace_back(std::move(input));
    stack_.push_back(Task{g, next_instance_++, root.root(), {0}, 0});
    while (!stack_.empty()) {
      Task t = std::move(stack_.back());
      stack_.pop_back();
      const GraphNode& node = t.graph->node(t.node);
      if (node.kind == GraphNode::Kind::Function) {
        expand(t, node);
      } else {
        execute(t, node);
      }
    }
    if (!pending_.empty()) fail(ErrorCode::Type, "graph finished with nodes whose inputs were never produced");

    CompressResult out;
    out.trace.instructions = std::move(instructions_);
    out.trace.slot_count = slots_.size();
    for (uint64_t s = 0; s < slots_.size(); ++s) {
      if (slots_[s]) {
        out.trace.stored_slots.push_back(s);
        out.stored.push_back(std::move(*slots_[s]));
      }
    }
    out.encode_cost = encode_cost_;
    out.decode_cost = decode_cost_;
    out.expansions = expansions_;
    return out;
  }

 private:
  std::vector<Stream> take_inputs(const std::vector<uint64_t>& ids) {
    std::vector<Stream> v;
    v.reserve(ids.size());
    for (uint64_t id : ids) {
      v.push_back(std::move(*slots_[id]));
      slots_[id].reset();
    }
    return v;
  }

  void restore_inputs(const std::vector<uint64_t>& ids, std::vector<Stream>& v) {
    for (size_t i = 0; i < ids.size(); ++i) slots_[ids[i]] = std::move(v[i]);
  }

  void expand(Task& t, const GraphNode& node) {
    ++expansions_;
    if (t.depth >= budget_ || expansions_ > budget_ * (1 + instructions_.size())) {
      fail(ErrorCode::Expansion, "selector expansion budget exceeded at '" + node.label + "'");
    }
    std::vector<Stream> view = take_inputs(t.inputs);
    GraphPtr sub;
    try {
      sub = expand_selector(node, view);
    } catch (...) {
      restore_inputs(t.inputs, view);
      throw;
    }
    restore_inputs(t.inputs, view);
    const GraphNode& root = sub->node(sub->root());
    if (root.input_arity != t.inputs.size()) {
      fail(ErrorCode::Expansion, "selector '" + node.label + "' returned a graph taking " +
                                     std::to_string(root.input_arity) + " inputs, expected " +
                                     std::to_string(t.inputs.size()));
    }
    if (root.kind == GraphNode::Kind::Codec) {
      CodecSignature sig = registry_.get(root.codec.codec_id).signature(root.codec.params);
      for (size_t j = 0; j < t.inputs.size(); ++j) {
        const MessageType& type = slots_[t.inputs[j]]->type;
        if (!sig.inputs[j].accepts(type)) {
          fail(ErrorCode::Expansion, "selector '" + node.label + "' returned a graph whose root " + root.label +
                                         " rejects " + type.to_string());
        }
      }
    }
    stack_.push_back(Task{sub, next_instance_++, sub->root(), std::move(t.inputs), t.depth + 1});
  }

  void execute(Task& t, const GraphNode& node) {
    const CodecEntry& entry = registry_.get(node.codec.codec_id);
    if (!check_version(node.codec, version_)) {
      fail(ErrorCode::Version, "codec '" + entry.name + "' requires format version " +
                                   std::to_string(node.codec.min_format_version) + ", active version is " +
                                   std::to_string(version_));
    }
    CodecSignature sig = entry.signature(node.codec.params);
    if (sig.inputs.size() != t.inputs.size()) {
      fail(ErrorCode::Type, entry.name + " expects " + std::to_string(sig.inputs.size()) + " inputs, got " +
                                std::to_string(t.inputs.size()));
    }
    for (size_t j = 0; j < t.inputs.size(); ++j) {
      const MessageType& type = slots_[t.inputs[j]]->type;
      if (!sig.inputs[j].accepts(type)) {
        fail(ErrorCode::Type, "edge into " + entry.name + " (node " + std::to_string(t.node) + ") input " +
                                  std::to_string(j) + ": got " + type.to_string() + ", expects " +
                                  sig.inputs[j].to_string());
      }
    }

    std::vector<MessageType> input_types;
    for (uint64_t id : t.inputs) input_types.push_back(slots_[id]->type);
    std::vector<Stream> inputs = take_inputs(t.inputs);
    uint64_t in_bytes = 0;
    for (const Stream& s : inputs) in_bytes += s.payload.size() + 8 * s.lengths.size();
    EncodeResult r = entry.encode(node.codec.params, inputs);
    inputs.clear();

    if (r.outputs.size() != sig.outputs.size()) {
      fail(ErrorCode::Internal, entry.name + " produced " + std::to_string(r.outputs.size()) + " outputs, signature declares " +
                                    std::to_string(sig.outputs.size()));
    }
    for (size_t j = 0; j < r.outputs.size(); ++j) {
      const Stream& s = r.outputs[j];
      if (auto violation = validate_stream(s)) {
        fail(ErrorCode::Internal, entry.name + " output " + std::to_string(j) + " is malformed: " + *violation);
      }
      const TypeConstraint& c = sig.outputs[j];
      bool ok = c.same_as_input >= 0 ? s.type == input_types.at(c.same_as_input) : c.accepts(s.type);
      if (!ok) {
        fail(ErrorCode::Internal, entry.name + " output " + std::to_string(j) + " has type " + s.type.to_string() +
                                      ", signature declares " + c.to_string());
      }
    }

    encode_cost_ += entry.cost.encode_per_byte * static_cast<double>(in_bytes);
    decode_cost_ += entry.cost.decode_per_byte * static_cast<double>(in_bytes);
    const uint64_t first = slots_.size();
    instructions_.push_back(Instruction{entry.id, std::move(r.wire_params), t.inputs, r.outputs.size()});
    for (Stream& s : r.outputs) slots_.emplace_back(std::move(s));

    // Unconnected outputs stay in their slots and become stored leaves.
    for (size_t j = node.successors.size(); j-- > 0;) {
      if (node.successors[j]) deliver(t, *node.successors[j], first + j);
    }
  }

  void deliver(const Task& from, Edge e, uint64_t slot) {
    const GraphNode& target = from.graph->node(e.node);
    if (target.input_arity == 1) {
      stack_.push_back(Task{from.graph, from.instance, e.node, {slot}, from.depth});
      return;
    }
    auto key = std::make_pair(from.instance, e.node);
    auto& filled = pending_[key];
    filled.resize(target.input_arity);
    filled[e.input] = slot;
    for (const auto& f : filled) {
      if (!f) return;
    }
    std::vector<uint64_t> ids;
    for (const auto& f : filled) ids.push_back(*f);
    pending_.erase(key);
    stack_.push_back(Task{from.graph, from.instance, e.node, std::move(ids), from.depth});
  }

  const CodecRegistry& registry_;
  uint32_t version_;
  uint64_t budget_;
  std::vector<std::optional<Stream>> slots_;
  std::vector<Task> stack_;
  std::map<std::pair<uint64_t, uint32_t>, std::vector<std::optional<uint64_t>>> pending_;
  std::vector<Instruction> instructions_;
  uint64_t next_instance_ = 0;
  uint64_t expansions_ = 0;
  double encode_cost_ = 0;
  double decode_cost_ = 0;
};

}  // namespace

GraphPtr expand_selector(const GraphNode& node, std::span<const Stream> inputs) {
  if (node.kind != GraphNode::Kind::Function || !node.selector) {
    fail(ErrorCode::Usage, "node '" + node.label + "' is not a selector");
  }
  GraphPtr g = node.selector(inputs);
  if (!g) fail(ErrorCode::Expansion, "selector '" + node.label + "' returned no graph");
  return g;
}

CompressResult compress(const Graph& root, Stream input, uint32_t format_version, const CodecRegistry& registry) {
  if (format_version < kMinFormatVersion || format_version > kMaxFormatVersion) {
    fail(ErrorCode::Version, "format version " + std::to_string(format_version) + " is outside the supported range " +
                                 std::to_string(kMinFormatVersion) + ".." + std::to_string(kMaxFormatVersion));
  }
  require_valid(input, "compress input");
  uint64_t budget = std::max<uint64_t>(kMinExpansionBudget, 4 * root.size());
  return Executor(registry, format_version, budget).run(root, std::move(input));
}

void validate_trace(const ResolvedTrace& trace) {
  const uint64_t slots = trace.slot_count;
  uint64_t produced = 1;
  for (const Instruction& ins : trace.instructions) {
    if (ins.output_count > slots - produced) fail(ErrorCode::Corrupt, "trace: slot count too small for outputs");
    produced += ins.output_count;
  }
  if (produced != slots) fail(ErrorCode::Corrupt, "trace: slot count does not match instruction outputs");
  std::vector<uint8_t> consumed(slots, 0);
  uint64_t next = 1;
  for (size_t i = 0; i < trace.instructions.size(); ++i) {
    const Instruction& ins = trace.instructions[i];
    for (uint64_t s : ins.inputs) {
      if (s >= next) {
        fail(ErrorCode::Corrupt, "trace: instruction " + std::to_string(i) + " reads slot " + std::to_string(s) +
                                     " before it is produced");
      }
      if (consumed[s]) fail(ErrorCode::Corrupt, "trace: slot " + std::to_string(s) + " consumed twice");
      consumed[s] = 1;
    }
    next += ins.output_count;
  }
  size_t k = 0;
  for (uint64_t s = 0; s < slots; ++s) {
    if (consumed[s]) continue;
    if (k >= trace.stored_slots.size() || trace.stored_slots[k] != s) {
      fail(ErrorCode::Corrupt, "trace: slot " + std::to_string(s) + " is neither consumed nor stored");
    }
    ++k;
  }
  if (k != trace.stored_slots.size()) fail(ErrorCode::Corrupt, "trace: stored slot list does not match leaves");
}

Stream decompress_trace(const ResolvedTrace& trace, std::vector<Stream> stored, const CodecRegistry& registry,
                        uint64_t max_output_bytes) {
  validate_trace(trace);
  if (stored.size() != trace.stored_slots.size()) fail(ErrorCode::Corrupt, "trace: stored stream count mismatch");
  std::vector<uint64_t> first_output(trace.instructions.size());
  uint64_t next = 1;
  for (size_t i = 0; i < trace.instructions.size(); ++i) {
    first_output[i] = next;
    next += trace.instructions[i].output_count;
  }
  std::vector<std::optional<Stream>> slots(trace.slot_count);
  for (size_t k = 0; k < stored.size(); ++k) {
    if (auto violation = validate_stream(stored[k])) fail(ErrorCode::Corrupt, "stored stream: " + *violation);
    slots[trace.stored_slots[k]] = std::move(stored[k]);
  }
  uint64_t used = 0;
  for (size_t i = trace.instructions.size(); i-- > 0;) {
    const Instruction& ins = trace.instructions[i];
    const CodecEntry* entry = registry.find(ins.codec_id);
    if (entry == nullptr) {
      fail(ErrorCode::Corrupt, "instruction " + std::to_string(i) + ": unknown codec id " + std::to_string(ins.codec_id));
    }
    std::vector<Stream> outputs;
    outputs.reserve(ins.output_count);
    for (uint64_t j = 0; j < ins.output_count; ++j) {
      auto& s = slots[first_output[i] + j];
      if (!s) fail(ErrorCode::Internal, "instruction " + std::to_string(i) + ": output slot not regenerated");
      outputs.push_back(std::move(*s));
      s.reset();
    }
    std::vector<Stream> inputs;
    try {
      DecodeLimits limits{max_output_bytes - std::min(used, max_output_bytes)};
      inputs = entry->decode(ins.params, outputs, limits);
    } catch (const Error& err) {
      ErrorCode code = err.code() == ErrorCode::Limit ? ErrorCode::Limit : ErrorCode::Corrupt;
      fail(code, "instruction " + std::to_string(i) + " (" + entry->name + "): " + err.what());
    } catch (const std::length_error& err) {
      fail(ErrorCode::Corrupt, "instruction " + std::to_string(i) + " (" + entry->name + "): " + err.what());
    }
    if (inputs.size() != ins.inputs.size()) {
      fail(ErrorCode::Corrupt, "instruction " + std::to_string(i) + " (" + entry->name + ") regenerated " +
                                   std::to_string(inputs.size()) + " streams, trace expects " +
                                   std::to_string(ins.inputs.size()));
    }
    for (size_t j = 0; j < inputs.size(); ++j) {
      if (auto violation = validate_stream(inputs[j])) {
        fail(ErrorCode::Corrupt, "instruction " + std::to_string(i) + " (" + entry->name + "): " + *violation);
      }
      used += inputs[j].payload.size() + 8 * inputs[j].lengths.size();
      slots[ins.inputs[j]] = std::move(inputs[j]);
    }
    if (used > max_output_bytes) fail(ErrorCode::Limit, "decoded size exceeds limit");
  }
  if (!slots[0]) fail(ErrorCode::Corrupt, "trace does not regenerate its input");
  return std::move(*slots[0]);
}

}  // namespace gp
