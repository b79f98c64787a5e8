#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ecbe/block.hpp"
#include "ecbe/schema.hpp"

namespace ecbe {

/// Single-consumer instance source. Emits each instance exactly once;
/// `cursor()` counts instances consumed so far.
class StreamSource {
public:
  virtual ~StreamSource() = default;

  virtual const Schema& schema() const = 0;

  std::optional<Instance> next() {
    auto instance = produce();
    if (instance) ++cursor_;
    return instance;
  }

  long cursor() const { return cursor_; }

private:
  virtual std::optional<Instance> produce() = 0;

  long cursor_ = 0;
};

/// Reads the next `winsize` instances as one block; a shorter final block
/// carries the remainder. Returns nullopt once the source is exhausted.
/// Block indices assume a constant winsize per source.
inline std::optional<DataBlock> next_block(StreamSource& source, int winsize) {
  const long index = source.cursor() / winsize;
  std::vector<Instance> instances;
  instances.reserve(winsize);
  for (int i = 0; i < winsize; ++i) {
    auto instance = source.next();
    if (!instance) break;
    instances.push_back(std::move(*instance));
  }
  if (instances.empty()) return std::nullopt;
  return DataBlock::from_instances(instances, index);
}

/// In-memory source over a fixed instance list.
class MemorySource : public StreamSource {
public:
  MemorySource(Schema schema, std::vector<Instance> instances)
      : schema_(std::move(schema)), instances_(std::move(instances)) {}

  const Schema& schema() const override { return schema_; }

private:
  std::optional<Instance> produce() override {
    if (position_ >= instances_.size()) return std::nullopt;
    return instances_[position_++];
  }

  Schema schema_;
  std::vector<Instance> instances_;
  std::size_t position_ = 0;
};

}  // namespace ecbe
