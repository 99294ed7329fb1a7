#pragma once

#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

namespace famlift::detail {

// Insert-only open-addressing map from node pointers to values. Bulk folds
// and encodings memoise one entry per tree node, where the per-node
// allocation of std::unordered_map dominates; linear probing over a flat
// slot array keeps that off the profile.
template <typename Value>
class NodeMap {
 public:
  explicit NodeMap(std::size_t expected = 0) { rehash(slot_count(expected)); }

  void reserve(std::size_t expected) {
    std::size_t want = slot_count(expected);
    if (want > slots_.size()) rehash(want);
  }

  std::size_t size() const { return count_; }

  const Value* find(const void* key) const {
    for (std::size_t at = probe(key);; at = (at + 1) & mask_) {
      if (slots_[at].key == key) return &slots_[at].value;
      if (slots_[at].key == nullptr) return nullptr;
    }
  }

  // Inserts if absent; returns the stored value either way.
  Value& emplace(const void* key, Value&& value) {
    if ((count_ + 1) * 4 > slots_.size() * 3) rehash(slots_.size() * 2);
    for (std::size_t at = probe(key);; at = (at + 1) & mask_) {
      if (slots_[at].key == key) return slots_[at].value;
      if (slots_[at].key == nullptr) {
        slots_[at].key = key;
        slots_[at].value = std::move(value);
        ++count_;
        return slots_[at].value;
      }
    }
  }

 private:
  struct Slot {
    const void* key = nullptr;
    Value value{};
  };

  static std::size_t slot_count(std::size_t expected) {
    std::size_t n = 16;
    while (n * 3 < expected * 4) n *= 2;
    return n;
  }

  std::size_t probe(const void* key) const {
    auto h = reinterpret_cast<std::uintptr_t>(key) >> 4;
    return (h * UINT64_C(0x9E3779B97F4A7C15)) & mask_;
  }

  void rehash(std::size_t new_size) {
    std::vector<Slot> old = std::move(slots_);
    slots_.assign(new_size, Slot{});
    mask_ = new_size - 1;
    for (Slot& s : old) {
      if (!s.key) continue;
      for (std::size_t at = probe(s.key);; at = (at + 1) & mask_) {
        if (slots_[at].key == nullptr) {
          slots_[at] = std::move(s);
          break;
        }
      }
    }
  }

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::size_t count_ = 0;
};

}  // namespace famlift::detail
