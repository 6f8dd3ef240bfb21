#pragma once

#include <cassert>
#include <cstdint>
#include <type_traits>
#include <vector>

namespace bestswap {

// Open-addressing hash map with 64-bit keys and trivially copyable values.
// Linear probing with backward-shift deletion; the all-ones key is reserved
// as the empty marker. Built for the envelope hot path where node-based maps
// pay an allocation per line.
template <typename V>
class FlatMap64 {
  static_assert(std::is_trivially_copyable_v<V>);

 public:
  static constexpr std::uint64_t kEmptyKey = ~0ull;

  FlatMap64() = default;

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  void clear() {
    slots_.clear();
    size_ = 0;
    mask_ = 0;
  }

  V* find(std::uint64_t key) {
    if (slots_.empty()) return nullptr;
    for (std::size_t i = Ideal(key);; i = (i + 1) & mask_) {
      if (slots_[i].key == key) return &slots_[i].value;
      if (slots_[i].key == kEmptyKey) return nullptr;
    }
  }
  const V* find(std::uint64_t key) const { return const_cast<FlatMap64*>(this)->find(key); }

  // Returns (slot value, inserted?); does not overwrite an existing entry.
  std::pair<V*, bool> try_emplace(std::uint64_t key, const V& value) {
    assert(key != kEmptyKey);
    if (slots_.empty() || (size_ + 1) * 10 >= slots_.size() * 7) Grow();
    for (std::size_t i = Ideal(key);; i = (i + 1) & mask_) {
      if (slots_[i].key == key) return {&slots_[i].value, false};
      if (slots_[i].key == kEmptyKey) {
        slots_[i] = {key, value};
        ++size_;
        return {&slots_[i].value, true};
      }
    }
  }

  bool erase(std::uint64_t key) {
    if (slots_.empty()) return false;
    for (std::size_t i = Ideal(key);; i = (i + 1) & mask_) {
      if (slots_[i].key == kEmptyKey) return false;
      if (slots_[i].key != key) continue;
      std::size_t hole = i;
      for (std::size_t cur = (i + 1) & mask_; slots_[cur].key != kEmptyKey;
           cur = (cur + 1) & mask_) {
        const std::size_t ideal = Ideal(slots_[cur].key);
        if (((hole - ideal) & mask_) <= ((cur - ideal) & mask_)) {
          slots_[hole] = slots_[cur];
          hole = cur;
        }
      }
      slots_[hole].key = kEmptyKey;
      --size_;
      return true;
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& slot : slots_) {
      if (slot.key != kEmptyKey) f(slot.key, slot.value);
    }
  }

 private:
  struct Slot {
    std::uint64_t key = kEmptyKey;
    V value;
  };

  static std::uint64_t Mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ull;
    x ^= x >> 33;
    return x;
  }

  std::size_t Ideal(std::uint64_t key) const { return Mix(key) & mask_; }

  void Grow() {
    std::vector<Slot> old = std::move(slots_);
    const std::size_t next = old.empty() ? 8 : old.size() * 2;
    slots_.assign(next, Slot{});
    mask_ = next - 1;
    size_ = 0;
    for (const auto& slot : old) {
      if (slot.key != kEmptyKey) try_emplace(slot.key, slot.value);
    }
  }

  std::vector<Slot> slots_;
  std::size_t size_ = 0;
  std::size_t mask_ = 0;
};

}  // namespace bestswap
