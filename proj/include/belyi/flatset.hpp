#pragma once

#include <cstdint>
#include <vector>

#include "belyi/perm.hpp"

namespace belyi {

// Open-addressing hash set of nonzero 64-bit keys (linear probing, load <= 1/2).
// Packed permutation words are never 0 because identity slots are nonzero,
// so 0 can serve as the empty marker.
class FlatSet64 {
 public:
  explicit FlatSet64(std::size_t expected = 16) { rehash(capacity_for(expected)); }

  bool insert(uint64_t key) {
    if (2 * (size_ + 1) > table_.size()) rehash(table_.size() * 2);
    std::size_t mask = table_.size() - 1;
    std::size_t i = static_cast<std::size_t>(detail::splitmix64(key)) & mask;
    while (table_[i] != 0) {
      if (table_[i] == key) return false;
      i = (i + 1) & mask;
    }
    table_[i] = key;
    ++size_;
    return true;
  }

  bool contains(uint64_t key) const {
    std::size_t mask = table_.size() - 1;
    std::size_t i = static_cast<std::size_t>(detail::splitmix64(key)) & mask;
    while (table_[i] != 0) {
      if (table_[i] == key) return true;
      i = (i + 1) & mask;
    }
    return false;
  }

  std::size_t size() const { return size_; }

  void clear() {
    std::fill(table_.begin(), table_.end(), 0);
    size_ = 0;
  }

 private:
  static std::size_t capacity_for(std::size_t expected) {
    std::size_t cap = 32;
    while (cap < 2 * expected) cap *= 2;
    return cap;
  }

  void rehash(std::size_t new_cap) {
    std::vector<uint64_t> old;
    old.swap(table_);
    table_.assign(new_cap, 0);
    std::size_t mask = new_cap - 1;
    for (uint64_t key : old) {
      if (key == 0) continue;
      std::size_t i = static_cast<std::size_t>(detail::splitmix64(key)) & mask;
      while (table_[i] != 0) i = (i + 1) & mask;
      table_[i] = key;
    }
  }

  std::vector<uint64_t> table_;
  std::size_t size_ = 0;
};

}  // namespace belyi
