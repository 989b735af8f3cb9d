#pragma once

#include <map>

#include "belyi/numbers.hpp"
#include "belyi/records.hpp"

namespace belyi {

struct StatsTable {
  std::map<uint32_t, std::map<int, std::size_t>> counts;  // degree -> genus -> passports
  std::map<uint32_t, uint64_t> max_size;

  std::size_t degree_total(uint32_t d) const {
    std::size_t n = 0;
    auto it = counts.find(d);
    if (it != counts.end())
      for (const auto& [g, c] : it->second) n += c;
    return n;
  }
  std::size_t grand_total() const {
    std::size_t n = 0;
    for (const auto& [d, row] : counts) n += degree_total(d);
    return n;
  }
};

inline StatsTable counts_table(const std::vector<PassportRecord>& records) {
  StatsTable t;
  for (const auto& r : records) {
    t.counts[r.degree][r.genus] += 1;
    auto& m = t.max_size[r.degree];
    m = std::max(m, r.size);
  }
  return t;
}

inline std::map<uint32_t, uint64_t> max_size_table(const std::vector<PassportRecord>& records) {
  return counts_table(records).max_size;
}

// w(P): 1 for singleton passports, else ((l-1)^-2) sum (l_i - 1)^2 over the
// Galois orbit sizes.
inline Rat passport_weight(uint64_t size, const std::vector<int>& orbit_parts) {
  if (size == 0) throw std::invalid_argument("passport_weight: empty passport");
  int sum = 0;
  for (int p : orbit_parts) {
    if (p <= 0) throw std::invalid_argument("passport_weight: orbit parts must be positive");
    sum += p;
  }
  if (static_cast<uint64_t>(sum) != size)
    throw std::invalid_argument("passport_weight: orbit parts do not sum to the passport size");
  if (size == 1) return Rat(1);
  Rat num(0);
  for (int p : orbit_parts) num += Rat(p - 1) * Rat(p - 1);
  Rat den = Rat(static_cast<long>(size) - 1) * Rat(static_cast<long>(size) - 1);
  return num / den;
}

// beta(d) over all passports of degree <= d; passports of size >= 2 without
// orbit data contribute the full interval [0, 1].
struct BetaValue {
  Rat lo, hi;
  bool exact() const { return lo == hi; }
};

inline BetaValue beta(const std::vector<PassportRecord>& records, const std::vector<OrbitRecord>& orbits,
                      uint32_t max_degree) {
  std::map<std::string, const OrbitRecord*> by_key;
  for (const auto& o : orbits) by_key[o.key] = &o;
  Rat lo(0), hi(0);
  long n = 0;
  for (const auto& r : records) {
    if (r.degree > max_degree) continue;
    ++n;
    if (r.size == 1) {
      lo += 1;
      hi += 1;
      continue;
    }
    auto it = by_key.find(r.key);
    if (it == by_key.end()) {
      hi += 1;  // unresolved: w somewhere in [0, 1]
      continue;
    }
    Rat w = passport_weight(r.size, it->second->orbit);
    lo += w;
    hi += w;
  }
  if (n == 0) throw std::invalid_argument("beta: no passports at or below the requested degree");
  return {lo / n, hi / n};
}

}  // namespace belyi
