#pragma once

#include <map>
#include <optional>
#include <vector>

#include "belyi/passport.hpp"
#include "belyi/triple.hpp"

namespace belyi {

// Base points are indexed 0, 1, 2 with 2 standing for the point at infinity.
inline const Permutation& triple_component(const PermutationTriple& t, int s) {
  switch (s) {
    case 0: return t.s0;
    case 1: return t.s1;
    case 2: return t.sinf;
    default: throw std::invalid_argument("base point must be 0, 1 or 2");
  }
}

// A triple with a distinguished cycle of one of its permutations.  Fixed
// points count as length-one cycles.
struct PointedTriple {
  PermutationTriple triple;
  int base = 0;            // 0, 1 or 2 (= infinity)
  std::vector<int> cycle;  // support in cycle order, starting at its minimum
};

struct PointedPassport {
  int base = 0;
  int length = 1;        // e, a part of lambda_s
  uint64_t aut_order = 1;  // a
  uint64_t size = 0;

  bool operator<(const PointedPassport& o) const {
    if (base != o.base) return base < o.base;
    if (length != o.length) return length < o.length;
    return aut_order < o.aut_order;
  }
  bool operator==(const PointedPassport& o) const {
    return base == o.base && length == o.length && aut_order == o.aut_order && size == o.size;
  }
};

namespace detail {
inline uint32_t cycle_mask(const std::vector<int>& cycle) {
  uint32_t m = 0;
  for (int x : cycle) m |= 1u << x;
  return m;
}

inline bool is_cycle_of(const Permutation& p, const std::vector<int>& cycle) {
  if (cycle.empty()) return false;
  uint32_t m = cycle_mask(cycle);
  int x = cycle[0];
  // the support must be a single orbit of p
  std::size_t steps = 0;
  int j = x;
  do {
    if (!(m & (1u << j))) return false;
    j = p(j);
    ++steps;
  } while (j != x);
  return steps == cycle.size();
}
}  // namespace detail

// Subgroup of Aut(sigma) whose conjugation fixes the distinguished cycle.
// Preserving the support set suffices: the cyclic order is induced by
// sigma_s, which automorphisms commute with.
inline PermGroup pointed_aut(const PermutationTriple& t, int base, const std::vector<int>& cycle) {
  const Permutation& sig = triple_component(t, base);
  if (!detail::is_cycle_of(sig, cycle))
    throw std::invalid_argument("pointed_aut: not a cycle of the designated permutation");
  PermGroup aut = triple_automorphisms(t);
  uint32_t m = detail::cycle_mask(cycle);
  std::vector<Permutation> elems;
  for (const Permutation& z : aut.elements) {
    uint32_t im = 0;
    for (int x : cycle) im |= 1u << z(x);
    if (im == m) elems.push_back(z);
  }
  return group_from_elements(std::move(elems), t.degree());
}

namespace detail {
// orbits of Aut(sigma) on the cycles of sigma_s, with the pointed
// automorphism order of each orbit
struct CycleOrbit {
  int base;
  int length;
  uint64_t aut_order;
};

inline std::vector<CycleOrbit> cycle_orbits(const PermutationTriple& t, const PermGroup& aut) {
  std::vector<CycleOrbit> out;
  for (int s = 0; s < 3; ++s) {
    const Permutation& sig = triple_component(t, s);
    auto cycs = sig.cycles();
    std::vector<uint32_t> masks;
    masks.reserve(cycs.size());
    for (const auto& c : cycs) masks.push_back(cycle_mask(c));
    std::vector<char> used(cycs.size(), 0);
    for (std::size_t i = 0; i < cycs.size(); ++i) {
      if (used[i]) continue;
      // orbit of the support mask under aut
      std::vector<uint32_t> orbit{masks[i]};
      used[i] = 1;
      for (std::size_t head = 0; head < orbit.size(); ++head) {
        for (const Permutation& z : aut.generators) {
          uint32_t im = 0;
          for (uint32_t x = 0; x < t.degree(); ++x)
            if (orbit[head] & (1u << x)) im |= 1u << z(static_cast<int>(x));
          if (std::find(orbit.begin(), orbit.end(), im) == orbit.end()) orbit.push_back(im);
        }
      }
      for (std::size_t j = i + 1; j < cycs.size(); ++j)
        if (!used[j] && std::find(orbit.begin(), orbit.end(), masks[j]) != orbit.end()) used[j] = 1;
      out.push_back({s, static_cast<int>(cycs[i].size()), aut.order() / orbit.size()});
    }
  }
  return out;
}
}  // namespace detail

// Pointed passports of a passport: for each (s, e, a), the number of orbits
// of Aut(sigma) on e-cycles of sigma_s with pointed automorphism order a,
// summed over the triple classes.  Empty combinations are absent.
inline std::vector<PointedPassport> pointed_classes(const Passport& p) {
  std::map<std::tuple<int, int, uint64_t>, uint64_t> counts;
  for (const auto& t : p.triples) {
    PermGroup aut = triple_automorphisms(t);
    for (const auto& orb : detail::cycle_orbits(t, aut))
      counts[{orb.base, orb.length, orb.aut_order}] += 1;
  }
  std::vector<PointedPassport> out;
  for (const auto& [key, size] : counts) {
    PointedPassport pp;
    pp.base = std::get<0>(key);
    pp.length = std::get<1>(key);
    pp.aut_order = std::get<2>(key);
    pp.size = size;
    out.push_back(pp);
  }
  return out;
}

// Upper bound on the degree of a field of definition of any pointed map in
// the pointed passport.
inline uint64_t moduli_degree_bound(const PointedPassport& pp) {
  if (pp.size == 0) throw std::invalid_argument("moduli_degree_bound: empty pointed passport");
  return pp.size;
}

struct DescentReport {
  bool descends = false;
  std::optional<PointedPassport> witness;
};

// Size criterion: some pointed refinement has size equal to the passport
// size, with every triple class contributing a cycle of that kind.
inline DescentReport descends_by_size(const Passport& p) {
  std::map<std::tuple<int, int, uint64_t>, uint64_t> counts;
  std::map<std::tuple<int, int, uint64_t>, uint64_t> contributing_triples;
  for (const auto& t : p.triples) {
    PermGroup aut = triple_automorphisms(t);
    std::map<std::tuple<int, int, uint64_t>, bool> seen_here;
    for (const auto& orb : detail::cycle_orbits(t, aut)) {
      std::tuple<int, int, uint64_t> key{orb.base, orb.length, orb.aut_order};
      counts[key] += 1;
      if (!seen_here[key]) {
        seen_here[key] = true;
        contributing_triples[key] += 1;
      }
    }
  }
  DescentReport rep;
  for (const auto& [key, size] : counts) {
    if (size == p.size() && contributing_triples[key] == p.size()) {
      rep.descends = true;
      PointedPassport pp;
      pp.base = std::get<0>(key);
      pp.length = std::get<1>(key);
      pp.aut_order = std::get<2>(key);
      pp.size = size;
      rep.witness = pp;
      break;
    }
  }
  return rep;
}

}  // namespace belyi
