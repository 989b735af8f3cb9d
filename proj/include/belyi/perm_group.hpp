#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "belyi/flatset.hpp"
#include "belyi/perm.hpp"

namespace belyi {

// Raised when a requested computation would exceed a configured size bound.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline uint64_t factorial64(uint32_t n) {
  uint64_t f = 1;
  for (uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Default materialization bound: anything up to S_9 is fair game, beyond
// that the caller must opt in explicitly.
inline uint64_t default_closure_cap(uint32_t degree) {
  return degree <= 9 ? factorial64(degree) : 1000000;
}

namespace detail {

inline std::vector<Permutation> closure_of(const std::vector<Permutation>& gens, uint32_t degree,
                                           uint64_t cap) {
  std::vector<Permutation> elems;
  FlatSet64 seen(1024);
  Permutation id = Permutation::identity(degree);
  elems.push_back(id);
  seen.insert(id.raw());
  for (std::size_t head = 0; head < elems.size(); ++head) {
    Permutation x = elems[head];
    for (const Permutation& g : gens) {
      Permutation y = x * g;
      if (seen.insert(y.raw())) {
        if (elems.size() + 1 > cap)
          throw CapacityError("group closure exceeds capacity bound " + std::to_string(cap));
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// Greedy small generating set for a materialized group (elements sorted).
inline std::vector<Permutation> reduce_generators(const std::vector<Permutation>& elements,
                                                  uint32_t degree) {
  std::vector<Permutation> gens;
  if (elements.size() <= 1) return gens;
  FlatSet64 have(2 * elements.size());
  std::vector<Permutation> closed;
  closed.push_back(Permutation::identity(degree));
  have.insert(closed[0].raw());
  for (const Permutation& x : elements) {
    if (have.contains(x.raw())) continue;
    gens.push_back(x);
    // re-close with the enlarged generating set
    for (std::size_t head = 0; head < closed.size(); ++head) {
      for (const Permutation& g : gens) {
        Permutation y = closed[head] * g;
        if (have.insert(y.raw())) closed.push_back(y);
      }
    }
    if (closed.size() == elements.size()) break;
  }
  return gens;
}

}  // namespace detail

// A finite subgroup of S_d with its element set materialized.
struct PermGroup {
  uint32_t degree = 1;
  std::vector<Permutation> generators;
  std::vector<Permutation> elements;  // sorted by image array

  uint64_t order() const { return elements.size(); }

  bool contains(const Permutation& p) const {
    return std::binary_search(elements.begin(), elements.end(), p);
  }

  bool is_trivial() const { return elements.size() == 1; }
};

inline PermGroup closure(const std::vector<Permutation>& generators, uint64_t cap = 0) {
  if (generators.empty()) throw std::invalid_argument("closure needs at least one generator");
  uint32_t d = generators[0].degree();
  for (const auto& g : generators)
    if (g.degree() != d) throw std::invalid_argument("closure: mixed degrees");
  if (cap == 0) cap = default_closure_cap(d);
  PermGroup g;
  g.degree = d;
  g.generators = generators;
  g.elements = detail::closure_of(generators, d, cap);
  return g;
}

inline PermGroup group_from_elements(std::vector<Permutation> elements, uint32_t degree) {
  std::sort(elements.begin(), elements.end());
  PermGroup g;
  g.degree = degree;
  g.generators = detail::reduce_generators(elements, degree);
  if (g.generators.empty()) g.generators.push_back(Permutation::identity(degree));
  g.elements = std::move(elements);
  return g;
}

inline PermGroup trivial_group(uint32_t degree) {
  return group_from_elements({Permutation::identity(degree)}, degree);
}

inline PermGroup symmetric_group(uint32_t degree, uint64_t cap = 0) {
  if (cap == 0) cap = default_closure_cap(degree);
  if (factorial64(degree) > cap)
    throw CapacityError("symmetric group of degree " + std::to_string(degree) + " exceeds capacity");
  std::vector<int> im(degree);
  for (uint32_t i = 0; i < degree; ++i) im[i] = static_cast<int>(i);
  std::vector<Permutation> elems;
  elems.reserve(factorial64(degree));
  do {
    elems.push_back(Permutation::from_images0(im));
  } while (std::next_permutation(im.begin(), im.end()));
  return group_from_elements(std::move(elems), degree);
}

inline bool is_transitive(const std::vector<Permutation>& gens, uint32_t degree) {
  if (degree == 1) return true;
  uint32_t seen = 1;  // bitmask of reached points
  std::vector<int> stack = {0};
  std::size_t count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      int y = g(x);
      if (!(seen & (1u << y))) {
        seen |= 1u << y;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == degree;
}

inline bool is_transitive(const PermGroup& g) { return is_transitive(g.generators, g.degree); }

// Centralizer of g inside a materialized ambient group, by direct scan.
inline PermGroup centralizer(const PermGroup& ambient, const Permutation& g) {
  if (!ambient.contains(g)) throw std::invalid_argument("centralizer: element not in ambient group");
  std::vector<Permutation> elems;
  for (const Permutation& h : ambient.elements)
    if (h.commutes_with(g)) elems.push_back(h);
  return group_from_elements(std::move(elems), ambient.degree);
}

// Normalizer of G in the full symmetric group, by scanning S_d.
inline PermGroup normalizer_in_sym(const PermGroup& g, uint32_t max_degree = 9) {
  if (g.degree > max_degree)
    throw CapacityError("normalizer_in_sym: degree " + std::to_string(g.degree) + " beyond bound " +
                        std::to_string(max_degree));
  std::vector<int> im(g.degree);
  for (uint32_t i = 0; i < g.degree; ++i) im[i] = static_cast<int>(i);
  std::vector<Permutation> elems;
  do {
    Permutation tau = Permutation::from_images0(im);
    bool ok = true;
    for (const Permutation& gen : g.generators)
      if (!g.contains(gen.conj(tau))) {
        ok = false;
        break;
      }
    if (ok) elems.push_back(tau);
  } while (std::next_permutation(im.begin(), im.end()));
  return group_from_elements(std::move(elems), g.degree);
}

// ---- cycle-type combinatorics in the full symmetric group ----

inline uint64_t sym_class_size(uint32_t degree, const Partition& type) {
  if (type.total() != static_cast<int>(degree))
    throw std::invalid_argument("cycle type does not sum to degree");
  uint64_t denom = 1;
  std::size_t i = 0;
  while (i < type.parts.size()) {
    std::size_t j = i;
    uint64_t mult = 0;
    while (j < type.parts.size() && type.parts[j] == type.parts[i]) {
      denom *= static_cast<uint64_t>(type.parts[i]);
      ++j;
      ++mult;
    }
    denom *= factorial64(static_cast<uint32_t>(mult));
    i = j;
  }
  return factorial64(degree) / denom;
}

inline uint64_t sym_centralizer_order(const Partition& type) {
  uint64_t z = 1;
  std::size_t i = 0;
  while (i < type.parts.size()) {
    std::size_t j = i;
    uint64_t mult = 0;
    while (j < type.parts.size() && type.parts[j] == type.parts[i]) {
      z *= static_cast<uint64_t>(type.parts[i]);
      ++j;
      ++mult;
    }
    z *= factorial64(static_cast<uint32_t>(mult));
    i = j;
  }
  return z;
}

inline bool partition_is_even(const Partition& type) {
  int idx = 0;
  for (int l : type.parts) idx += l - 1;
  return idx % 2 == 0;
}

// Lexicographically least permutation of the given cycle type: cycles in
// increasing length on consecutive points.
inline Permutation sym_class_rep(uint32_t degree, const Partition& type) {
  if (type.total() != static_cast<int>(degree))
    throw std::invalid_argument("cycle type does not sum to degree");
  std::vector<int> lens(type.parts.rbegin(), type.parts.rend());
  std::vector<int> im(degree);
  int base = 0;
  for (int l : lens) {
    for (int k = 0; k < l; ++k) im[base + k] = base + (k + 1) % l;
    base += l;
  }
  return Permutation::from_images0(im);
}

namespace detail {

inline void gen_class_elements(uint32_t degree, std::vector<int>& remaining_lengths, uint32_t placed,
                               std::vector<int>& im, std::vector<Permutation>& out) {
  if (placed == (1u << degree) - 1) {
    out.push_back(Permutation::from_images0(im));
    return;
  }
  int p = 0;
  while (placed & (1u << p)) ++p;
  std::vector<int> free_pts;
  for (uint32_t q = p + 1; q < degree; ++q)
    if (!(placed & (1u << q))) free_pts.push_back(static_cast<int>(q));

  int prev_len = -1;
  for (std::size_t li = 0; li < remaining_lengths.size(); ++li) {
    int l = remaining_lengths[li];
    if (l == prev_len) continue;  // equal lengths once; p always anchors the next cycle
    prev_len = l;
    remaining_lengths.erase(remaining_lengths.begin() + li);

    // choose the ordered tail of the cycle (p, t1, ..., t_{l-1})
    std::vector<int> tail(l - 1);
    std::vector<bool> used(free_pts.size(), false);
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == l - 1) {
        uint32_t newly = 1u << p;
        int prev = p;
        for (int t : tail) {
          im[prev] = t;
          newly |= 1u << t;
          prev = t;
        }
        im[prev] = p;
        uint32_t placed2 = placed | newly;
        gen_class_elements(degree, remaining_lengths, placed2, im, out);
        return;
      }
      for (std::size_t k = 0; k < free_pts.size(); ++k) {
        if (used[k]) continue;
        used[k] = true;
        tail[pos] = free_pts[k];
        self(self, pos + 1);
        used[k] = false;
      }
    };
    rec(rec, 0);

    remaining_lengths.insert(remaining_lengths.begin() + li, l);
  }
}

}  // namespace detail

// All permutations of the given cycle type, sorted by image array.
inline std::vector<Permutation> sym_class_elements(uint32_t degree, const Partition& type) {
  std::vector<int> lens(type.parts.begin(), type.parts.end());
  std::vector<int> im(degree, 0);
  std::vector<Permutation> out;
  out.reserve(sym_class_size(degree, type));
  detail::gen_class_elements(degree, lens, 0, im, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Generators of the centralizer of g in the full symmetric group: each cycle
// of g, plus a swap between consecutive cycles of equal length.
inline std::vector<Permutation> sym_centralizer_gens(const Permutation& g) {
  uint32_t d = g.degree();
  auto cycs = g.cycles();
  std::stable_sort(cycs.begin(), cycs.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<Permutation> gens;
  std::vector<int> im(d);
  auto reset = [&] {
    for (uint32_t i = 0; i < d; ++i) im[i] = static_cast<int>(i);
  };
  for (std::size_t k = 0; k < cycs.size(); ++k) {
    const auto& c = cycs[k];
    if (c.size() >= 2) {
      reset();
      for (std::size_t i = 0; i < c.size(); ++i) im[c[i]] = c[(i + 1) % c.size()];
      gens.push_back(Permutation::from_images0(im));
    }
    if (k + 1 < cycs.size() && cycs[k + 1].size() == c.size()) {
      const auto& c2 = cycs[k + 1];
      reset();
      for (std::size_t i = 0; i < c.size(); ++i) {
        im[c[i]] = c2[i];
        im[c2[i]] = c[i];
      }
      gens.push_back(Permutation::from_images0(im));
    }
  }
  if (gens.empty()) gens.push_back(Permutation::identity(d));
  return gens;
}

// Conjugacy classes of G up to conjugation by N (which must normalize G);
// representatives are the lexicographically least member of each orbit.
inline std::vector<Permutation> classes_mod(const PermGroup& g, const PermGroup& n) {
  std::vector<Permutation> reps;
  FlatSet64 seen(2 * g.elements.size());
  std::vector<Permutation> orbit;
  for (const Permutation& x : g.elements) {
    if (seen.contains(x.raw())) continue;
    reps.push_back(x);  // sorted scan: first touch of an orbit is its minimum
    orbit.clear();
    orbit.push_back(x);
    seen.insert(x.raw());
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const Permutation& t : n.generators) {
        Permutation y = orbit[head].conj(t);
        if (seen.insert(y.raw())) orbit.push_back(y);
      }
    }
  }
  return reps;
}

// One pair (tau0, g) per orbit of Z0 acting by conjugation on classC1.
// Z0 is the centralizer of tau0 in the ambient group; only its generators
// are used, so Z0 need not be materialized beyond them.
inline std::vector<std::pair<Permutation, Permutation>> coset_pair_reps(
    const Permutation& tau0, const std::vector<Permutation>& classC1, const PermGroup& z0) {
  std::vector<Permutation> sorted(classC1);
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<Permutation, Permutation>> out;
  FlatSet64 seen(2 * sorted.size());
  std::vector<Permutation> orbit;
  for (const Permutation& x : sorted) {
    if (seen.contains(x.raw())) continue;
    out.emplace_back(tau0, x);
    orbit.clear();
    orbit.push_back(x);
    seen.insert(x.raw());
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const Permutation& t : z0.generators) {
        Permutation y = orbit[head].conj(t);
        if (seen.insert(y.raw())) orbit.push_back(y);
      }
    }
  }
  return out;
}

// ---- block systems / primitivity ----

namespace detail {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};
}  // namespace detail

// Primitivity test for a transitive group given by generators: for every
// beta != 0 the minimal block system fusing {0, beta} must be the full set.
inline bool is_primitive(const std::vector<Permutation>& gens, uint32_t degree) {
  if (degree <= 2) return true;
  for (uint32_t beta = 1; beta < degree; ++beta) {
    detail::UnionFind uf(static_cast<int>(degree));
    std::vector<std::pair<int, int>> stack;
    uf.unite(0, static_cast<int>(beta));
    stack.emplace_back(0, static_cast<int>(beta));
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      for (const Permutation& g : gens) {
        int u = uf.find(g(a));
        int v = uf.find(g(b));
        if (u != v) {
          uf.unite(u, v);
          stack.emplace_back(u, v);
        }
      }
    }
    int blocks = 0;
    for (uint32_t i = 0; i < degree; ++i)
      if (uf.find(static_cast<int>(i)) == static_cast<int>(i)) ++blocks;
    if (blocks > 1) return false;
  }
  return true;
}

// ---- group identification for enumeration ----

// Multiset of (cycle type, element count) over a group; identical for
// S_d-conjugate groups.
struct GroupCensus {
  std::vector<std::pair<Partition, uint64_t>> rows;  // sorted by cycle type
  bool operator==(const GroupCensus& o) const { return rows == o.rows; }
};

inline GroupCensus census_from_elements(const std::vector<Permutation>& elements) {
  std::vector<Partition> types;
  types.reserve(elements.size());
  for (const auto& e : elements) types.push_back(e.cycle_type());
  std::sort(types.begin(), types.end());
  GroupCensus c;
  std::size_t i = 0;
  while (i < types.size()) {
    std::size_t j = i;
    while (j < types.size() && types[j] == types[i]) ++j;
    c.rows.emplace_back(types[i], static_cast<uint64_t>(j - i));
    i = j;
  }
  return c;
}

namespace detail {
inline void gen_partitions(int n, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

// All partitions of n, parts descending, generated in reverse lexicographic
// order ([n] first, [1^n] last).
inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  detail::gen_partitions(n, n, cur, out);
  return out;
}

inline GroupCensus census_symmetric(uint32_t degree) {
  GroupCensus c;
  for (const Partition& p : partitions_of(static_cast<int>(degree)))
    c.rows.emplace_back(p, sym_class_size(degree, p));
  std::sort(c.rows.begin(), c.rows.end());
  return c;
}

inline GroupCensus census_alternating(uint32_t degree) {
  GroupCensus c;
  for (const Partition& p : partitions_of(static_cast<int>(degree)))
    if (partition_is_even(p)) c.rows.emplace_back(p, sym_class_size(degree, p));
  std::sort(c.rows.begin(), c.rows.end());
  return c;
}

inline uint64_t census_hash(const GroupCensus& c) {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
  };
  for (const auto& [type, count] : c.rows) {
    for (int part : type.parts) mix(static_cast<uint64_t>(part));
    mix(0xff);
    mix(count);
  }
  return h;
}

// The subgroup generated by a permutation pair, identified without full
// materialization when it is the alternating or symmetric group.  A primitive
// group containing a p-cycle (p prime, p <= d-3) contains A_d, so during the
// closure walk such a cycle certifies an alternating/symmetric answer.
struct MonodromyGroup {
  enum class Kind { symmetric, alternating, small };
  uint32_t degree = 1;
  uint64_t order = 1;
  Kind kind = Kind::small;
  bool transitive = false;
  bool even_only = false;
  std::shared_ptr<const PermGroup> group;  // set iff kind == small

  bool full_symmetric() const { return kind == Kind::symmetric; }
};

namespace detail {

inline bool is_jordan_cycle(const Permutation& p, uint32_t degree) {
  // cycle type (q, 1^{d-q}) with q prime and q <= d-3
  uint32_t moved = 0, nmoved = 0;
  int first = -1;
  for (uint32_t i = 0; i < degree; ++i)
    if (static_cast<uint32_t>(p(static_cast<int>(i))) != i) {
      moved |= 1u << i;
      ++nmoved;
      if (first < 0) first = static_cast<int>(i);
    }
  if (nmoved == 0 || nmoved + 3 > degree) return false;
  static constexpr uint32_t primes = (1u << 2) | (1u << 3) | (1u << 5) | (1u << 7) | (1u << 11) | (1u << 13);
  if (!(primes & (1u << nmoved))) return false;
  // single cycle on the moved points
  uint32_t steps = 1;
  int j = p(first);
  while (j != first) {
    j = p(j);
    ++steps;
  }
  return steps == nmoved;
}

}  // namespace detail

inline MonodromyGroup identify_generated(const std::vector<Permutation>& gens_in, uint64_t cap = 0) {
  if (gens_in.empty()) throw std::invalid_argument("identify_generated: empty generator list");
  uint32_t d = gens_in[0].degree();
  if (cap == 0) cap = std::max<uint64_t>(default_closure_cap(d), 2000000);
  std::vector<Permutation> gens;
  for (const auto& g : gens_in)
    if (!g.is_identity()) gens.push_back(g);

  MonodromyGroup m;
  m.degree = d;
  m.even_only = true;
  for (const auto& g : gens)
    if (!g.is_even()) m.even_only = false;
  if (gens.empty()) {
    m.kind = MonodromyGroup::Kind::small;
    m.order = 1;
    m.transitive = d == 1;
    m.group = std::make_shared<PermGroup>(trivial_group(d));
    if (d == 1) m.kind = MonodromyGroup::Kind::symmetric;
    return m;
  }
  m.transitive = is_transitive(gens, d);

  bool try_certificate = m.transitive && d >= 7 && is_primitive(gens, d);

  std::vector<Permutation> elems;
  FlatSet64 seen(1024);
  Permutation id = Permutation::identity(d);
  elems.push_back(id);
  seen.insert(id.raw());
  if (try_certificate)
    for (const auto& g : gens)
      if (detail::is_jordan_cycle(g, d)) {
        m.kind = m.even_only ? MonodromyGroup::Kind::alternating : MonodromyGroup::Kind::symmetric;
        m.order = m.even_only ? factorial64(d) / 2 : factorial64(d);
        return m;
      }
  for (std::size_t head = 0; head < elems.size(); ++head) {
    Permutation x = elems[head];
    for (const Permutation& g : gens) {
      Permutation y = x * g;
      if (seen.insert(y.raw())) {
        if (try_certificate && detail::is_jordan_cycle(y, d)) {
          m.kind = m.even_only ? MonodromyGroup::Kind::alternating : MonodromyGroup::Kind::symmetric;
          m.order = m.even_only ? factorial64(d) / 2 : factorial64(d);
          return m;
        }
        if (elems.size() + 1 > cap)
          throw CapacityError("identify_generated: closure exceeds capacity");
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  m.order = elems.size();
  auto grp = std::make_shared<PermGroup>();
  grp->degree = d;
  grp->generators = gens;
  grp->elements = std::move(elems);
  m.group = grp;
  if (m.order == factorial64(d))
    m.kind = MonodromyGroup::Kind::symmetric;
  else if (d >= 2 && m.order == factorial64(d) / 2 && m.even_only)
    m.kind = MonodromyGroup::Kind::alternating;
  else
    m.kind = MonodromyGroup::Kind::small;
  return m;
}

inline GroupCensus census_of(const MonodromyGroup& m) {
  switch (m.kind) {
    case MonodromyGroup::Kind::symmetric: return census_symmetric(m.degree);
    case MonodromyGroup::Kind::alternating: return census_alternating(m.degree);
    default: return census_from_elements(m.group->elements);
  }
}

// ---- explicit conjugacy of materialized subgroups ----

// Searches for tau with tau^{-1} G tau = H.  Conjugators of a fixed g to a
// fixed h form the coset Z(g) mu, so the search walks candidates h of g's
// cycle type in H and the centralizer coset for each.
inline std::optional<Permutation> subgroup_conjugator(const PermGroup& g, const PermGroup& h,
                                                      uint64_t cap = 2000000) {
  if (g.degree != h.degree) throw std::invalid_argument("subgroup_conjugator: degree mismatch");
  if (g.order() != h.order()) return std::nullopt;
  uint32_t d = g.degree;
  if (census_from_elements(g.elements).rows != census_from_elements(h.elements).rows)
    return std::nullopt;
  if (g.elements == h.elements) return Permutation::identity(d);

  // anchor on a non-identity generator with the smallest S_d-centralizer
  Permutation anchor = Permutation::identity(d);
  uint64_t best = 0;
  for (const auto& gen : g.generators) {
    if (gen.is_identity()) continue;
    uint64_t z = sym_centralizer_order(gen.cycle_type());
    if (anchor.is_identity() || z < best) {
      anchor = gen;
      best = z;
    }
  }
  if (anchor.is_identity()) {
    // trivial group; equal orders means both are trivial
    return Permutation::identity(d);
  }
  if (best > cap) throw CapacityError("subgroup_conjugator: centralizer too large to walk");

  PermGroup zg = closure(sym_centralizer_gens(anchor), best + 1);
  Partition at = anchor.cycle_type();

  auto align = [&](const Permutation& from, const Permutation& to) {
    // conjugator sending `from` to `to`, cycles matched by (length, min point)
    auto ca = from.cycles();
    auto cb = to.cycles();
    auto key = [](const std::vector<int>& c) { return std::make_pair(c.size(), c[0]); };
    std::sort(ca.begin(), ca.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
    std::sort(cb.begin(), cb.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
    std::vector<int> im(d);
    for (std::size_t k = 0; k < ca.size(); ++k)
      for (std::size_t i = 0; i < ca[k].size(); ++i) im[ca[k][i]] = cb[k][i];
    return Permutation::from_images0(im);
  };

  for (const Permutation& cand : h.elements) {
    if (cand.cycle_type() != at) continue;
    Permutation mu = align(anchor, cand);
    for (const Permutation& z : zg.elements) {
      Permutation tau = z * mu;
      bool ok = true;
      for (const auto& gen : g.generators)
        if (!h.contains(gen.conj(tau))) {
          ok = false;
          break;
        }
      if (ok) return tau;
    }
  }
  return std::nullopt;
}

inline bool monodromy_conjugate(const MonodromyGroup& a, const MonodromyGroup& b) {
  if (a.degree != b.degree || a.order != b.order || a.kind != b.kind) return false;
  if (a.kind != MonodromyGroup::Kind::small) return true;  // literally A_d or S_d
  return subgroup_conjugator(*a.group, *b.group).has_value();
}

}  // namespace belyi
