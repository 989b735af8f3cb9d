#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "belyi/perm.hpp"
#include "belyi/perm_group.hpp"

namespace belyi {

// (sigma0, sigma1, sigmaInf) with sigmaInf * sigma1 * sigma0 = 1, products
// applied left factor first (the convention under which the displayed
// examples multiply to the identity).
struct PermutationTriple {
  Permutation s0, s1, sinf;

  PermutationTriple() = default;
  PermutationTriple(Permutation a, Permutation b, Permutation c)
      : s0(std::move(a)), s1(std::move(b)), sinf(std::move(c)) {
    if (s0.degree() != s1.degree() || s0.degree() != sinf.degree())
      throw std::invalid_argument("triple: degree mismatch");
    if (!((sinf * s1) * s0).is_identity())
      throw std::invalid_argument("triple: product is not the identity");
  }

  static PermutationTriple from_pair(const Permutation& s0, const Permutation& s1) {
    return PermutationTriple(s0, s1, (s1 * s0).inverse());
  }

  uint32_t degree() const { return s0.degree(); }

  PermutationTriple conj(const Permutation& tau) const {
    PermutationTriple t;
    t.s0 = s0.conj(tau);
    t.s1 = s1.conj(tau);
    t.sinf = sinf.conj(tau);
    return t;
  }

  std::array<Partition, 3> lambda() const { return {s0.cycle_type(), s1.cycle_type(), sinf.cycle_type()}; }

  bool operator==(const PermutationTriple& o) const {
    return s0 == o.s0 && s1 == o.s1 && sinf == o.sinf;
  }
  bool operator<(const PermutationTriple& o) const {
    if (!(s0 == o.s0)) return s0 < o.s0;
    if (!(s1 == o.s1)) return s1 < o.s1;
    return sinf < o.sinf;
  }

  uint64_t hash() const {
    return detail::splitmix64(s0.hash() ^ detail::splitmix64(s1.hash() + 0x51ed270b623cbd5ULL));
  }

  bool transitive() const { return is_transitive({s0, s1}, degree()); }
};

// Riemann-Hurwitz genus of a transitive triple.
inline int triple_genus(const PermutationTriple& t) {
  int e = t.s0.index() + t.s1.index() + t.sinf.index();
  if (e % 2 != 0) throw std::domain_error("genus: odd total index (corrupt or intransitive input)");
  int g = 1 - static_cast<int>(t.degree()) + e / 2;
  if (g < 0) throw std::domain_error("genus: negative value (corrupt or intransitive input)");
  return g;
}

namespace detail {

// Relabels p by tracing its cycles in ascending length order; the resulting
// image array is the lexicographic minimum over all conjugates, and it does
// not depend on how ties between equal-length cycles are broken.
inline Permutation min_relabel_map(const Permutation& p) {
  uint32_t d = p.degree();
  auto cycs = p.cycles();
  std::stable_sort(cycs.begin(), cycs.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<int> new_of(d);
  int next = 0;
  for (const auto& c : cycs)
    for (int x : c) new_of[x] = next++;
  return Permutation::from_images0(new_of);
}

struct CanonicalSearch {
  const Permutation* s0;
  const Permutation* s1;
  uint32_t d;
  std::vector<std::vector<int>> cycles;      // cycles of s0, ascending length
  std::vector<int> block_start;              // label offset per block
  std::vector<int> old_of, new_of;           // partial bijection, -1 when unset
  std::vector<char> cycle_used;
  std::vector<int> best_s1;                  // best relabeled s1 image array
  std::vector<int> best_new_of;
  bool have_best = false;

  void run() {
    old_of.assign(d, -1);
    new_of.assign(d, -1);
    cycle_used.assign(cycles.size(), 0);
    descend(0);
  }

  // -1 current prefix smaller, 0 tie, +1 larger (prune)
  int compare_prefix() const {
    if (!have_best) return -1;
    for (uint32_t n = 0; n < d; ++n) {
      if (old_of[n] < 0) return 0;
      int img = (*s1)(old_of[n]);
      if (new_of[img] < 0) return 0;
      if (new_of[img] != best_s1[n]) return new_of[img] < best_s1[n] ? -1 : 1;
    }
    return 0;
  }

  void descend(std::size_t block) {
    if (compare_prefix() > 0) return;
    if (block == cycles.size()) {
      std::vector<int> rel(d);
      for (uint32_t n = 0; n < d; ++n) rel[n] = new_of[(*s1)(old_of[n])];
      if (!have_best || rel < best_s1) {
        best_s1 = rel;
        best_new_of = new_of;
        have_best = true;
      }
      return;
    }
    std::size_t len = cycles[block].size();
    int start = block_start[block];
    for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
      if (cycle_used[ci] || cycles[ci].size() != len) continue;
      cycle_used[ci] = 1;
      const auto& cyc = cycles[ci];
      for (std::size_t off = 0; off < len; ++off) {
        for (std::size_t k = 0; k < len; ++k) {
          int oldpt = cyc[(off + k) % len];
          old_of[start + static_cast<int>(k)] = oldpt;
          new_of[oldpt] = start + static_cast<int>(k);
        }
        descend(block + 1);
        for (std::size_t k = 0; k < len; ++k) {
          int oldpt = cyc[(off + k) % len];
          old_of[start + static_cast<int>(k)] = -1;
          new_of[oldpt] = -1;
        }
      }
      cycle_used[ci] = 0;
    }
  }
};

}  // namespace detail

// Lexicographically least representative of the simultaneous-conjugacy class,
// comparing sigma0 image arrays first, then sigma1.  Also returns a tau with
// t^tau equal to the canonical form.
inline std::pair<PermutationTriple, Permutation> canonical_triple_with_map(const PermutationTriple& t) {
  uint32_t d = t.degree();
  Permutation tau = Permutation::identity(d);
  if (t.s0.is_identity())
    tau = detail::min_relabel_map(t.s1);
  else if (t.s1.is_identity())
    tau = detail::min_relabel_map(t.s0);
  else {
    detail::CanonicalSearch cs;
    cs.s0 = &t.s0;
    cs.s1 = &t.s1;
    cs.d = d;
    cs.cycles = t.s0.cycles();
    std::stable_sort(cs.cycles.begin(), cs.cycles.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    cs.block_start.resize(cs.cycles.size());
    int acc = 0;
    for (std::size_t b = 0; b < cs.cycles.size(); ++b) {
      cs.block_start[b] = acc;
      acc += static_cast<int>(cs.cycles[b].size());
    }
    cs.run();
    tau = Permutation::from_images0(cs.best_new_of);
  }
  return {t.conj(tau), tau};
}

inline PermutationTriple canonical_triple(const PermutationTriple& t) {
  return canonical_triple_with_map(t).first;
}

// tau with a^tau = b if the triples are simultaneously conjugate.
inline std::optional<Permutation> simultaneous_conjugator(const PermutationTriple& a,
                                                          const PermutationTriple& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("simultaneous_conjugator: degree mismatch");
  if (a.s0.cycle_type() != b.s0.cycle_type() || a.s1.cycle_type() != b.s1.cycle_type() ||
      a.sinf.cycle_type() != b.sinf.cycle_type())
    return std::nullopt;
  auto [ca, ta] = canonical_triple_with_map(a);
  auto [cb, tb] = canonical_triple_with_map(b);
  if (!(ca == cb)) return std::nullopt;
  Permutation tau = ta * tb.inverse();
  if (!(a.conj(tau) == b)) throw std::logic_error("simultaneous_conjugator: verification failed");
  return tau;
}

// Aut(sigma) = centralizer of <sigma0, sigma1> in S_d.  For transitive triples
// the centralizer is semiregular, so each candidate image of point 0 extends
// along a spanning tree in at most one way.
inline PermGroup triple_automorphisms(const PermutationTriple& t, uint64_t cap = 0) {
  uint32_t d = t.degree();
  std::vector<Permutation> gens = {t.s0, t.s1};
  if (is_transitive(gens, d)) {
    // spanning tree: parent_edge[x] = (point, generator index) discovering x
    std::vector<int> order_found;
    std::vector<std::pair<int, int>> parent(d, {-1, -1});
    std::vector<char> seen(d, 0);
    seen[0] = 1;
    order_found.push_back(0);
    for (std::size_t head = 0; head < order_found.size(); ++head) {
      int x = order_found[head];
      for (int gi = 0; gi < 2; ++gi) {
        int y = gens[gi](x);
        if (!seen[y]) {
          seen[y] = 1;
          parent[y] = {x, gi};
          order_found.push_back(y);
        }
      }
    }
    std::vector<Permutation> elems;
    std::vector<int> z(d);
    for (uint32_t c = 0; c < d; ++c) {
      z.assign(d, -1);
      z[0] = static_cast<int>(c);
      for (std::size_t k = 1; k < order_found.size(); ++k) {
        int y = order_found[k];
        auto [px, gi] = parent[y];
        z[y] = gens[gi](z[px]);
      }
      uint32_t mask = 0;
      bool bij = true;
      for (uint32_t i = 0; i < d; ++i) {
        if (mask & (1u << z[i])) {
          bij = false;
          break;
        }
        mask |= 1u << z[i];
      }
      if (!bij) continue;
      Permutation zp = Permutation::from_images0(z);
      if (zp.commutes_with(t.s0) && zp.commutes_with(t.s1)) elems.push_back(zp);
    }
    return group_from_elements(std::move(elems), d);
  }
  // intransitive fallback: walk the centralizer of sigma0 and filter
  if (cap == 0) cap = default_closure_cap(d);
  if (sym_centralizer_order(t.s0.cycle_type()) > cap)
    throw CapacityError("triple_automorphisms: centralizer too large");
  PermGroup z0 = closure(sym_centralizer_gens(t.s0), cap);
  std::vector<Permutation> elems;
  for (const Permutation& z : z0.elements)
    if (z.commutes_with(t.s1)) elems.push_back(z);
  return group_from_elements(std::move(elems), d);
}

// The relabelings of {0, 1, oo} realized on triples; images cover all six
// role permutations, and candidates within one role differ only by
// simultaneous conjugation.
inline PermutationTriple s3_swap01(const PermutationTriple& t) {
  PermutationTriple r;
  r.s0 = t.s1;
  r.s1 = (t.s1 * t.s0) * t.s1.inverse();
  r.sinf = t.sinf;
  return r;
}

inline PermutationTriple s3_swap0inf(const PermutationTriple& t) {
  PermutationTriple r;
  r.s0 = t.sinf;
  r.s1 = (t.s0.inverse() * t.s1) * t.s0;
  r.sinf = t.s0;
  return r;
}

inline std::array<PermutationTriple, 6> s3_images(const PermutationTriple& t) {
  PermutationTriple a = s3_swap01(t);
  PermutationTriple b = s3_swap0inf(t);
  return {t, a, b, s3_swap0inf(a), s3_swap01(b), s3_swap01(s3_swap0inf(a))};
}

}  // namespace belyi
