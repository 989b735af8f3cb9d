#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "belyi/perm_group.hpp"
#include "belyi/triple.hpp"

namespace belyi {

// Total order on partitions of a common integer: a <= b iff a is
// lexicographically >= b on descending part lists, so dominant partitions
// come first ([5] precedes [4,1] precedes ... precedes [1^5]).
inline bool partition_leq(const Partition& a, const Partition& b) {
  if (a.total() != b.total()) throw std::invalid_argument("partition_leq: unequal totals");
  return !(a.parts < b.parts);
}

inline bool partition_lt(const Partition& a, const Partition& b) {
  return partition_leq(a, b) && a != b;
}

// Orders lambda triples by the same convention, position by position.
struct LambdaLess {
  bool operator()(const std::array<Partition, 3>& x, const std::array<Partition, 3>& y) const {
    for (int i = 0; i < 3; ++i)
      if (x[i] != y[i]) return partition_lt(x[i], y[i]);
    return false;
  }
};

// Conjugation-invariant fingerprint of a monodromy group plus the
// artifact-local id assigned within its degree.
struct GroupKey {
  uint32_t degree = 1;
  uint64_t order = 1;
  uint64_t signature = 0;  // census hash
  bool transitive = true;
  bool even_only = false;
  int id = -1;                  // assigned per degree; not a database T-number
  std::string external_label;   // opaque, carried through from ingested data
};

struct Passport {
  uint32_t degree = 1;
  int genus = 0;
  std::array<Partition, 3> lambda;
  MonodromyGroup monodromy;
  GroupKey group;
  std::vector<PermutationTriple> triples;  // canonical representatives, sorted

  std::size_t size() const { return triples.size(); }
};

inline bool passport_order(const Passport& a, const Passport& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  if (a.genus != b.genus) return a.genus < b.genus;
  LambdaLess ll;
  if (ll(a.lambda, b.lambda)) return true;
  if (ll(b.lambda, a.lambda)) return false;
  if (a.group.order != b.group.order) return a.group.order < b.group.order;
  if (a.group.signature != b.group.signature) return a.group.signature < b.group.signature;
  return a.triples < b.triples;
}

namespace detail {

struct TripleWithGroup {
  PermutationTriple canon;
  MonodromyGroup grp;
  int genus = 0;
};

// Buckets canonical triples by (genus, lambda), then splits each bucket by
// monodromy-group conjugacy.
inline std::vector<Passport> assemble_from(const std::vector<TripleWithGroup>& triples) {
  std::vector<const TripleWithGroup*> sorted;
  sorted.reserve(triples.size());
  for (const auto& t : triples) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [](const TripleWithGroup* a, const TripleWithGroup* b) {
    if (a->genus != b->genus) return a->genus < b->genus;
    auto la = a->canon.lambda(), lb = b->canon.lambda();
    LambdaLess ll;
    if (ll(la, lb)) return true;
    if (ll(lb, la)) return false;
    return a->canon < b->canon;
  });

  std::vector<Passport> out;
  struct OpenBucket {
    std::vector<std::size_t> passports;  // indices into out, one per group class
  };
  auto same_bucket = [](const TripleWithGroup& a, const Passport& p) {
    return a.genus == p.genus && a.canon.lambda() == p.lambda;
  };
  std::vector<std::size_t> open;  // passports of the current (genus, lambda) bucket

  for (const TripleWithGroup* t : sorted) {
    if (!open.empty() && !same_bucket(*t, out[open.front()])) open.clear();
    uint64_t sig = census_hash(census_of(t->grp));
    std::size_t target = SIZE_MAX;
    for (std::size_t idx : open) {
      if (out[idx].group.order != t->grp.order || out[idx].group.signature != sig) continue;
      if (monodromy_conjugate(out[idx].monodromy, t->grp)) {
        target = idx;
        break;
      }
    }
    if (target == SIZE_MAX) {
      Passport p;
      p.degree = t->canon.degree();
      p.genus = t->genus;
      p.lambda = t->canon.lambda();
      p.monodromy = t->grp;
      p.group.degree = p.degree;
      p.group.order = t->grp.order;
      p.group.signature = sig;
      p.group.transitive = t->grp.transitive;
      p.group.even_only = t->grp.even_only;
      out.push_back(std::move(p));
      target = out.size() - 1;
      open.push_back(target);
    }
    out[target].triples.push_back(t->canon);
  }
  for (auto& p : out) std::sort(p.triples.begin(), p.triples.end());
  std::sort(out.begin(), out.end(), passport_order);
  return out;
}

}  // namespace detail

// Assembles deduplicated canonical triples into passports, recomputing the
// monodromy group of each triple.
inline std::vector<Passport> assemble_passports(const std::vector<PermutationTriple>& triples) {
  std::vector<detail::TripleWithGroup> tg;
  tg.reserve(triples.size());
  for (const auto& t : triples) {
    detail::TripleWithGroup e;
    e.canon = t;
    e.grp = identify_generated({t.s0, t.s1});
    e.genus = triple_genus(t);
    tg.push_back(std::move(e));
  }
  return detail::assemble_from(tg);
}

// Artifact-local group ids: group classes of a degree sorted by order, then
// signature bytes, then first passport appearance.
inline void assign_group_ids(std::vector<Passport>& passports) {
  struct ClassRef {
    uint64_t order;
    uint64_t sig;
    std::size_t first;  // index of first passport carrying it
    std::vector<std::size_t> members;
  };
  std::map<uint32_t, std::vector<ClassRef>> per_degree;
  for (std::size_t i = 0; i < passports.size(); ++i) {
    auto& classes = per_degree[passports[i].degree];
    bool found = false;
    for (auto& c : classes) {
      if (c.order != passports[i].group.order || c.sig != passports[i].group.signature) continue;
      if (monodromy_conjugate(passports[c.first].monodromy, passports[i].monodromy)) {
        c.members.push_back(i);
        found = true;
        break;
      }
    }
    if (!found) classes.push_back({passports[i].group.order, passports[i].group.signature, i, {i}});
  }
  for (auto& [deg, classes] : per_degree) {
    std::stable_sort(classes.begin(), classes.end(), [](const ClassRef& a, const ClassRef& b) {
      if (a.order != b.order) return a.order < b.order;
      if (a.sig != b.sig) return a.sig < b.sig;
      return a.first < b.first;
    });
    int id = 1;
    for (auto& c : classes) {
      for (std::size_t i : c.members) passports[i].group.id = id;
      ++id;
    }
  }
}

// S3-canonical representative: lambda sorted ascending under the partition
// order; among relabelings with equal sorted lambda, the lexicographically
// least canonical triple list wins.
inline Passport s3_canonicalize(const Passport& p) {
  if (p.triples.empty()) return p;
  Passport best;
  bool have = false;
  for (int word = 0; word < 6; ++word) {
    std::vector<PermutationTriple> imgs;
    imgs.reserve(p.triples.size());
    for (const auto& t : p.triples) imgs.push_back(canonical_triple(s3_images(t)[word]));
    std::sort(imgs.begin(), imgs.end());
    auto lam = imgs[0].lambda();
    if (partition_lt(lam[1], lam[0]) || partition_lt(lam[2], lam[1])) continue;
    if (!have || imgs < best.triples) {
      best = p;
      best.lambda = lam;
      best.triples = std::move(imgs);
      have = true;
    }
  }
  return have ? best : p;
}

}  // namespace belyi
