#pragma once

#include <atomic>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "belyi/passport.hpp"
#include "belyi/perm_group.hpp"
#include "belyi/triple.hpp"

namespace belyi {

struct EnumerationTask {
  uint32_t degree = 1;
  std::optional<int> genus_filter;
  std::optional<std::array<Partition, 3>> lambda_filter;  // sorted lambda triple
  unsigned jobs = 1;
  bool allow_large = false;  // degrees 10 and 11 take far longer; opt in
  uint64_t closure_cap = 0;  // 0: default per degree
};

inline constexpr uint32_t kDefaultDegreeCap = 9;
inline constexpr uint32_t kHardDegreeCap = 11;

namespace detail {

// One work item: the ordered class pair (l0, l1) with l0 <= l1 under the
// partition order.  Workers are independent; the merge happens in task order
// so any worker count yields identical output.
struct PairTask {
  Partition l0, l1;
};

inline std::vector<TripleWithGroup> run_pair_task(uint32_t d, const PairTask& task,
                                                  const EnumerationTask& opts) {
  std::vector<TripleWithGroup> out;
  Permutation tau0 = sym_class_rep(d, task.l0);
  std::vector<Permutation> z0gens = sym_centralizer_gens(tau0);
  std::vector<Permutation> cls = sym_class_elements(d, task.l1);

  FlatSet64 visited(2 * cls.size());
  std::set<std::pair<uint64_t, uint64_t>> proper_seen;  // canonical dedup, proper subgroups only
  std::vector<Permutation> orbit;

  for (const Permutation& x : cls) {
    if (visited.contains(x.raw())) continue;
    orbit.clear();
    orbit.push_back(x);
    visited.insert(x.raw());
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const Permutation& t : z0gens) {
        Permutation y = orbit[head].conj(t);
        if (visited.insert(y.raw())) orbit.push_back(y);
      }

    const Permutation& sigma1 = x;  // ascending scan makes x the orbit minimum
    Permutation sinf = (sigma1 * tau0).inverse();
    Partition linf = sinf.cycle_type();
    if (!partition_leq(task.l1, linf)) continue;
    if (opts.lambda_filter && linf != (*opts.lambda_filter)[2]) continue;
    if (!is_transitive({tau0, sigma1}, d)) continue;

    TripleWithGroup e;
    e.grp = identify_generated({tau0, sigma1}, opts.closure_cap);
    PermutationTriple raw(tau0, sigma1, sinf);
    e.genus = triple_genus(raw);
    if (opts.genus_filter && e.genus != *opts.genus_filter) continue;
    e.canon = canonical_triple(raw);
    if (!e.grp.full_symmetric()) {
      // the double-coset lemma guarantees uniqueness only for generating
      // pairs; representatives landing in a proper subgroup can repeat
      if (!proper_seen.insert({e.canon.s0.raw(), e.canon.s1.raw()}).second) continue;
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<TripleWithGroup> run_tasks(uint32_t d, const std::vector<PairTask>& tasks,
                                              const EnumerationTask& opts) {
  unsigned jobs = std::max(1u, opts.jobs);
  std::vector<std::vector<TripleWithGroup>> results(tasks.size());
  if (jobs == 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = run_pair_task(d, tasks[i], opts);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        try {
          for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            results[i] = run_pair_task(d, tasks[i], opts);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::vector<TripleWithGroup> merged;
  for (auto& r : results)
    for (auto& e : r) merged.push_back(std::move(e));
  return merged;
}

inline void check_degree_cap(uint32_t d, bool allow_large) {
  if (d < 1) throw std::invalid_argument("degree must be positive");
  if (d > kHardDegreeCap)
    throw CapacityError("degree " + std::to_string(d) + " beyond supported bound " +
                        std::to_string(kHardDegreeCap));
  if (d > kDefaultDegreeCap && !allow_large)
    throw CapacityError("degree " + std::to_string(d) +
                        " requires the allow-large option (expect a long runtime)");
}

}  // namespace detail

// All passports of one degree, S3-canonical with sizes, via the
// self-contained whole-degree pipeline: the pair lemma applied inside the
// full symmetric group, class pair by class pair.
inline std::vector<Passport> enumerate_degree(const EnumerationTask& opts) {
  uint32_t d = opts.degree;
  detail::check_degree_cap(d, opts.allow_large);

  std::vector<Partition> parts = partitions_of(static_cast<int>(d));
  std::sort(parts.begin(), parts.end(), partition_lt);

  std::vector<detail::PairTask> tasks;
  if (opts.lambda_filter) {
    const auto& lf = *opts.lambda_filter;
    if (!partition_leq(lf[0], lf[1]) || !partition_leq(lf[1], lf[2]))
      throw std::invalid_argument("lambda filter must be sorted under the partition order");
    tasks.push_back({lf[0], lf[1]});
  } else {
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i; j < parts.size(); ++j) tasks.push_back({parts[i], parts[j]});
  }

  auto triples = detail::run_tasks(d, tasks, opts);
  auto passports = detail::assemble_from(triples);
  assign_group_ids(passports);
  return passports;
}

inline std::vector<Passport> enumerate_degree(uint32_t d) {
  EnumerationTask t;
  t.degree = d;
  return enumerate_degree(t);
}

// The per-group algorithm, step by step: N-classes of G, the ordered class
// pairs, double-coset representatives, completion to triples, and the
// generation and lambda filters.  Returns canonical triples, sorted.
inline std::vector<PermutationTriple> enumerate_group(const PermGroup& g, uint32_t normalizer_degree_cap = 9) {
  if (!is_transitive(g)) throw std::invalid_argument("enumerate_group: group must be transitive");
  uint32_t d = g.degree;
  PermGroup n = (g.order() == factorial64(d)) ? g : normalizer_in_sym(g, normalizer_degree_cap);

  std::vector<Permutation> reps = classes_mod(g, n);
  std::vector<PermutationTriple> out;
  for (const Permutation& ti : reps) {
    Partition li = ti.cycle_type();
    PermGroup zi = centralizer(n, ti);
    for (const Permutation& tj : reps) {
      Partition lj = tj.cycle_type();
      if (!partition_leq(li, lj)) continue;
      // the N-class of tj, materialized inside G
      std::vector<Permutation> cj{tj};
      {
        FlatSet64 seen(64);
        seen.insert(tj.raw());
        for (std::size_t head = 0; head < cj.size(); ++head)
          for (const Permutation& t : n.generators) {
            Permutation y = cj[head].conj(t);
            if (seen.insert(y.raw())) cj.push_back(y);
          }
      }
      for (const auto& [s0, s1] : coset_pair_reps(ti, cj, zi)) {
        PermutationTriple t = PermutationTriple::from_pair(s0, s1);
        if (!partition_leq(lj, t.sinf.cycle_type())) continue;
        MonodromyGroup m = identify_generated({s0, s1}, g.order() + 1);
        if (m.order != g.order()) continue;  // sigma must generate all of G
        out.push_back(canonical_triple(t));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Convenience wrapper: per-group enumeration assembled into passports.
inline std::vector<Passport> enumerate_group_passports(const PermGroup& g) {
  auto passports = assemble_passports(enumerate_group(g));
  assign_group_ids(passports);
  return passports;
}

// Targeted variant: the passports of one lambda multiset (any order).
inline std::vector<Passport> enumerate_lambda(uint32_t degree, std::array<Partition, 3> lambda,
                                              bool allow_large = false, unsigned jobs = 1) {
  std::sort(lambda.begin(), lambda.end(), partition_lt);
  EnumerationTask t;
  t.degree = degree;
  t.lambda_filter = lambda;
  t.allow_large = allow_large;
  t.jobs = jobs;
  return enumerate_degree(t);
}

}  // namespace belyi
