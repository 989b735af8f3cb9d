// Acceptance suite: reproduces the published tables and worked examples end
// to end, one line per criterion.  --long additionally reruns the degree 8
// and 9 tables (minutes, not hours).

#include <chrono>
#include <cstdio>
#include <cstring>
#include <map>
#include <random>
#include <set>

#include "belyi/enumerate.hpp"
#include "belyi/io_json.hpp"
#include "belyi/newton.hpp"
#include "belyi/pointed.hpp"
#include "belyi/records.hpp"
#include "belyi/stats.hpp"
#include "belyi/verify.hpp"

using namespace belyi;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!pass) ++failures;
}

struct DegreeCounts {
  std::map<int, std::size_t> by_genus;
  std::size_t total = 0;
  uint64_t max_size = 0;
};

DegreeCounts summarize(const std::vector<Passport>& ps) {
  DegreeCounts c;
  for (const auto& p : ps) {
    c.by_genus[p.genus] += 1;
    ++c.total;
    c.max_size = std::max<uint64_t>(c.max_size, p.size());
  }
  return c;
}

std::string genus_split(const DegreeCounts& c) {
  std::string s;
  for (const auto& [g, n] : c.by_genus) {
    if (!s.empty()) s += "/";
    s += std::to_string(n);
  }
  return s;
}

bool check_split(const DegreeCounts& c, std::vector<std::size_t> expect) {
  if (c.total != std::accumulate(expect.begin(), expect.end(), std::size_t(0))) return false;
  for (std::size_t g = 0; g < expect.size(); ++g) {
    auto it = c.by_genus.find(static_cast<int>(g));
    std::size_t have = it == c.by_genus.end() ? 0 : it->second;
    if (have != expect[g]) return false;
  }
  return true;
}

const Passport* passport_with_order(const std::vector<Passport>& ps, uint64_t order) {
  for (const auto& p : ps)
    if (p.group.order == order) return &p;
  return nullptr;
}

Permutation cyc(const std::string& s, uint32_t d) { return Permutation::from_cycles(s, d); }

// ---- criteria 1-3 ----

void criterion_counts(bool long_mode, unsigned jobs) {
  const std::vector<std::size_t> totals{1, 1, 3, 8, 20, 74, 155, 573, 1207};
  const std::map<uint32_t, std::vector<std::size_t>> splits{
      {4, {6, 2}},           {5, {12, 6, 2}},          {6, {38, 29, 7}},
      {7, {89, 50, 13, 3}},  {8, {261, 217, 84, 11}},  {9, {583, 427, 163, 28, 6}}};
  const std::map<uint32_t, uint64_t> max_sizes{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 3},
                                               {6, 8}, {7, 38}, {8, 177}, {9, 1260}};

  uint32_t dmax = long_mode ? 9 : 7;
  std::size_t grand = 0;
  bool pass1 = true, pass2 = true, pass3 = true;
  std::string msg1, msg2, msg3 = "max passport sizes";
  auto t0 = std::chrono::steady_clock::now();
  for (uint32_t d = 1; d <= dmax; ++d) {
    EnumerationTask task;
    task.degree = d;
    task.jobs = jobs;
    auto ps = enumerate_degree(task);
    DegreeCounts c = summarize(ps);
    grand += c.total;
    bool ok = c.total == totals[d - 1];
    if (auto it = splits.find(d); it != splits.end()) ok = ok && check_split(c, it->second);
    if (d <= 7) {
      pass1 = pass1 && ok;
      msg1 += (msg1.empty() ? "" : ", ") + std::to_string(c.total);
    } else {
      pass2 = pass2 && ok;
      msg2 += (msg2.empty() ? "" : ", ") + std::to_string(c.total) + " (" + genus_split(c) + ")";
    }
    if (c.max_size != max_sizes.at(d)) {
      pass3 = false;
      msg3 += " d=" + std::to_string(d) + ": got " + std::to_string(c.max_size);
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, " in %.1fs", secs);
  report(1, pass1, "passport counts d<=7 are 1, 1, 3, 8, 20, 74, 155 with the table's genus splits" +
                       std::string(buf));
  if (long_mode) {
    pass2 = pass2 && grand == 2042;
    report(2, pass2, "passport counts d=8, 9: " + msg2 + "; grand total d<=9 is " + std::to_string(grand));
  }
  else
    std::printf("[SKIP] criterion  2: degree 8 and 9 tables (enable with --long)\n");
  report(3, pass3, msg3 + " match 1 (d<=4), 3, 8, 38" + std::string(long_mode ? ", 177, 1260" : " (d<=7)"));
}

// ---- criterion 4 ----

void criterion_named_passports(unsigned jobs) {
  struct Row {
    uint32_t degree;
    uint64_t order;
    std::array<Partition, 3> lambda;
    uint64_t size;
    const char* name;
  };
  const std::vector<Row> rows{
      {9, 181440, {Partition({5, 2, 2}), Partition({3, 3, 3}), Partition({4, 2, 1, 1, 1})}, 2,
       "(0, A9, (5 2^2, 3^3, 4 2 1^3))"},
      {9, 362880, {Partition({7, 2}), Partition({4, 2, 1, 1, 1}), Partition({4, 2, 2, 1})}, 23,
       "(0, S9, (7 2, 4 2 1^3, 4 2^2 1))"},
      {7, 2520, {Partition({7}), Partition({3, 2, 2}), Partition({3, 2, 2})}, 2,
       "(1, A7, (7, 3 2^2, 3 2^2))"},
      {7, 5040, {Partition({5, 2}), Partition({5, 2}), Partition({3, 2, 2})}, 4,
       "(1, S7, (5 2, 5 2, 3 2^2))"},
      {7, 2520, {Partition({7}), Partition({4, 2, 1}), Partition({4, 2, 1})}, 22,
       "(1, A7, (7, 4 2 1, 4 2 1))"},
      {7, 168, {Partition({7}), Partition({7}), Partition({3, 3, 1})}, 4,
       "(2, GL3(F2), (7, 7, 3^2 1))"},
  };
  bool pass = true;
  std::string detail = "runtime-table passport sizes";
  for (const auto& row : rows) {
    auto ps = enumerate_lambda(row.degree, row.lambda, false, jobs);
    const Passport* p = passport_with_order(ps, row.order);
    uint64_t size = p ? p->size() : 0;
    if (size != row.size) {
      pass = false;
      detail += std::string("; ") + row.name + " got " + std::to_string(size);
    }
  }
  if (pass) detail += " 2, 23, 2, 4, 22, 4 (groups matched by order, lambda up to relabeling)";
  report(4, pass, detail);
}

// ---- criterion 5 ----

void criterion_pointed(unsigned jobs) {
  bool pass = true;
  std::string detail;

  auto find = [&](uint32_t d, std::array<Partition, 3> lam, uint64_t order) -> const Passport {
    auto ps = enumerate_lambda(d, lam, false, jobs);
    const Passport* p = passport_with_order(ps, order);
    if (!p) throw std::runtime_error("passport not found");
    return *p;
  };

  // size-1 passport with pointed refinement of size 1: descends
  auto p44 = find(5, {Partition({5}), Partition({4, 1}), Partition({4, 1})}, 120);
  bool ok = p44.size() == 1;
  bool have_pp = false;
  for (const auto& pp : pointed_classes(p44))
    if (pp.base == 0 && pp.length == 5 && pp.aut_order == 1 && pp.size == 1) have_pp = true;
  ok = ok && have_pp && descends_by_size(p44).descends;
  pass = pass && ok;
  detail += std::string(ok ? "deg-5 ok" : "deg-5 FAILED");

  // size-13 passport whose 6-cycle refinement has size 13
  auto p52 = find(7, {Partition({6, 1}), Partition({6, 1}), Partition({3, 2, 2})}, 5040);
  ok = p52.size() == 13;
  have_pp = false;
  for (const auto& pp : pointed_classes(p52))
    if (pp.base == 0 && pp.length == 6 && pp.size == 13) have_pp = true;
  ok = ok && have_pp;
  pass = pass && ok;
  detail += std::string(ok ? ", deg-7 size-13 ok" : ", deg-7 size-13 FAILED");

  // degree-8 passport of size 1 with every pointed passport of size 2
  auto p45 = find(8, {Partition({4, 4}), Partition({4, 4}), Partition({3, 3, 1, 1})}, 96);
  ok = p45.size() == 1;
  auto pcs = pointed_classes(p45);
  ok = ok && !pcs.empty();
  for (const auto& pp : pcs) ok = ok && pp.size == 2;
  ok = ok && !descends_by_size(p45).descends;
  pass = pass && ok;
  detail += std::string(ok ? ", deg-8 criterion-fails-as-expected ok" : ", deg-8 FAILED");

  // the size-32 passport
  auto p73 = find(7, {Partition({6, 1}), Partition({6, 1}), Partition({4, 2, 1})}, 5040);
  ok = p73.size() == 32;
  pass = pass && ok;
  detail += std::string(ok ? ", deg-7 size-32 ok" : ", deg-7 size-32 FAILED");

  report(5, pass, "pointed criteria: " + detail);
}

// ---- criterion 6 ----

void criterion_stats(unsigned jobs) {
  bool pass = passport_weight(24, {1, 2, 3, 4, 6, 8}) == parse_rat("88/529");

  std::vector<PassportRecord> records;
  for (uint32_t d = 1; d <= 5; ++d) {
    EnumerationTask task;
    task.degree = d;
    task.jobs = jobs;
    for (const auto& p : enumerate_degree(task)) records.push_back(record_from_passport(p));
  }
  for (uint32_t d = 1; d <= 4; ++d) {
    BetaValue b = beta(records, {}, d);
    pass = pass && b.exact() && b.lo == Rat(1);
  }
  // orbit fixture splitting exactly two of the larger degree-5 passports
  std::vector<OrbitRecord> orbits;
  int split = 0;
  for (const auto& r : records) {
    if (r.size == 1) continue;
    OrbitRecord o;
    o.key = r.key;
    if (split < 2) {
      o.orbit.assign(r.size, 1);
      ++split;
    } else {
      o.orbit = {static_cast<int>(r.size)};
    }
    orbits.push_back(std::move(o));
  }
  BetaValue b5 = beta(records, orbits, 5);
  pass = pass && split == 2 && b5.exact() && b5.lo == parse_rat("31/33") &&
         abs(to_real(b5.lo) - Real("0.9393")) < Real("0.0001");
  report(6, pass, "w(24; 1,2,3,4,6,8) = 88/529, beta = 1 through degree 4, beta(5) = 31/33 ~ 0.93939");
}

// ---- criterion 7 ----

void criterion_series(unsigned) {
  set_working_digits(50);
  HyperellipticModel<Rat> m(
      2, Poly<Rat>(), Poly<Rat>(std::vector<Rat>{Rat(3), Rat(0), Rat(6), Rat(0), Rat(4), Rat(0), Rat(1)}));
  bool pass = laurent_tail(m, 0) == Poly<Rat>(std::vector<Rat>{Rat(0), Rat(2), Rat(0), Rat(1)});

  std::mt19937 rng(2718);
  int models = 0;
  while (models < 5) {
    int g = 2 + models % 2;
    int parity = (models / 2) % 2;
    ++models;
    for (;;) {
      int deg = 2 * g + 1 + parity;
      std::vector<Rat> c(static_cast<std::size_t>(deg) + 1);
      for (int i = 0; i < deg; ++i) c[static_cast<std::size_t>(i)] = Rat(static_cast<int>(rng() % 15) - 7);
      Rat lead(1 + static_cast<int>(rng() % 5));
      c[static_cast<std::size_t>(deg)] = lead * lead;
      try {
        HyperellipticModel<Rat> rm(g, Poly<Rat>(), Poly<Rat>(std::move(c)));
        for (int pole = 2 * g - 1; pole <= 2 * g + 6; ++pole)
          if (static_cast<int>(rr_basis(rm, pole).size()) != pole - g + 1) pass = false;
        break;
      } catch (const std::invalid_argument&) {
      }
    }
  }
  report(7, pass, "laurent tail P0 = x^3 + 2x exactly; L(m oo) dimensions are m - g + 1 on " +
                      std::to_string(models) + " random models of genus 2 and 3");
}

// ---- criterion 8 ----

void criterion_pole_bound(unsigned) {
  PoleBound pb = rr_pole_bound(7, 6, 1);
  report(8, pb.t == 2 && pb.s_plus_t == 8,
         "rr_pole_bound(7, 6, 1) gives t = 2 with spaces L(2 oo) and L(8 oo)");
}

// ---- criterion 9 ----

BelyiMapFixture load_fixture(const std::string& name) {
  return fixture_from_json(load_json_file(std::string(BELYI_FIXTURE_DIR) + "/" + name));
}

void criterion_verify(unsigned) {
  bool pass = true;
  for (const char* name : {"verify_genus2.json", "verify_elliptic.json", "verify_degree8.json"}) {
    BelyiMapFixture fx = load_fixture(name);
    auto rep = verify_ramification(fx, 50);
    pass = pass && rep.pass && !rep.inconclusive;
    // perturb the first nonzero coefficient of the numerator by 1%
    auto perturb = [](Poly<Rat>& p) {
      for (auto& c : p.c)
        if (c != 0) {
          c *= Rat(101) / 100;
          return;
        }
    };
    if (fx.genus == 0) {
      perturb(fx.num0);
    } else if (!fx.num.a.is_zero()) {
      perturb(fx.num.a);
    } else {
      perturb(fx.num.b);
    }
    auto broken = verify_ramification(fx, 50);
    pass = pass && !broken.pass;
  }
  report(9, pass, "the three published maps verify; each fails with a coefficient off by 1%");
}

// ---- criterion 10 ----

void criterion_newton(unsigned) {
  set_working_digits(50);
  BelyiMapAnsatz ansatz;
  ansatz.model = EllipticModel<Complex>(Complex(parse_rat("-5/27")), Complex(parse_rat("-5/27")));
  ansatz.u = Complex(Real(32));
  ansatz.phi0_top = 0;
  ansatz.phiinf_top = 5;
  ansatz.phiinf_coeffs = {Complex(Real(16)), Complex(Real(0)), Complex(Real(-5)), Complex(Real(0))};
  auto tri = PermutationTriple(cyc("(1,4,2,5,3)", 5), cyc("(1,2,3,4)", 5), cyc("(1,2,3,5)", 5));
  auto ram = RamificationData::from_triple(tri);
  NewtonSystem sys = build_newton_system(ansatz, ram, 3, Complex(Real(-5)));
  std::vector<Complex> exact = {Complex(Real(32)),
                                ansatz.model.c4,
                                ansatz.model.c6,
                                Complex(Real(16)),
                                Complex(Real(0)),
                                Complex(Real(-5)),
                                Complex(Real(0)),
                                Complex(Real(1)),
                                Complex(Real(-4)),
                                Complex(Real(6)),
                                Complex(Real(16)),
                                Complex(Real(1)),
                                Complex(Real(4)),
                                Complex(Real(6)),
                                Complex(Real(-16))};
  std::mt19937 rng(99);
  std::vector<Complex> start = exact;
  for (auto& z : start) {
    int pick = static_cast<int>(rng() % 5);
    z += Complex(Real(pick - 2) / 2000, Real(2 - pick) / 3000);
  }
  auto out = newton_solve(sys, start, 30, 12);
  bool pass = out.converged && out.iterations <= 12;
  if (pass)
    for (std::size_t i = 0; i < exact.size(); ++i)
      if ((out.solution[i] - exact[i]).abs() > pow(Real(10), -28)) pass = false;
  bool doubled = false;
  for (std::size_t k = 0; k + 1 < out.residual_history.size(); ++k) {
    Real a = out.residual_history[k], b = out.residual_history[k + 1];
    if (a > Real(0) && b > Real(0) && a < Real(1) / 10000 && -log10(b) >= Real("1.6") * -log10(a))
      doubled = true;
  }
  pass = pass && doubled;
  report(10, pass,
         "perturbed degree-5 system reconverges to residual < 1e-30 in " +
             std::to_string(out.iterations) + " iterations at 50 digits, with digit-doubling steps");
}

// ---- criterion 11 ----

void criterion_properties(unsigned jobs) {
  bool pass = true;
  std::string detail;

  // pair lemma surjectivity and injectivity, exhaustive for d <= 5
  for (uint32_t d = 2; d <= 5 && pass; ++d) {
    PermGroup sd = symmetric_group(d);
    for (const auto& l0 : partitions_of(static_cast<int>(d))) {
      Permutation tau0 = sym_class_rep(d, l0);
      PermGroup z0 = closure(sym_centralizer_gens(tau0));
      for (const auto& l1 : partitions_of(static_cast<int>(d))) {
        auto cls = sym_class_elements(d, l1);
        auto pairs = coset_pair_reps(tau0, cls, z0);
        std::set<std::pair<uint64_t, uint64_t>> seen;
        for (const auto& [a, b] : pairs)
          for (const auto& tau : sd.elements) seen.insert({a.conj(tau).raw(), b.conj(tau).raw()});
        if (seen.size() != sym_class_size(d, l0) * cls.size()) pass = false;
        std::vector<PermutationTriple> gen_pairs;
        for (const auto& [a, b] : pairs)
          if (closure({a, b}).order() == factorial64(d))
            gen_pairs.push_back(PermutationTriple::from_pair(a, b));
        for (std::size_t i = 0; i < gen_pairs.size(); ++i)
          for (std::size_t j = i + 1; j < gen_pairs.size(); ++j)
            if (simultaneous_conjugator(gen_pairs[i], gen_pairs[j])) pass = false;
      }
    }
  }
  detail += pass ? "pair lemma ok" : "pair lemma FAILED";

  // canonical form constant over 100 random conjugations per sampled triple
  bool canon_ok = true;
  std::mt19937 rng(17);
  auto random_perm = [&](uint32_t d) {
    std::vector<int> im(d);
    for (uint32_t i = 0; i < d; ++i) im[i] = static_cast<int>(i);
    std::shuffle(im.begin(), im.end(), rng);
    return Permutation::from_images0(im);
  };
  auto d6 = enumerate_degree(6);
  for (std::size_t i = 0; i < d6.size(); i += 7) {
    const auto& t = d6[i].triples[0];
    auto canon = canonical_triple(t);
    for (int k = 0; k < 100; ++k)
      if (!(canonical_triple(t.conj(random_perm(6))) == canon)) canon_ok = false;
  }
  pass = pass && canon_ok;
  detail += canon_ok ? ", canonical orbit-constancy ok" : ", canonical FAILED";

  // genus integrality and nonnegativity over everything enumerated here
  bool genus_ok = true;
  for (uint32_t d = 1; d <= 6; ++d)
    for (const auto& p : enumerate_degree(d))
      for (const auto& t : p.triples) {
        int g = triple_genus(t);  // throws on parity or negativity violations
        if (g != p.genus) genus_ok = false;
      }
  pass = pass && genus_ok;
  detail += genus_ok ? ", genus integrality ok" : ", genus FAILED";

  // byte-identical output across worker counts
  EnumerationTask one;
  one.degree = 7;
  one.jobs = 1;
  EnumerationTask many;
  many.degree = 7;
  many.jobs = jobs > 1 ? jobs : 4;
  std::vector<PassportRecord> r1, rn;
  for (const auto& p : enumerate_degree(one)) r1.push_back(record_from_passport(p));
  for (const auto& p : enumerate_degree(many)) rn.push_back(record_from_passport(p));
  std::string f1 = "/tmp/belyi_acc_j1.jsonl", fn = "/tmp/belyi_acc_jn.jsonl";
  write_jsonl(f1, r1);
  write_jsonl(fn, rn);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  bool det_ok = slurp(f1) == slurp(fn) && !r1.empty();
  std::remove(f1.c_str());
  std::remove(fn.c_str());
  pass = pass && det_ok;
  detail += det_ok ? ", determinism ok" : ", determinism FAILED";

  report(11, pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  bool long_mode = false;
  unsigned jobs = 2;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--long") == 0) long_mode = true;
    if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) jobs = static_cast<unsigned>(atoi(argv[++i]));
  }
  auto t0 = std::chrono::steady_clock::now();
  criterion_counts(long_mode, jobs);
  criterion_named_passports(jobs);
  criterion_pointed(jobs);
  criterion_stats(jobs);
  criterion_series(jobs);
  criterion_pole_bound(jobs);
  criterion_verify(jobs);
  criterion_newton(jobs);
  criterion_properties(jobs);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s (%d failed criteria, %.1fs total)\n", failures == 0 ? "ALL ACCEPTED" : "FAILURES PRESENT",
              failures, secs);
  return failures == 0 ? 0 : 1;
}
