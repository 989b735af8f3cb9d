#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "belyi/enumerate.hpp"
#include "belyi/io_json.hpp"
#include "belyi/records.hpp"
#include "belyi/stats.hpp"
#include "belyi/verify.hpp"

using namespace belyi;

namespace {

constexpr const char* kVersion = "belyidb 1.0.0";

struct DegreeRange {
  uint32_t lo = 1, hi = 1;
};

DegreeRange parse_degree_range(const std::string& s) {
  DegreeRange r;
  auto dash = s.find('-');
  if (dash == std::string::npos) {
    r.lo = r.hi = static_cast<uint32_t>(std::stoul(s));
  } else {
    r.lo = static_cast<uint32_t>(std::stoul(s.substr(0, dash)));
    r.hi = static_cast<uint32_t>(std::stoul(s.substr(dash + 1)));
  }
  if (r.lo < 1 || r.hi < r.lo) throw CLI::ValidationError("--degree", "bad degree range " + s);
  return r;
}

// "d=4: 6,2 (total 8)" — genus counts ascending from zero
std::string summary_line(uint32_t d, const std::vector<PassportRecord>& records) {
  std::map<int, std::size_t> by_genus;
  std::size_t total = 0;
  int max_genus = 0;
  for (const auto& r : records)
    if (r.degree == d) {
      by_genus[r.genus] += 1;
      ++total;
      max_genus = std::max(max_genus, r.genus);
    }
  std::string line = "d=" + std::to_string(d) + ": ";
  for (int g = 0; g <= max_genus; ++g) {
    if (g) line += ",";
    line += std::to_string(by_genus.count(g) ? by_genus[g] : 0);
  }
  line += " (total " + std::to_string(total) + ")";
  return line;
}

int cmd_enumerate(const std::string& degree_str, int genus, const std::string& group_file,
                  const std::string& out, unsigned jobs, bool allow_large) {
  std::vector<PassportRecord> records;
  std::vector<uint32_t> degrees;
  if (!group_file.empty()) {
    GroupConfig cfg = group_config_from_json(load_json_file(group_file));
    std::vector<Passport> all;
    for (const auto& entry : cfg.groups) {
      std::vector<Permutation> gens;
      for (const auto& im : entry.generators) gens.push_back(Permutation::from_images1(im));
      PermGroup g = closure(gens);
      for (auto& p : enumerate_group_passports(g)) {
        p.group.external_label = entry.label;
        all.push_back(std::move(p));
      }
    }
    std::sort(all.begin(), all.end(), passport_order);
    assign_group_ids(all);
    for (const auto& p : all) records.push_back(record_from_passport(p));
    degrees.push_back(cfg.degree);
  } else {
    DegreeRange range = parse_degree_range(degree_str);
    if (range.hi > kDefaultDegreeCap && allow_large)
      std::cerr << "note: degrees beyond " << kDefaultDegreeCap
                << " take minutes (10) to the better part of an hour (11) on a desktop\n";
    for (uint32_t d = range.lo; d <= range.hi; ++d) {
      EnumerationTask task;
      task.degree = d;
      task.jobs = jobs;
      task.allow_large = allow_large;
      if (genus >= 0) task.genus_filter = genus;
      for (const auto& p : enumerate_degree(task)) records.push_back(record_from_passport(p));
      degrees.push_back(d);
    }
  }
  for (uint32_t d : degrees) std::cout << summary_line(d, records) << "\n";
  if (!out.empty()) write_jsonl(out, records);
  return 0;
}

int cmd_stats(const std::string& input, const std::string& orbit_file) {
  auto records = read_jsonl(input);
  std::vector<OrbitRecord> orbits;
  if (!orbit_file.empty()) orbits = read_orbits(orbit_file);
  StatsTable t = counts_table(records);
  std::cout << "passport counts by degree and genus\n";
  for (const auto& [d, row] : t.counts) std::cout << "  " << summary_line(d, records) << "\n";
  std::cout << "  grand total " << t.grand_total() << "\n";
  std::cout << "largest passport size per degree\n";
  for (const auto& [d, m] : t.max_size) std::cout << "  d=" << d << ": " << m << "\n";
  std::cout << "irreducibility statistic\n";
  for (const auto& [d, row] : t.counts) {
    BetaValue b = beta(records, orbits, d);
    if (b.exact()) {
      std::cout << "  beta(" << d << ") = " << rat_string(b.lo) << " ~ "
                << real_string(to_real(b.lo), 6) << "\n";
    } else {
      std::cout << "  " << real_string(to_real(b.lo), 6) << " <= beta(" << d
                << ") <= " << real_string(to_real(b.hi), 6) << "\n";
    }
  }
  return 0;
}

int cmd_pointed(const std::string& input, const std::string& out) {
  auto records = read_jsonl(input);
  for (auto& r : records) {
    if (r.triples.empty()) continue;
    Passport p = passport_from_record(r);
    r.pointed.clear();
    for (const auto& pp : pointed_classes(p))
      r.pointed.push_back({pp.base, pp.length, pp.aut_order, pp.size});
    auto rep = descends_by_size(p);
    r.descends_guaranteed = rep.descends;
    if (rep.descends) {
      const auto& w = *rep.witness;
      std::cout << r.key << " descends: yes (s=" << (w.base == 2 ? std::string("inf") : std::to_string(w.base))
                << ", e=" << w.length << ", a=" << w.aut_order << ")\n";
    } else {
      std::cout << r.key << " descends by pointed criterion: no\n";
    }
  }
  if (!out.empty()) write_jsonl(out, records);
  return 0;
}

std::string partition_list(const std::vector<int>& parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

int cmd_verify(const std::string& input, unsigned digits, double tol) {
  BelyiMapFixture fx = fixture_from_json(load_json_file(input));
  set_working_digits(digits);
  Real cluster = tol > 0 ? Real(tol) : Real(0);
  auto rep = verify_ramification(fx, digits, cluster);
  const char* names[3] = {"over 0", "over 1", "over inf"};
  for (int k = 0; k < 3; ++k)
    std::cout << names[k] << ": " << partition_list(rep.found[static_cast<std::size_t>(k)])
              << "  expected " << partition_list(rep.expected[static_cast<std::size_t>(k)].parts) << "\n";
  if (rep.inconclusive) {
    std::cout << "INCONCLUSIVE: " << rep.message << "\n";
    return 1;
  }
  if (rep.pass) {
    std::cout << "PASS (degree " << rep.degree << ", matched up to relabeling of {0,1,inf})\n";
    return 0;
  }
  std::cout << "FAIL: " << rep.message << "\n";
  return 1;
}

HyperellipticModel<Rat> model_from_file(const std::string& path) {
  json j = load_json_file(path);
  Poly<Rat> u = j.contains("u") ? rat_poly_from_json(j.at("u")) : Poly<Rat>();
  return HyperellipticModel<Rat>(j.at("genus").get<int>(), u, rat_poly_from_json(j.at("v")));
}

int cmd_series_laurent(const std::string& model_path, int j, int sign) {
  auto m = model_from_file(model_path);
  Poly<Rat> tail = laurent_tail(m, j, sign);
  std::cout << rat_poly_to_json(tail).dump() << "\n";
  return 0;
}

int cmd_series_rr(const std::string& model_path, int pole_order, int sign) {
  auto m = model_from_file(model_path);
  json out = json::array();
  for (const auto& fn : rr_basis(m, pole_order, sign))
    out.push_back({{"a", rat_poly_to_json(fn.a)}, {"b", rat_poly_to_json(fn.b)}});
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_series_newton(const std::string& job_path, unsigned digits, const std::string& out_path) {
  NewtonJob job = newton_job_from_json(load_json_file(job_path));
  set_working_digits(digits);
  NewtonSystem sys = build_newton_system(job.ansatz, job.ram, job.gauge_order, job.gauge_value);
  std::vector<Complex> z;
  z.push_back(job.ansatz.u);
  z.push_back(job.ansatz.model.c4);
  z.push_back(job.ansatz.model.c6);
  for (const auto& c : job.ansatz.phi0_coeffs) z.push_back(c);
  for (const auto& c : job.ansatz.phiinf_coeffs) z.push_back(c);
  for (const auto& c : job.initial) z.push_back(c);
  if (z.size() != sys.size())
    throw std::invalid_argument("newton-refine: initial data has " + std::to_string(z.size()) +
                                " coordinates, the system needs " + std::to_string(sys.size()));
  auto outcome = newton_solve(sys, z, job.target_digits);
  json j;
  j["converged"] = outcome.converged;
  j["iterations"] = outcome.iterations;
  j["message"] = outcome.message;
  json sol = json::array();
  for (const auto& c : outcome.solution) sol.push_back(complex_to_json(c, digits));
  j["solution"] = sol;
  json res = json::array();
  for (const auto& r : outcome.residual_history) res.push_back(real_string(r, 8));
  j["residuals"] = res;
  j["variables"] = sys.variable_names;
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path, std::ios::trunc);
    f << j.dump(2) << "\n";
  }
  std::cout << (outcome.converged ? "converged" : "not converged") << " after " << outcome.iterations
            << " iterations\n";
  return outcome.converged ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"passports of Belyi maps: enumeration, pointed refinements, statistics, series tools"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string degree_str = "1", group_file, out, input, orbit_file;
  int genus = -1;
  unsigned jobs = 1, digits = 50;
  double tol = 0;
  bool allow_large = false;

  auto* enu = app.add_subcommand("enumerate", "enumerate passports for a degree or range");
  enu->add_option("--degree", degree_str, "degree d or range a-b");
  enu->add_option("--genus", genus, "keep only this genus");
  enu->add_option("--group-file", group_file, "per-group mode: JSON file of generator lists");
  enu->add_option("--out", out, "write passports as JSONL");
  enu->add_option("--jobs", jobs, "worker threads");
  enu->add_flag("--allow-large", allow_large, "permit degrees 10 and 11 (long runtimes)");

  auto* st = app.add_subcommand("stats", "count tables and irreducibility statistics");
  st->add_option("input", input, "passport JSONL file")->required();
  st->add_option("--orbits", orbit_file, "Galois orbit JSONL file");
  st->add_option("--jobs", jobs, "worker threads");

  auto* po = app.add_subcommand("pointed", "augment records with pointed passports and descent flags");
  po->add_option("input", input, "passport JSONL file")->required();
  po->add_option("--out", out, "write augmented JSONL");
  po->add_option("--jobs", jobs, "worker threads");

  auto* ve = app.add_subcommand("verify", "check the ramification of a model+map fixture");
  ve->add_option("input", input, "fixture JSON file")->required();
  ve->add_option("--digits", digits, "working precision in decimal digits");
  ve->add_option("--tol", tol, "multiplicity clustering radius override");

  auto* se = app.add_subcommand("series", "series-level subtools");
  se->require_subcommand(1);
  std::string model_path, job_path;
  int tail_j = 0, pole_order = 2, sign = 1;
  auto* lt = se->add_subcommand("laurent-tail", "Laurent tail P_j of x^j y at the second infinite point");
  lt->add_option("--model", model_path, "model JSON: genus, u, v")->required();
  lt->add_option("--j", tail_j, "power of x");
  lt->add_option("--sign", sign, "branch sign at the tail point");
  auto* rb = se->add_subcommand("rr-basis", "basis of L(m oo)");
  rb->add_option("--model", model_path, "model JSON: genus, u, v")->required();
  rb->add_option("--pole-order", pole_order, "m")->required();
  rb->add_option("--sign", sign, "tail branch sign for even models");
  auto* nr = se->add_subcommand("newton-refine", "refine a genus-1 map from an initial approximation");
  nr->add_option("input", job_path, "job JSON")->required();
  nr->add_option("--digits", digits, "working precision in decimal digits");
  nr->add_option("--out", out, "write the refined solution JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (enu->parsed()) return cmd_enumerate(degree_str, genus, group_file, out, jobs, allow_large);
    if (st->parsed()) return cmd_stats(input, orbit_file);
    if (po->parsed()) return cmd_pointed(input, out);
    if (ve->parsed()) return cmd_verify(input, digits, tol);
    if (se->parsed()) {
      if (lt->parsed()) return cmd_series_laurent(model_path, tail_j, sign);
      if (rb->parsed()) return cmd_series_rr(model_path, pole_order, sign);
      if (nr->parsed()) return cmd_series_newton(job_path, digits, out);
    }
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
