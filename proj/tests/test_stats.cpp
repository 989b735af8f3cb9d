#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "belyi/enumerate.hpp"
#include "belyi/io_json.hpp"
#include "belyi/stats.hpp"

using namespace belyi;

#ifndef BELYI_FIXTURE_DIR
#define BELYI_FIXTURE_DIR "tests/fixtures"
#endif

namespace {
std::string fixture(const std::string& name) { return std::string(BELYI_FIXTURE_DIR) + "/" + name; }

std::vector<PassportRecord> records_up_to(uint32_t dmax, bool with_pointed = false) {
  std::vector<PassportRecord> out;
  for (uint32_t d = 1; d <= dmax; ++d)
    for (const auto& p : enumerate_degree(d)) out.push_back(record_from_passport(p, with_pointed));
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("passport weight") {
  CHECK(passport_weight(1, {1}) == Rat(1));
  CHECK(passport_weight(24, {1, 2, 3, 4, 6, 8}) == parse_rat("88/529"));
  CHECK(passport_weight(13, {3, 10}) == parse_rat("85/144"));
  // bounds and the extreme cases
  CHECK(passport_weight(5, {5}) == Rat(1));
  CHECK(passport_weight(5, {1, 1, 1, 1, 1}) == Rat(0));
  for (auto parts : std::vector<std::vector<int>>{{2, 3}, {1, 4}, {2, 2, 1}, {5}}) {
    Rat w = passport_weight(5, parts);
    CHECK(w >= 0);
    CHECK(w <= 1);
    CHECK((w == 1) == (parts.size() == 1));
  }
  CHECK_THROWS_AS(passport_weight(5, {2, 2}), std::invalid_argument);
}

TEST_CASE("beta values and intervals") {
  auto records = records_up_to(5);
  // all passports through degree 4 are singletons, so beta = 1 without any
  // orbit data at all
  for (uint32_t d = 1; d <= 4; ++d) {
    BetaValue b = beta(records, {}, d);
    CHECK(b.exact());
    CHECK(b.lo == Rat(1));
  }
  // degree 5 has passports of size 2 and 3; leaving them unresolved gives an
  // interval
  BetaValue open5 = beta(records, {}, 5);
  CHECK_FALSE(open5.exact());
  CHECK(open5.hi == Rat(1));

  // resolve every larger passport as one orbit except two fully-split ones
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
  REQUIRE(split == 2);
  BetaValue b5 = beta(records, orbits, 5);
  CHECK(b5.exact());
  CHECK(b5.lo == parse_rat("31/33"));
  CHECK(abs(to_real(b5.lo) - Real("0.9393")) < Real("0.0001"));

  // refining an orbit never increases beta
  std::vector<OrbitRecord> coarser = orbits;
  for (auto& o : coarser)
    if (o.orbit.size() > 1) {
      o.orbit = {static_cast<int>(std::accumulate(o.orbit.begin(), o.orbit.end(), 0))};
      break;
    }
  CHECK(beta(records, coarser, 5).lo >= b5.lo);
}

TEST_CASE("jsonl round trip") {
  auto records = records_up_to(4, true);
  std::string path = "/tmp/belyi_test_roundtrip.jsonl";
  write_jsonl(path, records);
  auto back = read_jsonl(path);
  REQUIRE(back.size() == records.size());
  std::sort(records.begin(), records.end(), record_key_less);
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(back[i] == records[i]);
  // write-read-write is byte identical
  std::string bytes1 = slurp(path);
  write_jsonl(path, back);
  CHECK(slurp(path) == bytes1);

  // duplicate keys are rejected, naming the key
  auto dup = back;
  dup.push_back(dup.front());
  CHECK_THROWS_WITH(write_jsonl(path, dup), Catch::Matchers::ContainsSubstring(dup.front().key));
  std::remove(path.c_str());
}

TEST_CASE("key format parses back") {
  auto records = records_up_to(5);
  for (const auto& r : records) {
    ParsedKey k = parse_key(r.key);
    CHECK(k.degree == r.degree);
    CHECK(k.genus == r.genus);
    CHECK(k.lambda == r.lambda);
    CHECK(k.group_id == r.group_id);
  }
  CHECK_THROWS_AS(parse_key("garbage"), ParseError);
}

TEST_CASE("ingesting the runtime-table transcription") {
  auto records = read_jsonl(fixture("runtime_table.jsonl"));
  REQUIRE(records.size() == 6);
  std::vector<uint64_t> sizes;
  for (const auto& r : records) sizes.push_back(r.size);
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<uint64_t>{2, 2, 4, 4, 22, 23});
  // opaque labels ride along
  bool found_gl32 = false;
  for (const auto& r : records)
    if (r.external_label == "GL(3,2)") {
      found_gl32 = true;
      CHECK(r.group_order == 168);
      CHECK(r.genus == 2);
    }
  CHECK(found_gl32);
}

TEST_CASE("counts table row sums") {
  auto records = records_up_to(5);
  StatsTable t = counts_table(records);
  CHECK(t.degree_total(1) == 1);
  CHECK(t.degree_total(2) == 1);
  CHECK(t.degree_total(3) == 3);
  CHECK(t.degree_total(4) == 8);
  CHECK(t.degree_total(5) == 20);
  CHECK(t.grand_total() == 33);
  CHECK(t.max_size[4] == 1);
  CHECK(t.max_size[5] == 3);
}

TEST_CASE("series json round trip") {
  Series<Rat> s(-2, 5, {parse_rat("1/3"), Rat(0), Rat(2), Rat(-7), parse_rat("9/4"), Rat(1), Rat(0)});
  auto j = series_to_json(s);
  auto back = rat_series_from_json(j);
  CHECK(back.val == s.val);
  CHECK(back.prec == s.prec);
  CHECK(back.c == s.c);

  set_working_digits(30);
  Series<Complex> c(-1, 3, {Complex(Real("1.5"), Real("-2.25")), Complex(Real(0)), Complex(Real("0.125")),
                            Complex(Real(3), Real(4))});
  auto jc = series_to_json(c, 30);
  auto cb = complex_series_from_json(jc);
  REQUIRE(cb.c.size() == c.c.size());
  for (std::size_t i = 0; i < c.c.size(); ++i) CHECK((cb.c[i] - c.c[i]).abs() < pow(Real(10), -25));
}

TEST_CASE("parse errors carry line numbers") {
  std::string path = "/tmp/belyi_badline.jsonl";
  {
    std::ofstream out(path);
    out << R"({"key": "4T1-g0-4^1-4^1-2^1.1^2", "degree": 4, "genus": 0,)"
        << R"( "lambda": [[4],[4],[2,1,1]], "group": {"order": 24}, "size": 1})" << "\n";
    out << "this is not json\n";
  }
  CHECK_THROWS_WITH(read_jsonl(path), Catch::Matchers::ContainsSubstring(":2:"));
  std::remove(path.c_str());
}
