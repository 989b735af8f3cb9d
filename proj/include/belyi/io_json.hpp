#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "belyi/newton.hpp"
#include "belyi/records.hpp"
#include "belyi/series.hpp"
#include "belyi/verify.hpp"

namespace belyi {

inline json rat_poly_to_json(const Poly<Rat>& p) {
  json a = json::array();
  for (const auto& c : p.c) a.push_back(rat_string(c));
  return a;
}

inline Poly<Rat> rat_poly_from_json(const json& j) {
  std::vector<Rat> c;
  for (const auto& e : j) c.push_back(parse_rat(e.get<std::string>()));
  return Poly<Rat>(std::move(c));
}

inline json complex_to_json(const Complex& z, unsigned digits) {
  return json::array({real_string(z.re, digits), real_string(z.im, digits)});
}

inline Complex complex_from_json(const json& j) {
  if (j.is_string()) return Complex(to_real(parse_rat(j.get<std::string>())));
  return Complex(Real(j.at(0).get<std::string>()), Real(j.at(1).get<std::string>()));
}

// Series, per the interchange shape: valuation, truncation, coefficients.
inline json series_to_json(const Series<Rat>& s) {
  json j;
  j["valuation"] = s.val;
  j["truncation"] = s.prec;
  json c = json::array();
  for (const auto& v : s.c) c.push_back(rat_string(v));
  j["coefficients"] = c;
  return j;
}

inline Series<Rat> rat_series_from_json(const json& j) {
  std::vector<Rat> c;
  for (const auto& e : j.at("coefficients")) c.push_back(parse_rat(e.get<std::string>()));
  return Series<Rat>(j.at("valuation").get<int>(), j.at("truncation").get<int>(), std::move(c));
}

inline json series_to_json(const Series<Complex>& s, unsigned digits) {
  json j;
  j["valuation"] = s.val;
  j["truncation"] = s.prec;
  j["digits"] = digits;
  json c = json::array();
  for (const auto& v : s.c) c.push_back(complex_to_json(v, digits));
  j["coefficients"] = c;
  return j;
}

inline Series<Complex> complex_series_from_json(const json& j) {
  std::vector<Complex> c;
  for (const auto& e : j.at("coefficients")) c.push_back(complex_from_json(e));
  return Series<Complex>(j.at("valuation").get<int>(), j.at("truncation").get<int>(), std::move(c));
}

// Verification fixture: model + map + expected lambda, rationals as "p/q".
inline BelyiMapFixture fixture_from_json(const json& j) {
  BelyiMapFixture fx;
  fx.genus = j.at("genus").get<int>();
  for (int i = 0; i < 3; ++i) {
    auto parts = j.at("lambda").at(i).get<std::vector<int>>();
    fx.lambda[static_cast<std::size_t>(i)] = Partition(parts);
  }
  const json& m = j.at("map");
  if (fx.genus == 0) {
    fx.num0 = rat_poly_from_json(m.at("num"));
    fx.den0 = rat_poly_from_json(m.at("den"));
    return fx;
  }
  const json& mod = j.at("model");
  Poly<Rat> u = mod.contains("u") ? rat_poly_from_json(mod.at("u")) : Poly<Rat>();
  fx.model = HyperellipticModel<Rat>(fx.genus, u, rat_poly_from_json(mod.at("v")));
  auto fn = [&](const json& f) {
    RRFunction<Rat> r;
    if (f.contains("a")) r.a = rat_poly_from_json(f.at("a"));
    if (f.contains("b")) r.b = rat_poly_from_json(f.at("b"));
    return r;
  };
  fx.num = fn(m.at("num"));
  fx.den = fn(m.at("den"));
  return fx;
}

inline json fixture_to_json(const BelyiMapFixture& fx) {
  json j;
  j["genus"] = fx.genus;
  j["lambda"] = {fx.lambda[0].parts, fx.lambda[1].parts, fx.lambda[2].parts};
  if (fx.genus == 0) {
    j["map"] = {{"num", rat_poly_to_json(fx.num0)}, {"den", rat_poly_to_json(fx.den0)}};
    return j;
  }
  j["model"] = {{"u", rat_poly_to_json(fx.model.u)}, {"v", rat_poly_to_json(fx.model.v)}};
  auto fn = [&](const RRFunction<Rat>& f) {
    json r;
    r["a"] = rat_poly_to_json(f.a);
    r["b"] = rat_poly_to_json(f.b);
    return r;
  };
  j["map"] = {{"num", fn(fx.num)}, {"den", fn(fx.den)}};
  return j;
}

// Per-group enumeration config: degree plus labeled generator lists.
struct GroupConfig {
  uint32_t degree = 1;
  struct Entry {
    std::string label;
    std::vector<std::vector<int>> generators;  // 1-based image arrays
  };
  std::vector<Entry> groups;
};

inline GroupConfig group_config_from_json(const json& j) {
  GroupConfig g;
  g.degree = j.at("degree").get<uint32_t>();
  for (const auto& e : j.at("groups")) {
    GroupConfig::Entry entry;
    if (e.contains("label")) entry.label = e.at("label").get<std::string>();
    for (const auto& gen : e.at("generators")) entry.generators.push_back(gen.get<std::vector<int>>());
    g.groups.push_back(std::move(entry));
  }
  return g;
}

// A refinement job for the series newton-refine subtool.
struct NewtonJob {
  BelyiMapAnsatz ansatz;
  RamificationData ram;
  int gauge_order = 0;
  Complex gauge_value;
  std::vector<Complex> initial;
  int target_digits = 30;
};

inline NewtonJob newton_job_from_json(const json& j) {
  NewtonJob job;
  const json& t = j.at("triple");
  uint32_t d = t.at("degree").get<uint32_t>();
  auto tri = PermutationTriple::from_pair(Permutation::from_images1(t.at("sigma0").get<std::vector<int>>()),
                                          Permutation::from_images1(t.at("sigma1").get<std::vector<int>>()));
  job.ram = RamificationData::from_triple(tri);
  (void)d;
  const json& a = j.at("ansatz");
  job.ansatz.model = EllipticModel<Complex>(complex_from_json(a.at("c4")), complex_from_json(a.at("c6")), false);
  job.ansatz.u = complex_from_json(a.at("u"));
  job.ansatz.phi0_top = a.at("phi0_top").get<int>();
  job.ansatz.phiinf_top = a.at("phiinf_top").get<int>();
  for (const auto& c : a.at("phi0_coeffs")) job.ansatz.phi0_coeffs.push_back(complex_from_json(c));
  for (const auto& c : a.at("phiinf_coeffs")) job.ansatz.phiinf_coeffs.push_back(complex_from_json(c));
  job.gauge_order = j.at("gauge").at("order").get<int>();
  job.gauge_value = complex_from_json(j.at("gauge").at("value"));
  if (j.contains("points"))
    for (const auto& c : j.at("points")) job.initial.push_back(complex_from_json(c));
  if (j.contains("target_digits")) job.target_digits = j.at("target_digits").get<int>();
  return job;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

}  // namespace belyi
