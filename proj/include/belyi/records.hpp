#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "belyi/passport.hpp"
#include "belyi/pointed.hpp"

namespace belyi {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PointedEntry {
  int s = 0;
  int e = 1;
  uint64_t a = 1;
  uint64_t size = 0;
  bool operator==(const PointedEntry& o) const = default;
};

// One database row: a passport with its representatives and pointed data.
struct PassportRecord {
  std::string key;
  uint32_t degree = 1;
  int genus = 0;
  std::array<Partition, 3> lambda;
  uint64_t group_order = 1;
  uint64_t group_signature = 0;
  int group_id = 0;
  bool group_transitive = true;
  bool group_even_only = false;
  std::string external_label;
  uint64_t size = 0;
  std::vector<std::array<std::vector<int>, 3>> triples;  // 1-based image arrays
  std::vector<PointedEntry> pointed;
  bool descends_guaranteed = false;
  json attachments;

  bool operator==(const PassportRecord& o) const {
    return key == o.key && degree == o.degree && genus == o.genus && lambda == o.lambda &&
           group_order == o.group_order && group_signature == o.group_signature &&
           group_id == o.group_id && size == o.size && triples == o.triples && pointed == o.pointed &&
           descends_guaranteed == o.descends_guaranteed && external_label == o.external_label;
  }
};

struct OrbitRecord {
  std::string key;
  std::vector<int> orbit;  // Galois orbit sizes, summing to the passport size
  std::vector<std::string> labels;
};

// "8T3-g1-4^2-4^2-3^2.1^2": degree, artifact-local group id, genus, lambda
inline std::string make_key(uint32_t degree, int group_id, int genus,
                            const std::array<Partition, 3>& lambda) {
  std::string k = std::to_string(degree) + "T" + std::to_string(group_id) + "-g" + std::to_string(genus);
  for (const auto& l : lambda) k += "-" + l.exponent_string('.');
  return k;
}

struct ParsedKey {
  uint32_t degree;
  int group_id;
  int genus;
  std::array<Partition, 3> lambda;
};

inline ParsedKey parse_key(const std::string& key) {
  ParsedKey out;
  std::size_t t = key.find('T');
  if (t == std::string::npos) throw ParseError("key missing T: " + key);
  out.degree = static_cast<uint32_t>(std::stoul(key.substr(0, t)));
  std::size_t d1 = key.find('-', t);
  if (d1 == std::string::npos) throw ParseError("malformed key: " + key);
  out.group_id = std::stoi(key.substr(t + 1, d1 - t - 1));
  if (key[d1 + 1] != 'g') throw ParseError("key missing genus: " + key);
  std::size_t d2 = key.find('-', d1 + 1);
  out.genus = std::stoi(key.substr(d1 + 2, d2 - d1 - 2));
  std::size_t pos = d2 + 1;
  for (int i = 0; i < 3; ++i) {
    std::size_t next = key.find('-', pos);
    std::string tok = next == std::string::npos ? key.substr(pos) : key.substr(pos, next - pos);
    out.lambda[static_cast<std::size_t>(i)] = Partition::parse_exponent(tok);
    pos = next == std::string::npos ? key.size() : next + 1;
  }
  return out;
}

inline PassportRecord record_from_passport(const Passport& p, bool with_pointed = false) {
  PassportRecord r;
  r.degree = p.degree;
  r.genus = p.genus;
  r.lambda = p.lambda;
  r.group_order = p.group.order;
  r.group_signature = p.group.signature;
  r.group_id = p.group.id;
  r.group_transitive = p.group.transitive;
  r.group_even_only = p.group.even_only;
  r.external_label = p.group.external_label;
  r.size = p.size();
  for (const auto& t : p.triples)
    r.triples.push_back({t.s0.images1(), t.s1.images1(), t.sinf.images1()});
  if (with_pointed) {
    for (const auto& pp : pointed_classes(p))
      r.pointed.push_back({pp.base, pp.length, pp.aut_order, pp.size});
    r.descends_guaranteed = descends_by_size(p).descends;
  }
  r.key = make_key(r.degree, r.group_id, r.genus, r.lambda);
  return r;
}

inline Passport passport_from_record(const PassportRecord& r) {
  Passport p;
  p.degree = r.degree;
  p.genus = r.genus;
  p.lambda = r.lambda;
  p.group.degree = r.degree;
  p.group.order = r.group_order;
  p.group.signature = r.group_signature;
  p.group.id = r.group_id;
  p.group.transitive = r.group_transitive;
  p.group.even_only = r.group_even_only;
  p.group.external_label = r.external_label;
  for (const auto& t : r.triples)
    p.triples.push_back(PermutationTriple(Permutation::from_images1(t[0]), Permutation::from_images1(t[1]),
                                          Permutation::from_images1(t[2])));
  // monodromy is left unmaterialized; reconstruct from the triples if needed
  return p;
}

namespace detail {
inline json partition_to_json(const Partition& p) { return json(p.parts); }
inline Partition partition_from_json(const json& j) { return Partition(j.get<std::vector<int>>()); }

inline char hexdigit(unsigned v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

inline std::string hex64(uint64_t v) {
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = hexdigit(v & 15);
    v >>= 4;
  }
  return s;
}

inline uint64_t from_hex64(const std::string& s) {
  uint64_t v = 0;
  for (char c : s) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') v |= static_cast<uint64_t>(c - 'a' + 10);
    else throw ParseError("bad signature hex");
  }
  return v;
}
}  // namespace detail

inline json record_to_json(const PassportRecord& r) {
  json j;
  j["key"] = r.key;
  j["degree"] = r.degree;
  j["genus"] = r.genus;
  j["lambda"] = {detail::partition_to_json(r.lambda[0]), detail::partition_to_json(r.lambda[1]),
                 detail::partition_to_json(r.lambda[2])};
  json g;
  g["order"] = r.group_order;
  g["signature"] = detail::hex64(r.group_signature);
  g["id"] = r.group_id;
  g["transitive"] = r.group_transitive;
  g["even_only"] = r.group_even_only;
  if (!r.external_label.empty()) g["external_label"] = r.external_label;
  j["group"] = g;
  j["size"] = r.size;
  json ts = json::array();
  for (const auto& t : r.triples) ts.push_back({t[0], t[1], t[2]});
  j["triples"] = ts;
  if (!r.pointed.empty()) {
    json ps = json::array();
    for (const auto& p : r.pointed) ps.push_back({{"s", p.s}, {"e", p.e}, {"a", p.a}, {"size", p.size}});
    j["pointed"] = ps;
  }
  j["descends_guaranteed"] = r.descends_guaranteed;
  if (!r.attachments.is_null()) j["attachments"] = r.attachments;
  return j;
}

inline PassportRecord record_from_json(const json& j) {
  PassportRecord r;
  r.key = j.at("key").get<std::string>();
  r.degree = j.at("degree").get<uint32_t>();
  r.genus = j.at("genus").get<int>();
  for (int i = 0; i < 3; ++i)
    r.lambda[static_cast<std::size_t>(i)] = detail::partition_from_json(j.at("lambda").at(i));
  const json& g = j.at("group");
  r.group_order = g.at("order").get<uint64_t>();
  if (g.contains("signature")) r.group_signature = detail::from_hex64(g.at("signature").get<std::string>());
  if (g.contains("id")) r.group_id = g.at("id").get<int>();
  if (g.contains("transitive")) r.group_transitive = g.at("transitive").get<bool>();
  if (g.contains("even_only")) r.group_even_only = g.at("even_only").get<bool>();
  if (g.contains("external_label")) r.external_label = g.at("external_label").get<std::string>();
  r.size = j.at("size").get<uint64_t>();
  if (j.contains("triples"))
    for (const auto& t : j.at("triples"))
      r.triples.push_back({t.at(0).get<std::vector<int>>(), t.at(1).get<std::vector<int>>(),
                           t.at(2).get<std::vector<int>>()});
  if (j.contains("pointed"))
    for (const auto& p : j.at("pointed"))
      r.pointed.push_back({p.at("s").get<int>(), p.at("e").get<int>(), p.at("a").get<uint64_t>(),
                           p.at("size").get<uint64_t>()});
  if (j.contains("descends_guaranteed")) r.descends_guaranteed = j.at("descends_guaranteed").get<bool>();
  if (j.contains("attachments")) r.attachments = j.at("attachments");
  if (r.size != r.triples.size() && !r.triples.empty())
    throw ParseError("record size disagrees with triple count for key " + r.key);
  ParsedKey pk = parse_key(r.key);  // the key must parse back consistently
  if (pk.degree != r.degree || pk.genus != r.genus || !(pk.lambda == r.lambda))
    throw ParseError("key does not match record fields: " + r.key);
  return r;
}

// records are kept sorted by (degree, group id, genus, lambda) as encoded in
// the key
inline bool record_key_less(const PassportRecord& a, const PassportRecord& b) {
  ParsedKey x = parse_key(a.key), y = parse_key(b.key);
  if (x.degree != y.degree) return x.degree < y.degree;
  if (x.genus != y.genus) return x.genus < y.genus;
  LambdaLess ll;
  if (ll(x.lambda, y.lambda)) return true;
  if (ll(y.lambda, x.lambda)) return false;
  if (x.group_id != y.group_id) return x.group_id < y.group_id;
  return a.key < b.key;
}

inline std::vector<PassportRecord> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<PassportRecord> out;
  std::map<std::string, int> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      out.push_back(record_from_json(j));
    } catch (const std::exception& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (++seen[out.back().key] > 1)
      throw ParseError(path + ":" + std::to_string(lineno) + ": duplicate key " + out.back().key);
  }
  return out;
}

// sorted, one record per line, written to a temporary file and renamed into
// place so readers never observe a partial file
inline void write_jsonl(const std::string& path, std::vector<PassportRecord> records) {
  std::sort(records.begin(), records.end(), record_key_less);
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].key == records[i - 1].key)
      throw ParseError("duplicate key on write: " + records[i].key);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ParseError("cannot open " + tmp + " for writing");
    for (const auto& r : records) out << record_to_json(r).dump() << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ParseError("cannot rename into " + path);
  }
}

inline std::vector<OrbitRecord> read_orbits(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<OrbitRecord> out;
  std::string line;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      OrbitRecord r;
      r.key = j.at("key").get<std::string>();
      r.orbit = j.at("orbit").get<std::vector<int>>();
      if (j.contains("labels")) r.labels = j.at("labels").get<std::vector<std::string>>();
      if (++seen[r.key] > 1) throw ParseError("duplicate key " + r.key);
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline void write_orbits(const std::string& path, std::vector<OrbitRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const OrbitRecord& a, const OrbitRecord& b) { return a.key < b.key; });
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ParseError("cannot open " + tmp + " for writing");
    for (const auto& r : records) {
      json j;
      j["key"] = r.key;
      j["orbit"] = r.orbit;
      if (!r.labels.empty()) j["labels"] = r.labels;
      out << j.dump() << "\n";
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ParseError("cannot rename into " + path);
  }
}

}  // namespace belyi
