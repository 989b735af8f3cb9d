#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace belyi {

// Cycle type of a permutation, or any partition of a positive integer.
// Parts are kept in weakly decreasing order.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i > 0 && parts[i] > parts[i - 1])
        throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }

  int total() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  std::size_t size() const { return parts.size(); }
  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator!=(const Partition& o) const { return parts != o.parts; }
  // plain lexicographic order on the descending part lists
  bool operator<(const Partition& o) const { return parts < o.parts; }

  // "6^1 1^1" style display, parts descending
  std::string exponent_string(char sep = ' ') const {
    std::string out;
    std::size_t i = 0;
    while (i < parts.size()) {
      std::size_t j = i;
      while (j < parts.size() && parts[j] == parts[i]) ++j;
      if (!out.empty()) out += sep;
      out += std::to_string(parts[i]) + "^" + std::to_string(j - i);
      i = j;
    }
    if (out.empty()) out = "0^0";
    return out;
  }

  static Partition parse_exponent(const std::string& s) {
    std::vector<int> parts;
    std::size_t i = 0;
    auto read_int = [&](const char* what) {
      std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == start) throw std::invalid_argument(std::string("bad partition token: expected ") + what);
      return std::stoi(s.substr(start, i - start));
    };
    while (i < s.size()) {
      int part = read_int("part");
      int mult = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        mult = read_int("multiplicity");
      }
      for (int k = 0; k < mult; ++k) parts.push_back(part);
      if (i < s.size()) {
        if (s[i] != '.' && s[i] != ' ') throw std::invalid_argument("bad partition separator");
        ++i;
      }
    }
    return Partition(parts);
  }
};

namespace detail {
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

// A permutation of {0,...,d-1}, d <= 16, packed four bits per point.
// The image of point i sits at bit offset 4*(15-i), so the raw words of two
// permutations of equal degree compare exactly like their image arrays.
// Slots at positions >= degree hold the identity.
//
// Composition convention is right action throughout: (p*q) applies p first,
// i.e. i^(pq) = (i^p)^q.
class Permutation {
 public:
  static constexpr uint32_t kMaxDegree = 16;

  Permutation() : bits_(kIdentityBits), deg_(1) {}

  static Permutation identity(uint32_t degree) {
    check_degree(degree);
    Permutation p;
    p.deg_ = degree;
    p.bits_ = kIdentityBits;
    return p;
  }

  // images given 0-based
  static Permutation from_images0(const std::vector<int>& im) {
    check_degree(static_cast<uint32_t>(im.size()));
    uint32_t d = static_cast<uint32_t>(im.size());
    uint32_t seen = 0;
    uint64_t bits = kIdentityBits;
    for (uint32_t i = 0; i < d; ++i) {
      int v = im[i];
      if (v < 0 || v >= static_cast<int>(d)) throw std::invalid_argument("image out of range");
      if (seen & (1u << v)) throw std::invalid_argument("images are not a bijection");
      seen |= 1u << v;
      bits = set_slot(bits, i, static_cast<uint32_t>(v));
    }
    Permutation p;
    p.deg_ = d;
    p.bits_ = bits;
    return p;
  }

  // the external JSON form: 1-based image arrays, images[i] = i^sigma
  static Permutation from_images1(const std::vector<int>& im) {
    std::vector<int> im0(im.size());
    for (std::size_t i = 0; i < im.size(); ++i) im0[i] = im[i] - 1;
    return from_images0(im0);
  }

  // cycle notation with commas, e.g. "(1,4,2,5,3)" or "(1,7,2)(3,5)(4,6)";
  // "()" is the identity.  Points are 1-based; fixed points may be omitted.
  static Permutation from_cycles(const std::string& s, uint32_t degree) {
    check_degree(degree);
    std::vector<int> im(degree);
    for (uint32_t i = 0; i < degree; ++i) im[i] = static_cast<int>(i);
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip_ws();
    uint32_t used = 0;
    while (i < s.size()) {
      if (s[i] != '(') throw std::invalid_argument("expected '(' in cycle string");
      ++i;
      std::vector<int> cyc;
      skip_ws();
      while (i < s.size() && s[i] != ')') {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw std::invalid_argument("expected point in cycle string");
        int v = std::stoi(s.substr(start, i - start)) - 1;
        if (v < 0 || v >= static_cast<int>(degree)) throw std::invalid_argument("cycle point out of range");
        if (used & (1u << v)) throw std::invalid_argument("repeated point in cycle string");
        used |= 1u << v;
        cyc.push_back(v);
        skip_ws();
        if (i < s.size() && (s[i] == ',' || s[i] == ' ')) { ++i; skip_ws(); }
      }
      if (i >= s.size()) throw std::invalid_argument("unterminated cycle");
      ++i;  // ')'
      for (std::size_t k = 0; k < cyc.size(); ++k) im[cyc[k]] = cyc[(k + 1) % cyc.size()];
      skip_ws();
    }
    return from_images0(im);
  }

  uint32_t degree() const { return deg_; }
  uint64_t raw() const { return bits_; }

  int operator()(int i) const { return static_cast<int>(get_slot(bits_, static_cast<uint32_t>(i))); }

  bool is_identity() const { return bits_ == kIdentityBits; }

  // this first, then q
  Permutation operator*(const Permutation& q) const {
    if (deg_ != q.deg_) throw std::invalid_argument("degree mismatch in compose");
    Permutation r;
    r.deg_ = deg_;
    uint64_t bits = 0;
    for (uint32_t i = 0; i < kMaxDegree; ++i)
      bits = set_slot(bits, i, get_slot(q.bits_, get_slot(bits_, i)));
    r.bits_ = bits;
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.deg_ = deg_;
    uint64_t bits = 0;
    for (uint32_t i = 0; i < kMaxDegree; ++i)
      bits = set_slot(bits, get_slot(bits_, i), i);
    r.bits_ = bits;
    return r;
  }

  // tau^{-1} * this * tau, the right conjugation action
  Permutation conj(const Permutation& tau) const {
    if (deg_ != tau.deg_) throw std::invalid_argument("degree mismatch in conj");
    Permutation r;
    r.deg_ = deg_;
    uint64_t bits = 0;
    for (uint32_t i = 0; i < kMaxDegree; ++i)
      bits = set_slot(bits, get_slot(tau.bits_, i), get_slot(tau.bits_, get_slot(bits_, i)));
    r.bits_ = bits;
    return r;
  }

  bool commutes_with(const Permutation& q) const {
    return (*this * q).bits_ == (q * *this).bits_;
  }

  // cycles sorted by smallest point, each starting at its smallest point;
  // fixed points included as singletons
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    uint32_t seen = 0;
    for (uint32_t i = 0; i < deg_; ++i) {
      if (seen & (1u << i)) continue;
      std::vector<int> cyc;
      uint32_t j = i;
      do {
        seen |= 1u << j;
        cyc.push_back(static_cast<int>(j));
        j = get_slot(bits_, j);
      } while (j != i);
      out.push_back(std::move(cyc));
    }
    return out;
  }

  std::size_t cycle_count() const {
    std::size_t n = 0;
    uint32_t seen = 0;
    for (uint32_t i = 0; i < deg_; ++i) {
      if (seen & (1u << i)) continue;
      ++n;
      uint32_t j = i;
      do {
        seen |= 1u << j;
        j = get_slot(bits_, j);
      } while (j != i);
    }
    return n;
  }

  Partition cycle_type() const {
    std::vector<int> lens;
    for (const auto& c : cycles()) lens.push_back(static_cast<int>(c.size()));
    std::sort(lens.begin(), lens.end(), std::greater<int>());
    return Partition(std::move(lens));
  }

  // d minus the number of cycles
  int index() const { return static_cast<int>(deg_) - static_cast<int>(cycle_count()); }

  bool is_even() const { return index() % 2 == 0; }

  std::vector<int> images1() const {
    std::vector<int> im(deg_);
    for (uint32_t i = 0; i < deg_; ++i) im[i] = static_cast<int>(get_slot(bits_, i)) + 1;
    return im;
  }

  std::string cycle_string() const {
    std::string out;
    for (const auto& c : cycles()) {
      if (c.size() == 1) continue;
      out += '(';
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(c[k] + 1);
      }
      out += ')';
    }
    if (out.empty()) out = "()";
    return out;
  }

  bool operator==(const Permutation& o) const { return deg_ == o.deg_ && bits_ == o.bits_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }
  // image-array lexicographic order (within a fixed degree)
  bool operator<(const Permutation& o) const {
    return deg_ != o.deg_ ? deg_ < o.deg_ : bits_ < o.bits_;
  }

  uint64_t hash() const { return detail::splitmix64(bits_ ^ (uint64_t(deg_) << 58)); }

 private:
  static constexpr uint64_t kIdentityBits = 0x0123456789abcdefULL;

  static void check_degree(uint32_t d) {
    if (d == 0 || d > kMaxDegree) throw std::invalid_argument("degree must be in 1..16");
  }
  static uint32_t get_slot(uint64_t bits, uint32_t i) {
    return static_cast<uint32_t>(bits >> (4 * (kMaxDegree - 1 - i))) & 15u;
  }
  static uint64_t set_slot(uint64_t bits, uint32_t i, uint32_t v) {
    uint32_t sh = 4 * (kMaxDegree - 1 - i);
    return (bits & ~(uint64_t(15) << sh)) | (uint64_t(v) << sh);
  }

  uint64_t bits_;
  uint32_t deg_;
};

struct PermHash {
  std::size_t operator()(const Permutation& p) const { return static_cast<std::size_t>(p.hash()); }
};

inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }
inline Permutation inverse(const Permutation& p) { return p.inverse(); }
inline Partition cycle_type(const Permutation& p) { return p.cycle_type(); }
inline int perm_index(const Permutation& p) { return p.index(); }

}  // namespace belyi
