#pragma once

// Names (atoms), finite permutations and finite name sets.
//
// Atoms are interned naturals a0, a1, ...  Freshness always picks the
// smallest unused id so that every computation in the library is
// deterministic and reproducible.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kanfs {

struct Name {
  std::uint32_t id = 0;

  friend auto operator<=>(const Name&, const Name&) = default;
};

inline std::string to_string(Name a) { return "a" + std::to_string(a.id); }

using NameSet = std::set<Name>;

inline NameSet set_union(const NameSet& a, const NameSet& b) {
  NameSet r = a;
  r.insert(b.begin(), b.end());
  return r;
}

inline NameSet set_diff(const NameSet& a, const NameSet& b) {
  NameSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(r, r.end()));
  return r;
}

inline NameSet set_inter(const NameSet& a, const NameSet& b) {
  NameSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(r, r.end()));
  return r;
}

inline bool disjoint(const NameSet& a, const NameSet& b) {
  return set_inter(a, b).empty();
}

// Smallest atom not in `avoid`.
inline Name fresh_name(const NameSet& avoid) {
  std::uint32_t id = 0;
  for (Name a : avoid) {
    if (a.id == id)
      ++id;
    else if (a.id > id)
      break;
  }
  return Name{id};
}

// `count` distinct atoms outside `avoid`, smallest first.
inline std::vector<Name> fresh_names(NameSet avoid, std::size_t count) {
  std::vector<Name> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Name a = fresh_name(avoid);
    avoid.insert(a);
    out.push_back(a);
  }
  return out;
}

// A finite permutation of atoms: stored as the graph of its moved
// points. Identity outside the carrier.
class Perm {
 public:
  Perm() = default;

  static Perm swap(Name a, Name b) {
    Perm p;
    if (a != b) {
      p.moved_.emplace_back(a, b);
      p.moved_.emplace_back(b, a);
      p.normalize();
    }
    return p;
  }

  Name operator()(Name a) const {
    for (const auto& [from, to] : moved_)
      if (from == a) return to;
    return a;
  }

  bool is_identity() const { return moved_.empty(); }

  NameSet carrier() const {
    NameSet s;
    for (const auto& [from, to] : moved_) s.insert(from);
    return s;
  }

  // this ∘ other: apply `other` first.
  Perm after(const Perm& other) const {
    Perm r;
    NameSet dom = set_union(carrier(), other.carrier());
    for (Name a : dom) {
      Name b = (*this)(other(a));
      if (b != a) r.moved_.emplace_back(a, b);
    }
    r.normalize();
    return r;
  }

  Perm inverse() const {
    Perm r;
    for (const auto& [from, to] : moved_) r.moved_.emplace_back(to, from);
    r.normalize();
    return r;
  }

  friend bool operator==(const Perm& a, const Perm& b) {
    return a.moved_ == b.moved_;
  }

 private:
  void normalize() {
    std::sort(moved_.begin(), moved_.end());
    moved_.erase(std::remove_if(moved_.begin(), moved_.end(),
                                [](const auto& p) { return p.first == p.second; }),
                 moved_.end());
  }

  std::vector<std::pair<Name, Name>> moved_;
};

// Direction/endpoint values: the two-element set of substitution targets.
enum class Bit : int { zero = 0, one = 1 };

inline Bit flip(Bit i) { return i == Bit::zero ? Bit::one : Bit::zero; }
inline int to_int(Bit i) { return static_cast<int>(i); }
inline Bit bit_of(int v) { return v ? Bit::one : Bit::zero; }

}  // namespace kanfs
