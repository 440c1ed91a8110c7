#pragma once

// Open boxes over a morphism, fillers, uniform Kan filling operators.
//
// A box reuses BoxData from value.hpp: kind (1-open misses the face
// (a,1), 0-open misses (a,0)), the finite name set A (implicit as the
// face index names plus a), a total face map on (A x 2) minus the
// missing slot, and a base element of the target. Validation is eager:
// code consuming a box made through make_open_box may assume the
// freshness, adjacency and over-base conditions.

#include <functional>
#include <stdexcept>
#include <string>

#include "kanfs/zobject.hpp"

namespace kanfs {

struct BoxError : std::runtime_error {
  enum Kind { FreshnessViolation, AdjacencyViolation, NotOverBase, BadShape,
              IllegalSubstitution };
  Kind kind;
  BoxError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Checks the three box conditions against the reference morphism f.
// Returns an empty string when valid, otherwise a description.
inline std::string box_violation(const BoxData& box, const ZMorphism& f) {
  NameSet names = box.names();
  for (Name b : names)
    for (Bit i : {Bit::zero, Bit::one}) {
      bool missing = (b == box.a && i == box.missing_bit());
      if (missing != (box.face(b, i) == nullptr))
        return "shape: face table does not match (A x 2) minus the open slot";
    }
  if (box.faces.size() != 2 * names.size() - 1)
    return "shape: duplicate or missing face entries";
  for (const auto& [b, i, t] : box.faces) {
    if (free_names(t).count(b))
      return "freshness: " + to_string(b) + " in " + show(t);
    if (!equal(f(t), subst(box.base, b, i)))
      return "over-base: f(u(" + to_string(b) + "," + std::to_string(to_int(i)) +
             ")) != y(" + to_string(b) + ":=" + std::to_string(to_int(i)) + ")";
  }
  for (const auto& [b, i, t] : box.faces)
    for (const auto& [b2, i2, t2] : box.faces) {
      if (b == b2) continue;
      if (!equal(subst(t, b2, i2), subst(t2, b, i)))
        return "adjacency: u(" + to_string(b) + "," + std::to_string(to_int(i)) +
               ") vs u(" + to_string(b2) + "," + std::to_string(to_int(i2)) + ")";
    }
  return {};
}

inline BoxData make_open_box(bool up, Name a,
                             std::vector<std::tuple<Name, Bit, Value>> faces,
                             Value base, const ZMorphism& f) {
  BoxData box{up, a, std::move(faces), std::move(base)};
  box.sort_faces();
  std::string err = box_violation(box, f);
  if (!err.empty()) {
    auto kind = BoxError::BadShape;
    if (err.starts_with("freshness")) kind = BoxError::FreshnessViolation;
    if (err.starts_with("adjacency")) kind = BoxError::AdjacencyViolation;
    if (err.starts_with("over-base")) kind = BoxError::NotOverBase;
    throw BoxError(kind, err);
  }
  return box;
}

// Uniformity actions on boxes: permutations re-index; substitutions
// must avoid A.
inline BoxData box_apply(const BoxData& box, const Perm& p) {
  return box_act(p, box);
}

inline BoxData box_apply(const BoxData& box, Name c, Bit i) {
  if (box.names().count(c))
    throw BoxError(BoxError::IllegalSubstitution,
                   "substituted name " + to_string(c) + " lies in A");
  return box_subst(box, c, i);
}

inline bool is_filler(const Value& x, const BoxData& box, const ZMorphism& f) {
  for (const auto& [b, i, t] : box.faces)
    if (!equal(subst(x, b, i), t)) return false;
  return equal(f(x), box.base);
}

// The canonical box whose faces are the substitution instances of a
// single point. Always satisfies the box conditions (by the three
// substitution axioms); used pervasively by the test generators.
inline BoxData box_of_point(const ZMorphism& f, const Value& x, const NameSet& A,
                            Name a, bool up) {
  BoxData box{up, a, {}, f(x)};
  for (Name b : A)
    for (Bit i : {Bit::zero, Bit::one}) {
      if (b == a && i == box.missing_bit()) continue;
      box.faces.emplace_back(b, i, subst(x, b, i));
    }
  box.sort_faces();
  return box;
}

struct FillingOperator {
  std::function<Value(const BoxData&)> up;
  std::function<Value(const BoxData&)> down;

  Value fill(const BoxData& box) const { return box.up ? up(box) : down(box); }
};

struct FibrationStructure {
  ZMorphism morphism;
  FillingOperator fill;
};

using BoxGenerator = std::function<BoxData(Rng&)>;

// Random boxes of a point over f, both kinds, |A| <= 3.
inline BoxGenerator point_box_generator(const ZMorphism& f,
                                        NameSet alphabet = default_alphabet()) {
  return [f, alphabet](Rng& rng) {
    Value x = f.source.gen(rng);
    NameSet pool = set_union(alphabet, free_names(x));
    int size = rand_int(rng, 1, 3);
    NameSet A;
    for (int k = 0; k < size; ++k) A.insert(rand_name(rng, pool));
    Name a = rand_name(rng, A);
    bool up = rand_int(rng, 0, 1) == 1;
    return box_of_point(f, x, A, a, up);
  };
}

// Filler correctness plus the two uniformity conditions, sampled.
inline CheckReport check_uniformity(const FibrationStructure& fs,
                                    const BoxGenerator& boxes, int iters,
                                    std::uint64_t seed,
                                    NameSet alphabet = default_alphabet()) {
  CheckReport rep{"uniformity:" + fs.morphism.label, seed, iters, {}};
  Rng rng(seed);
  for (int it = 0; it < iters; ++it) {
    BoxData box = boxes(rng);
    Value filled = fs.fill.fill(box);
    if (!is_filler(filled, box, fs.morphism))
      rep.fail("filler", show_box(box));

    NameSet names = set_union(alphabet, box_free(box));
    Perm p = rand_perm(rng, names);
    if (!equal(fs.fill.fill(box_apply(box, p)), act(p, filled)))
      rep.fail("perm-uniformity", show_box(box));

    NameSet candidates = set_diff(names, box.names());
    candidates.insert(fresh_name(names));
    Name c = rand_name(rng, candidates);
    Bit i = rand_bit(rng);
    if (!equal(fs.fill.fill(box_apply(box, c, i)), subst(filled, c, i)))
      rep.fail("subst-uniformity", show_box(box) + " (" + to_string(c) + ":=" +
                                       std::to_string(to_int(i)) + ")");
  }
  return rep;
}

}  // namespace kanfs
