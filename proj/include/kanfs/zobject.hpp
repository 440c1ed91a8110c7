#pragma once

// Operational presentation of objects and morphisms of the category of
// 01-substitution sets. An object is a membership predicate plus a
// seeded test-element generator; the permutation action, substitution,
// equality and support bound are the universal structural ones from
// value.hpp. Objects here are infinite; elements are produced on demand.

#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "kanfs/report.hpp"
#include "kanfs/value.hpp"

namespace kanfs {

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {  // inclusive bounds
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Bit rand_bit(Rng& rng) { return bit_of(rand_int(rng, 0, 1)); }

inline NameSet default_alphabet(std::size_t n = 4) {
  NameSet s;
  for (std::uint32_t k = 0; k < n; ++k) s.insert(Name{k});
  return s;
}

inline Name rand_name(Rng& rng, const NameSet& alphabet) {
  int k = rand_int(rng, 0, static_cast<int>(alphabet.size()) - 1);
  auto it = alphabet.begin();
  std::advance(it, k);
  return *it;
}

// Random finite permutation with carrier inside `alphabet`.
inline Perm rand_perm(Rng& rng, const NameSet& alphabet) {
  Perm p;
  int swaps = rand_int(rng, 0, 2);
  for (int k = 0; k < swaps; ++k)
    p = Perm::swap(rand_name(rng, alphabet), rand_name(rng, alphabet)).after(p);
  return p;
}

struct ZObject {
  std::string label;
  std::function<bool(const Value&)> contains;
  std::function<Value(Rng&)> gen;  // optional

  bool has_gen() const { return static_cast<bool>(gen); }
};

struct ZMorphism {
  std::string label;
  ZObject source;
  ZObject target;
  std::function<Value(const Value&)> map;

  Value operator()(const Value& x) const { return map(x); }
};

inline ZMorphism identity_morphism(ZObject x) {
  return {"id_" + x.label, x, x, [](const Value& v) { return v; }};
}

inline ZMorphism compose(const ZMorphism& g, const ZMorphism& f) {
  return {g.label + "." + f.label, f.source, g.target,
          [g, f](const Value& v) { return g(f(v)); }};
}

// ---------------------------------------------------------------------------
// Standard constructions.

inline ZObject terminal_object() {
  return {"1",
          [](const Value& v) { return std::holds_alternative<node::Unit>((*v).data); },
          [](Rng&) { return unit(); }};
}

inline ZMorphism unique_to_terminal(ZObject x) {
  return {"!_" + x.label, std::move(x), terminal_object(),
          [](const Value&) { return unit(); }};
}

// X x_Y Z for f : X -> Y, g : Z -> Y. Elements are pairs (x, z) with
// f(x) = g(z); no generator is installed by default (callers supply one
// suited to the cone they care about).
inline ZObject pullback_object(const ZMorphism& f, const ZMorphism& g) {
  ZObject r;
  r.label = f.source.label + "x_" + f.target.label + "_" + g.source.label;
  r.contains = [f, g](const Value& v) {
    if (!is_pair(v)) return false;
    if (!f.source.contains(first(v)) || !g.source.contains(second(v))) return false;
    return equal(f(first(v)), g(second(v)));
  };
  return r;
}

inline Value pullback_pair(const ZMorphism& f, const ZMorphism& g, const Value& x,
                           const Value& z) {
  if (!equal(f(x), g(z)))
    throw std::invalid_argument("pullback pair: f(x) != g(z)");
  return pair(x, z);
}

inline ZMorphism pullback_proj1(const ZMorphism& f, const ZMorphism& g) {
  return {"p1", pullback_object(f, g), f.source,
          [](const Value& v) { return first(v); }};
}

inline ZMorphism pullback_proj2(const ZMorphism& f, const ZMorphism& g) {
  return {"p2", pullback_object(f, g), g.source,
          [](const Value& v) { return second(v); }};
}

// X * Y: pairs whose support bounds are disjoint.
inline ZObject separated_product(const ZObject& x, const ZObject& y) {
  ZObject r;
  r.label = x.label + "*" + y.label;
  r.contains = [x, y](const Value& v) {
    return is_pair(v) && x.contains(first(v)) && y.contains(second(v)) &&
           disjoint(free_names(first(v)), free_names(second(v)));
  };
  if (x.has_gen() && y.has_gen()) {
    r.gen = [x, y](Rng& rng) {
      Value a = x.gen(rng);
      Value b = y.gen(rng);
      // Rename the overlap in b away; equivariance keeps membership.
      NameSet overlap = set_inter(free_names(a), free_names(b));
      NameSet avoid = set_union(free_names(a), free_names(b));
      for (Name n : overlap) {
        Name c = fresh_name(avoid);
        avoid.insert(c);
        b = act(Perm::swap(n, c), b);
      }
      return pair(a, b);
    };
  }
  return r;
}

inline Value separated_pair(const ZObject& sep, const Value& x, const Value& y) {
  Value v = pair(x, y);
  if (!sep.contains(v))
    throw std::invalid_argument("separated pair: overlapping supports");
  return v;
}

// [A]X with alpha-equality; substitution renames the binder first when
// needed (value.hpp does this structurally).
inline ZObject abstraction_object(const ZObject& x) {
  ZObject r;
  r.label = "[A]" + x.label;
  r.contains = [x](const Value& v) {
    auto* a = std::get_if<node::Abs>(&(*v).data);
    return a && x.contains(a->body);
  };
  if (x.has_gen()) {
    r.gen = [x](Rng& rng) {
      Value body = x.gen(rng);
      NameSet alpha = default_alphabet();
      return abs(rand_name(rng, alpha), body);
    };
  }
  return r;
}

// [A]_f X: abstractions <a>x with a fresh for f(x).
inline ZObject fibred_abstraction(const ZMorphism& f) {
  ZObject r;
  r.label = "[A]_" + f.label;
  r.contains = [f](const Value& v) {
    auto* a = std::get_if<node::Abs>(&(*v).data);
    if (!a || !f.source.contains(a->body)) return false;
    return !free_names(f(a->body)).count(a->bound);
  };
  if (f.source.has_gen()) {
    r.gen = [f](Rng& rng) {
      Value body = f.source.gen(rng);
      NameSet bad = free_names(f(body));
      NameSet candidates = set_diff(set_union(default_alphabet(), free_names(body)), bad);
      if (candidates.empty()) candidates.insert(fresh_name(bad));
      return abs(rand_name(rng, candidates), body);
    };
  }
  return r;
}

inline Value fibred_abs(const ZMorphism& f, Name a, const Value& x) {
  if (free_names(f(x)).count(a))
    throw std::invalid_argument("fibred abstraction: bound name not fresh for f(x)");
  return abs(a, x);
}

// ---------------------------------------------------------------------------
// Law checks.

// The four 01-substitution axioms plus closure of membership under the
// action and substitution.
inline CheckReport check_zsub_axioms(const ZObject& x, int iters,
                                     std::uint64_t seed,
                                     NameSet alphabet = default_alphabet()) {
  CheckReport rep{"zsub:" + x.label, seed, iters, {}};
  Rng rng(seed);
  for (int it = 0; it < iters; ++it) {
    Value v = x.gen(rng);
    NameSet names = set_union(alphabet, free_names(v));
    Name a = rand_name(rng, names);
    Name a2 = rand_name(rng, names);
    Bit i = rand_bit(rng);
    Bit i2 = rand_bit(rng);
    Perm p = rand_perm(rng, names);

    Value vai = subst(v, a, i);
    if (free_names(vai).count(a))
      rep.fail("freshness", "a=" + to_string(a) + " in " + show(vai));
    if (!free_names(v).count(a) && !equal(vai, v))
      rep.fail("triviality", show(v) + " (a:=" + std::to_string(to_int(i)) +
                                 ") = " + show(vai));
    if (a != a2) {
      Value lhs = subst(vai, a2, i2);
      Value rhs = subst(subst(v, a2, i2), a, i);
      if (!equal(lhs, rhs))
        rep.fail("commutation", show(lhs) + " != " + show(rhs) + " on " + show(v));
    }
    Value lhs = act(p, vai);
    Value rhs = subst(act(p, v), p(a), i);
    if (!equal(lhs, rhs))
      rep.fail("equivariance", show(lhs) + " != " + show(rhs));
    if (x.contains) {
      if (!x.contains(vai)) rep.fail("closure-subst", show(vai));
      if (!x.contains(act(p, v))) rep.fail("closure-act", show(act(p, v)));
    }
  }
  return rep;
}

// Equivariance and substitution preservation of a morphism.
inline CheckReport check_morphism(const ZMorphism& h, int iters,
                                  std::uint64_t seed,
                                  NameSet alphabet = default_alphabet()) {
  CheckReport rep{"morphism:" + h.label, seed, iters, {}};
  Rng rng(seed);
  for (int it = 0; it < iters; ++it) {
    Value v = h.source.gen(rng);
    NameSet names = set_union(alphabet, free_names(v));
    Name a = rand_name(rng, names);
    Bit i = rand_bit(rng);
    Perm p = rand_perm(rng, names);
    if (!equal(h(act(p, v)), act(p, h(v))))
      rep.fail("equivariance", "at " + show(v));
    if (!equal(h(subst(v, a, i)), subst(h(v), a, i)))
      rep.fail("subst-preservation",
               "at " + show(v) + " (" + to_string(a) + ":=" +
                   std::to_string(to_int(i)) + ")");
    if (h.target.contains && !h.target.contains(h(v)))
      rep.fail("lands-in-target", show(h(v)));
  }
  return rep;
}

}  // namespace kanfs
