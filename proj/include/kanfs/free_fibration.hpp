#pragma once

// The free factorisation object K f: the term algebra of formal box
// fillers (KBox) and their Kan composites (KBind) over a morphism f,
// with lambda/rho, rank, the functorial action on squares, the
// comultiplication sigma and the multiplication pi.
//
// K f is one inductive family of Values; the omega-indexed stages exist
// only virtually through rank().

#include <algorithm>

#include "kanfs/boxes.hpp"

namespace kanfs {

// rho on raw K-terms: Base(x) -> f(x); a formal filler -> its base; a
// Kan composite -> base with the bound direction substituted away.
inline Value rho_value(const ZMorphism& f, const Value& t) {
  if (is_kbase(t)) return f(kbase_elem(t));
  if (is_kbox(t)) return kbox_data(t).base;
  const auto& kb = kbind_data(t);
  return subst(kb.box.base, kb.bound, kb.box.missing_bit());
}

inline ZMorphism rho_lite(const ZMorphism& f) {
  return {"rho_" + f.label, {}, {},
          [f](const Value& t) { return rho_value(f, t); }};
}

inline bool is_kterm(const ZMorphism& f, const Value& t) {
  if (is_kbase(t)) return f.source.contains(kbase_elem(t));
  const BoxData* box = nullptr;
  if (is_kbox(t)) box = &kbox_data(t);
  else if (is_kbind(t)) box = &kbind_data(t).box;
  else return false;
  for (const auto& [b, i, face] : box->faces)
    if (!is_kterm(f, face)) return false;
  if (f.target.contains && !f.target.contains(box->base)) return false;
  return box_violation(*box, rho_lite(f)).empty();
}

inline int rank(const Value& t) {
  if (is_kbase(t)) return 0;
  const BoxData& box = is_kbox(t) ? kbox_data(t) : kbind_data(t).box;
  int n = 0;
  for (const auto& [b, i, face] : box.faces) n = std::max(n, rank(face));
  return n + 1;
}

struct FreeFibration {
  ZMorphism f;       // X -> Y, the factored map
  ZObject object;    // K f
  ZMorphism lambda;  // X -> K f
  ZMorphism rho;     // K f -> Y
};

// Random K f terms of rank <= max_rank, biased toward small terms.
inline std::function<Value(Rng&)> kterm_generator(const ZMorphism& f,
                                                  int max_rank = 3,
                                                  NameSet alphabet = default_alphabet());

inline FreeFibration make_free_fibration(const ZMorphism& f) {
  FreeFibration ff;
  ff.f = f;
  ff.object.label = "K(" + f.label + ")";
  ff.object.contains = [f](const Value& t) { return is_kterm(f, t); };
  if (f.source.has_gen()) ff.object.gen = kterm_generator(f);
  ff.lambda = {"lambda_" + f.label, f.source, ff.object,
               [](const Value& x) { return kbase(x); }};
  ff.rho = {"rho_" + f.label, ff.object, f.target,
            [f](const Value& t) { return rho_value(f, t); }};
  return ff;
}

inline std::function<Value(Rng&)> kterm_generator(const ZMorphism& f,
                                                  int max_rank, NameSet alphabet) {
  ZMorphism rho = rho_lite(f);
  auto rec = std::make_shared<std::function<Value(Rng&, int)>>();
  *rec = [f, rho, alphabet, rec](Rng& rng, int depth) -> Value {
    if (depth <= 0 || rand_int(rng, 0, 9) < 4) return kbase(f.source.gen(rng));
    Value t = (*rec)(rng, depth - 1);
    NameSet pool = set_union(alphabet, free_names(t));
    NameSet A;
    int size = rand_int(rng, 1, 2);
    for (int k = 0; k < size; ++k) A.insert(rand_name(rng, pool));
    Name a = rand_name(rng, A);
    bool up = rand_int(rng, 0, 1) == 1;
    Value v = kbox(box_of_point(rho, t, A, a, up));
    int coin = rand_int(rng, 0, 9);
    if (coin < 3) {
      v = subst(v, a, up ? Bit::one : Bit::zero);
    } else if (coin < 5) {
      v = subst(v, rand_name(rng, pool), rand_bit(rng));
    } else if (coin < 7) {
      v = act(rand_perm(rng, pool), v);
    }
    return v;
  };
  return [rec, max_rank](Rng& rng) { return (*rec)(rng, max_rank); };
}

// ---------------------------------------------------------------------------
// Functorial action. A square (h, k) : f -> g with g . h = k . f
// induces K(h, k) : K f -> K g by structural recursion.

struct Square {
  ZMorphism top;     // h : X -> U
  ZMorphism bottom;  // k : Y -> V
};

inline CheckReport check_square(const Square& sq, const ZMorphism& f,
                                const ZMorphism& g, int iters, std::uint64_t seed) {
  CheckReport rep{"square:" + sq.top.label + "/" + sq.bottom.label, seed, iters, {}};
  Rng rng(seed);
  for (int it = 0; it < iters; ++it) {
    Value x = f.source.gen(rng);
    if (!equal(g(sq.top(x)), sq.bottom(f(x))))
      rep.fail("commutation", "at " + show(x));
  }
  return rep;
}

inline Value kmap_value(const Square& sq, const Value& t) {
  auto map_box = [&sq](const BoxData& box) {
    BoxData r;
    r.up = box.up;
    r.a = box.a;
    for (const auto& [b, i, face] : box.faces)
      r.faces.emplace_back(b, i, kmap_value(sq, face));
    r.base = sq.bottom(box.base);
    r.sort_faces();
    return r;
  };
  if (is_kbase(t)) return kbase(sq.top(kbase_elem(t)));
  if (is_kbox(t)) return kbox(map_box(kbox_data(t)));
  const auto& kb = kbind_data(t);
  return kbind(kb.bound, map_box(kb.box));
}

inline ZMorphism kmap(const Square& sq, const FreeFibration& ff,
                      const FreeFibration& fg) {
  return {"K(" + sq.top.label + "," + sq.bottom.label + ")", ff.object, fg.object,
          [sq](const Value& t) { return kmap_value(sq, t); }};
}

// ---------------------------------------------------------------------------
// Comultiplication sigma_f : K f -> K lambda_f. A formal filler is sent
// to a formal filler over itself.

inline Value sigma_value(const Value& t) {
  auto map_box = [](const BoxData& box) {
    BoxData r;
    r.up = box.up;
    r.a = box.a;
    for (const auto& [b, i, face] : box.faces)
      r.faces.emplace_back(b, i, sigma_value(face));
    r.base = kbox(box);  // the original filler, as an element of K f
    r.sort_faces();
    return r;
  };
  if (is_kbase(t)) return t;
  if (is_kbox(t)) return kbox(map_box(kbox_data(t)));
  const auto& kb = kbind_data(t);
  return kbind(kb.bound, map_box(kb.box));
}

inline ZMorphism sigma(const FreeFibration& ff, const FreeFibration& ff_lambda) {
  return {"sigma_" + ff.f.label, ff.object, ff_lambda.object,
          [](const Value& t) { return sigma_value(t); }};
}

// ---------------------------------------------------------------------------
// Multiplication pi_f : K rho_f -> K f. A base element is already a
// K f term; formal structure collapses layerwise.

inline Value pi_value(const Value& t) {
  auto map_box = [](const BoxData& box) {
    BoxData r;
    r.up = box.up;
    r.a = box.a;
    for (const auto& [b, i, face] : box.faces)
      r.faces.emplace_back(b, i, pi_value(face));
    r.base = box.base;
    r.sort_faces();
    return r;
  };
  if (is_kbase(t)) return kbase_elem(t);
  if (is_kbox(t)) return kbox(map_box(kbox_data(t)));
  const auto& kb = kbind_data(t);
  return kbind(kb.bound, map_box(kb.box));
}

inline ZMorphism pi(const FreeFibration& ff, const FreeFibration& ff_rho) {
  return {"pi_" + ff.f.label, ff_rho.object, ff.object,
          [](const Value& t) { return pi_value(t); }};
}

}  // namespace kanfs
