#pragma once

// The two-way translation between algebra structures on a morphism and
// uniform Kan filling operators, plus the sampled round-trip
// correspondence checks.

#include "kanfs/free_fibration.hpp"

namespace kanfs {

// g : K f -> X with (at least) the unit law g . lambda_f = id and the
// codomain law f . g = rho_f; monad algebras also satisfy
// g . K(g,1) = g . pi_f.
struct AlgebraStructure {
  ZMorphism f;       // the structured morphism X -> Y
  FreeFibration kf;  // the free fibration over f
  ZMorphism g;       // K f -> X
};

// The multiplication pi_f as an algebra on rho_f: the free algebra.
inline AlgebraStructure canonical_algebra(const ZMorphism& f) {
  FreeFibration ff = make_free_fibration(f);
  FreeFibration ffr = make_free_fibration(ff.rho);
  return {ff.rho, ffr, pi(ff, ffr)};
}

inline CheckReport check_algebra_laws(const AlgebraStructure& alg,
                                      bool multiplication, int iters,
                                      std::uint64_t seed) {
  CheckReport rep{"algebra:" + alg.f.label, seed, iters, {}};
  Rng rng(seed);
  for (int it = 0; it < iters; ++it) {
    Value x = alg.f.source.gen(rng);
    if (!equal(alg.g(kbase(x)), x)) rep.fail("unit", "at " + show(x));
    Value t = alg.kf.object.gen(rng);
    if (!equal(alg.f(alg.g(t)), alg.kf.rho(t)))
      rep.fail("codomain", "at " + show(t));
  }
  if (multiplication) {
    FreeFibration ffr = make_free_fibration(alg.kf.rho);
    Square sq{alg.g, identity_morphism(alg.f.target)};
    Rng rng2(seed ^ 0x9e3779b97f4a7c15ull);
    for (int it = 0; it < iters; ++it) {
      Value t = ffr.object.gen(rng2);
      if (!equal(alg.g(kmap_value(sq, t)), alg.g(pi_value(t))))
        rep.fail("multiplication", "at " + show(t));
    }
  }
  return rep;
}

// An open box in X over f, regarded as a K f term: faces are embedded
// along lambda.
inline BoxData embed_box(const BoxData& box) {
  BoxData r;
  r.up = box.up;
  r.a = box.a;
  for (const auto& [b, i, face] : box.faces) r.faces.emplace_back(b, i, kbase(face));
  r.base = box.base;
  r.sort_faces();
  return r;
}

// Each open box is its own filler inside K f; the algebra map collapses
// it to an actual filler in X.
inline FibrationStructure algebra_to_filling(const AlgebraStructure& alg) {
  auto fill = [alg](const BoxData& box) { return alg.g(kbox(embed_box(box))); };
  return {alg.f, {fill, fill}};
}

inline Value filling_collapse(const FillingOperator& fill, const Value& t) {
  if (is_kbase(t)) return kbase_elem(t);
  auto collapse_box = [&fill](const BoxData& box) {
    BoxData r;
    r.up = box.up;
    r.a = box.a;
    for (const auto& [b, i, face] : box.faces)
      r.faces.emplace_back(b, i, filling_collapse(fill, face));
    r.base = box.base;
    r.sort_faces();
    return r;
  };
  if (is_kbox(t)) return fill.fill(collapse_box(kbox_data(t)));
  // A Kan composite is a substitution instance of its formal filler, so
  // its image is forced by substitution preservation.
  const auto& kb = kbind_data(t);
  return subst(fill.fill(collapse_box(kb.box)), kb.bound, kb.box.missing_bit());
}

inline AlgebraStructure filling_to_algebra(const FibrationStructure& fs) {
  FreeFibration ff = make_free_fibration(fs.morphism);
  FillingOperator fill = fs.fill;
  ZMorphism g{"collapse_" + fs.morphism.label, ff.object, fs.morphism.source,
              [fill](const Value& t) { return filling_collapse(fill, t); }};
  return {fs.morphism, ff, g};
}

// filling -> algebra -> filling reproduces the operator on sampled boxes.
inline CheckReport roundtrip_filling(const FibrationStructure& fs,
                                     const BoxGenerator& boxes, int iters,
                                     std::uint64_t seed) {
  CheckReport rep{"roundtrip-filling:" + fs.morphism.label, seed, iters, {}};
  FibrationStructure back = algebra_to_filling(filling_to_algebra(fs));
  Rng rng(seed);
  for (int it = 0; it < iters; ++it) {
    BoxData box = boxes(rng);
    if (!equal(fs.fill.fill(box), back.fill.fill(box)))
      rep.fail("filling-roundtrip", show_box(box));
  }
  return rep;
}

// algebra -> filling -> algebra reproduces g on sampled terms; needs a
// monad algebra (a pointed-only algebra may genuinely differ).
inline CheckReport roundtrip_algebra(const AlgebraStructure& alg, int iters,
                                     std::uint64_t seed) {
  CheckReport rep{"roundtrip-algebra:" + alg.f.label, seed, iters, {}};
  AlgebraStructure back = filling_to_algebra(algebra_to_filling(alg));
  Rng rng(seed);
  for (int it = 0; it < iters; ++it) {
    Value t = alg.kf.object.gen(rng);
    if (!equal(alg.g(t), back.g(t))) rep.fail("algebra-roundtrip", show(t));
  }
  return rep;
}

}  // namespace kanfs
