#pragma once

// Path objects by labelled name abstraction: pre-normal and normal
// forms inside K of the diagonal, unbinding, the fibration structure on
// the object of normal forms, the homotopies h/k/l, the reflexivity
// coalgebra, transport along squares, and the conversion from fibred
// name abstractions to normal forms.

#include "kanfs/algebra_bridge.hpp"

namespace kanfs {

struct NotNormalForm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything below works relative to one fibration f : X -> Y with its
// filling operator, packaged with the diagonal X -> X x_Y X and the
// free fibration on it.
struct PathContext {
  FibrationStructure fs;  // f with filling
  ZObject xyx;            // X x_Y X
  ZMorphism delta;        // X -> X x_Y X
  FreeFibration kdelta;   // K delta
};

inline PathContext make_path_context(const FibrationStructure& fs) {
  PathContext pc;
  pc.fs = fs;
  pc.xyx = pullback_object(fs.morphism, fs.morphism);
  ZMorphism f = fs.morphism;
  if (f.source.has_gen())
    pc.xyx.gen = [f](Rng& rng) {
      Value x = f.source.gen(rng);
      return pair(x, x);
    };
  pc.delta = {"delta_" + f.label, f.source, pc.xyx,
              [](const Value& x) { return pair(x, x); }};
  pc.kdelta = make_free_fibration(pc.delta);
  return pc;
}

// Structural half of the pre-normal predicate: a 1-open box in
// direction a whose closed a-face is the degenerate left endpoint and
// whose side faces are pre-normal again.
inline bool prenormal_shape(Name a, const Value& z) {
  if (is_kbase(z)) return !free_names(z).count(a);
  if (!is_kbox(z)) return false;
  const BoxData& b = kbox_data(z);
  if (!b.up || !(b.a == a)) return false;
  if (!is_pair(b.base)) return false;
  const Value& x1 = first(b.base);
  if (free_names(x1).count(a)) return false;
  const Value* f0 = b.face(a, Bit::zero);
  if (!f0 || !equal(*f0, kbase(x1))) return false;
  for (const auto& [n, i, face] : b.faces)
    if (!(n == a) && !prenormal_shape(a, face)) return false;
  return true;
}

inline bool is_prenormal(const PathContext& pc, Name a, const Value& z) {
  return prenormal_shape(a, z) && is_kterm(pc.kdelta.f, z);
}

// Normal forms are embedded points and bound 1-open boxes whose body is
// pre-normal in the bound direction.
inline bool normal_shape(const Value& w) {
  if (is_kbase(w)) return true;
  if (!is_kbind(w)) return false;
  const auto& kb = kbind_data(w);
  return prenormal_shape(kb.bound, kbox(kb.box));
}

inline bool is_normal(const PathContext& pc, const Value& w) {
  return normal_shape(w) && is_kterm(pc.kdelta.f, w);
}

// The unique pre-normal form in direction a whose closure at a is w.
inline Value unbind(const Value& w, Name a) {
  if (free_names(w).count(a))
    throw std::invalid_argument("unbind: direction not fresh");
  Value z;
  if (is_kbase(w)) {
    z = w;
  } else if (is_kbind(w)) {
    const auto& kb = kbind_data(w);
    z = act(Perm::swap(a, kb.bound), kbox(kb.box));
  } else {
    throw NotNormalForm("unbind: " + show(w));
  }
  if (!prenormal_shape(a, z)) throw NotNormalForm("unbind: " + show(w));
  return z;
}

inline Value g0_prenormal(Name a, const Value& x);

// Converts a name abstraction over f into a normal form: degenerate
// when the name is fresh, otherwise the box of recursively converted
// substitution instances, closed at the abstracted name.
inline Value abstraction_to_normal_form(const PathContext& pc, Name a,
                                        const Value& x) {
  if (free_names(pc.fs.morphism(x)).count(a))
    throw std::invalid_argument(
        "abstraction_to_normal_form: name not fresh under the fibration");
  return subst(g0_prenormal(a, x), a, Bit::one);
}

inline Value g0_prenormal(Name a, const Value& x) {
  if (!free_names(x).count(a)) return kbase(x);
  NameSet A = free_names(x);
  Value x0 = subst(x, a, Bit::zero);
  BoxData v;
  v.up = true;
  v.a = a;
  v.faces.emplace_back(a, Bit::zero, kbase(x0));
  for (Name b : A) {
    if (b == a) continue;
    for (Bit i : {Bit::zero, Bit::one})
      v.faces.emplace_back(b, i, g0_prenormal(a, subst(x, b, i)));
  }
  v.base = pair(x0, x);
  v.sort_faces();
  return kbox(v);
}

// The object of normal forms with the restricted projection p.
inline ZObject path_object(const PathContext& pc,
                           NameSet alphabet = default_alphabet()) {
  ZObject r;
  r.label = "P(" + pc.fs.morphism.label + ")";
  r.contains = [pc](const Value& w) { return is_normal(pc, w); };
  if (pc.fs.morphism.source.has_gen()) {
    FibrationStructure fs = pc.fs;
    PathContext ctx = pc;
    r.gen = [fs, ctx, alphabet](Rng& rng) {
      Value x = fs.morphism.source.gen(rng);
      NameSet candidates =
          set_diff(set_union(alphabet, free_names(x)), free_names(fs.morphism(x)));
      candidates.insert(fresh_name(set_union(alphabet, free_names(x))));
      Name a = rand_name(rng, candidates);
      Value w = abstraction_to_normal_form(ctx, a, x);
      int coin = rand_int(rng, 0, 9);
      NameSet pool = set_union(alphabet, free_names(w));
      if (coin < 3)
        w = act(rand_perm(rng, pool), w);
      else if (coin < 6)
        w = subst(w, rand_name(rng, pool), rand_bit(rng));
      return w;
    };
  }
  return r;
}

inline ZMorphism path_projection(const PathContext& pc, const ZObject& pobj) {
  ZMorphism delta = pc.delta;
  return {"p_" + pc.fs.morphism.label, pobj, pc.xyx,
          [delta](const Value& w) { return rho_value(delta, w); }};
}

// ---------------------------------------------------------------------------
// Homotopies on pre-normal forms in direction a, at a fresh name b.

// h : collapse a pre-normal form to an element of X; the filler of the
// box whose b-faces are the two endpoints.
inline Value homotopy_h(const PathContext& pc, const Value& z, Name b) {
  if (is_kbase(z)) return kbase_elem(z);
  const BoxData& box = kbox_data(z);
  const Value& x1 = first(box.base);
  const Value& x2 = second(box.base);
  BoxData v;
  v.up = true;
  v.a = box.a;
  for (const auto& [n, i, face] : box.faces)
    v.faces.emplace_back(n, i, homotopy_h(pc, face, b));
  v.faces.emplace_back(b, Bit::zero, x1);
  v.faces.emplace_back(b, Bit::one, x2);
  v.base = pc.fs.morphism(x2);
  v.sort_faces();
  return pc.fs.fill.up(v);
}

// k : a homotopy from a pre-normal form to its left endpoint, staying
// inside the pre-normal forms of the same direction.
inline Value homotopy_k(const PathContext& pc, const Value& z, Name b) {
  if (is_kbase(z)) return z;
  const BoxData& box = kbox_data(z);
  const Value& x1 = first(box.base);
  BoxData v;
  v.up = true;
  v.a = box.a;
  for (const auto& [n, i, face] : box.faces)
    v.faces.emplace_back(n, i, homotopy_k(pc, face, b));
  v.faces.emplace_back(b, Bit::zero, kbase(x1));
  v.faces.emplace_back(b, Bit::one, z);
  v.base = pair(x1, homotopy_h(pc, z, b));
  v.sort_faces();
  return kbox(v);
}

// l : the same homotopy packaged as a term over the reflexivity map,
// with the original direction a substituted away in the base.
inline Value homotopy_l(const PathContext& pc, const Value& z, Name b) {
  if (is_kbase(z)) return z;
  const BoxData& box = kbox_data(z);
  const Value& x1 = first(box.base);
  BoxData v;
  v.up = true;
  v.a = b;
  for (const auto& [n, i, face] : box.faces) {
    if (n == box.a) continue;
    v.faces.emplace_back(n, i, homotopy_l(pc, face, b));
  }
  v.faces.emplace_back(b, Bit::zero, kbase(x1));
  v.base = subst(homotopy_k(pc, z, b), box.a, Bit::one);
  v.sort_faces();
  return kbox(v);
}

// ---------------------------------------------------------------------------
// The reflexivity map, its free fibration, and the coalgebra on it.

struct ReflexivityCoalgebra {
  ZMorphism r;       // X -> P
  FreeFibration kr;  // K r
  ZMorphism c;       // P -> K r
};

inline ReflexivityCoalgebra reflexivity_coalgebra(const PathContext& pc) {
  ReflexivityCoalgebra rc;
  ZObject pobj = path_object(pc);
  rc.r = {"r_" + pc.fs.morphism.label, pc.fs.morphism.source, pobj,
          [](const Value& x) { return kbase(x); }};
  rc.kr = make_free_fibration(rc.r);
  PathContext ctx = pc;
  rc.c = {"c_" + pc.fs.morphism.label, pobj, rc.kr.object,
          [ctx](const Value& w) {
            Name a = fresh_name(free_names(w));
            Value z = unbind(w, a);
            Name b = fresh_name(set_union(free_names(z), {a}));
            return subst(homotopy_l(ctx, z, b), b, Bit::one);
          }};
  return rc;
}

// A map has decidable image through its coalgebra diagonal: membership
// is exactly rank zero after transporting along the diagonal.
inline bool decidable_image(const std::function<Value(const Value&)>& diag,
                            const Value& v) {
  return rank(diag(v)) == 0;
}

inline bool decidable_image(const Value& v) { return rank(v) == 0; }

// ---------------------------------------------------------------------------
// The fibration structure on p. An open box of normal forms is filled
// by unbinding all faces at one shared fresh direction, filling the
// underlying box of right endpoints, and reassembling two nested boxes
// around the result.

inline Value path_fill_value(const PathContext& pc, const BoxData& box) {
  Name a = box.a;
  Bit eps = box.missing_bit();
  NameSet A = box.names();
  Name b = fresh_name(set_union(box_free(box), A));
  const Value& x1 = first(box.base);
  const Value& x2 = second(box.base);

  // unbound faces, pre-normal in direction b
  std::vector<std::tuple<Name, Bit, Value>> vp;
  for (const auto& [n, i, face] : box.faces)
    vp.emplace_back(n, i, unbind(face, b));

  // the box of right endpoints over f, extended with the endpoints of
  // the base pair in direction b
  BoxData v2;
  v2.up = box.up;
  v2.a = a;
  ZMorphism delta = pc.delta;
  for (const auto& [n, i, z] : vp)
    v2.faces.emplace_back(n, i, second(rho_value(delta, z)));
  v2.faces.emplace_back(b, Bit::zero, x1);
  v2.faces.emplace_back(b, Bit::one, x2);
  v2.base = pc.fs.morphism(x2);
  v2.sort_faces();
  Value lift = pc.fs.fill.fill(v2);
  Value lift_eps = subst(lift, a, eps);

  // inner box: the whole picture with a substituted away
  BoxData w;
  w.up = true;
  w.a = b;
  Value x1_eps = subst(x1, a, eps);
  w.faces.emplace_back(b, Bit::zero, kbase(x1_eps));
  for (const auto& [n, i, z] : vp) {
    if (n == a) continue;
    w.faces.emplace_back(n, i, subst(z, a, eps));
  }
  w.base = pair(x1_eps, lift_eps);
  w.sort_faces();

  // outer box: the unbound faces plus the inner box at the open slot
  BoxData w2;
  w2.up = true;
  w2.a = b;
  w2.faces.emplace_back(b, Bit::zero, kbase(x1));
  w2.faces.emplace_back(a, eps, kbox(w));
  for (const auto& [n, i, z] : vp)
    w2.faces.emplace_back(n, i, z);
  w2.base = pair(x1, lift);
  w2.sort_faces();
  return kbind(b, w2);
}

inline FibrationStructure path_fibration(const PathContext& pc,
                                         const ZObject& pobj) {
  PathContext ctx = pc;
  auto fill = [ctx](const BoxData& box) { return path_fill_value(ctx, box); };
  return {path_projection(pc, pobj), {fill, fill}};
}

// ---------------------------------------------------------------------------
// Transport along a commutative square (h, k) from g to f, and the
// inductive inverse when the square is a pullback.

inline ZMorphism pullback_transport(const PathContext& over_g,
                                    const PathContext& over_f,
                                    const ZMorphism& h) {
  ZMorphism hh{"pair_" + h.label, over_g.xyx, over_f.xyx,
               [h](const Value& v) { return pair(h(first(v)), h(second(v))); }};
  Square sq{h, hh};
  return {"P(" + h.label + ")", path_object(over_g), path_object(over_f),
          [sq](const Value& w) { return kmap_value(sq, w); }};
}

// pb_inv(v, x) returns the unique u with g(u) = v and h(u) = x; it is
// supplied by the concrete pullback square under test.
inline Value pullback_transport_inverse(
    const std::function<Value(const Value&, const Value&)>& pb_inv,
    const Value& v, const Value& w) {
  std::function<Value(const Value&, const Value&)> rec =
      [&](const Value& base_pt, const Value& z) -> Value {
    if (is_kbase(z)) return kbase(pb_inv(base_pt, kbase_elem(z)));
    const BoxData& box = kbox_data(z);
    BoxData r;
    r.up = box.up;
    r.a = box.a;
    for (const auto& [n, i, face] : box.faces)
      r.faces.emplace_back(n, i, rec(subst(base_pt, n, i), face));
    r.base = pair(pb_inv(base_pt, first(box.base)),
                  pb_inv(base_pt, second(box.base)));
    r.sort_faces();
    return kbox(r);
  };
  if (is_kbase(w)) return kbase(pb_inv(v, kbase_elem(w)));
  Name a = fresh_name(set_union(free_names(w), free_names(v)));
  return subst(rec(v, unbind(w, a)), a, Bit::one);
}

}  // namespace kanfs
