#pragma once

// Standard cubes, standard open-box subobjects, the generating category
// of box inclusions, Yoneda-style evaluation of elements at cube
// points, the coalgebra on the generating maps and the translation
// between lifting data and filling operators.

#include <map>

#include "kanfs/free_fibration.hpp"

namespace kanfs {

using node::CubeEntry;

// The generic point 1_A: every name maps to itself.
inline Value identity_cube_point(const NameSet& A) {
  std::vector<std::pair<Name, CubeEntry>> assign;
  for (Name n : A) assign.emplace_back(n, n);
  return cube(assign);
}

inline NameSet cube_domain(const Value& v) {
  NameSet d;
  for (const auto& [k, e] : std::get<node::Cube>((*v).data).assign) d.insert(k);
  return d;
}

inline CubeEntry cube_at(const Value& v, Name n) {
  for (const auto& [k, e] : std::get<node::Cube>((*v).data).assign)
    if (k == n) return e;
  throw std::out_of_range("cube_at: " + to_string(n) + " not in domain");
}

// The standard A-cube: points are injective-where-defined assignments
// A -> names + 2.
inline ZObject cube_object(const NameSet& A) {
  std::string label = "cube{";
  for (Name n : A) label += to_string(n) + ",";
  label += "}";
  ZObject r;
  r.label = label;
  r.contains = [A](const Value& v) {
    auto* c = std::get_if<node::Cube>(&(*v).data);
    if (!c) return false;
    NameSet dom;
    for (const auto& [k, e] : c->assign) dom.insert(k);
    return dom == A && dom.size() == c->assign.size();
  };
  r.gen = [A](Rng& rng) {
    std::vector<std::pair<Name, CubeEntry>> assign;
    NameSet used;
    for (Name n : A) {
      if (rand_int(rng, 0, 2) == 0) {
        assign.emplace_back(n, rand_bit(rng));
      } else {
        // distinct name values from a small pool
        NameSet pool = set_diff(default_alphabet(8), used);
        Name m = rand_name(rng, pool);
        used.insert(m);
        assign.emplace_back(n, m);
      }
    }
    return cube(assign);
  };
  return r;
}

// Membership in the standard open box: some coordinate other than the
// open slot already carries a bit value.
inline bool in_standard_open_box(const Value& v, Name a, bool up) {
  Bit missing = up ? Bit::one : Bit::zero;
  for (const auto& [k, e] : std::get<node::Cube>((*v).data).assign)
    if (auto* b = std::get_if<Bit>(&e))
      if (!(k == a && *b == missing)) return true;
  return false;
}

inline ZObject open_box_subobject(bool up, const NameSet& A, Name a) {
  if (!A.count(a)) throw std::invalid_argument("open_box_subobject: a not in A");
  ZObject base = cube_object(A);
  ZObject r;
  r.label = (up ? "obox{" : "obox0{") + to_string(a) + "}";
  r.contains = [base, a, up](const Value& v) {
    return base.contains(v) && in_standard_open_box(v, a, up);
  };
  r.gen = [base, A, a, up](Rng& rng) {
    Value v = base.gen(rng);
    while (!in_standard_open_box(v, a, up)) {
      // force one legal slot to a bit
      Name b = rand_name(rng, A);
      Bit i = rand_bit(rng);
      if (b == a && i == (up ? Bit::one : Bit::zero)) continue;
      auto assign = std::get<node::Cube>((*v).data).assign;
      for (auto& [k, e] : assign)
        if (k == b) e = i;
      v = cube(assign);
    }
    return v;
  };
  return r;
}

// Objects of the generating category: a box shape (i, A, a) together
// with a frozen parameter context B.
struct JObject {
  bool up = true;  // i = 1 (1-open) or i = 0
  NameSet A;
  Name a;
  NameSet B;
};

// A morphism (i,A,a,B) -> (i,A',a',B'); both components point backwards.
struct JMorphism {
  std::map<Name, Name> f;       // A' -> A, bijection with f(a') = a
  std::map<Name, CubeEntry> g;  // B' -> B + 2, injective where defined
};

// J on objects: the inclusion obox_{A,a} * cube_B -> cube_A * cube_B.
inline ZMorphism j_map(const JObject& o) {
  ZObject src = separated_product(open_box_subobject(o.up, o.A, o.a), cube_object(o.B));
  ZObject dst = separated_product(cube_object(o.A), cube_object(o.B));
  return {"J", src, dst, [](const Value& v) { return v; }};
}

// J on morphisms: precomposition in both components.
inline Value j_morphism_apply(const JObject& src, const JObject& dst,
                              const JMorphism& m, const Value& point) {
  const Value& p = first(point);
  const Value& q = second(point);
  std::vector<std::pair<Name, CubeEntry>> pa;
  for (Name n : dst.A) pa.emplace_back(n, cube_at(p, m.f.at(n)));
  std::vector<std::pair<Name, CubeEntry>> qa;
  for (Name n : dst.B) {
    CubeEntry target = m.g.at(n);
    if (auto* b = std::get_if<Bit>(&target))
      qa.emplace_back(n, *b);
    else
      qa.emplace_back(n, cube_at(q, std::get<Name>(target)));
  }
  return pair(cube(pa), cube(qa));
}

// ---------------------------------------------------------------------------
// Yoneda evaluation: the image of x under the unique morphism sending
// the generic point to x. The simultaneous assignment is decomposed as
// rename-to-fresh, substitute the bit values, rename back.

struct SupportEscape : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Value apply_assignment(const Value& x,
                              const std::map<Name, CubeEntry>& sigma) {
  NameSet dom, targets;
  for (const auto& [n, e] : sigma) {
    dom.insert(n);
    if (auto* m = std::get_if<Name>(&e))
      if (!targets.insert(*m).second)
        throw std::invalid_argument("assignment not injective on names");
  }
  for (Name n : free_names(x))
    if (!dom.count(n))
      throw SupportEscape("support of element escapes the assignment domain: " +
                          to_string(n));

  NameSet avoid = set_union(set_union(dom, targets), free_names(x));
  std::vector<Name> scratch = fresh_names(avoid, sigma.size());

  Perm to_scratch;
  std::size_t k = 0;
  for (const auto& [n, e] : sigma) to_scratch = Perm::swap(n, scratch[k++]).after(to_scratch);
  Value v = act(to_scratch, x);

  Perm back;
  k = 0;
  for (const auto& [n, e] : sigma) {
    Name c = scratch[k++];
    if (auto* b = std::get_if<Bit>(&e))
      v = subst(v, c, *b);
    else
      back = Perm::swap(c, std::get<Name>(e)).after(back);
  }
  return act(back, v);
}

inline std::map<Name, CubeEntry> assignment_of_point(const Value& p) {
  std::map<Name, CubeEntry> sigma;
  for (const auto& [k, e] : std::get<node::Cube>((*p).data).assign) sigma[k] = e;
  return sigma;
}

// x has support inside A + B; point is a pair of cube points on A and B.
inline Value yoneda_evaluate(const Value& x, const Value& point) {
  std::map<Name, CubeEntry> sigma = assignment_of_point(first(point));
  for (const auto& [n, e] : assignment_of_point(second(point))) sigma[n] = e;
  return apply_assignment(x, sigma);
}

// ---------------------------------------------------------------------------
// The coalgebra on a generating map: boundary points embed, interior
// points become formal fillers of their own face boxes, and points with
// the open slot already collapsed become Kan composites at a fresh
// direction.

inline Value eta_value(const JObject& o, const Value& point) {
  Bit missing = o.up ? Bit::one : Bit::zero;
  const Value& p = first(point);
  const Value& q = second(point);
  if (in_standard_open_box(p, o.a, o.up)) return kbase(point);

  auto face_box = [&](const Value& pt) {
    // pt is name-valued everywhere; its faces are boundary points.
    BoxData box;
    box.up = o.up;
    box.a = std::get<Name>(cube_at(pt, o.a));
    for (Name n : o.A) {
      Name img = std::get<Name>(cube_at(pt, n));
      for (Bit i : {Bit::zero, Bit::one}) {
        if (img == box.a && i == missing) continue;
        box.faces.emplace_back(img, i, kbase(pair(subst(pt, img, i), q)));
      }
    }
    box.base = pair(pt, q);
    box.sort_faces();
    return box;
  };

  CubeEntry at_a = cube_at(p, o.a);
  if (std::holds_alternative<Name>(at_a)) {
    // p is name-valued everywhere (otherwise it would be a boundary point)
    return kbox(face_box(p));
  }
  // p(a) is the missing bit and p is name-valued elsewhere
  Name b = fresh_name(set_union(free_names(point), o.A));
  auto assign = std::get<node::Cube>((*p).data).assign;
  for (auto& [k, e] : assign)
    if (k == o.a) e = b;
  Value primed = cube(assign);
  BoxData box = face_box(primed);
  return kbind(b, box);
}

// eta as a morphism cube_A * cube_B -> K(J(o)).
inline ZMorphism eta_coalgebra(const JObject& o, const FreeFibration& ff_iota) {
  return {"eta", separated_product(cube_object(o.A), cube_object(o.B)),
          ff_iota.object, [o](const Value& v) { return eta_value(o, v); }};
}

// ---------------------------------------------------------------------------
// Lifting data and the two translations.

struct LiftingProblem {
  JObject shape;
  ZMorphism top;     // obox_{A,a} * cube_B -> X
  ZMorphism bottom;  // cube_A * cube_B -> Y
};

struct LiftingData {
  // Returns the diagonal cube_A * cube_B -> X of the square.
  std::function<ZMorphism(const LiftingProblem&)> diag;
};

// The boundary point that is the generic point except for one collapsed
// coordinate.
inline Value collapsed_point(const NameSet& A, Name at, Bit i) {
  std::vector<std::pair<Name, CubeEntry>> assign;
  for (Name n : A) assign.emplace_back(n, n == at ? CubeEntry(i) : CubeEntry(n));
  return cube(assign);
}

// Solve a lifting problem with a filling operator: read an open box off
// the square's top map at the collapsed points, fill it, and spread the
// filler over the whole cube by Yoneda evaluation.
inline LiftingData fibration_to_lifting(const FibrationStructure& fs) {
  LiftingData ld;
  ld.diag = [fs](const LiftingProblem& prob) -> ZMorphism {
    const JObject& o = prob.shape;
    Bit missing = o.up ? Bit::one : Bit::zero;
    Value oneB = identity_cube_point(o.B);
    BoxData box;
    box.up = o.up;
    box.a = o.a;
    for (Name b : o.A)
      for (Bit i : {Bit::zero, Bit::one}) {
        if (b == o.a && i == missing) continue;
        box.faces.emplace_back(b, i,
                               prob.top(pair(collapsed_point(o.A, b, i), oneB)));
      }
    box.base = prob.bottom(pair(identity_cube_point(o.A), oneB));
    box.sort_faces();
    Value filled = fs.fill.fill(box);
    return {"diag", prob.bottom.source, fs.morphism.source,
            [filled](const Value& point) { return yoneda_evaluate(filled, point); }};
  };
  return ld;
}

// The reverse direction: given lifting data for g, produce a filling
// operator. The open box is transported onto the generic square of its
// shape; the support outside A becomes the frozen context B.
// `extra` enlarges the frozen context beyond the support of the box;
// the result must not depend on it (checked by the law suites).
inline LiftingProblem generic_problem(const ZMorphism& g, const BoxData& box,
                                      const NameSet& extra) {
  NameSet A = box.names();
  NameSet C = set_union(box_free(box), A);
  NameSet B = set_diff(set_union(set_diff(C, A), extra), A);
    JObject shape{box.up, A, box.a, B};

    ZMorphism top{
        "boxtilde", separated_product(open_box_subobject(box.up, A, box.a),
                                      cube_object(B)),
        g.source, [box, A](const Value& point) {
          // pick the canonical collapsed slot of the first component
          const Value& p = first(point);
          Bit missing = box.missing_bit();
          for (const auto& [b, i, face] : box.faces) {
            CubeEntry e = cube_at(p, b);
            if (auto* bit = std::get_if<Bit>(&e); bit && *bit == i &&
                !(b == box.a && i == missing)) {
              std::map<Name, CubeEntry> sigma = assignment_of_point(p);
              sigma.erase(b);
              for (const auto& [n, e2] : assignment_of_point(second(point)))
                sigma[n] = e2;
              return apply_assignment(face, sigma);
            }
          }
          throw std::invalid_argument("point not in the open box subobject");
        }};
    Value base = box.base;
    ZMorphism bottom{"basetilde",
                     separated_product(cube_object(A), cube_object(B)),
                     g.target, [base](const Value& point) {
                       return yoneda_evaluate(base, point);
                     }};
  return {shape, top, bottom};
}

inline Value lift_fill(const ZMorphism& g, const LiftingData& phi,
                       const BoxData& box, const NameSet& extra) {
  LiftingProblem prob = generic_problem(g, box, extra);
  ZMorphism diag = phi.diag(prob);
  return diag(pair(identity_cube_point(prob.shape.A),
                   identity_cube_point(prob.shape.B)));
}

inline FibrationStructure lifting_to_fibration(const ZMorphism& g,
                                               const LiftingData& phi) {
  auto fill = [g, phi](const BoxData& box) { return lift_fill(g, phi, box, {}); };
  return {g, {fill, fill}};
}

}  // namespace kanfs
