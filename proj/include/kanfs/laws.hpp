#pragma once

// The law suites: named bundles of randomized/exhaustive checks for the
// 01-substitution axioms, the comonad and monad laws on the free
// fibration, the algebra/filling correspondence, the generating box
// inclusions with their coalgebra, and the path objects. Shared by the
// command-line driver and the test binaries; deterministic in the
// options.

#include <sstream>

#include "kanfs/enumerate.hpp"
#include "kanfs/generators.hpp"
#include "kanfs/json.hpp"
#include "kanfs/path_objects.hpp"

namespace kanfs {

struct LawOptions {
  std::uint64_t seed = 7;
  int iters = 200;
  int names_max = 4;  // alphabet size for exhaustive fragments
  int rank_max = 3;   // depth bound for generated terms
};

struct LawReport {
  std::string suite;
  LawOptions opts;
  std::vector<CheckReport> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
  std::size_t total_failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.failures.size();
    return n;
  }
};

// ---------------------------------------------------------------------------
// Shared fixtures.

// The three reference morphisms every termwise suite runs over: a cube
// collapsing to the point, the identity on the point, and the inclusion
// of a standard open box into its cube.
inline std::vector<ZMorphism> test_morphisms() {
  NameSet A{Name{0}, Name{1}};
  ZObject cubeA = cube_object(A);
  ZMorphism f1 = unique_to_terminal(cubeA);
  ZMorphism f2 = identity_morphism(terminal_object());
  ZObject ob = open_box_subobject(true, A, Name{0});
  ZMorphism f3{"incl", ob, cubeA, [](const Value& v) { return v; }};
  return {f1, f2, f3};
}

// The canonical fibration on rho_f: the filling operator of the free
// multiplication algebra.
inline FibrationStructure canonical_fibration(const ZMorphism& f) {
  return algebra_to_filling(canonical_algebra(f));
}

// The pullback of a fibration along k : V -> Y: elements are pairs
// (v, x) with k(v) = f(x); boxes are filled through the X component.
inline FibrationStructure pullback_fibration(const FibrationStructure& fs,
                                             const ZMorphism& k,
                                             std::function<Value(Rng&)> ugen) {
  ZObject U = pullback_object(k, fs.morphism);
  U.gen = std::move(ugen);
  ZMorphism g{"pb_" + fs.morphism.label + "_" + k.label, U, k.source,
              [](const Value& u) { return first(u); }};
  FibrationStructure base = fs;
  ZMorphism kk = k;
  auto fill = [base, kk](const BoxData& box) {
    BoxData fbox;
    fbox.up = box.up;
    fbox.a = box.a;
    for (const auto& [n, i, face] : box.faces)
      fbox.faces.emplace_back(n, i, second(face));
    fbox.base = kk(box.base);
    fbox.sort_faces();
    return pair(box.base, base.fill.fill(fbox));
  };
  return {g, {fill, fill}};
}

inline CheckReport prop(const std::string& name, std::uint64_t seed, int iters,
                        const std::function<void(Rng&, CheckReport&)>& body) {
  CheckReport rep{name, seed, iters, {}};
  Rng rng(seed);
  for (int it = 0; it < iters; ++it) body(rng, rep);
  return rep;
}

// All points of the standard A-cube with name values drawn from `names`.
inline std::vector<Value> all_cube_points(const NameSet& A,
                                          const NameSet& names) {
  std::vector<Value> out;
  std::vector<Name> dom(A.begin(), A.end());
  std::vector<std::pair<Name, node::CubeEntry>> cur;
  std::function<void(std::size_t, NameSet)> go = [&](std::size_t k, NameSet used) {
    if (k == dom.size()) {
      out.push_back(cube(cur));
      return;
    }
    for (Bit i : {Bit::zero, Bit::one}) {
      cur.emplace_back(dom[k], i);
      go(k + 1, used);
      cur.pop_back();
    }
    for (Name n : names) {
      if (used.count(n)) continue;
      cur.emplace_back(dom[k], n);
      NameSet u2 = used;
      u2.insert(n);
      go(k + 1, u2);
      cur.pop_back();
    }
  };
  go(0, {});
  return out;
}

// ---------------------------------------------------------------------------
// Suite: zsub — the four substitution-set axioms on every carrier kind.

inline LawReport suite_zsub(const LawOptions& o) {
  LawReport rep{"zsub", o, {}};
  rep.checks.push_back(check_zsub_axioms(terminal_object(), o.iters, o.seed));
  for (int n = 1; n <= 3; ++n) {
    NameSet A = default_alphabet(static_cast<std::size_t>(n));
    rep.checks.push_back(check_zsub_axioms(cube_object(A), o.iters, o.seed + n));
  }
  int k = 0;
  for (const ZMorphism& f : test_morphisms()) {
    FreeFibration ff = make_free_fibration(f);
    rep.checks.push_back(check_zsub_axioms(ff.object, o.iters, o.seed + 10 + k));
    rep.checks.push_back(check_morphism(ff.lambda, o.iters, o.seed + 20 + k));
    rep.checks.push_back(check_morphism(ff.rho, o.iters, o.seed + 30 + k));
    ++k;
  }
  PathContext pc = make_path_context(canonical_fibration(test_morphisms()[0]));
  rep.checks.push_back(check_zsub_axioms(path_object(pc), o.iters, o.seed + 40));
  return rep;
}

// ---------------------------------------------------------------------------
// Suite: comonad — the comultiplication laws, the factorisation
// equation, and functoriality/naturality of the term map.

inline LawReport suite_comonad(const LawOptions& o) {
  LawReport rep{"comonad", o, {}};
  int k = 0;
  for (const ZMorphism& f : test_morphisms()) {
    FreeFibration ff = make_free_fibration(f);
    FreeFibration ffl = make_free_fibration(ff.lambda);
    auto gen = ff.object.gen;
    ZMorphism idx = identity_morphism(f.source);
    ZMorphism sig = sigma(ff, ffl);
    std::string tag = "[" + f.label + "]";
    rep.checks.push_back(prop(
        "factorisation" + tag, o.seed + 100 + k, o.iters,
        [f, ff](Rng& rng, CheckReport& r) {
          Value x = f.source.gen(rng);
          if (!equal(rho_value(f, ff.lambda(x)), f(x)))
            r.fail("rho-after-lambda", show(x));
        }));
    rep.checks.push_back(prop(
        "comonad-counit-rho" + tag, o.seed + 110 + k, o.iters,
        [ff, gen](Rng& rng, CheckReport& r) {
          Value t = gen(rng);
          if (!equal(rho_value(ff.lambda, sigma_value(t)), t))
            r.fail("rho-lambda-of-sigma", show(t));
        }));
    rep.checks.push_back(prop(
        "comonad-counit-map" + tag, o.seed + 120 + k, o.iters,
        [ff, gen, idx](Rng& rng, CheckReport& r) {
          Value t = gen(rng);
          if (!equal(kmap_value({idx, ff.rho}, sigma_value(t)), t))
            r.fail("map-counit", show(t));
        }));
    rep.checks.push_back(prop(
        "comonad-coassoc" + tag, o.seed + 130 + k, o.iters,
        [gen, idx, sig](Rng& rng, CheckReport& r) {
          Value t = gen(rng);
          Value st = sigma_value(t);
          if (!equal(kmap_value({idx, sig}, st), sigma_value(st)))
            r.fail("coassoc", show(t));
        }));
    rep.checks.push_back(check_morphism(sig, o.iters, o.seed + 140 + k));
    ++k;
  }

  // naturality and functoriality along concrete squares
  auto ms = test_morphisms();
  const ZMorphism& f1 = ms[0];  // cube -> 1
  const ZMorphism& f2 = ms[1];  // id on 1
  const ZMorphism& f3 = ms[2];  // open box -> cube
  FreeFibration ff1 = make_free_fibration(f1);
  FreeFibration ff3 = make_free_fibration(f3);
  ZMorphism h31{"h31", f3.source, f1.source, f3.map};  // inclusion
  ZMorphism k31{"k31", f3.target, f1.target, f1.map};  // collapse
  Square sq31{h31, k31};
  ZMorphism h12{"h12", f1.source, f2.source, f1.map};
  ZMorphism k12 = identity_morphism(f2.target);
  Square sq12{h12, k12};
  Square sq32{compose(h12, h31), compose(k12, k31)};
  rep.checks.push_back(check_square(sq31, f3, f1, o.iters, o.seed + 150));
  auto gen3 = ff3.object.gen;
  rep.checks.push_back(prop(
      "naturality", o.seed + 151, o.iters,
      [ff3, f1, f3, sq31, h31, k31, gen3](Rng& rng, CheckReport& r) {
        Value s = f3.source.gen(rng);
        if (!equal(kmap_value(sq31, kbase(s)), kbase(h31(s))))
          r.fail("lambda-square", show(s));
        Value t = gen3(rng);
        if (!equal(rho_value(f1, kmap_value(sq31, t)), k31(rho_value(f3, t))))
          r.fail("rho-square", show(t));
      }));
  ZMorphism id3 = identity_morphism(f3.source);
  ZMorphism idc = identity_morphism(f3.target);
  rep.checks.push_back(prop(
      "functoriality", o.seed + 152, o.iters,
      [gen3, id3, idc, sq31, sq12, sq32](Rng& rng, CheckReport& r) {
        Value t = gen3(rng);
        if (!equal(kmap_value({id3, idc}, t), t)) r.fail("identity", show(t));
        if (!equal(kmap_value(sq12, kmap_value(sq31, t)), kmap_value(sq32, t)))
          r.fail("composition", show(t));
      }));
  return rep;
}

// ---------------------------------------------------------------------------
// Suite: monad — the multiplication laws.

inline LawReport suite_monad(const LawOptions& o) {
  LawReport rep{"monad", o, {}};
  int k = 0;
  for (const ZMorphism& f : test_morphisms()) {
    FreeFibration ff = make_free_fibration(f);
    FreeFibration ffr = make_free_fibration(ff.rho);
    auto gen = ff.object.gen;
    auto gen2 = kterm_generator(ffr.rho);
    ZMorphism idy = identity_morphism(f.target);
    ZMorphism pif = pi(ff, ffr);
    std::string tag = "[" + f.label + "]";
    rep.checks.push_back(prop(
        "monad-unit" + tag, o.seed + 200 + k, o.iters,
        [gen, ff, idy](Rng& rng, CheckReport& r) {
          Value t = gen(rng);
          if (!equal(pi_value(kbase(t)), t)) r.fail("unit-lambda", show(t));
          if (!equal(pi_value(kmap_value({ff.lambda, idy}, t)), t))
            r.fail("unit-map", show(t));
        }));
    rep.checks.push_back(prop(
        "monad-assoc" + tag, o.seed + 210 + k, o.iters,
        [gen2, pif, idy](Rng& rng, CheckReport& r) {
          Value s = gen2(rng);
          if (!equal(pi_value(kmap_value({pif, idy}, s)), pi_value(pi_value(s))))
            r.fail("assoc", show(s));
        }));
    rep.checks.push_back(check_morphism(pif, o.iters, o.seed + 220 + k));
    ++k;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite: bridge — algebra laws on the canonical algebra, uniformity of
// the derived filling operators, and both round trips.

inline LawReport suite_bridge(const LawOptions& o) {
  LawReport rep{"bridge", o, {}};
  int k = 0;
  for (const ZMorphism& f : test_morphisms()) {
    AlgebraStructure alg = canonical_algebra(f);
    rep.checks.push_back(check_algebra_laws(alg, true, o.iters, o.seed + 300 + k));
    FibrationStructure fs = algebra_to_filling(alg);
    BoxGenerator boxes = point_box_generator(fs.morphism);
    rep.checks.push_back(check_uniformity(fs, boxes, o.iters, o.seed + 310 + k));
    rep.checks.push_back(roundtrip_filling(fs, boxes, o.iters, o.seed + 320 + k));
    rep.checks.push_back(roundtrip_algebra(alg, o.iters, o.seed + 330 + k));
    ++k;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Suite: generators — the coalgebra diagrams on the generating
// inclusions (exhaustive on small shapes), the lifting/filling round
// trip, and independence of the frozen-context enlargement.

inline LawReport suite_generators(const LawOptions& o) {
  LawReport rep{"generators", o, {}};
  NameSet atoms = default_alphabet(static_cast<std::size_t>(o.names_max));

  CheckReport eta{"eta-coalgebra", o.seed, 0, {}};
  std::vector<Name> names(atoms.begin(), atoms.end());
  for (unsigned mask = 1; mask < (1u << names.size()); ++mask) {
    NameSet A;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (mask >> i & 1) A.insert(names[i]);
    if (A.size() > 2) continue;
    std::vector<NameSet> bsets{NameSet{}};
    for (Name n : set_diff(atoms, A)) bsets.push_back(NameSet{n});
    for (Name a : A)
      for (bool up : {false, true})
        for (const NameSet& B : bsets) {
          JObject obj{up, A, a, B};
          ZMorphism iota = j_map(obj);
          for (const Value& p : all_cube_points(A, atoms))
            for (const Value& q : all_cube_points(B, atoms)) {
              if (!disjoint(free_names(p), free_names(q))) continue;
              ++eta.iterations;
              Value point = pair(p, q);
              Value t = eta_value(obj, point);
              if (!is_kterm(iota, t)) eta.fail("lands-in-target", show(point));
              if (iota.source.contains(point) && !equal(t, kbase(point)))
                eta.fail("restricts-to-unit", show(point));
              if (!equal(rho_value(iota, t), point))
                eta.fail("section-of-rho", show(point));
              ZMorphism etam = eta_coalgebra(obj, make_free_fibration(iota));
              if (!equal(kmap_value({identity_morphism(iota.source), etam}, t),
                         sigma_value(t)))
                eta.fail("coassociativity", show(point));
            }
        }
  }
  rep.checks.push_back(eta);

  FibrationStructure fs = canonical_fibration(test_morphisms()[0]);
  LiftingData ld = fibration_to_lifting(fs);
  FibrationStructure back = lifting_to_fibration(fs.morphism, ld);
  BoxGenerator boxes = point_box_generator(fs.morphism);
  rep.checks.push_back(prop(
      "lifting-roundtrip", o.seed + 400, o.iters,
      [fs, back, boxes](Rng& rng, CheckReport& r) {
        BoxData box = boxes(rng);
        Value direct = fs.fill.fill(box);
        Value via = back.fill.fill(box);
        if (!equal(direct, via)) r.fail("fill-mismatch", show_box(box));
        if (!is_filler(via, box, fs.morphism)) r.fail("not-a-filler", show_box(box));
      }));
  rep.checks.push_back(prop(
      "support-enlargement", o.seed + 401, std::max(1, o.iters / 2),
      [fs, ld, boxes, atoms](Rng& rng, CheckReport& r) {
        BoxData box = boxes(rng);
        NameSet avoid = set_union(box_free(box), atoms);
        NameSet extra{fresh_name(avoid)};
        avoid.insert(*extra.begin());
        extra.insert(fresh_name(avoid));
        Value small = lift_fill(fs.morphism, ld, box, {});
        Value large = lift_fill(fs.morphism, ld, box, extra);
        if (!equal(small, large)) r.fail("context-dependent", show_box(box));
      }));
  rep.checks.push_back(prop(
      "lifting-diagonal", o.seed + 402, std::max(1, o.iters / 4),
      [fs, ld, boxes](Rng& rng, CheckReport& r) {
        BoxData box = boxes(rng);
        LiftingProblem prob = generic_problem(fs.morphism, box, {});
        ZMorphism diag = ld.diag(prob);
        Value s = prob.top.source.gen(rng);
        if (!equal(diag(s), prob.top(s))) r.fail("top-triangle", show(s));
        Value pt = prob.bottom.source.gen(rng);
        if (!equal(fs.morphism(diag(pt)), prob.bottom(pt)))
          r.fail("bottom-triangle", show(pt));
      }));
  return rep;
}

// ---------------------------------------------------------------------------
// Suite: path — normal forms, homotopies, the coalgebra on reflexivity,
// the fibration structure on p, transport along pullback squares, and
// decidable image of the unit.

inline LawReport suite_path(const LawOptions& o) {
  LawReport rep{"path", o, {}};
  auto ms = test_morphisms();
  FibrationStructure fs = canonical_fibration(ms[0]);
  PathContext pc = make_path_context(fs);
  ZObject pobj = path_object(pc);
  auto pgen = pobj.gen;
  ZObject X = fs.morphism.source;
  NameSet atoms = default_alphabet(static_cast<std::size_t>(o.names_max));

  // a pre-normal form in a chosen direction, plus the direction
  auto prenormal_gen = [X, pc, atoms](Rng& rng) -> std::pair<Name, Value> {
    Value x = X.gen(rng);
    NameSet candidates = set_diff(set_union(atoms, free_names(x)),
                                  free_names(pc.fs.morphism(x)));
    candidates.insert(fresh_name(set_union(atoms, free_names(x))));
    Name a = rand_name(rng, candidates);
    return {a, g0_prenormal(a, x)};
  };

  rep.checks.push_back(prop(
      "bind-unbind", o.seed + 500, o.iters,
      [pgen, pc, prenormal_gen](Rng& rng, CheckReport& r) {
        Value w = pgen(rng);
        Name a = fresh_name(free_names(w));
        Value z = unbind(w, a);
        if (!prenormal_shape(a, z)) r.fail("unbind-not-prenormal", show(w));
        if (!equal(subst(z, a, Bit::one), w)) r.fail("bind-after-unbind", show(w));
        auto [b, z2] = prenormal_gen(rng);
        if (!equal(unbind(subst(z2, b, Bit::one), b), z2))
          r.fail("unbind-after-bind", show(z2));
      }));
  rep.checks.push_back(prop(
      "normal-form-conversion", o.seed + 501, o.iters,
      [X, pc, pobj, atoms](Rng& rng, CheckReport& r) {
        Value x = X.gen(rng);
        NameSet candidates = set_diff(set_union(atoms, free_names(x)),
                                      free_names(pc.fs.morphism(x)));
        candidates.insert(fresh_name(set_union(atoms, free_names(x))));
        Name a = rand_name(rng, candidates);
        Value w = abstraction_to_normal_form(pc, a, x);
        if (!pobj.contains(w)) r.fail("not-normal", show(w));
        Value ends = rho_value(pc.delta, w);
        if (!equal(first(ends), subst(x, a, Bit::zero)) ||
            !equal(second(ends), subst(x, a, Bit::one)))
          r.fail("wrong-endpoints", show(w));
        if (!free_names(x).count(a) && !equal(w, kbase(x)))
          r.fail("fresh-case-not-degenerate", show(w));
      }));
  rep.checks.push_back(prop(
      "homotopies", o.seed + 502, o.iters,
      [pc, prenormal_gen, atoms](Rng& rng, CheckReport& r) {
        auto [a, z] = prenormal_gen(rng);
        Name b = fresh_name(set_union(set_union(free_names(z), atoms), {a}));
        Value ends = rho_value(pc.delta, z);
        Value h = homotopy_h(pc, z, b);
        if (!equal(subst(h, b, Bit::zero), first(ends)) ||
            !equal(subst(h, b, Bit::one), second(ends)))
          r.fail("h-endpoints", show(z));
        Value kz = homotopy_k(pc, z, b);
        if (!prenormal_shape(a, subst(kz, b, Bit::one)) && !is_kbase(kz))
          r.fail("k-not-direction-preserving", show(z));
        if (!equal(subst(kz, b, Bit::zero), kbase(first(ends))))
          r.fail("k-endpoint-0", show(z));
        if (!equal(subst(kz, b, Bit::one), z)) r.fail("k-endpoint-1", show(z));
        // substitution naturality at a name other than a, b
        NameSet others = set_diff(free_names(z), NameSet{a, b});
        if (!others.empty()) {
          Name c = rand_name(rng, others);
          Bit i = rand_bit(rng);
          if (!equal(homotopy_h(pc, subst(z, c, i), b), subst(h, c, i)))
            r.fail("h-subst-naturality", show(z));
          if (!equal(homotopy_k(pc, subst(z, c, i), b), subst(kz, c, i)))
            r.fail("k-subst-naturality", show(z));
        }
      }));

  ReflexivityCoalgebra rc = reflexivity_coalgebra(pc);
  rep.checks.push_back(prop(
      "reflexivity-counit", o.seed + 503, o.iters,
      [pc, rc, pgen, X](Rng& rng, CheckReport& r) {
        Value x = X.gen(rng);
        if (!equal(rc.c(rc.r(x)), kbase(x))) r.fail("c-on-degenerate", show(x));
        Value w = pgen(rng);
        Value cw = rc.c(w);
        if (!rc.kr.object.contains(cw)) r.fail("c-lands-in-target", show(w));
        if (!equal(rho_value(rc.r, cw), w)) r.fail("counit", show(w));
      }));
  rep.checks.push_back(prop(
      "l-invariant", o.seed + 504, o.iters,
      [pc, rc, prenormal_gen, atoms](Rng& rng, CheckReport& r) {
        auto [a, z] = prenormal_gen(rng);
        Name b = fresh_name(set_union(set_union(free_names(z), atoms), {a}));
        Value l = homotopy_l(pc, z, b);
        if (!equal(rho_value(rc.r, l), subst(homotopy_k(pc, z, b), a, Bit::one)))
          r.fail("rho-r-of-l", show(z));
      }));

  FibrationStructure pfs = path_fibration(pc, pobj);
  BoxGenerator pboxes = point_box_generator(pfs.morphism);
  rep.checks.push_back(prop(
      "path-fill", o.seed + 505, o.iters,
      [pc, pfs, pobj, pboxes](Rng& rng, CheckReport& r) {
        BoxData box = pboxes(rng);
        Value filled = pfs.fill.fill(box);
        if (!is_filler(filled, box, pfs.morphism)) r.fail("not-a-filler", show_box(box));
        if (!pobj.contains(filled)) r.fail("filler-not-normal", show_box(box));
      }));
  rep.checks.push_back(
      check_uniformity(pfs, pboxes, std::max(1, o.iters / 2), o.seed + 506));

  // transport along two pullback squares over the open-box inclusion
  FibrationStructure fs3 = canonical_fibration(ms[2]);
  PathContext pcX = make_path_context(fs3);
  ZObject pX = path_object(pcX);
  ZMorphism f3 = fs3.morphism;  // K incl -> cube

  // square one: pull back along the identity on the base
  ZMorphism k1 = identity_morphism(f3.target);
  ZObject X3 = f3.source;
  FibrationStructure pb1 = pullback_fibration(fs3, k1, [X3, f3](Rng& rng) {
    Value x = X3.gen(rng);
    return pair(f3(x), x);
  });
  // square two: pull back along a closed point of the base cube
  Value p0 = cube({{Name{0}, Bit::zero}, {Name{1}, Bit::one}});
  ZMorphism k2{"pt", terminal_object(), f3.target,
               [p0](const Value&) { return p0; }};
  // elements over the point: iterated boxes of the embedded point
  ZMorphism rho3 = f3;  // f3 is already the projection of a free fibration
  auto fiber_gen = [rho3, p0](Rng& rng) {
    Value x = kbase(p0);
    NameSet alphabet = default_alphabet();
    int layers = rand_int(rng, 0, 2);
    for (int l = 0; l < layers; ++l) {
      NameSet pool = set_union(alphabet, free_names(x));
      NameSet A;
      int size = rand_int(rng, 1, 2);
      for (int s = 0; s < size; ++s) A.insert(rand_name(rng, pool));
      Name a = rand_name(rng, A);
      bool up = rand_int(rng, 0, 1) == 1;
      x = kbox(box_of_point(rho3, x, A, a, up));
    }
    return x;
  };
  FibrationStructure pb2 = pullback_fibration(fs3, k2, [fiber_gen](Rng& rng) {
    return pair(unit(), fiber_gen(rng));
  });

  struct SquareCase {
    FibrationStructure pb;
    ZMorphism k;
    std::function<Value(Rng&, const Value&)> pick_v;  // v matching a normal form
  };
  auto pf_base = [pcX](const Value& w) {
    // the image of a normal form in the base of the fibration
    return pcX.fs.morphism(first(rho_value(pcX.delta, w)));
  };
  std::vector<SquareCase> cases;
  cases.push_back({pb1, k1, [pf_base](Rng&, const Value& w) { return pf_base(w); }});
  cases.push_back({pb2, k2, [](Rng&, const Value&) { return unit(); }});
  int ci = 0;
  for (const SquareCase& sc : cases) {
    PathContext pcU = make_path_context(sc.pb);
    ZObject pU = path_object(pcU);
    ZMorphism h{"h", sc.pb.morphism.source, X3,
                [](const Value& u) { return second(u); }};
    ZMorphism tr = pullback_transport(pcU, pcX, h);
    ZMorphism kk = sc.k;
    auto pb_inv = [kk, f3](const Value& v, const Value& x) {
      if (!equal(kk(v), f3(x)))
        throw std::invalid_argument("pullback inverse: bases disagree");
      return pair(v, x);
    };
    // normal forms over the right bases for this square
    std::function<Value(Rng&)> wgen;
    if (ci == 0) {
      wgen = pX.gen;
    } else {
      wgen = [fiber_gen, pcX, atoms](Rng& rng) {
        Value x = fiber_gen(rng);
        NameSet candidates = set_union(atoms, free_names(x));
        Name a = rand_name(rng, candidates);
        return abstraction_to_normal_form(pcX, a, x);
      };
    }
    rep.checks.push_back(prop(
        "pullback-transport-" + std::to_string(ci), o.seed + 510 + ci,
        std::max(1, o.iters / 2),
        [=](Rng& rng, CheckReport& r) {
          Value w = wgen(rng);
          Value v = sc.pick_v(rng, w);
          Value u = pullback_transport_inverse(pb_inv, v, w);
          if (!pU.contains(u)) r.fail("inverse-not-normal", show(w));
          if (!equal(tr(u), w)) r.fail("transport-of-inverse", show(w));
          if (!equal(first(first(rho_value(pcU.delta, u))), v))
            r.fail("inverse-over-wrong-base", show(w));
          // the other composite: start from an element of P over the pullback
          Value u2 = pU.gen(rng);
          Value v2 = first(first(rho_value(pcU.delta, u2)));
          if (!equal(pullback_transport_inverse(pb_inv, v2, tr(u2)), u2))
            r.fail("inverse-of-transport", show(u2));
        }));
    ++ci;
  }

  // decidable image of the unit against exhaustive enumeration
  CheckReport di{"decidable-image", o.seed, 0, {}};
  for (const Value& t : enumerate_k_terminal_terms(2, 1)) {
    ++di.iterations;
    bool brute = equal(t, kbase(unit()));
    if (decidable_image(t) != brute) di.fail("rank-vs-membership", show(t));
  }
  rep.checks.push_back(di);
  return rep;
}

// ---------------------------------------------------------------------------
// Dispatch and rendering.

inline LawReport run_suite(const std::string& name, const LawOptions& o) {
  if (name == "zsub") return suite_zsub(o);
  if (name == "comonad") return suite_comonad(o);
  if (name == "monad") return suite_monad(o);
  if (name == "bridge") return suite_bridge(o);
  if (name == "generators") return suite_generators(o);
  if (name == "path") return suite_path(o);
  if (name == "all") {
    LawReport all{"all", o, {}};
    for (const char* s : {"zsub", "comonad", "monad", "bridge", "generators", "path"}) {
      LawReport part = run_suite(s, o);
      for (auto& c : part.checks) {
        c.name = part.suite + "/" + c.name;
        all.checks.push_back(std::move(c));
      }
    }
    return all;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

inline std::string report_text(const LawReport& rep) {
  std::ostringstream os;
  os << "suite " << rep.suite << " seed=" << rep.opts.seed
     << " iters=" << rep.opts.iters << "\n";
  for (const CheckReport& c : rep.checks) {
    os << (c.ok() ? "  ok   " : "  FAIL ") << c.name << " (" << c.iterations
       << " cases";
    if (!c.ok()) os << ", " << c.failures.size() << " failures";
    os << ")\n";
    std::size_t shown = 0;
    for (const Failure& f : c.failures) {
      if (shown++ == 3) {
        os << "         ...\n";
        break;
      }
      os << "         " << f.law << ": " << f.detail << "\n";
    }
  }
  os << (rep.ok() ? "PASS" : "FAIL") << " " << rep.checks.size() << " checks, "
     << rep.total_failures() << " failures\n";
  return os.str();
}

inline json report_json(const LawReport& rep) {
  json checks = json::array();
  for (const CheckReport& c : rep.checks) {
    json fails = json::array();
    for (const Failure& f : c.failures)
      fails.push_back({{"law", f.law}, {"detail", f.detail}});
    checks.push_back({{"name", c.name},
                      {"seed", c.seed},
                      {"cases", c.iterations},
                      {"ok", c.ok()},
                      {"failures", std::move(fails)}});
  }
  return {{"suite", rep.suite},
          {"seed", rep.opts.seed},
          {"iters", rep.opts.iters},
          {"ok", rep.ok()},
          {"total_failures", rep.total_failures()},
          {"checks", std::move(checks)}};
}

}  // namespace kanfs
