#include "doctest.h"

#include "kanfs/algebra_bridge.hpp"
#include "kanfs/generators.hpp"

using namespace kanfs;

namespace {
const Name a0{0}, a1{1}, a2{2}, a3{3}, a4{4};
}

TEST_CASE("standard cubes and their points") {
  NameSet A{a0, a1};
  ZObject c = cube_object(A);
  CHECK(c.contains(cube({{a0, a2}, {a1, Bit::one}})));
  CHECK(!c.contains(cube({{a0, a2}})));          // wrong domain
  CHECK(!c.contains(unit()));                    // wrong carrier
  CHECK_THROWS(cube({{a0, a2}, {a1, a2}}));      // not injective on names

  Value gen = identity_cube_point(A);
  CHECK(cube_domain(gen) == A);
  CHECK(std::get<Name>(cube_at(gen, a0)) == a0);
  CHECK_THROWS_AS(cube_at(gen, a3), std::out_of_range);

  Rng rng(3);
  for (int it = 0; it < 100; ++it) CHECK(c.contains(c.gen(rng)));
}

TEST_CASE("open box membership") {
  NameSet A{a0, a1};
  // 1-open at a0: some coordinate other than (a0 = 1) carries a bit
  CHECK(in_standard_open_box(cube({{a0, Bit::zero}, {a1, a2}}), a0, true));
  CHECK(in_standard_open_box(cube({{a0, a2}, {a1, Bit::one}}), a0, true));
  CHECK(!in_standard_open_box(cube({{a0, a2}, {a1, a3}}), a0, true));
  CHECK(!in_standard_open_box(cube({{a0, Bit::one}, {a1, a2}}), a0, true));
  CHECK(in_standard_open_box(cube({{a0, Bit::one}, {a1, a2}}), a0, false));

  ZObject ob = open_box_subobject(true, A, a0);
  Rng rng(4);
  for (int it = 0; it < 100; ++it) CHECK(ob.contains(ob.gen(rng)));
  CHECK_THROWS_AS(open_box_subobject(true, A, a3), std::invalid_argument);
}

TEST_CASE("assignments apply by rename-substitute-rename") {
  Value x = cube({{a0, a2}, {a1, Bit::one}});  // support {a2}
  // rename a2 to a3
  CHECK(equal(apply_assignment(x, {{a2, a3}}), cube({{a0, a3}, {a1, Bit::one}})));
  // collapse a2 to a bit
  CHECK(equal(apply_assignment(x, {{a2, Bit::zero}}),
              cube({{a0, Bit::zero}, {a1, Bit::one}})));
  // a genuinely simultaneous swap
  Value y = cube({{a0, a2}, {a1, a3}});
  CHECK(equal(apply_assignment(y, {{a2, a3}, {a3, a2}}),
              cube({{a0, a3}, {a1, a2}})));
  // mixed: one name moves, one collapses
  CHECK(equal(apply_assignment(y, {{a2, a4}, {a3, Bit::one}}),
              cube({{a0, a4}, {a1, Bit::one}})));
}

TEST_CASE("assignment errors") {
  Value x = cube({{a0, a2}, {a1, a3}});
  CHECK_THROWS_AS(apply_assignment(x, {{a2, a4}}), SupportEscape);
  CHECK_THROWS_AS(apply_assignment(x, {{a2, a4}, {a3, a4}}),
                  std::invalid_argument);
}

TEST_CASE("yoneda evaluation at a pair of cube points") {
  // x supported in A + B = {a0} + {a1}
  Value x = cube({{a2, a0}, {a3, a1}});
  Value point = pair(cube({{a0, Bit::one}}), cube({{a1, a4}}));
  CHECK(equal(yoneda_evaluate(x, point), cube({{a2, Bit::one}, {a3, a4}})));
  // evaluating at the generic point is the identity
  Value generic = pair(identity_cube_point({a0}), identity_cube_point({a1}));
  CHECK(equal(yoneda_evaluate(x, generic), x));
}

TEST_CASE("morphisms of the generating category act by precomposition") {
  JObject src{true, {a0, a1}, a0, {}};
  JObject dst{true, {a2, a3}, a2, {}};
  JMorphism m{{{a2, a0}, {a3, a1}}, {}};
  Value p = pair(cube({{a0, Bit::zero}, {a1, a4}}), cube({}));
  Value q = j_morphism_apply(src, dst, m, p);
  CHECK(equal(first(q), cube({{a2, Bit::zero}, {a3, a4}})));
  // frozen-context component can pick bits directly
  JObject src2{true, {a0}, a0, {a1}};
  JObject dst2{true, {a2}, a2, {a3}};
  JMorphism m2{{{a2, a0}}, {{a3, Bit::one}}};
  Value p2 = pair(cube({{a0, Bit::zero}}), cube({{a1, a4}}));
  Value q2 = j_morphism_apply(src2, dst2, m2, p2);
  CHECK(equal(second(q2), cube({{a3, Bit::one}})));
}

TEST_CASE("the coalgebra on a generating inclusion: three point classes") {
  JObject o{true, {a0}, a0, {}};
  ZMorphism iota = j_map(o);
  Value q = cube({});

  // boundary point: embedded as a unit
  Value bd = pair(cube({{a0, Bit::zero}}), q);
  CHECK(equal(eta_value(o, bd), kbase(bd)));

  // name-valued point: the formal filler of its own face box
  Value nm = pair(cube({{a0, a1}}), q);
  Value t = eta_value(o, nm);
  REQUIRE(is_kbox(t));
  CHECK(kbox_data(t).a == a1);
  CHECK(equal(*kbox_data(t).face(a1, Bit::zero),
              kbase(pair(cube({{a0, Bit::zero}}), q))));
  CHECK(equal(rho_value(iota, t), nm));
  CHECK(is_kterm(iota, t));

  // open-slot point: the Kan composite at a fresh direction
  Value op = pair(cube({{a0, Bit::one}}), q);
  Value s = eta_value(o, op);
  REQUIRE(is_kbind(s));
  CHECK(equal(rho_value(iota, s), op));
  CHECK(is_kterm(iota, s));
  // closing the composite at its (fresh) direction recovers the box case
  CHECK(equal(s, subst(t, a1, Bit::one)));
}

TEST_CASE("collapsed points") {
  Value p = collapsed_point({a0, a1}, a0, Bit::one);
  CHECK(std::get<Bit>(cube_at(p, a0)) == Bit::one);
  CHECK(std::get<Name>(cube_at(p, a1)) == a1);
}

TEST_CASE("lifting data reproduces the filling operator deterministically") {
  // the collapse of a two-name cube, with its canonical filling
  NameSet A{a0, a1};
  ZObject cubeA = cube_object(A);
  ZMorphism f = unique_to_terminal(cubeA);
  FibrationStructure fs = algebra_to_filling(canonical_algebra(f));
  LiftingData ld = fibration_to_lifting(fs);
  FibrationStructure back = lifting_to_fibration(fs.morphism, ld);

  Value x = kbase(cube({{a0, a2}, {a1, Bit::zero}}));
  BoxData box = box_of_point(fs.morphism, x, {a2, a3}, a2, true);
  Value direct = fs.fill.fill(box);
  Value via = back.fill.fill(box);
  CHECK(equal(direct, via));
  CHECK(is_filler(via, box, fs.morphism));
  // enlarging the frozen context does not change the lift
  CHECK(equal(lift_fill(fs.morphism, ld, box, {Name{9}}), direct));
}
