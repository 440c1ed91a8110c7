#include "doctest.h"

#include "kanfs/generators.hpp"
#include "kanfs/path_objects.hpp"

using namespace kanfs;

namespace {
const Name a0{0}, a1{1}, a2{2}, a3{3};

// The projection of the free fibration over the collapse of a two-name
// cube, with its canonical filling operator. Elements of the source are
// terms; points embed via kbase.
FibrationStructure fixture_fibration() {
  ZObject cubeA = cube_object({a0, a1});
  return algebra_to_filling(canonical_algebra(unique_to_terminal(cubeA)));
}
}  // namespace

TEST_CASE("pre-normal and normal shapes") {
  FibrationStructure fs = fixture_fibration();
  PathContext pc = make_path_context(fs);

  Value x = kbase(cube({{a0, a2}, {a1, Bit::zero}}));
  // embedded points are pre-normal iff the direction is fresh
  CHECK(prenormal_shape(a3, kbase(x)));
  CHECK(!prenormal_shape(a2, kbase(x)));

  Value z = g0_prenormal(a2, x);
  CHECK(prenormal_shape(a2, z));
  CHECK(is_prenormal(pc, a2, z));
  // a plain formal box is not a normal form
  CHECK(!normal_shape(z));
  CHECK(normal_shape(kbase(x)));
  Value w = abstraction_to_normal_form(pc, a2, x);
  CHECK(normal_shape(w));
  CHECK(is_normal(pc, w));
}

TEST_CASE("unbinding errors") {
  FibrationStructure fs = fixture_fibration();
  PathContext pc = make_path_context(fs);
  Value x = kbase(cube({{a0, a2}, {a1, a3}}));
  // unbinding a non-normal term
  CHECK_THROWS_AS(unbind(g0_prenormal(a2, x), fresh_name(free_names(x))),
                  NotNormalForm);
  // unbinding at a direction that is still free
  Value w = abstraction_to_normal_form(pc, a2, x);
  REQUIRE(free_names(w).count(a3));
  CHECK_THROWS_AS(unbind(w, a3), std::invalid_argument);
}

TEST_CASE("the inductive pre-normal form of an element") {
  Value x = kbase(cube({{a0, a2}, {a1, Bit::zero}}));
  Value z = g0_prenormal(a2, x);
  REQUIRE(is_kbox(z));
  const BoxData& b = kbox_data(z);
  CHECK(b.up);
  CHECK(b.a == a2);
  Value x0 = subst(x, a2, Bit::zero);
  CHECK(equal(*b.face(a2, Bit::zero), kbase(x0)));
  CHECK(equal(b.base, pair(x0, x)));
  // fresh direction: degenerate
  CHECK(equal(g0_prenormal(a3, x), kbase(x)));
}

TEST_CASE("conversion to a normal form and its endpoints") {
  FibrationStructure fs = fixture_fibration();
  PathContext pc = make_path_context(fs);
  Value x = kbase(cube({{a0, a2}, {a1, Bit::zero}}));
  Value w = abstraction_to_normal_form(pc, a2, x);
  REQUIRE(is_kbind(w));
  CHECK(!free_names(w).count(a2));
  Value ends = rho_value(pc.delta, w);
  CHECK(equal(first(ends), subst(x, a2, Bit::zero)));
  CHECK(equal(second(ends), subst(x, a2, Bit::one)));
  // degenerate when the name is fresh
  CHECK(equal(abstraction_to_normal_form(pc, a3, x), kbase(x)));
  // binding after unbinding is the identity
  Name b = fresh_name(free_names(w));
  CHECK(equal(subst(unbind(w, b), b, Bit::one), w));
}

TEST_CASE("conversion requires the name to be fresh under the fibration") {
  // over the identity no free name qualifies
  ZObject cubeA = cube_object({a0, a1});
  FibrationStructure fs =
      algebra_to_filling(canonical_algebra(identity_morphism(cubeA)));
  PathContext pc = make_path_context(fs);
  Value x = kbase(cube({{a0, a2}, {a1, Bit::zero}}));
  CHECK_THROWS_AS(abstraction_to_normal_form(pc, a2, x),
                  std::invalid_argument);
}

TEST_CASE("homotopy endpoints on a concrete pre-normal form") {
  FibrationStructure fs = fixture_fibration();
  PathContext pc = make_path_context(fs);
  Value x = kbase(cube({{a0, a2}, {a1, Bit::zero}}));
  Value z = g0_prenormal(a2, x);
  Name b = a3;
  Value ends = rho_value(pc.delta, z);
  Value h = homotopy_h(pc, z, b);
  CHECK(equal(subst(h, b, Bit::zero), first(ends)));
  CHECK(equal(subst(h, b, Bit::one), second(ends)));
  Value k = homotopy_k(pc, z, b);
  CHECK(equal(subst(k, b, Bit::zero), kbase(first(ends))));
  CHECK(equal(subst(k, b, Bit::one), z));
}

TEST_CASE("reflexivity coalgebra: counit and degeneracy") {
  FibrationStructure fs = fixture_fibration();
  PathContext pc = make_path_context(fs);
  ReflexivityCoalgebra rc = reflexivity_coalgebra(pc);
  Value x = kbase(cube({{a0, a2}, {a1, Bit::zero}}));
  // c fixes degenerate paths
  CHECK(equal(rc.c(rc.r(x)), kbase(x)));
  // the counit on a non-degenerate normal form
  Value w = abstraction_to_normal_form(pc, a2, x);
  Value cw = rc.c(w);
  CHECK(rc.kr.object.contains(cw));
  CHECK(equal(rho_value(rc.r, cw), w));
  // decidable image through the coalgebra: exactly the degenerate paths
  CHECK(decidable_image(rc.c.map, rc.r(x)));
  CHECK(!decidable_image(rc.c.map, w));
}

TEST_CASE("a concrete open box of normal forms has a normal filler") {
  FibrationStructure fs = fixture_fibration();
  PathContext pc = make_path_context(fs);
  ZObject pobj = path_object(pc);
  FibrationStructure pfs = path_fibration(pc, pobj);

  Value x = kbase(cube({{a0, a2}, {a1, a3}}));
  Value w = abstraction_to_normal_form(pc, a2, x);
  REQUIRE(pobj.contains(w));
  for (bool up : {false, true}) {
    BoxData box = box_of_point(pfs.morphism, w, {a3}, a3, up);
    Value filled = pfs.fill.fill(box);
    CHECK(is_filler(filled, box, pfs.morphism));
    CHECK(pobj.contains(filled));
  }
}

TEST_CASE("transport along a square preserves normal forms") {
  // map the open-box inclusion into the cube; both collapse to the
  // terminal object, and the top of the square is the induced term map
  ZObject cubeA = cube_object({a0, a1});
  ZObject ob = open_box_subobject(true, {a0, a1}, a0);
  ZMorphism f_sub = unique_to_terminal(ob);
  ZMorphism f_cube = unique_to_terminal(cubeA);
  FibrationStructure over_sub = algebra_to_filling(canonical_algebra(f_sub));
  FibrationStructure over_cube = algebra_to_filling(canonical_algebra(f_cube));
  PathContext pc_sub = make_path_context(over_sub);
  PathContext pc_cube = make_path_context(over_cube);

  ZMorphism incl{"incl", ob, cubeA, [](const Value& v) { return v; }};
  Square sq{incl, identity_morphism(terminal_object())};
  ZMorphism h{"terms", over_sub.morphism.source, over_cube.morphism.source,
              [sq](const Value& t) { return kmap_value(sq, t); }};
  ZMorphism tr = pullback_transport(pc_sub, pc_cube, h);

  Value x = kbase(cube({{a0, Bit::zero}, {a1, a2}}));
  REQUIRE(over_sub.morphism.source.contains(x));
  Value w = abstraction_to_normal_form(pc_sub, a2, x);
  Value tw = tr(w);
  CHECK(path_object(pc_cube).contains(tw));
  CHECK(equal(tw, abstraction_to_normal_form(pc_cube, a2, h(x))));
}
