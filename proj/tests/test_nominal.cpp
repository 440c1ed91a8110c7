#include "doctest.h"

#include "kanfs/value.hpp"
#include "kanfs/zobject.hpp"

using namespace kanfs;

namespace {
const Name a0{0}, a1{1}, a2{2}, a3{3};
}

TEST_CASE("fresh_name picks the smallest unused atom") {
  CHECK(fresh_name({}) == a0);
  CHECK(fresh_name({a0, a1}) == a2);
  CHECK(fresh_name({a0, a2}) == a1);
  // membership scan
  NameSet avoid{a0, a2};
  CHECK(!avoid.count(fresh_name(avoid)));
}

TEST_CASE("perm basics") {
  Perm p = Perm::swap(a0, a1);
  CHECK(p(a0) == a1);
  CHECK(p(a1) == a0);
  CHECK(p(a2) == a2);

  Perm q = Perm::swap(a1, a2);
  // compose-then-apply equals apply-then-apply
  Perm pq = p.after(q);
  for (Name n : {a0, a1, a2, a3}) CHECK(pq(n) == p(q(n)));
  CHECK(p.after(p).is_identity());
  CHECK(p.inverse() == p);
}

TEST_CASE("group action laws on values, randomized") {
  Rng rng(42);
  NameSet alpha = default_alphabet();
  for (int it = 0; it < 200; ++it) {
    // a small random cube point as the test value
    std::vector<std::pair<Name, node::CubeEntry>> assign;
    assign.emplace_back(a0, Name{static_cast<uint32_t>(rand_int(rng, 4, 6))});
    assign.emplace_back(a1, rand_bit(rng));
    Value v = cube(assign);
    Perm p = rand_perm(rng, default_alphabet(7));
    Perm q = rand_perm(rng, default_alphabet(7));
    CHECK(equal(act(Perm{}, v), v));
    CHECK(equal(act(p.after(q), v), act(p, act(q, v))));
  }
}

TEST_CASE("alpha equivalence of abstractions") {
  // <a0>a0 vs <a1>a1 with name bodies, encoded as single-entry cubes
  Value x = cube({{a2, a0}});
  Value y = cube({{a2, a1}});
  CHECK(equal(abs(a0, x), abs(a1, y)));   // pure renaming
  CHECK(!equal(abs(a0, y), abs(a1, x)));  // <a0>a1 vs <a1>a0
  CHECK(equal(abs(a0, x), abs(a0, x)));   // reflexivity

  // invariant under acting on both sides
  Rng rng(7);
  for (int it = 0; it < 100; ++it) {
    Perm p = rand_perm(rng, default_alphabet(6));
    CHECK(equal(act(p, abs(a0, x)), act(p, abs(a1, y))));
  }
}

TEST_CASE("abstraction substitution and the fresh-extension heuristic") {
  Value x = cube({{a3, a1}});  // body with free name a1

  // fresh substitution leaves the abstraction alone
  CHECK(equal(subst(abs(a0, x), a2, Bit::one), abs(a0, x)));
  // substitution at a free name goes under the binder
  Value r = subst(abs(a0, x), a1, Bit::zero);
  CHECK(equal(r, abs(a0, cube({{a3, Bit::zero}}))));
  // equivariance of abstraction: p.<a>x = <p(a)>(p.x)
  Perm p = Perm::swap(a0, a2);
  CHECK(equal(act(p, abs(a0, x)), abs(a2, act(p, x))));

  // representative independence: evaluating through two fresh renamings
  // of the bound name agrees
  Name b = fresh_name(set_union(free_names(x), {a0}));
  Name c{17};
  Value viaB = subst(act(Perm::swap(a0, b), x), a1, Bit::one);
  Value viaC = subst(act(Perm::swap(a0, c), x), a1, Bit::one);
  CHECK(equal(abs(b, viaB), abs(c, viaC)));
}

TEST_CASE("show is alpha-invariant and deterministic") {
  Value x = cube({{a2, a0}});
  Value y = cube({{a2, a1}});
  CHECK(show(abs(a0, x)) == show(abs(a1, y)));
  CHECK(show(abs(a0, x)) == show(abs(a0, x)));
}

TEST_CASE("terminal object") {
  ZObject one = terminal_object();
  CHECK(equal(act(Perm::swap(a0, a1), unit()), unit()));
  CHECK(equal(subst(unit(), a0, Bit::one), unit()));
  CHECK(free_names(unit()).empty());
  CheckReport rep = check_zsub_axioms(one, 200, 1);
  CHECK(rep.ok());
}

TEST_CASE("separated product accepts/rejects by support overlap") {
  Value u = cube({{a0, a2}});  // support {a2}
  Value v = cube({{a1, a3}});  // support {a3}
  Value w = cube({{a1, a2}});  // support {a2}
  ZObject any{"any", [](const Value&) { return true; }, {}};
  ZObject sep = separated_product(any, any);
  CHECK(sep.contains(pair(u, v)));
  CHECK(!sep.contains(pair(u, w)));
  // symmetry
  CHECK(sep.contains(pair(v, u)));
  CHECK_THROWS(separated_pair(sep, u, w));
  // substitution touches only the component supported by the name
  Value p = separated_pair(sep, u, v);
  Value ps = subst(p, a2, Bit::zero);
  CHECK(equal(first(ps), subst(u, a2, Bit::zero)));
  CHECK(equal(second(ps), v));
}

TEST_CASE("pullback object") {
  ZObject any{"any", [](const Value&) { return true; }, {}};
  ZMorphism id = identity_morphism(any);
  ZObject pb = pullback_object(id, id);
  Value u = cube({{a0, a2}});
  Value v = cube({{a0, a3}});
  CHECK(pb.contains(pair(u, u)));
  CHECK(!pb.contains(pair(u, v)));
  CHECK_THROWS(pullback_pair(id, id, u, v));

  // f = g = map to terminal: pullback is the full product
  ZMorphism bang = unique_to_terminal(any);
  ZObject prod = pullback_object(bang, bang);
  CHECK(prod.contains(pair(u, v)));

  // substitution on a pair is the pair of substitutions
  Value p = pair(u, u);
  CHECK(equal(subst(p, a2, Bit::one),
              pair(subst(u, a2, Bit::one), subst(u, a2, Bit::one))));
}

TEST_CASE("fibred abstraction") {
  ZObject any{"any", [](const Value&) { return true; }, {}};
  // f = unique map to 1: every abstraction is allowed
  ZObject over1 = fibred_abstraction(unique_to_terminal(any));
  Value x = cube({{a0, a2}});
  CHECK(over1.contains(abs(a2, x)));
  // f = identity: only bound names fresh for the body
  ZObject overId = fibred_abstraction(identity_morphism(any));
  CHECK(!overId.contains(abs(a2, x)));
  CHECK(overId.contains(abs(a3, x)));
  CHECK_THROWS(fibred_abs(identity_morphism(any), a2, x));
}

TEST_CASE("a carrier that is not closed under substitution is caught") {
  // membership demands a name value at a0, so substituting that name
  // away leaves the object: the closure check must flag it
  ZObject bad;
  bad.label = "mutant";
  bad.contains = [](const Value& v) {
    auto* c = std::get_if<node::Cube>(&(*v).data);
    return c && std::holds_alternative<Name>(c->assign.front().second);
  };
  bad.gen = [](Rng& rng) -> Value {
    return cube({{a0, Name{static_cast<uint32_t>(rand_int(rng, 4, 6))}}});
  };
  CheckReport rep = check_zsub_axioms(bad, 100, 3);
  CHECK(!rep.ok());
  bool closure = false;
  for (const Failure& f : rep.failures) closure |= (f.law == "closure-subst");
  CHECK(closure);
}

TEST_CASE("a non-equivariant map is caught by the morphism checker") {
  ZObject any{"any", [](const Value&) { return true; }, {}};
  ZObject pts{"pts", [](const Value&) { return true; },
              [](Rng& rng) -> Value {
                return cube({{a0, Name{static_cast<uint32_t>(rand_int(rng, 1, 3))}}});
              }};
  // collapses one hard-coded name, so permutations do not commute with it
  ZMorphism skew{"skew", pts, any,
                 [](const Value& v) { return subst(v, a1, Bit::one); }};
  CheckReport rep = check_morphism(skew, 200, 5);
  CHECK(!rep.ok());
}
