// Acceptance run: one line per criterion, "criterion N: PASS/FAIL".
// Exit code 0 iff every criterion passes.

#include <chrono>
#include <iostream>

#include "enumeration_oracle.hpp"
#include "kanfs/laws.hpp"

using namespace kanfs;

namespace {

int failed = 0;

void line(int n, bool ok, const std::string& what) {
  std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " - "
            << what << "\n";
  if (!ok) ++failed;
}

const CheckReport* find(const LawReport& r, const std::string& prefix) {
  for (const CheckReport& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

// All checks whose name starts with one of the prefixes pass and ran at
// least min_cases cases each; at least one such check exists.
bool group_ok(const LawReport& r, std::initializer_list<const char*> prefixes,
              int min_cases) {
  bool ok = true, any = false;
  for (const CheckReport& c : r.checks)
    for (const char* p : prefixes)
      if (c.name.rfind(p, 0) == 0) {
        any = true;
        ok = ok && c.ok() && c.iterations >= min_cases;
      }
  return any && ok;
}

}  // namespace

int main() {
  const Name a0{0}, a1{1};

  // 1. substitution axioms on every carrier, >= 1000 cases, < 60 s
  auto t0 = std::chrono::steady_clock::now();
  LawOptions o1;
  o1.iters = 1000;
  LawReport zs = suite_zsub(o1);
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  bool c1 = zs.ok() && secs < 60.0;
  for (const CheckReport& c : zs.checks) c1 = c1 && c.iterations >= 1000;
  line(1, c1,
       "substitution axioms on terminal/cubes/term algebras/path object, "
       "1000 cases each (" + std::to_string(secs).substr(0, 4) + " s)");

  LawOptions o5;
  o5.iters = 500;
  LawReport com = suite_comonad(o5);
  LawReport mon = suite_monad(o5);

  // 2. comonad and monad laws, >= 500 samples per law per morphism
  bool c2 = group_ok(com,
                     {"comonad-counit-rho", "comonad-counit-map",
                      "comonad-coassoc"},
                     500) &&
            group_ok(mon, {"monad-unit", "monad-assoc"}, 500);
  line(2, c2, "comonad and monad laws, 500 samples per law per morphism");

  // 3. factorisation, naturality, functoriality
  bool c3 = group_ok(
      com, {"factorisation", "naturality", "functoriality", "square:"}, 500);
  line(3, c3, "factorisation and naturality squares, 500 samples");

  // 4. algebra <-> filling round trips and the canonical algebra laws
  LawReport br = suite_bridge(o5);
  bool c4 = group_ok(
      br, {"algebra:", "roundtrip-filling", "roundtrip-algebra"}, 500);
  line(4, c4, "algebra/filling round trips and algebra diagrams, 500 samples");

  // 5. uniformity of every produced filling operator
  FibrationStructure fs0 = canonical_fibration(test_morphisms()[0]);
  PathContext pc0 = make_path_context(fs0);
  ZObject pobj0 = path_object(pc0);
  FibrationStructure pfs0 = path_fibration(pc0, pobj0);
  CheckReport pu =
      check_uniformity(pfs0, point_box_generator(pfs0.morphism), 500, 7);
  bool c5 = group_ok(br, {"uniformity:"}, 500) && pu.ok();
  line(5, c5, "uniformity of all filling operators, 500 box pairs each");

  // 6. generating inclusions: exhaustive coalgebra, lifting round trip,
  //    support enlargement
  LawOptions o6;
  o6.iters = 200;
  LawReport gen = suite_generators(o6);
  const CheckReport* eta = find(gen, "eta-coalgebra");
  const CheckReport* lrt = find(gen, "lifting-roundtrip");
  const CheckReport* se = find(gen, "support-enlargement");
  bool c6 = gen.ok() && eta && eta->iterations > 1000 && lrt &&
            lrt->iterations >= 200 && se && se->iterations >= 100;
  line(6, c6,
       "generating-inclusion coalgebra (exhaustive), lifting round trip, "
       "context independence");

  // 7. enumeration and rank against the independent oracle
  bool c7 = enumerate_k_terminal(2, 1) == testing::oracle_counts(2, 1) &&
            enumerate_k_terminal(2, 2) == testing::oracle_counts(2, 2) &&
            enumerate_k_terminal(1, 3) == testing::oracle_counts(1, 3) &&
            enumerate_k_terminal(2, 1)[0] == 1;
  for (const auto& [t, stage] : testing::oracle_terms(2, 2))
    c7 = c7 && rank(t) == stage;
  line(7, c7, "rank and enumeration counts match the independent oracle");

  // 8. path objects: bind/unbind, counit, fillers, pullback transport,
  //    decidable image
  LawReport pa = suite_path(o5);
  bool c8 = pa.ok() &&
            group_ok(pa, {"bind-unbind", "reflexivity-counit"}, 500) &&
            group_ok(pa, {"path-fill"}, 200) &&
            group_ok(pa, {"pullback-transport-0", "pullback-transport-1"},
                     100) &&
            group_ok(pa, {"decidable-image"}, 1);
  line(8, c8,
       "path objects: inverse laws, counit, fillers, pullback transport, "
       "decidable image");

  // 9. mutation sensitivity: three seeded bugs, each caught by a law
  bool m1;  // composite substitution without the face-collapse guard
  {
    ZMorphism id1 = identity_morphism(terminal_object());
    BoxData box =
        box_of_point(rho_lite(id1), kbase(unit()), {a0, a1}, a0, true);
    Value t = kbind(a0, box);
    const auto& kb = kbind_data(t);
    Value mutated = kbind(kb.bound, box_subst(kb.box, a1, Bit::zero));
    m1 = free_names(mutated).count(a1) &&            // freshness axiom fails
         !free_names(subst(t, a1, Bit::zero)).count(a1);  // real op passes
  }
  bool m2;  // box validator without the freshness branch
  {
    BoxData bad{true, a0, {{a0, Bit::zero, kbase(cube({{a1, a0}}))}}, unit()};
    ZObject junk{"junk", [](const Value&) { return true; },
                 [bad](Rng&) { return kbox(bad); }};
    ZMorphism id1 = identity_morphism(terminal_object());
    m2 = !box_violation(bad, rho_lite(id1)).empty() &&
         !check_zsub_axioms(junk, 50, 9).ok();
  }
  bool m3;  // filling operator that re-indexes through a fixed swap
  {
    FibrationStructure fs = fs0;
    BoxGenerator boxes = point_box_generator(fs.morphism);
    Perm p0 = Perm::swap(a0, a1);
    FillingOperator real = fs.fill;
    auto bad = [real, p0](const BoxData& box) {
      return real.fill(box_act(p0, box));
    };
    m3 = check_uniformity(fs, boxes, 100, 13).ok() &&
         !check_uniformity({fs.morphism, {bad, bad}}, boxes, 100, 13).ok();
  }
  line(9, m1 && m2 && m3, "three seeded mutations each trip a law check");

  // 10. determinism: two full runs render byte-identically
  LawOptions od;  // defaults: seed 7
  LawReport run1 = run_suite("all", od);
  LawReport run2 = run_suite("all", od);
  line(10, report_text(run1) == report_text(run2) && run1.ok(),
       "two seeded full runs produce byte-identical reports");

  std::cout << (failed == 0 ? "ACCEPTANCE PASS"
                            : "ACCEPTANCE FAIL (" + std::to_string(failed) +
                                  " criteria)")
            << "\n";
  return failed == 0 ? 0 : 1;
}
