// Command-line driver: seeded law suites, exhaustive enumeration over
// the terminal identity, term queries on JSON-encoded values, and a
// small end-to-end path-object demonstration.
//
// Exit codes: 0 clean, 1 law/check failure, 2 usage or input error.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "kanfs/laws.hpp"

using namespace kanfs;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("KANFORGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw CLI::ValidationError("KANFORGE_SEED", "not a number");
    }
  }
  return 7;
}

int cmd_laws(const std::string& suite, const LawOptions& opts, bool as_json) {
  LawReport rep = run_suite(suite, opts);
  if (as_json)
    std::cout << report_json(rep).dump(2) << "\n";
  else
    std::cout << report_text(rep);
  return rep.ok() ? 0 : 1;
}

int cmd_enumerate(int rank_max, int alphabet, bool as_json) {
  std::vector<std::size_t> counts = enumerate_k_terminal(rank_max, alphabet);
  if (as_json) {
    json j{{"rank_max", rank_max}, {"alphabet", alphabet}, {"counts", counts}};
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t r = 0; r < counts.size(); ++r)
      std::cout << "rank " << r << ": " << counts[r] << "\n";
  }
  return 0;
}

int cmd_term(const std::string& action, const std::string& term_text,
             const std::string& other_text, const std::string& name_text,
             int bit, const std::string& swap_text) {
  Value t = value_from_json(json::parse(term_text));
  if (action == "rank") {
    std::cout << json{{"rank", rank(t)}}.dump() << "\n";
  } else if (action == "subst") {
    Name a = name_from_json(json(name_text), "$.name");
    std::cout << value_to_json(subst(t, a, bit_of(bit))).dump() << "\n";
  } else if (action == "act") {
    auto comma = swap_text.find(',');
    if (comma == std::string::npos)
      throw SchemaError("$.swap", "expected \"a<i>,a<j>\"");
    Name a = name_from_json(json(swap_text.substr(0, comma)), "$.swap");
    Name b = name_from_json(json(swap_text.substr(comma + 1)), "$.swap");
    std::cout << value_to_json(act(Perm::swap(a, b), t)).dump() << "\n";
  } else {  // eq
    Value u = value_from_json(json::parse(other_text), "$.other");
    std::cout << json{{"equal", equal(t, u)}}.dump() << "\n";
  }
  return 0;
}

int cmd_path_demo(std::uint64_t seed) {
  std::cout << "path-object demo, seed " << seed << "\n";
  FibrationStructure fs = canonical_fibration(test_morphisms()[0]);
  PathContext pc = make_path_context(fs);
  ZObject pobj = path_object(pc);
  ReflexivityCoalgebra rc = reflexivity_coalgebra(pc);
  Rng rng(seed);
  bool ok = true;
  auto step = [&ok](const std::string& what, bool good) {
    std::cout << (good ? "  ok   " : "  FAIL ") << what << "\n";
    ok = ok && good;
  };

  Value x = fs.morphism.source.gen(rng);
  while (free_names(x).empty()) x = fs.morphism.source.gen(rng);
  std::cout << "element x = " << show(x) << "\n";
  // abstract a name that occurs in x, so the normal form is not degenerate
  Name a = *free_names(x).begin();
  Value w = abstraction_to_normal_form(pc, a, x);
  std::cout << "normal form w = " << show(w) << "\n";
  step("w is a normal form", pobj.contains(w));

  Name b = fresh_name(free_names(w));
  Value z = unbind(w, b);
  step("unbind is pre-normal", prenormal_shape(b, z));
  step("binding the unbound form restores w", equal(subst(z, b, Bit::one), w));

  Value cw = rc.c(w);
  std::cout << "coalgebra c(w) = " << show(cw) << "\n";
  step("counit: rho_r(c(w)) = w  [c(z(a:=1)) = l(z,b)(b:=1)]",
       equal(rho_value(rc.r, cw), w));
  step("c is the identity on degenerate paths", equal(rc.c(rc.r(x)), kbase(x)));

  FibrationStructure pfs = path_fibration(pc, pobj);
  BoxData box = point_box_generator(pfs.morphism)(rng);
  Value filled = pfs.fill.fill(box);
  step("open box of normal forms has a filler", is_filler(filled, box, pfs.morphism));
  step("the filler is again a normal form", pobj.contains(filled));

  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"term-algebra engine for uniform-Kan factorisations"};
  app.require_subcommand(1);

  LawOptions opts;
  std::string suite = "all";
  bool as_json = false;

  CLI::App* laws = app.add_subcommand("laws", "run a law suite");
  laws->add_option("--suite", suite, "zsub|comonad|monad|bridge|generators|path|all");
  laws->add_option("--seed", opts.seed, "random seed");
  laws->add_option("--iters", opts.iters, "iterations per check");
  laws->add_option("--rank-max", opts.rank_max, "term depth bound");
  laws->add_option("--names-max", opts.names_max, "alphabet size");
  laws->add_flag("--format-json,--json", as_json, "JSON output");

  int rank_max = 2, alphabet = 1;
  CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate terms over the terminal identity");
  enumerate->add_option("--rank-max", rank_max, "maximum rank (<= 3)");
  enumerate->add_option("--alphabet", alphabet, "alphabet size (<= 4)");
  enumerate->add_flag("--format-json,--json", as_json, "JSON output");

  std::string action, term_text, other_text, name_text = "a0", swap_text = "a0,a1";
  int bit = 1;
  CLI::App* term = app.add_subcommand("term", "query a JSON-encoded term");
  term->add_option("action", action, "rank|subst|act|eq")->required();
  term->add_option("--term", term_text, "term JSON")->required();
  term->add_option("--other", other_text, "second term JSON (eq)");
  term->add_option("--name", name_text, "substituted name (subst)");
  term->add_option("--bit", bit, "substituted bit (subst)")->check(CLI::Range(0, 1));
  term->add_option("--swap", swap_text, "transposition \"a<i>,a<j>\" (act)");

  CLI::App* demo = app.add_subcommand("path-demo", "end-to-end path-object walkthrough");
  std::uint64_t demo_seed = 0;
  bool demo_seed_set = false;
  demo->add_option("--seed", demo_seed, "random seed")
      ->each([&](const std::string&) { demo_seed_set = true; });

  try {
    app.parse(argc, argv);
    opts.seed = laws->count("--seed") ? opts.seed : default_seed();
    if (laws->parsed()) return cmd_laws(suite, opts, as_json);
    if (enumerate->parsed()) return cmd_enumerate(rank_max, alphabet, as_json);
    if (term->parsed()) {
      if (action != "rank" && action != "subst" && action != "act" && action != "eq")
        throw CLI::ValidationError("action", "must be rank|subst|act|eq");
      if (action == "eq" && other_text.empty())
        throw CLI::ValidationError("--other", "required for eq");
      return cmd_term(action, term_text, other_text, name_text, bit, swap_text);
    }
    if (demo->parsed())
      return cmd_path_demo(demo_seed_set ? demo_seed : default_seed());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const json::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
