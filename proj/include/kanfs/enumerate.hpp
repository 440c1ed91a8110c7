#pragma once

// Exhaustive enumeration of the free fibration over the identity on the
// terminal object: every term whose canonical representative only uses
// names from a fixed initial alphabet, staged by rank. Desk-scale only;
// guarded by a work budget.

#include <set>

#include "kanfs/free_fibration.hpp"

namespace kanfs {

struct ResourceLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All terms of rank <= rank_max over the identity on the terminal
// object, with box index names drawn from the first alphabet_size
// atoms. Bound names of composites coincide with their box direction,
// so the canonical representatives stay inside the alphabet.
inline std::vector<Value> enumerate_k_terminal_terms(int rank_max,
                                                     int alphabet_size) {
  if (rank_max < 0 || rank_max > 3 || alphabet_size < 1 || alphabet_size > 4)
    throw ResourceLimit("enumerate: rank_max <= 3 and 1 <= alphabet_size <= 4");
  ZMorphism id1 = identity_morphism(terminal_object());
  ZMorphism rho = rho_lite(id1);
  std::vector<Name> names;
  for (int k = 0; k < alphabet_size; ++k)
    names.push_back(Name{static_cast<uint32_t>(k)});

  std::vector<Value> all{kbase(unit())};
  std::set<std::string> seen{show(all.front())};
  std::size_t budget = 2'000'000;

  auto add = [&](const Value& t) {
    if (seen.insert(show(t)).second) all.push_back(t);
  };

  for (int stage = 1; stage <= rank_max; ++stage) {
    std::vector<Value> pool = all;  // faces of rank < stage
    for (unsigned mask = 1; mask < (1u << names.size()); ++mask) {
      std::vector<Name> A;
      for (std::size_t k = 0; k < names.size(); ++k)
        if (mask >> k & 1) A.push_back(names[k]);
      for (Name a : A)
        for (bool up : {false, true}) {
          Bit missing = up ? Bit::one : Bit::zero;
          std::vector<std::pair<Name, Bit>> slots;
          std::vector<std::vector<const Value*>> cands;
          bool dead = false;
          for (Name b : A)
            for (Bit i : {Bit::zero, Bit::one}) {
              if (b == a && i == missing) continue;
              slots.emplace_back(b, i);
              cands.emplace_back();
              for (const Value& t : pool)
                if (!free_names(t).count(b)) cands.back().push_back(&t);
              if (cands.back().empty()) dead = true;
            }
          if (dead) continue;
          std::vector<std::size_t> idx(slots.size(), 0);
          while (true) {
            if (budget-- == 0)
              throw ResourceLimit("enumerate: work budget exhausted");
            BoxData box{up, a, {}, unit()};
            for (std::size_t s = 0; s < slots.size(); ++s)
              box.faces.emplace_back(slots[s].first, slots[s].second,
                                     *cands[s][idx[s]]);
            box.sort_faces();
            if (box_violation(box, rho).empty()) {
              add(kbox(box));
              add(kbind(a, box));
            }
            std::size_t s = 0;
            for (; s < idx.size(); ++s) {
              if (++idx[s] < cands[s].size()) break;
              idx[s] = 0;
            }
            if (s == idx.size()) break;
          }
        }
    }
  }
  return all;
}

// Counts grouped by rank; index r holds the number of rank-r terms.
inline std::vector<std::size_t> enumerate_k_terminal(int rank_max,
                                                     int alphabet_size) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(rank_max) + 1, 0);
  for (const Value& t : enumerate_k_terminal_terms(rank_max, alphabet_size))
    ++counts[static_cast<std::size_t>(rank(t))];
  return counts;
}

}  // namespace kanfs
