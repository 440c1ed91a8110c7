#pragma once

// The universal element carrier.
//
// Every element of every object built by this library (cube points,
// pairs, name abstractions, terms of the free fibration K f, ...) is an
// immutable Value. Permutation action, 01-substitution, support bounds
// and equality (alpha at binders) are defined structurally once, here;
// object bundles elsewhere only add membership predicates and
// generators on top.

#include <cassert>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "kanfs/names.hpp"

namespace kanfs {

class Value;

namespace node {
struct Unit {};
struct Lit {
  long v = 0;
};
struct Pair;
struct Cube;
struct Abs;
struct KBase;
struct KBox;
struct KBind;
}  // namespace node

struct Node;

class Value {
 public:
  Value() = default;
  explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  const Node& operator*() const { return *node_; }
  const Node* operator->() const { return node_.get(); }
  bool defined() const { return node_ != nullptr; }

 private:
  std::shared_ptr<const Node> node_;
};

// An open-box datum: a 1-open box is missing the face (a, 1), a 0-open
// box is missing (a, 0). Faces are kept sorted by (name, bit) so every
// traversal is canonical.
struct BoxData {
  bool up = true;
  Name a;
  std::vector<std::tuple<Name, Bit, Value>> faces;
  Value base;

  Bit missing_bit() const { return up ? Bit::one : Bit::zero; }

  NameSet names() const {
    NameSet s{a};
    for (const auto& [b, i, t] : faces) s.insert(b);
    return s;
  }

  const Value* face(Name b, Bit i) const {
    for (const auto& [fb, fi, t] : faces)
      if (fb == b && fi == i) return &t;
    return nullptr;
  }

  void sort_faces() {
    std::sort(faces.begin(), faces.end(), [](const auto& x, const auto& y) {
      return std::pair(std::get<0>(x), std::get<1>(x)) <
             std::pair(std::get<0>(y), std::get<1>(y));
    });
  }
};

namespace node {
struct Pair {
  Value first, second;
};
// A point of a standard cube: a finite assignment name -> name-or-bit,
// injective on its name-valued part.
using CubeEntry = std::variant<Name, Bit>;
struct Cube {
  std::vector<std::pair<Name, CubeEntry>> assign;  // sorted by domain name
};
struct Abs {
  Name bound;
  Value body;
};
struct KBase {
  Value x;
};
struct KBox {
  BoxData box;
};
struct KBind {
  Name bound;  // the box is an (A, bound)-box; this is its Kan composite
  BoxData box;
};
}  // namespace node

using NodeData = std::variant<node::Unit, node::Lit, node::Pair, node::Cube,
                              node::Abs, node::KBase, node::KBox, node::KBind>;

struct Node {
  NodeData data;
  NameSet free;  // support bound: free names of the representation
};

inline const NameSet& free_names(const Value& v) { return v->free; }

inline NameSet box_free(const BoxData& b) {
  NameSet s = b.names();
  for (const auto& [fb, fi, t] : b.faces) s = set_union(s, free_names(t));
  return set_union(s, free_names(b.base));
}

namespace detail {
inline Value make(NodeData d, NameSet free) {
  return Value(std::make_shared<const Node>(Node{std::move(d), std::move(free)}));
}
}  // namespace detail

inline Value unit() { return detail::make(node::Unit{}, {}); }

inline Value lit(long v) { return detail::make(node::Lit{v}, {}); }

inline Value pair(Value a, Value b) {
  NameSet f = set_union(free_names(a), free_names(b));
  return detail::make(node::Pair{std::move(a), std::move(b)}, std::move(f));
}

inline Value cube(std::vector<std::pair<Name, node::CubeEntry>> assign) {
  std::sort(assign.begin(), assign.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  NameSet f;
  for (const auto& [k, e] : assign)
    if (auto* n = std::get_if<Name>(&e)) {
      if (!f.insert(*n).second)
        throw std::invalid_argument("cube point: assignment not injective on names");
    }
  return detail::make(node::Cube{std::move(assign)}, std::move(f));
}

inline Value abs(Name bound, Value body) {
  NameSet f = free_names(body);
  f.erase(bound);
  return detail::make(node::Abs{bound, std::move(body)}, std::move(f));
}

inline Value kbase(Value x) {
  NameSet f = free_names(x);
  return detail::make(node::KBase{std::move(x)}, std::move(f));
}

inline Value kbox(BoxData box) {
  box.sort_faces();
  NameSet f = box_free(box);
  return detail::make(node::KBox{std::move(box)}, std::move(f));
}

inline Value kbind(Name bound, BoxData box) {
  box.sort_faces();
  assert(box.a == bound);
  NameSet f = box_free(box);
  f.erase(bound);
  return detail::make(node::KBind{bound, std::move(box)}, std::move(f));
}

// ---------------------------------------------------------------------------
// Permutation action (structural; on cube points only the name values move).

Value act(const Perm& p, const Value& v);

inline BoxData box_act(const Perm& p, const BoxData& b) {
  BoxData r;
  r.up = b.up;
  r.a = p(b.a);
  for (const auto& [fb, fi, t] : b.faces) r.faces.emplace_back(p(fb), fi, act(p, t));
  r.base = act(p, b.base);
  r.sort_faces();
  return r;
}

inline Value act(const Perm& p, const Value& v) {
  if (p.is_identity()) return v;
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Unit> || std::is_same_v<T, node::Lit>) {
          return v;
        } else if constexpr (std::is_same_v<T, node::Pair>) {
          return pair(act(p, n.first), act(p, n.second));
        } else if constexpr (std::is_same_v<T, node::Cube>) {
          auto assign = n.assign;
          for (auto& [k, e] : assign)
            if (auto* nm = std::get_if<Name>(&e)) e = p(*nm);
          return cube(std::move(assign));
        } else if constexpr (std::is_same_v<T, node::Abs>) {
          return abs(p(n.bound), act(p, n.body));
        } else if constexpr (std::is_same_v<T, node::KBase>) {
          return kbase(act(p, n.x));
        } else if constexpr (std::is_same_v<T, node::KBox>) {
          return kbox(box_act(p, n.box));
        } else {
          static_assert(std::is_same_v<T, node::KBind>);
          return kbind(p(n.bound), box_act(p, n.box));
        }
      },
      (*v).data);
}

// ---------------------------------------------------------------------------
// 01-substitution x(a := i).

Value subst(const Value& v, Name a, Bit i);

// Facewise substitution; legal only when `a` avoids the box's names.
inline BoxData box_subst(const BoxData& b, Name a, Bit i) {
  BoxData r;
  r.up = b.up;
  r.a = b.a;
  for (const auto& [fb, fi, t] : b.faces) r.faces.emplace_back(fb, fi, subst(t, a, i));
  r.base = subst(b.base, a, i);
  return r;
}

inline Value subst(const Value& v, Name a, Bit i) {
  if (!free_names(v).count(a)) return v;  // a # v
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Unit> || std::is_same_v<T, node::Lit>) {
          return v;
        } else if constexpr (std::is_same_v<T, node::Pair>) {
          return pair(subst(n.first, a, i), subst(n.second, a, i));
        } else if constexpr (std::is_same_v<T, node::Cube>) {
          auto assign = n.assign;
          for (auto& [k, e] : assign)
            if (auto* nm = std::get_if<Name>(&e); nm && *nm == a) e = i;
          return cube(std::move(assign));
        } else if constexpr (std::is_same_v<T, node::Abs>) {
          // a is free in the body and a != bound, so no renaming is needed.
          return abs(n.bound, subst(n.body, a, i));
        } else if constexpr (std::is_same_v<T, node::KBase>) {
          return kbase(subst(n.x, a, i));
        } else if constexpr (std::is_same_v<T, node::KBox>) {
          if (const Value* f = n.box.face(a, i)) return *f;
          if (a == n.box.a && i == n.box.missing_bit()) return kbind(a, n.box);
          return kbox(box_subst(n.box, a, i));
        } else {
          static_assert(std::is_same_v<T, node::KBind>);
          // a != bound since bound is not free.
          if (n.box.names().count(a)) {
            const Value* f = n.box.face(a, i);
            assert(f != nullptr);
            return subst(*f, n.bound, n.box.missing_bit());
          }
          return kbind(n.bound, box_subst(n.box, a, i));
        }
      },
      (*v).data);
}

// ---------------------------------------------------------------------------
// Equality: structural, alpha at Abs and KBind.

bool equal(const Value& a, const Value& b);

inline bool box_equal(const BoxData& x, const BoxData& y) {
  if (x.up != y.up || x.a != y.a || x.faces.size() != y.faces.size()) return false;
  for (std::size_t k = 0; k < x.faces.size(); ++k) {
    if (std::get<0>(x.faces[k]) != std::get<0>(y.faces[k])) return false;
    if (std::get<1>(x.faces[k]) != std::get<1>(y.faces[k])) return false;
    if (!equal(std::get<2>(x.faces[k]), std::get<2>(y.faces[k]))) return false;
  }
  return equal(x.base, y.base);
}

inline bool equal(const Value& a, const Value& b) {
  if (&*a == &*b) return true;
  if ((*a).data.index() != (*b).data.index()) return false;
  if (free_names(a) != free_names(b)) return false;
  const auto& da = (*a).data;
  const auto& db = (*b).data;
  if (std::holds_alternative<node::Unit>(da)) return true;
  if (auto* la = std::get_if<node::Lit>(&da))
    return la->v == std::get<node::Lit>(db).v;
  if (auto* pa = std::get_if<node::Pair>(&da)) {
    const auto& pb = std::get<node::Pair>(db);
    return equal(pa->first, pb.first) && equal(pa->second, pb.second);
  }
  if (auto* ca = std::get_if<node::Cube>(&da))
    return ca->assign == std::get<node::Cube>(db).assign;
  if (auto* ka = std::get_if<node::KBase>(&da))
    return equal(ka->x, std::get<node::KBase>(db).x);
  if (auto* xa = std::get_if<node::KBox>(&da))
    return box_equal(xa->box, std::get<node::KBox>(db).box);
  if (auto* aa = std::get_if<node::Abs>(&da)) {
    const auto& ab = std::get<node::Abs>(db);
    if (aa->bound == ab.bound) return equal(aa->body, ab.body);
    NameSet avoid = set_union(free_names(aa->body), free_names(ab.body));
    avoid.insert(aa->bound);
    avoid.insert(ab.bound);
    Name c = fresh_name(avoid);
    return equal(act(Perm::swap(aa->bound, c), aa->body),
                 act(Perm::swap(ab.bound, c), ab.body));
  }
  const auto& ba = std::get<node::KBind>(da);
  const auto& bb = std::get<node::KBind>(db);
  if (ba.bound == bb.bound) return box_equal(ba.box, bb.box);
  NameSet avoid = set_union(box_free(ba.box), box_free(bb.box));
  avoid.insert(ba.bound);
  avoid.insert(bb.bound);
  Name c = fresh_name(avoid);
  return box_equal(box_act(Perm::swap(ba.bound, c), ba.box),
                   box_act(Perm::swap(bb.bound, c), bb.box));
}

// ---------------------------------------------------------------------------
// Deterministic, alpha-invariant rendering. Bound names are renamed to
// the smallest atom fresh for the abstraction, so alpha-equal values
// print identically.

std::string show(const Value& v);

inline Name canonical_bound(const NameSet& free_of_node) {
  return fresh_name(free_of_node);
}

inline std::string show_box(const BoxData& b) {
  std::ostringstream os;
  os << (b.up ? "u" : "d") << "[" << to_string(b.a) << "](";
  bool first = true;
  for (const auto& [fb, fi, t] : b.faces) {
    if (!first) os << ", ";
    first = false;
    os << to_string(fb) << ":" << to_int(fi) << "->" << show(t);
  }
  os << "; " << show(b.base) << ")";
  return os.str();
}

inline std::string show(const Value& v) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Unit>) {
          return "*";
        } else if constexpr (std::is_same_v<T, node::Lit>) {
          return "#" + std::to_string(n.v);
        } else if constexpr (std::is_same_v<T, node::Pair>) {
          return "(" + show(n.first) + ", " + show(n.second) + ")";
        } else if constexpr (std::is_same_v<T, node::Cube>) {
          std::string s = "[";
          bool first = true;
          for (const auto& [k, e] : n.assign) {
            if (!first) s += ", ";
            first = false;
            s += to_string(k) + "=";
            if (auto* nm = std::get_if<Name>(&e))
              s += to_string(*nm);
            else
              s += std::to_string(to_int(std::get<Bit>(e)));
          }
          return s + "]";
        } else if constexpr (std::is_same_v<T, node::Abs>) {
          Name c = canonical_bound(free_names(v));
          return "<" + to_string(c) + ">" + show(act(Perm::swap(n.bound, c), n.body));
        } else if constexpr (std::is_same_v<T, node::KBase>) {
          return "base(" + show(n.x) + ")";
        } else if constexpr (std::is_same_v<T, node::KBox>) {
          return (n.box.up ? "ubox" : "dbox") + show_box(n.box);
        } else {
          static_assert(std::is_same_v<T, node::KBind>);
          Name c = canonical_bound(free_names(v));
          return std::string(n.box.up ? "plus" : "minus") + "<" + to_string(c) +
                 ">" + show_box(box_act(Perm::swap(n.bound, c), n.box));
        }
      },
      (*v).data);
}

// Convenience accessors.
inline bool is_kbase(const Value& v) {
  return std::holds_alternative<node::KBase>((*v).data);
}
inline bool is_kbox(const Value& v) {
  return std::holds_alternative<node::KBox>((*v).data);
}
inline bool is_kbind(const Value& v) {
  return std::holds_alternative<node::KBind>((*v).data);
}
inline bool is_pair(const Value& v) {
  return std::holds_alternative<node::Pair>((*v).data);
}
inline const Value& kbase_elem(const Value& v) {
  return std::get<node::KBase>((*v).data).x;
}
inline const BoxData& kbox_data(const Value& v) {
  return std::get<node::KBox>((*v).data).box;
}
inline const node::KBind& kbind_data(const Value& v) {
  return std::get<node::KBind>((*v).data);
}
inline const Value& first(const Value& v) {
  return std::get<node::Pair>((*v).data).first;
}
inline const Value& second(const Value& v) {
  return std::get<node::Pair>((*v).data).second;
}

}  // namespace kanfs
