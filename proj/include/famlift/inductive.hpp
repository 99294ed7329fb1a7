#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "famlift/container.hpp"
#include "famlift/detail/node_map.hpp"

// Well-founded trees over an indexed container, their fold, depth-bounded
// enumeration, the two predicate liftings, and the induction engine.

namespace famlift {

// One node of a well-founded tree. Children sit in the canonical position
// order of (index, shape); validity is established by in_tree.
class WTree {
 public:
  using Ptr = std::shared_ptr<const WTree>;

  WTree(Label index, Label shape, std::vector<Ptr> children)
      : index_(std::move(index)), shape_(std::move(shape)), children_(std::move(children)) {}

  const Label& index() const { return index_; }
  const Label& shape() const { return shape_; }
  const std::vector<Ptr>& children() const { return children_; }

 private:
  Label index_;
  Label shape_;
  std::vector<Ptr> children_;
};

// Assembles a node, checking the shape and the children against the
// container's position declarations.
inline WTree::Ptr in_tree(const IndexedContainer& c, const Label& index, const Label& shape,
                          std::vector<WTree::Ptr> children) {
  const auto& slots = c.positions(index, shape);
  if (children.size() != slots.size())
    throw error("tree node (" + index + "," + shape + "): expected " +
                std::to_string(slots.size()) + " children, got " +
                std::to_string(children.size()));
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (!children[k]) throw error("tree node (" + index + "," + shape + "): null child");
    if (children[k]->index() != slots[k].child_index)
      throw error("tree node (" + index + "," + shape + "): child at position '" +
                  slots[k].child_index + "." + slots[k].position + "' has index '" +
                  children[k]->index() + "'");
  }
  return std::make_shared<WTree>(index, shape, std::move(children));
}

// Same, with children given as (child index, position, subtree) assignments.
inline WTree::Ptr in_tree(const IndexedContainer& c, const Label& index, const Label& shape,
                          const std::vector<std::tuple<Label, Label, WTree::Ptr>>& assignment) {
  const auto& slots = c.positions(index, shape);
  std::vector<WTree::Ptr> children(slots.size());
  for (const auto& [j, p, t] : assignment) {
    bool found = false;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (slots[k].child_index == j && slots[k].position == p) {
        if (children[k])
          throw error("tree node (" + index + "," + shape + "): duplicate child at '" + j +
                      "." + p + "'");
        children[k] = t;
        found = true;
        break;
      }
    }
    if (!found)
      throw error("tree node (" + index + "," + shape + "): no position '" + j + "." + p + "'");
  }
  for (std::size_t k = 0; k < slots.size(); ++k)
    if (!children[k])
      throw error("tree node (" + index + "," + shape + "): missing child at '" +
                  slots[k].child_index + "." + slots[k].position + "'");
  return in_tree(c, index, shape, std::move(children));
}

inline const std::string& encode_tree(const WTree& t,
                                      std::unordered_map<const WTree*, std::string>& memo) {
  auto it = memo.find(&t);
  if (it != memo.end()) return it->second;
  std::string enc = t.shape();
  if (!t.children().empty()) {
    enc += '(';
    for (std::size_t k = 0; k < t.children().size(); ++k) {
      if (k) enc += ',';
      enc += encode_tree(*t.children()[k], memo);
    }
    enc += ')';
  }
  return memo.emplace(&t, std::move(enc)).first->second;
}

inline std::string encode_tree(const WTree& t) {
  std::unordered_map<const WTree*, std::string> memo;
  return encode_tree(t, memo);
}

// All trees whose longest root-to-leaf path has at most `depth` nodes,
// per index, ordered by exact depth, then shape, then child choices.
// Subtrees are shared between levels, so pointer-keyed memoisation of
// encodings and folds is effective across the whole enumeration.
struct TreeEnumeration {
  std::vector<Label> indices;
  std::vector<std::vector<WTree::Ptr>> trees;  // aligned with `indices`
};

inline TreeEnumeration enumerate_trees(const IndexedContainer& c, int depth) {
  if (depth < 1) throw error("enumerate: depth must be at least 1");
  std::size_t ni = c.index_count();
  std::vector<std::vector<WTree::Ptr>> cum(ni);
  std::vector<std::size_t> prev_cut(ni, 0);  // trees below this position have depth <= d-2
  for (int d = 1; d <= depth; ++d) {
    std::vector<std::size_t> cut(ni);
    for (std::size_t i = 0; i < ni; ++i) cut[i] = cum[i].size();
    std::vector<std::vector<WTree::Ptr>> fresh(ni);
    for (std::size_t i = 0; i < ni; ++i) {
      const Label& idx = c.indices()[i];
      for (const Label& s : c.shapes_at(i)) {
        const auto& slots = c.positions(idx, s);
        if (slots.empty()) {
          if (d == 1) fresh[i].push_back(std::make_shared<WTree>(idx, s, std::vector<WTree::Ptr>{}));
          continue;
        }
        if (d == 1) continue;
        std::vector<const std::vector<WTree::Ptr>*> pools;
        std::vector<std::size_t> cuts;
        bool inhabited = true;
        for (const PositionKey& k : slots) {
          std::size_t j = c.index_pos(k.child_index);
          if (cum[j].empty()) inhabited = false;
          pools.push_back(&cum[j]);
          cuts.push_back(prev_cut[j]);
        }
        if (!inhabited) continue;
        std::vector<std::size_t> pick(slots.size(), 0);
        bool done = false;
        while (!done) {
          // Skip tuples whose children all existed two levels down: those
          // trees were already produced at an earlier depth.
          bool has_deep = false;
          for (std::size_t k = 0; k < pick.size(); ++k)
            if (pick[k] >= cuts[k]) has_deep = true;
          if (has_deep) {
            std::vector<WTree::Ptr> children;
            children.reserve(pick.size());
            for (std::size_t k = 0; k < pick.size(); ++k)
              children.push_back((*pools[k])[pick[k]]);
            fresh[i].push_back(std::make_shared<WTree>(idx, s, std::move(children)));
          }
          done = true;
          for (std::size_t k = pick.size(); k-- > 0;) {
            if (++pick[k] < pools[k]->size()) {
              done = false;
              break;
            }
            pick[k] = 0;
          }
        }
      }
    }
    for (std::size_t i = 0; i < ni; ++i)
      cum[i].insert(cum[i].end(), fresh[i].begin(), fresh[i].end());
    prev_cut = cut;
  }
  return TreeEnumeration{c.indices(), std::move(cum)};
}

// The enumerated trees as an indexed set of canonical encodings.
inline FinIndexedSet tree_set(const TreeEnumeration& e) {
  std::unordered_map<const WTree*, std::string> memo;
  std::vector<std::vector<Label>> elems(e.indices.size());
  for (std::size_t i = 0; i < e.indices.size(); ++i) {
    elems[i].reserve(e.trees[i].size());
    for (const auto& t : e.trees[i]) elems[i].push_back(encode_tree(*t, memo));
  }
  return FinIndexedSet(e.indices, std::move(elems));
}

// An algebra over a finite carrier: either a tabulated rule set or a
// callback. The in-algebra (whose carrier is the trees themselves, named by
// their encodings) only exists in callback form.
class Algebra {
 public:
  static Algebra from_table(const IndexedContainer& c, FinIndexedSet carrier,
                            const std::vector<std::tuple<Label, Label, Label>>& rules) {
    Algebra h;
    h.carrier_ = std::move(carrier);
    for (const auto& [i, elem_enc, result] : rules) {
      ExtensionElement e = decode_extension_elem(c, *h.carrier_, i, elem_enc);
      if (!h.carrier_->contains(i, result))
        throw error("algebra: result '" + result + "' not in carrier at index '" + i + "'");
      if (!h.table_.emplace(i + "\x1f" + e.encode(), result).second)
        throw error("algebra: duplicate rule for '" + elem_enc + "' at index '" + i + "'");
    }
    // Totality over the whole extension of the carrier.
    for (const auto& per_index : extension_elements(c, *h.carrier_)) {
      for (const ExtensionElement& e : per_index) {
        if (h.table_.find(e.index + "\x1f" + e.encode()) == h.table_.end())
          throw error("algebra: missing rule for '" + e.encode() + "' at index '" + e.index +
                      "'");
      }
    }
    return h;
  }

  static Algebra from_function(std::optional<FinIndexedSet> carrier,
                               std::function<Label(const ExtensionElement&)> fn) {
    Algebra h;
    h.carrier_ = std::move(carrier);
    h.fn_ = std::move(fn);
    return h;
  }

  // Reassembles the node: fold of this algebra is the identity on trees.
  static Algebra in_algebra() {
    return from_function(std::nullopt,
                         [](const ExtensionElement& e) { return e.encode(); });
  }

  const std::optional<FinIndexedSet>& carrier() const { return carrier_; }

  Label apply(const ExtensionElement& e) const {
    if (fn_) return fn_(e);
    auto it = table_.find(e.index + "\x1f" + e.encode());
    if (it == table_.end())
      throw error("algebra: missing table entry for '" + e.encode() + "' at index '" + e.index +
                  "'");
    return it->second;
  }

 private:
  std::optional<FinIndexedSet> carrier_;
  std::unordered_map<std::string, Label> table_;
  std::function<Label(const ExtensionElement&)> fn_;
};

inline const Label& fold(const IndexedContainer& c, const Algebra& h, const WTree& t,
                         std::unordered_map<const WTree*, Label>& memo) {
  auto it = memo.find(&t);
  if (it != memo.end()) return it->second;
  std::vector<Label> values;
  values.reserve(t.children().size());
  for (const auto& ch : t.children()) values.push_back(fold(c, h, *ch, memo));
  Label out = h.apply(ExtensionElement{t.index(), t.shape(), std::move(values)});
  return memo.emplace(&t, std::move(out)).first->second;
}

// Structural recursion: fold h (s, f) = h (s, fold h ∘ f).
inline Label fold(const IndexedContainer& c, const Algebra& h, const WTree& t) {
  std::unordered_map<const WTree*, Label> memo;
  return fold(c, h, t, memo);
}

// --- predicate liftings ------------------------------------------------------

// Container lifting: a witness at (s, f) is one choice of a Q-witness per
// position, encoded as a tuple in canonical position order.
inline Predicate lift_predicate_container(const IndexedContainer& c, const Predicate& Q) {
  const FinIndexedSet& X = Q.base();
  FinIndexedSet base = extension(c, X);
  std::vector<std::tuple<Label, Label, std::vector<Label>>> entries;
  for (const auto& per_index : extension_elements(c, X)) {
    for (const ExtensionElement& e : per_index) {
      const auto& slots = c.positions(e.index, e.shape);
      std::vector<const std::vector<Label>*> factors;
      bool empty = false;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto& ws = Q.witnesses(slots[k].child_index, e.values[k]);
        if (ws.empty()) empty = true;
        factors.push_back(&ws);
      }
      std::vector<Label> tuples;
      if (!empty) {
        std::vector<std::size_t> pick(factors.size(), 0);
        bool done = false;
        while (!done) {
          std::vector<Label> parts;
          parts.reserve(factors.size());
          for (std::size_t k = 0; k < factors.size(); ++k) parts.push_back((*factors[k])[pick[k]]);
          tuples.push_back(detail::enc_tuple(parts));
          done = true;
          for (std::size_t k = pick.size(); k-- > 0;) {
            if (++pick[k] < factors[k]->size()) {
              done = false;
              break;
            }
            pick[k] = 0;
          }
        }
      }
      entries.emplace_back(e.index, e.encode(), std::move(tuples));
    }
  }
  return Predicate::of(std::move(base), entries);
}

// Generic lifting along any finitary functor: witnesses at u in F X are the
// elements of F{Q} in the fibre of F π over u.
inline Predicate lift_predicate_generic(const FinitaryFunctor& F, const Predicate& Q) {
  Comprehension comp = comprehension(Q);
  IndexedMap f_pi = F.apply_map(comp.projection);
  const FinIndexedSet& f_total = f_pi.source();
  FinIndexedSet base = f_pi.target();
  std::vector<std::vector<std::vector<Label>>> wit(base.index_count());
  for (std::size_t i = 0; i < base.index_count(); ++i) wit[i].resize(base.elems_at(i).size());
  for (std::size_t i = 0; i < f_total.index_count(); ++i) {
    for (std::size_t v = 0; v < f_total.elems_at(i).size(); ++v) {
      const Label& u = f_pi.apply_at(i, v);
      wit[i][base.elem_pos_at(i, u)].push_back(f_total.elems_at(i)[v]);
    }
  }
  return Predicate(base, [&](const Label& i, const Label& u) {
    std::size_t ip = base.index_pos(i);
    return wit[ip][base.elem_pos_at(ip, u)];
  });
}

// --- the induction engine ----------------------------------------------------

// The premise schema of the induction rule for a container: one premise per
// shape, with one hypothesis per position.
struct InductionPremise {
  Label index;
  Label shape;
  std::vector<PositionKey> hypotheses;
};

inline std::vector<InductionPremise> induction_premises(const IndexedContainer& c) {
  std::vector<InductionPremise> out;
  for (const Label& i : c.indices())
    for (const Label& s : c.shapes(i)) out.push_back({i, s, c.positions(i, s)});
  return out;
}

// A step rule: from a node's extension element over the value carrier and
// one chosen witness per child, produce a witness at the node's value.
// Values are tree encodings, or fold images when the step sits above an
// algebra.
class InductionStep {
 public:
  static InductionStep from_function(
      std::function<Label(const ExtensionElement&, const std::vector<Label>&)> rule,
      std::optional<Algebra> above = std::nullopt) {
    InductionStep s;
    s.rule_ = std::move(rule);
    s.above_ = std::move(above);
    return s;
  }

  // Rules keyed by (index, value element, child witness tuple).
  static InductionStep from_table(
      const std::vector<std::tuple<Label, Label, Label, Label>>& rules,
      std::optional<Algebra> above = std::nullopt) {
    auto table = std::make_shared<std::unordered_map<std::string, Label>>();
    for (const auto& [i, elem_enc, wtuple, result] : rules) {
      if (!table->emplace(i + "\x1f" + elem_enc + "\x1f" + wtuple, result).second)
        throw error("step: duplicate rule for '" + elem_enc + "' / '" + wtuple + "'");
    }
    InductionStep s;
    s.above_ = std::move(above);
    s.rule_ = [table](const ExtensionElement& e, const std::vector<Label>& ws) {
      std::string key = e.index + "\x1f" + e.encode() + "\x1f" + detail::enc_tuple(ws);
      auto it = table->find(key);
      if (it == table->end())
        throw error("step: missing entry for '" + e.encode() + "' with witnesses " +
                    detail::enc_tuple(ws) + " at index '" + e.index + "'");
      return it->second;
    };
    return s;
  }

  // The canonical step for the truth predicate.
  static InductionStep truth_step() {
    return from_function([](const ExtensionElement&, const std::vector<Label>&) { return kStar; });
  }

  const std::optional<Algebra>& above() const { return above_; }

  Label apply(const ExtensionElement& e, const std::vector<Label>& child_witnesses) const {
    return rule_(e, child_witnesses);
  }

 private:
  std::function<Label(const ExtensionElement&, const std::vector<Label>&)> rule_;
  std::optional<Algebra> above_;
};

namespace detail {

struct InduceFrame {
  Label value;    // the node's value in the carrier the step targets
  Label witness;  // the produced witness
};

inline InduceFrame induce_rec(const IndexedContainer& c, const InductionStep& step,
                              const WTree& t, const Predicate* Q, const std::string& path) {
  std::vector<Label> values;
  std::vector<Label> witnesses;
  values.reserve(t.children().size());
  witnesses.reserve(t.children().size());
  const auto& slots = c.positions(t.index(), t.shape());
  for (std::size_t k = 0; k < t.children().size(); ++k) {
    std::string child_path = path + "/" + slots[k].position;
    InduceFrame f = induce_rec(c, step, *t.children()[k], Q, child_path);
    values.push_back(std::move(f.value));
    witnesses.push_back(std::move(f.witness));
  }
  ExtensionElement e{t.index(), t.shape(), std::move(values)};
  Label value = step.above() ? step.above()->apply(e) : e.encode();
  Label witness;
  try {
    witness = step.apply(e, witnesses);
  } catch (const error& err) {
    throw error(std::string(err.what()) + " (at node " + (path.empty() ? "/" : path) + ")");
  }
  if (Q) {
    const auto& fibre = Q->witnesses(t.index(), value);
    bool ok = false;
    for (const Label& w : fibre)
      if (w == witness) ok = true;
    if (!ok)
      throw error("induce: witness '" + witness + "' not in the declared fibre over '" + value +
                  "' at node " + (path.empty() ? "/" : path));
  }
  return InduceFrame{std::move(value), std::move(witness)};
}

}  // namespace detail

// Runs the step rule by structural recursion. The result is a witness at t
// (or at fold h t when the step sits above the algebra h).
inline Label induce(const IndexedContainer& c, const InductionStep& step, const WTree& t) {
  return detail::induce_rec(c, step, t, nullptr, "").witness;
}

// Same, additionally checking at every node that the produced witness lies
// in Q's fibre over the node's value.
inline Label induce(const IndexedContainer& c, const InductionStep& step, const WTree& t,
                    const Predicate& Q) {
  return detail::induce_rec(c, step, t, &Q, "").witness;
}

struct InductionReport {
  bool premise_holds = true;
  std::vector<std::pair<Label, std::string>> premise_counterexamples;  // (index, tree)
  bool conclusion_holds = true;
  std::vector<std::pair<Label, std::string>> unproved;  // enumerated trees outside Q

  bool pass() const { return premise_holds && conclusion_holds; }
};

// Checks the induction rule's premise pointwise over the enumerated trees:
// wherever all children satisfy Q, the node must too. A failing premise is
// reported with its counterexample nodes, not treated as a soundness defect.
inline InductionReport check_induction_soundness(
    const IndexedContainer& c, int depth,
    const std::function<bool(const Label&, const std::string&)>& Q) {
  TreeEnumeration e = enumerate_trees(c, depth);
  std::unordered_map<const WTree*, std::string> memo;
  InductionReport report;
  for (std::size_t i = 0; i < e.indices.size(); ++i) {
    for (const auto& t : e.trees[i]) {
      std::string enc = encode_tree(*t, memo);
      bool node_in = Q(e.indices[i], enc);
      bool children_in = true;
      for (const auto& ch : t->children())
        if (!Q(ch->index(), encode_tree(*ch, memo))) children_in = false;
      if (children_in && !node_in) {
        report.premise_holds = false;
        report.premise_counterexamples.emplace_back(e.indices[i], enc);
      }
      if (!node_in) {
        report.conclusion_holds = false;
        report.unproved.emplace_back(e.indices[i], enc);
      }
    }
  }
  return report;
}

inline InductionReport check_induction_soundness(const IndexedContainer& c, int depth,
                                                 const Predicate& Q) {
  return check_induction_soundness(c, depth, [&Q](const Label& i, const std::string& enc) {
    return Q.holds(i, enc);
  });
}

}  // namespace famlift
