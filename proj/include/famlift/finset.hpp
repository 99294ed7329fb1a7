#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "famlift/detail/encoding.hpp"

// Finite indexed sets, indexed maps between them, and set-valued predicates.
// Everything is immutable after construction and iterates in declared order.

namespace famlift {

using Label = std::string;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The single witness label used by truth predicates and unit-witness relations.
inline const Label kStar = "⋆";  // ⋆

namespace detail {

inline void check_label(const Label& l, const char* what) {
  if (l.empty()) throw error(std::string(what) + ": empty label");
  for (char c : l) {
    if (c == '"' || static_cast<unsigned char>(c) <= 0x20)
      throw error(std::string(what) + " '" + l + "': labels may not contain whitespace or '\"'");
  }
}

// Index/shape/position labels also appear bare inside composite encodings,
// so they must stay free of the encoding's structural characters.
inline void check_plain_label(const Label& l, const char* what) {
  check_label(l, what);
  if (l.find_first_of("(){},=") != Label::npos)
    throw error(std::string(what) + " '" + l + "': reserved character");
}

}  // namespace detail

// An I-indexed family of finite ordered sets of element labels.
class FinIndexedSet {
 public:
  FinIndexedSet() = default;

  FinIndexedSet(std::vector<Label> indices, std::vector<std::vector<Label>> elems)
      : indices_(std::move(indices)), elems_(std::move(elems)) {
    if (indices_.size() != elems_.size())
      throw error("indexed set: element lists do not match index list");
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      detail::check_plain_label(indices_[i], "index");
      if (!index_pos_.emplace(indices_[i], i).second)
        throw error("indexed set: duplicate index '" + indices_[i] + "'");
    }
    elem_pos_.resize(elems_.size());
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      for (std::size_t k = 0; k < elems_[i].size(); ++k) {
        detail::check_label(elems_[i][k], "element");
        if (!elem_pos_[i].emplace(elems_[i][k], k).second)
          throw error("indexed set: duplicate element '" + elems_[i][k] + "' at index '" +
                      indices_[i] + "'");
      }
    }
  }

  static FinIndexedSet single(Label index, std::vector<Label> elems) {
    std::vector<std::vector<Label>> e;
    e.push_back(std::move(elems));
    return FinIndexedSet({std::move(index)}, std::move(e));
  }

  const std::vector<Label>& indices() const { return indices_; }
  std::size_t index_count() const { return indices_.size(); }

  bool has_index(const Label& i) const { return index_pos_.count(i) != 0; }

  std::size_t index_pos(const Label& i) const {
    auto it = index_pos_.find(i);
    if (it == index_pos_.end()) throw error("unknown index '" + i + "'");
    return it->second;
  }

  const std::vector<Label>& elems(const Label& i) const { return elems_[index_pos(i)]; }
  const std::vector<Label>& elems_at(std::size_t ipos) const { return elems_.at(ipos); }

  bool contains(const Label& i, const Label& x) const {
    auto it = index_pos_.find(i);
    return it != index_pos_.end() && elem_pos_[it->second].count(x) != 0;
  }

  std::size_t elem_pos(const Label& i, const Label& x) const {
    return elem_pos_at(index_pos(i), x);
  }

  std::size_t elem_pos_at(std::size_t ipos, const Label& x) const {
    auto it = elem_pos_.at(ipos).find(x);
    if (it == elem_pos_.at(ipos).end())
      throw error("unknown element '" + x + "' at index '" + indices_[ipos] + "'");
    return it->second;
  }

  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& e : elems_) n += e.size();
    return n;
  }

  bool same_indices(const FinIndexedSet& other) const { return indices_ == other.indices_; }

  friend bool operator==(const FinIndexedSet& a, const FinIndexedSet& b) {
    return a.indices_ == b.indices_ && a.elems_ == b.elems_;
  }

 private:
  std::vector<Label> indices_;
  std::vector<std::vector<Label>> elems_;
  std::unordered_map<Label, std::size_t> index_pos_;
  std::vector<std::unordered_map<Label, std::size_t>> elem_pos_;
};

// A total index-preserving function between two sets over the same index list.
class IndexedMap {
 public:
  IndexedMap(FinIndexedSet source, FinIndexedSet target, std::vector<std::vector<Label>> table)
      : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
    if (!source_.same_indices(target_))
      throw error("indexed map: source and target have different index sets");
    if (table_.size() != source_.index_count())
      throw error("indexed map: table does not cover all indices");
    for (std::size_t i = 0; i < table_.size(); ++i) {
      const auto& xs = source_.elems_at(i);
      if (table_[i].size() != xs.size())
        throw error("indexed map: table not total at index '" + source_.indices()[i] + "'");
      for (const Label& y : table_[i]) {
        if (!target_.contains(source_.indices()[i], y))
          throw error("indexed map: image '" + y + "' not in target at index '" +
                      source_.indices()[i] + "'");
      }
    }
  }

  static IndexedMap identity(const FinIndexedSet& X) {
    std::vector<std::vector<Label>> table;
    for (std::size_t i = 0; i < X.index_count(); ++i) table.push_back(X.elems_at(i));
    return IndexedMap(X, X, std::move(table));
  }

  static IndexedMap from_function(const FinIndexedSet& source, const FinIndexedSet& target,
                                  const std::function<Label(const Label&, const Label&)>& f) {
    std::vector<std::vector<Label>> table(source.index_count());
    for (std::size_t i = 0; i < source.index_count(); ++i) {
      for (const Label& x : source.elems_at(i)) table[i].push_back(f(source.indices()[i], x));
    }
    return IndexedMap(source, target, std::move(table));
  }

  const FinIndexedSet& source() const { return source_; }
  const FinIndexedSet& target() const { return target_; }

  const Label& apply(const Label& i, const Label& x) const {
    std::size_t ip = source_.index_pos(i);
    return table_[ip][source_.elem_pos_at(ip, x)];
  }

  const Label& apply_at(std::size_t ipos, std::size_t xpos) const {
    return table_.at(ipos).at(xpos);
  }

  friend bool operator==(const IndexedMap& a, const IndexedMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.table_ == b.table_;
  }

  // g after f
  friend IndexedMap compose(const IndexedMap& g, const IndexedMap& f) {
    if (!(f.target() == g.source())) throw error("compose: middle sets differ");
    std::vector<std::vector<Label>> table(f.source().index_count());
    for (std::size_t i = 0; i < table.size(); ++i) {
      const Label& idx = f.source().indices()[i];
      for (std::size_t k = 0; k < f.source().elems_at(i).size(); ++k)
        table[i].push_back(g.apply(idx, f.apply_at(i, k)));
    }
    return IndexedMap(f.source(), g.target(), std::move(table));
  }

 private:
  FinIndexedSet source_;
  FinIndexedSet target_;
  std::vector<std::vector<Label>> table_;
};

// A set-valued predicate: a finite ordered witness set for every element of
// the base. Holding at an element means the witness set is nonempty.
class Predicate {
 public:
  explicit Predicate(FinIndexedSet base)
      : base_(std::move(base)), wit_(base_.index_count()) {
    for (std::size_t i = 0; i < base_.index_count(); ++i)
      wit_[i].resize(base_.elems_at(i).size());
  }

  Predicate(FinIndexedSet base,
            const std::function<std::vector<Label>(const Label&, const Label&)>& f)
      : Predicate(std::move(base)) {
    for (std::size_t i = 0; i < base_.index_count(); ++i) {
      for (std::size_t k = 0; k < base_.elems_at(i).size(); ++k) {
        wit_[i][k] = f(base_.indices()[i], base_.elems_at(i)[k]);
        check_distinct(i, k);
      }
    }
  }

  // Entries listed as (index, element, witnesses); unlisted elements get ∅.
  static Predicate of(FinIndexedSet base,
                      const std::vector<std::tuple<Label, Label, std::vector<Label>>>& entries) {
    Predicate p(std::move(base));
    for (const auto& [i, x, ws] : entries) {
      std::size_t ip = p.base_.index_pos(i);
      std::size_t xp = p.base_.elem_pos_at(ip, x);
      p.wit_[ip][xp] = ws;
      p.check_distinct(ip, xp);
    }
    return p;
  }

  const FinIndexedSet& base() const { return base_; }

  const std::vector<Label>& witnesses(const Label& i, const Label& x) const {
    std::size_t ip = base_.index_pos(i);
    return wit_[ip][base_.elem_pos_at(ip, x)];
  }

  const std::vector<Label>& witnesses_at(std::size_t ipos, std::size_t xpos) const {
    return wit_.at(ipos).at(xpos);
  }

  std::size_t card(const Label& i, const Label& x) const { return witnesses(i, x).size(); }
  bool holds(const Label& i, const Label& x) const { return !witnesses(i, x).empty(); }

  std::size_t total_witnesses() const {
    std::size_t n = 0;
    for (const auto& per_index : wit_)
      for (const auto& ws : per_index) n += ws.size();
    return n;
  }

  friend bool operator==(const Predicate& a, const Predicate& b) {
    return a.base_ == b.base_ && a.wit_ == b.wit_;
  }

 private:
  void check_distinct(std::size_t ip, std::size_t xp) {
    auto ws = wit_[ip][xp];
    std::sort(ws.begin(), ws.end());
    if (std::adjacent_find(ws.begin(), ws.end()) != ws.end())
      throw error("predicate: duplicate witness at element '" + base_.elems_at(ip)[xp] + "'");
    for (const Label& w : wit_[ip][xp]) detail::check_label(w, "witness");
  }

  FinIndexedSet base_;
  std::vector<std::vector<std::vector<Label>>> wit_;
};

// --- families operations ----------------------------------------------------

// Pulls P back along f: the witness set at (i,x) is P's at (i, f i x).
inline Predicate reindex(const IndexedMap& f, const Predicate& P) {
  if (!(P.base() == f.target())) throw error("reindex: predicate base is not the map's target");
  return Predicate(f.source(), [&](const Label& i, const Label& x) {
    return P.witnesses(i, f.apply(i, x));
  });
}

// Pushes P forward along f: at (i,y), the disjoint union of P over the fibre
// f⁻¹(y), with witnesses tagged (x,w).
inline Predicate opreindex(const IndexedMap& f, const Predicate& P) {
  if (!(P.base() == f.source())) throw error("opreindex: predicate base is not the map's source");
  return Predicate(f.target(), [&](const Label& i, const Label& y) {
    std::vector<Label> ws;
    for (const Label& x : f.source().elems(i)) {
      if (f.apply(i, x) != y) continue;
      for (const Label& w : P.witnesses(i, x)) ws.push_back(detail::enc_pair(x, w));
    }
    return ws;
  });
}

// The always-true predicate: one ⋆ witness per element.
inline Predicate truth_predicate(const FinIndexedSet& X) {
  return Predicate(X, [](const Label&, const Label&) { return std::vector<Label>{kStar}; });
}

struct Comprehension {
  FinIndexedSet total;    // elements (x,w), one per witness
  IndexedMap projection;  // (x,w) ↦ x
};

inline Comprehension comprehension(const Predicate& P) {
  const FinIndexedSet& X = P.base();
  std::vector<std::vector<Label>> elems(X.index_count());
  for (std::size_t i = 0; i < X.index_count(); ++i) {
    for (const Label& x : X.elems_at(i))
      for (const Label& w : P.witnesses(X.indices()[i], x))
        elems[i].push_back(detail::enc_pair(x, w));
  }
  FinIndexedSet total(X.indices(), std::move(elems));
  IndexedMap proj = IndexedMap::from_function(total, X, [](const Label&, const Label& xw) {
    auto p = detail::dec_pair(xw);
    if (!p) throw error("comprehension: malformed element '" + xw + "'");
    return Label(p->first);
  });
  return Comprehension{std::move(total), std::move(proj)};
}

}  // namespace famlift
