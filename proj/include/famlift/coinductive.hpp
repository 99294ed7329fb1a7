#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "famlift/container.hpp"
#include "famlift/detail/union_find.hpp"

// Set-valued relations over an indexed set, quotients by their equivalence
// closure, relational liftings, the coinduction premise check, and behavioural
// equivalence of finite coalgebras by partition refinement.

namespace famlift {

// A proof-relevant relation: a finite witness set for every same-index pair.
// Cross-index pairs are unrepresentable. Not required to be reflexive,
// symmetric, or transitive.
class Relation {
 public:
  explicit Relation(FinIndexedSet base) : base_(std::move(base)), wit_(base_.index_count()) {
    for (std::size_t i = 0; i < base_.index_count(); ++i) {
      std::size_t n = base_.elems_at(i).size();
      wit_[i].resize(n * n);
    }
  }

  Relation(FinIndexedSet base,
           const std::function<std::vector<Label>(const Label&, const Label&, const Label&)>& f)
      : Relation(std::move(base)) {
    for (std::size_t i = 0; i < base_.index_count(); ++i) {
      const auto& xs = base_.elems_at(i);
      for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = 0; b < xs.size(); ++b) {
          wit_[i][a * xs.size() + b] = f(base_.indices()[i], xs[a], xs[b]);
          check_entry(i, a, b);
        }
    }
  }

  // Unit-witness pairs; listed pairs get ⋆, everything else is empty.
  static Relation from_pairs(FinIndexedSet base,
                             const std::vector<std::tuple<Label, Label, Label>>& pairs) {
    Relation r(std::move(base));
    for (const auto& [i, x, y] : pairs) {
      std::size_t ip = r.base_.index_pos(i);
      std::size_t n = r.base_.elems_at(ip).size();
      std::size_t a = r.base_.elem_pos_at(ip, x);
      std::size_t b = r.base_.elem_pos_at(ip, y);
      r.wit_[ip][a * n + b] = {kStar};
    }
    return r;
  }

  // Every same-index pair related by ⋆.
  static Relation total(const FinIndexedSet& X) {
    return Relation(X, [](const Label&, const Label&, const Label&) {
      return std::vector<Label>{kStar};
    });
  }

  const FinIndexedSet& base() const { return base_; }

  const std::vector<Label>& witnesses(const Label& i, const Label& x, const Label& y) const {
    std::size_t ip = base_.index_pos(i);
    std::size_t n = base_.elems_at(ip).size();
    return wit_[ip][base_.elem_pos_at(ip, x) * n + base_.elem_pos_at(ip, y)];
  }

  bool holds(const Label& i, const Label& x, const Label& y) const {
    return !witnesses(i, x, y).empty();
  }

  bool holds_at(std::size_t ipos, std::size_t a, std::size_t b) const {
    return !wit_[ipos][a * base_.elems_at(ipos).size() + b].empty();
  }

  // Pairs with nonempty witness sets, in canonical row-major order.
  std::vector<std::tuple<Label, Label, Label>> related_pairs() const {
    std::vector<std::tuple<Label, Label, Label>> out;
    for (std::size_t i = 0; i < base_.index_count(); ++i) {
      const auto& xs = base_.elems_at(i);
      for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = 0; b < xs.size(); ++b)
          if (!wit_[i][a * xs.size() + b].empty())
            out.emplace_back(base_.indices()[i], xs[a], xs[b]);
    }
    return out;
  }

  // Containment of the underlying boolean relations.
  bool subrelation_of(const Relation& other) const {
    if (!(base_ == other.base_)) return false;
    for (std::size_t i = 0; i < base_.index_count(); ++i) {
      std::size_t n = base_.elems_at(i).size();
      for (std::size_t ab = 0; ab < n * n; ++ab)
        if (!wit_[i][ab].empty() && other.wit_[i][ab].empty()) return false;
    }
    return true;
  }

  bool same_boolean(const Relation& other) const {
    return subrelation_of(other) && other.subrelation_of(*this);
  }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.base_ == b.base_ && a.wit_ == b.wit_;
  }

 private:
  void check_entry(std::size_t i, std::size_t a, std::size_t b) {
    std::size_t n = base_.elems_at(i).size();
    const auto& ws = wit_[i][a * n + b];
    for (const Label& w : ws) detail::check_label(w, "witness");
    auto sorted = ws;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw error("relation: duplicate witness at (" + base_.elems_at(i)[a] + "," +
                  base_.elems_at(i)[b] + ")");
  }

  FinIndexedSet base_;
  std::vector<std::vector<std::vector<Label>>> wit_;  // [ipos][a*n+b]
};

// The diagonal relation: ⋆ exactly on (x, x).
inline Relation eq_relation(const FinIndexedSet& X) {
  return Relation(X, [](const Label&, const Label& x, const Label& y) {
    return x == y ? std::vector<Label>{kStar} : std::vector<Label>{};
  });
}

// A partition of each fibre into classes, ordered by least member; the
// representative of a class is its least member in declared order.
class EquivPartition {
 public:
  EquivPartition(FinIndexedSet base, std::vector<std::vector<std::size_t>> class_of)
      : base_(std::move(base)), class_of_(std::move(class_of)), classes_(base_.index_count()) {
    for (std::size_t i = 0; i < base_.index_count(); ++i) {
      const auto& xs = base_.elems_at(i);
      std::size_t nclasses = 0;
      for (std::size_t k = 0; k < xs.size(); ++k)
        nclasses = std::max(nclasses, class_of_[i][k] + 1);
      classes_[i].resize(nclasses);
      for (std::size_t k = 0; k < xs.size(); ++k) classes_[i][class_of_[i][k]].push_back(xs[k]);
      for (const auto& cls : classes_[i])
        if (cls.empty()) throw error("partition: empty class");
    }
  }

  const FinIndexedSet& base() const { return base_; }

  const std::vector<std::vector<Label>>& classes(const Label& i) const {
    return classes_[base_.index_pos(i)];
  }

  std::size_t class_of(const Label& i, const Label& x) const {
    std::size_t ip = base_.index_pos(i);
    return class_of_[ip][base_.elem_pos_at(ip, x)];
  }

  const Label& representative(const Label& i, const Label& x) const {
    std::size_t ip = base_.index_pos(i);
    return classes_[ip][class_of_[ip][base_.elem_pos_at(ip, x)]].front();
  }

  bool same_class(const Label& i, const Label& x, const Label& y) const {
    return class_of(i, x) == class_of(i, y);
  }

  bool discrete() const {
    for (const auto& per_index : classes_)
      for (const auto& cls : per_index)
        if (cls.size() > 1) return false;
    return true;
  }

  std::size_t class_count() const {
    std::size_t n = 0;
    for (const auto& per_index : classes_) n += per_index.size();
    return n;
  }

  // The quotient set: one element per class, named by its representative.
  FinIndexedSet quotient_set() const {
    std::vector<std::vector<Label>> elems(base_.index_count());
    for (std::size_t i = 0; i < base_.index_count(); ++i)
      for (const auto& cls : classes_[i]) elems[i].push_back(cls.front());
    return FinIndexedSet(base_.indices(), std::move(elems));
  }

  // The projection onto representatives; its kernel is this partition.
  IndexedMap projection() const {
    FinIndexedSet q = quotient_set();
    std::vector<std::vector<Label>> table(base_.index_count());
    for (std::size_t i = 0; i < base_.index_count(); ++i) {
      const auto& xs = base_.elems_at(i);
      for (std::size_t k = 0; k < xs.size(); ++k)
        table[i].push_back(classes_[i][class_of_[i][k]].front());
    }
    return IndexedMap(base_, std::move(q), std::move(table));
  }

  // The induced equivalence relation with unit witnesses.
  Relation as_relation() const {
    return Relation(base_, [this](const Label& i, const Label& x, const Label& y) {
      return same_class(i, x, y) ? std::vector<Label>{kStar} : std::vector<Label>{};
    });
  }

  friend bool operator==(const EquivPartition& a, const EquivPartition& b) {
    return a.base_ == b.base_ && a.classes_ == b.classes_;
  }

 private:
  FinIndexedSet base_;
  std::vector<std::vector<std::size_t>> class_of_;  // [ipos][elemPos] -> class id
  std::vector<std::vector<std::vector<Label>>> classes_;
};

// The least equivalence relation containing R, one union-find pass per index.
inline EquivPartition equiv_closure(const Relation& R) {
  const FinIndexedSet& X = R.base();
  std::vector<std::vector<std::size_t>> class_of(X.index_count());
  for (std::size_t i = 0; i < X.index_count(); ++i) {
    std::size_t n = X.elems_at(i).size();
    detail::UnionFind uf(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (R.holds_at(i, a, b)) uf.unite(a, b);
    // Number classes in order of their least member.
    std::vector<std::size_t> root_class(n, SIZE_MAX);
    std::size_t next = 0;
    class_of[i].resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t r = uf.find(k);
      if (root_class[r] == SIZE_MAX) root_class[r] = next++;
      class_of[i][k] = root_class[r];
    }
  }
  return EquivPartition(X, std::move(class_of));
}

struct Quotient {
  EquivPartition partition;
  IndexedMap projection;  // onto class representatives
};

// Quotient by the least equivalence relation containing R.
inline Quotient quotient(const Relation& R) {
  EquivPartition p = equiv_closure(R);
  IndexedMap rho = p.projection();
  return Quotient{std::move(p), std::move(rho)};
}

// The kernel of f: ⋆ exactly on same-index pairs with equal images.
inline Relation kernel_of_map(const IndexedMap& f) {
  return Relation(f.source(), [&f](const Label& i, const Label& x, const Label& y) {
    return f.apply(i, x) == f.apply(i, y) ? std::vector<Label>{kStar} : std::vector<Label>{};
  });
}

// Relational lifting along any finitary functor: the kernel of F applied to
// the quotient projection of R.
inline Relation lift_relation_generic(const FinitaryFunctor& F, const Relation& R) {
  Quotient q = quotient(R);
  return kernel_of_map(F.apply_map(q.projection));
}

// Container lifting, directly: (s,f) related to (s',f') iff the shapes agree
// and all corresponding children are in the equivalence closure of R.
inline Relation lift_relation_container(const IndexedContainer& c, const Relation& R) {
  EquivPartition closure = equiv_closure(R);
  FinIndexedSet ext = extension(c, R.base());
  const FinIndexedSet& X = R.base();
  return Relation(ext, [&](const Label& i, const Label& u, const Label& v) -> std::vector<Label> {
    ExtensionElement a = decode_extension_elem(c, X, i, u);
    ExtensionElement b = decode_extension_elem(c, X, i, v);
    if (a.shape != b.shape) return {};
    const auto& slots = c.positions(i, a.shape);
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (!closure.same_class(slots[k].child_index, a.values[k], b.values[k])) return {};
    return {kStar};
  });
}

// Powerset lifting, directly: subsets are related iff each covers the other
// up to the equivalence closure of R.
inline Relation lift_relation_pfin(const Relation& R) {
  if (R.base().index_count() != 1) throw error("pfin lifting: non-singleton index set");
  EquivPartition closure = equiv_closure(R);
  FinitaryFunctor pfin = pfin_functor();
  FinIndexedSet base = pfin.apply_obj(R.base());
  const Label& i = R.base().indices()[0];
  auto covers = [&](const std::vector<std::string_view>& from,
                    const std::vector<std::string_view>& to) {
    for (auto x : from) {
      bool hit = false;
      for (auto y : to)
        if (closure.same_class(i, Label(x), Label(y))) hit = true;
      if (!hit) return false;
    }
    return true;
  };
  return Relation(base, [&](const Label&, const Label& u, const Label& v) -> std::vector<Label> {
    auto us = detail::dec_set(u);
    auto vs = detail::dec_set(v);
    if (!us || !vs) throw error("pfin lifting: malformed subset");
    return covers(*us, *vs) && covers(*vs, *us) ? std::vector<Label>{kStar}
                                                : std::vector<Label>{};
  });
}

// A finite coalgebra: a carrier and a total structure map into F(carrier),
// images stored in canonical encoding.
class FiniteCoalgebra {
 public:
  FiniteCoalgebra(FinitaryFunctor functor, FinIndexedSet carrier,
                  std::vector<std::vector<Label>> map)
      : functor_(std::move(functor)), carrier_(std::move(carrier)), map_(std::move(map)) {
    if (map_.size() != carrier_.index_count())
      throw error("coalgebra: structure map does not cover all indices");
    for (std::size_t i = 0; i < map_.size(); ++i) {
      if (map_[i].size() != carrier_.elems_at(i).size())
        throw error("coalgebra: structure map not total at index '" + carrier_.indices()[i] +
                    "'");
      for (Label& img : map_[i]) img = functor_.canonical_elem(carrier_, carrier_.indices()[i], img);
    }
  }

  static FiniteCoalgebra from_function(FinitaryFunctor functor, const FinIndexedSet& carrier,
                                       const std::function<Label(const Label&, const Label&)>& k) {
    std::vector<std::vector<Label>> map(carrier.index_count());
    for (std::size_t i = 0; i < carrier.index_count(); ++i)
      for (const Label& x : carrier.elems_at(i)) map[i].push_back(k(carrier.indices()[i], x));
    return FiniteCoalgebra(std::move(functor), carrier, std::move(map));
  }

  const FinitaryFunctor& functor() const { return functor_; }
  const FinIndexedSet& carrier() const { return carrier_; }

  const Label& step(const Label& i, const Label& x) const {
    std::size_t ip = carrier_.index_pos(i);
    return map_[ip][carrier_.elem_pos_at(ip, x)];
  }

  const Label& step_at(std::size_t ipos, std::size_t xpos) const { return map_[ipos][xpos]; }

 private:
  FinitaryFunctor functor_;
  FinIndexedSet carrier_;
  std::vector<std::vector<Label>> map_;
};

struct PremiseReport {
  bool pass = true;
  std::vector<std::tuple<Label, Label, Label>> violations;  // (index, x, x')
};

// The coinduction premise: every R-related pair of states must have lifted-
// related successor structures, i.e. equal images under F of the quotient
// projection of R. Violating pairs are listed in canonical order.
inline PremiseReport check_coinduction_premise(const FiniteCoalgebra& k, const Relation& R) {
  if (!(R.base() == k.carrier()))
    throw error("premise check: relation base does not match the coalgebra carrier");
  Quotient q = quotient(R);
  const FinIndexedSet& X = k.carrier();
  PremiseReport report;
  for (std::size_t i = 0; i < X.index_count(); ++i) {
    const Label& idx = X.indices()[i];
    const auto& xs = X.elems_at(i);
    std::vector<Label> image(xs.size());
    std::vector<bool> have(xs.size(), false);
    auto img = [&](std::size_t a) -> const Label& {
      if (!have[a]) {
        image[a] = k.functor().map_elem(q.projection, idx, k.step_at(i, a));
        have[a] = true;
      }
      return image[a];
    };
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = 0; b < xs.size(); ++b) {
        if (!R.holds_at(i, a, b)) continue;
        if (img(a) != img(b)) {
          report.pass = false;
          report.violations.emplace_back(idx, xs[a], xs[b]);
        }
      }
  }
  return report;
}

// Behavioural equivalence: the greatest fixpoint of refining the total
// same-index relation by the premise condition. Computed as partition
// refinement on successor signatures.
inline EquivPartition largest_bisimulation(const FiniteCoalgebra& k) {
  const FinIndexedSet& X = k.carrier();
  std::vector<std::vector<std::size_t>> class_of(X.index_count());
  for (std::size_t i = 0; i < X.index_count(); ++i)
    class_of[i].assign(X.elems_at(i).size(), 0);
  while (true) {
    EquivPartition part(X, class_of);
    IndexedMap rho = part.projection();
    bool changed = false;
    std::vector<std::vector<std::size_t>> next(X.index_count());
    for (std::size_t i = 0; i < X.index_count(); ++i) {
      const Label& idx = X.indices()[i];
      const auto& xs = X.elems_at(i);
      next[i].resize(xs.size());
      std::unordered_map<std::string, std::size_t> groups;
      for (std::size_t a = 0; a < xs.size(); ++a) {
        std::string sig = std::to_string(class_of[i][a]) + "\x1f" +
                          k.functor().map_elem(rho, idx, k.step_at(i, a));
        next[i][a] = groups.emplace(sig, groups.size()).first->second;
      }
      if (groups.size() != part.classes(idx).size()) changed = true;
    }
    if (!changed) return part;
    class_of = std::move(next);
  }
}

struct Minimized {
  FiniteCoalgebra coalgebra;
  IndexedMap projection;  // original carrier onto the quotient carrier
};

// Quotients a coalgebra by its own behavioural equivalence. The structure
// map descends because bisimilar states have equal projected successors;
// that well-definedness is asserted, not assumed.
inline Minimized minimize(const FiniteCoalgebra& k) {
  EquivPartition part = largest_bisimulation(k);
  IndexedMap rho = part.projection();
  FinIndexedSet q = part.quotient_set();
  const FinIndexedSet& X = k.carrier();
  std::vector<std::vector<Label>> map(q.index_count());
  for (std::size_t i = 0; i < q.index_count(); ++i) {
    const Label& idx = q.indices()[i];
    for (const Label& rep : q.elems_at(i))
      map[i].push_back(k.functor().map_elem(rho, idx, k.step(idx, rep)));
    for (const Label& x : X.elems_at(i)) {
      const Label& expected = map[i][q.elem_pos_at(i, part.representative(idx, x))];
      if (k.functor().map_elem(rho, idx, k.step(idx, x)) != expected)
        throw std::logic_error("minimize: structure map does not descend to the quotient");
    }
  }
  FiniteCoalgebra m(k.functor(), std::move(q), std::move(map));
  return Minimized{std::move(m), std::move(rho)};
}

}  // namespace famlift
