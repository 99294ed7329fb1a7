#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "famlift/finset.hpp"

// Indexed containers and their extension functors, plus the uniform
// finitary-functor interface shared with the finite powerset functors.

namespace famlift {

// A position slot of a shape: stores data of sort `child_index` under the
// name `position`.
struct PositionKey {
  Label child_index;
  Label position;

  friend bool operator==(const PositionKey&, const PositionKey&) = default;
};

// Sorted shapes with index-sorted position slots. Defines the functor
//   X ↦ at index i: pairs (s, f) with s a shape of i and f a choice of an
//   element of X j for every position of s at child sort j.
class IndexedContainer {
 public:
  struct PositionEntry {
    Label index;
    Label shape;
    Label child_index;
    std::vector<Label> positions;
  };

  IndexedContainer(std::vector<Label> indices, std::vector<std::vector<Label>> shapes,
                   const std::vector<PositionEntry>& position_entries)
      : indices_(std::move(indices)), shapes_(std::move(shapes)) {
    if (indices_.size() != shapes_.size())
      throw error("container: shape lists do not match index list");
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      detail::check_plain_label(indices_[i], "index");
      if (!index_pos_.emplace(indices_[i], i).second)
        throw error("container: duplicate index '" + indices_[i] + "'");
    }
    shape_pos_.resize(indices_.size());
    positions_.resize(indices_.size());
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      for (std::size_t s = 0; s < shapes_[i].size(); ++s) {
        detail::check_plain_label(shapes_[i][s], "shape");
        if (!shape_pos_[i].emplace(shapes_[i][s], s).second)
          throw error("container: duplicate shape '" + shapes_[i][s] + "' at index '" +
                      indices_[i] + "'");
      }
      positions_[i].resize(shapes_[i].size());
    }
    // Gather declared position lists, then lay them out in canonical order:
    // child indices in declared index order, positions in declared order.
    std::unordered_map<std::string, std::vector<std::vector<Label>>> declared;
    for (const auto& e : position_entries) {
      auto it = index_pos_.find(e.index);
      if (it == index_pos_.end())
        throw error("container: positions at (" + e.index + "," + e.shape +
                    "): unknown index '" + e.index + "'");
      std::size_t ip = it->second;
      auto st = shape_pos_[ip].find(e.shape);
      if (st == shape_pos_[ip].end())
        throw error("container: positions at (" + e.index + "," + e.shape +
                    "): unknown shape '" + e.shape + "'");
      auto jt = index_pos_.find(e.child_index);
      if (jt == index_pos_.end())
        throw error("container: positions at (" + e.index + "," + e.shape +
                    "): unknown index '" + e.child_index + "'");
      std::string key = e.index + "\x1f" + e.shape;
      auto& slots = declared[key];
      slots.resize(indices_.size());
      if (!slots[jt->second].empty())
        throw error("container: positions at (" + e.index + "," + e.shape +
                    "): duplicate entry for child index '" + e.child_index + "'");
      if (e.positions.empty())
        throw error("container: positions at (" + e.index + "," + e.shape +
                    "): empty position list for child index '" + e.child_index + "'");
      slots[jt->second] = e.positions;
    }
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      for (std::size_t s = 0; s < shapes_[i].size(); ++s) {
        auto it = declared.find(indices_[i] + "\x1f" + shapes_[i][s]);
        if (it == declared.end()) continue;
        for (std::size_t j = 0; j < indices_.size(); ++j) {
          std::vector<Label> seen;
          for (const Label& p : it->second[j]) {
            detail::check_plain_label(p, "position");
            for (const Label& q : seen)
              if (q == p)
                throw error("container: duplicate position '" + p + "' at (" + indices_[i] +
                            "," + shapes_[i][s] + "," + indices_[j] + ")");
            seen.push_back(p);
            positions_[i][s].push_back(PositionKey{indices_[j], p});
          }
        }
      }
    }
  }

  const std::vector<Label>& indices() const { return indices_; }
  std::size_t index_count() const { return indices_.size(); }
  std::size_t index_pos(const Label& i) const {
    auto it = index_pos_.find(i);
    if (it == index_pos_.end()) throw error("container: unknown index '" + i + "'");
    return it->second;
  }

  const std::vector<Label>& shapes(const Label& i) const { return shapes_[index_pos(i)]; }
  const std::vector<Label>& shapes_at(std::size_t ipos) const { return shapes_.at(ipos); }

  std::size_t shape_pos(const Label& i, const Label& s) const {
    std::size_t ip = index_pos(i);
    auto it = shape_pos_[ip].find(s);
    if (it == shape_pos_[ip].end())
      throw error("container: unknown shape '" + s + "' at index '" + i + "'");
    return it->second;
  }

  // Canonical position list of (i, s).
  const std::vector<PositionKey>& positions(const Label& i, const Label& s) const {
    return positions_[index_pos(i)][shape_pos(i, s)];
  }
  const std::vector<PositionKey>& positions_at(std::size_t ipos, std::size_t spos) const {
    return positions_.at(ipos).at(spos);
  }

  // Declared positions of (i, s) at child sort j, in order.
  std::vector<Label> positions(const Label& i, const Label& s, const Label& j) const {
    std::vector<Label> out;
    for (const PositionKey& k : positions(i, s))
      if (k.child_index == j) out.push_back(k.position);
    return out;
  }

  friend bool operator==(const IndexedContainer& a, const IndexedContainer& b) {
    return a.indices_ == b.indices_ && a.shapes_ == b.shapes_ && a.positions_ == b.positions_;
  }

 private:
  std::vector<Label> indices_;
  std::vector<std::vector<Label>> shapes_;
  std::unordered_map<Label, std::size_t> index_pos_;
  std::vector<std::unordered_map<Label, std::size_t>> shape_pos_;
  // positions_[ipos][spos] = canonical slots of shape s at index i
  std::vector<std::vector<std::vector<PositionKey>>> positions_;
};

// Re-runs the construction-time invariant checks on an assembled container.
// Construction already rejects invalid data; this lets callers assert it.
inline void validate_container(const IndexedContainer& c) {
  for (const Label& i : c.indices()) {
    for (const Label& s : c.shapes(i)) {
      for (const PositionKey& k : c.positions(i, s)) {
        if (std::find(c.indices().begin(), c.indices().end(), k.child_index) ==
            c.indices().end())
          throw error("container: unknown index '" + k.child_index + "'");
      }
    }
  }
}

// One element of a container extension: a shape plus a chosen element for
// each of its canonical position slots.
struct ExtensionElement {
  Label index;
  Label shape;
  std::vector<Label> values;  // aligned with IndexedContainer::positions(index, shape)

  std::string encode() const { return detail::enc_term(shape, values); }
};

namespace detail {

template <typename Fn>
inline void for_each_extension_elem(const IndexedContainer& c, const FinIndexedSet& X,
                                    std::size_t ipos, Fn&& fn) {
  const Label& i = c.indices()[ipos];
  for (const Label& s : c.shapes_at(ipos)) {
    const auto& slots = c.positions(i, s);
    std::vector<const std::vector<Label>*> choices;
    bool inhabited = true;
    for (const PositionKey& k : slots) {
      const auto& xs = X.elems(k.child_index);
      if (xs.empty()) inhabited = false;
      choices.push_back(&xs);
    }
    if (!inhabited) continue;
    // Odometer over the slots, last slot fastest: lexicographic order of
    // the chosen element positions.
    std::vector<std::size_t> pick(slots.size(), 0);
    bool done = false;
    while (!done) {
      ExtensionElement e{i, s, {}};
      e.values.reserve(slots.size());
      for (std::size_t k = 0; k < slots.size(); ++k) e.values.push_back((*choices[k])[pick[k]]);
      fn(std::move(e));
      done = true;
      for (std::size_t k = slots.size(); k-- > 0;) {
        if (++pick[k] < choices[k]->size()) {
          done = false;
          break;
        }
        pick[k] = 0;
      }
    }
  }
}

}  // namespace detail

// All extension elements, per index, in canonical enumeration order:
// shapes in declared order, assignments lexicographic.
inline std::vector<std::vector<ExtensionElement>> extension_elements(const IndexedContainer& c,
                                                                     const FinIndexedSet& X) {
  if (X.indices() != c.indices()) throw error("extension: index set mismatch");
  std::vector<std::vector<ExtensionElement>> out(c.index_count());
  for (std::size_t i = 0; i < c.index_count(); ++i)
    detail::for_each_extension_elem(c, X, i,
                                    [&](ExtensionElement e) { out[i].push_back(std::move(e)); });
  return out;
}

// The extension functor on objects, with encoded element labels.
inline FinIndexedSet extension(const IndexedContainer& c, const FinIndexedSet& X) {
  if (X.indices() != c.indices()) throw error("extension: index set mismatch");
  std::vector<std::vector<Label>> elems(c.index_count());
  for (std::size_t i = 0; i < c.index_count(); ++i)
    detail::for_each_extension_elem(c, X, i, [&](ExtensionElement e) {
      elems[i].push_back(e.encode());
    });
  return FinIndexedSet(c.indices(), std::move(elems));
}

// Parses an encoded extension element over X and validates it against c.
inline ExtensionElement decode_extension_elem(const IndexedContainer& c, const FinIndexedSet& X,
                                              const Label& index, const std::string& enc) {
  auto term = detail::dec_term(enc);
  if (!term) throw error("extension element '" + enc + "': malformed term");
  Label shape(term->first);
  const auto& slots = c.positions(index, shape);
  if (term->second.size() != slots.size())
    throw error("extension element '" + enc + "': expected " + std::to_string(slots.size()) +
                " position values, got " + std::to_string(term->second.size()));
  ExtensionElement e{index, shape, {}};
  for (std::size_t k = 0; k < slots.size(); ++k) {
    Label v(term->second[k]);
    if (!X.contains(slots[k].child_index, v))
      throw error("extension element '" + enc + "': value '" + v + "' not in carrier at index '" +
                  slots[k].child_index + "'");
    e.values.push_back(std::move(v));
  }
  return e;
}

// The extension functor on morphisms: (s, f) ↦ (s, g ∘ f).
inline IndexedMap extension_map(const IndexedContainer& c, const IndexedMap& g) {
  FinIndexedSet src = extension(c, g.source());
  FinIndexedSet tgt = extension(c, g.target());
  std::vector<std::vector<Label>> table(c.index_count());
  for (std::size_t i = 0; i < c.index_count(); ++i) {
    detail::for_each_extension_elem(c, g.source(), i, [&](ExtensionElement e) {
      const auto& slots = c.positions(e.index, e.shape);
      for (std::size_t k = 0; k < slots.size(); ++k)
        e.values[k] = g.apply(slots[k].child_index, e.values[k]);
      table[i].push_back(e.encode());
    });
  }
  return IndexedMap(std::move(src), std::move(tgt), std::move(table));
}

// An edge of the transition structure an element induces, used for DOT output.
struct Successor {
  Label edge;  // may be empty (unlabelled)
  Label child_index;
  Label child_elem;
};

// A functor on finite indexed sets given by explicit enumeration. Only the
// object and morphism actions are ever consumed by the liftings; `map_elem`
// is the single-element morphism action and `successors` exposes the
// element's immediate constituents.
class FinitaryFunctor {
 public:
  using ObjFn = std::function<FinIndexedSet(const FinIndexedSet&)>;
  using MapElemFn = std::function<Label(const IndexedMap&, const Label&, const Label&)>;
  using SuccFn =
      std::function<std::vector<Successor>(const FinIndexedSet&, const Label&, const Label&)>;

  FinitaryFunctor(std::string name, ObjFn obj, MapElemFn map_elem, SuccFn successors)
      : name_(std::move(name)),
        obj_(std::move(obj)),
        map_elem_(std::move(map_elem)),
        succ_(std::move(successors)) {}

  const std::string& name() const { return name_; }

  FinIndexedSet apply_obj(const FinIndexedSet& X) const { return obj_(X); }

  Label map_elem(const IndexedMap& g, const Label& index, const Label& elem) const {
    return map_elem_(g, index, elem);
  }

  // Full-table morphism action, tabulated over apply_obj of the source.
  IndexedMap apply_map(const IndexedMap& g) const {
    FinIndexedSet src = apply_obj(g.source());
    FinIndexedSet tgt = apply_obj(g.target());
    std::vector<std::vector<Label>> table(src.index_count());
    for (std::size_t i = 0; i < src.index_count(); ++i)
      for (const Label& e : src.elems_at(i))
        table[i].push_back(map_elem_(g, src.indices()[i], e));
    return IndexedMap(std::move(src), std::move(tgt), std::move(table));
  }

  std::vector<Successor> successors(const FinIndexedSet& X, const Label& index,
                                    const Label& elem) const {
    return succ_(X, index, elem);
  }

  // Re-canonicalises an encoded element over X, validating it on the way.
  Label canonical_elem(const FinIndexedSet& X, const Label& index, const Label& elem) const {
    return map_elem_(IndexedMap::identity(X), index, elem);
  }

 private:
  std::string name_;
  ObjFn obj_;
  MapElemFn map_elem_;
  SuccFn succ_;
};

inline FinitaryFunctor as_functor(IndexedContainer c) {
  auto cp = std::make_shared<const IndexedContainer>(std::move(c));
  return FinitaryFunctor(
      "container",
      [cp](const FinIndexedSet& X) { return extension(*cp, X); },
      [cp](const IndexedMap& g, const Label& i, const Label& enc) {
        ExtensionElement e = decode_extension_elem(*cp, g.source(), i, enc);
        const auto& slots = cp->positions(i, e.shape);
        for (std::size_t k = 0; k < slots.size(); ++k)
          e.values[k] = g.apply(slots[k].child_index, e.values[k]);
        return e.encode();
      },
      [cp](const FinIndexedSet& X, const Label& i, const Label& enc) {
        ExtensionElement e = decode_extension_elem(*cp, X, i, enc);
        const auto& slots = cp->positions(i, e.shape);
        std::vector<Successor> out;
        for (std::size_t k = 0; k < slots.size(); ++k)
          out.push_back(Successor{slots[k].position, slots[k].child_index, e.values[k]});
        return out;
      });
}

namespace detail {

inline void require_single_index(const FinIndexedSet& X, const char* what) {
  if (X.index_count() != 1) throw error(std::string(what) + ": non-singleton index set");
}

constexpr std::size_t kPowersetLimit = 22;

// Subsets of the ground list in binary-counting order (element 0 least
// significant), each encoded with members in ground order.
inline std::vector<Label> enumerate_subsets(const std::vector<Label>& ground) {
  if (ground.size() > kPowersetLimit) throw error("powerset: ground set too large");
  std::vector<Label> out;
  out.reserve(std::size_t{1} << ground.size());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << ground.size()); ++m) {
    std::vector<Label> members;
    for (std::size_t k = 0; k < ground.size(); ++k)
      if (m >> k & 1) members.push_back(ground[k]);
    out.push_back(enc_set(members));
  }
  return out;
}

}  // namespace detail

// The finite powerset functor on single-index sets; morphisms act by image.
inline FinitaryFunctor pfin_functor() {
  return FinitaryFunctor(
      "pfin",
      [](const FinIndexedSet& X) {
        detail::require_single_index(X, "pfin");
        return FinIndexedSet::single(X.indices()[0],
                                     detail::enumerate_subsets(X.elems_at(0)));
      },
      [](const IndexedMap& g, const Label& i, const Label& enc) {
        detail::require_single_index(g.source(), "pfin");
        auto members = detail::dec_set(enc);
        if (!members) throw error("pfin: malformed subset '" + enc + "'");
        std::vector<std::size_t> image;
        for (auto m : *members) {
          Label x(m);
          if (!g.source().contains(i, x))
            throw error("pfin: subset member '" + x + "' not in carrier");
          image.push_back(g.target().elem_pos(i, g.apply(i, x)));
        }
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        std::vector<Label> out;
        for (std::size_t p : image) out.push_back(g.target().elems(i)[p]);
        return detail::enc_set(out);
      },
      [](const FinIndexedSet& X, const Label& i, const Label& enc) {
        auto members = detail::dec_set(enc);
        if (!members) throw error("pfin: malformed subset '" + enc + "'");
        std::vector<Successor> out;
        for (auto m : *members) out.push_back(Successor{"", i, Label(m)});
        return out;
      });
}

// The functor X ↦ finite subsets of A × X on single-index sets; the shape of
// finitely branching labelled transition systems over alphabet A.
inline FinitaryFunctor pfin_prod_functor(std::vector<Label> alphabet) {
  for (const Label& a : alphabet) detail::check_plain_label(a, "alphabet label");
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    for (std::size_t j = i + 1; j < alphabet.size(); ++j)
      if (alphabet[i] == alphabet[j]) throw error("alphabet: duplicate label");
  auto alpha = std::make_shared<const std::vector<Label>>(std::move(alphabet));
  auto alpha_pos = [alpha](const Label& a) {
    for (std::size_t k = 0; k < alpha->size(); ++k)
      if ((*alpha)[k] == a) return k;
    throw error("pfin-prod: label '" + a + "' not in alphabet");
  };
  std::string name = "pfin-prod";
  return FinitaryFunctor(
      name,
      [alpha](const FinIndexedSet& X) {
        detail::require_single_index(X, "pfin-prod");
        std::vector<Label> ground;
        for (const Label& a : *alpha)
          for (const Label& x : X.elems_at(0)) ground.push_back(detail::enc_pair(a, x));
        return FinIndexedSet::single(X.indices()[0], detail::enumerate_subsets(ground));
      },
      [alpha, alpha_pos](const IndexedMap& g, const Label& i, const Label& enc) {
        detail::require_single_index(g.source(), "pfin-prod");
        auto members = detail::dec_set(enc);
        if (!members) throw error("pfin-prod: malformed subset '" + enc + "'");
        std::size_t n = g.target().elems(i).size();
        std::vector<std::size_t> image;
        for (auto m : *members) {
          auto pr = detail::dec_pair(m);
          if (!pr) throw error("pfin-prod: malformed pair '" + std::string(m) + "'");
          Label a(pr->first), x(pr->second);
          if (!g.source().contains(i, x))
            throw error("pfin-prod: pair component '" + x + "' not in carrier");
          image.push_back(alpha_pos(a) * n + g.target().elem_pos(i, g.apply(i, x)));
        }
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        std::vector<Label> out;
        for (std::size_t p : image)
          out.push_back(detail::enc_pair((*alpha)[p / n], g.target().elems(i)[p % n]));
        return detail::enc_set(out);
      },
      [](const FinIndexedSet&, const Label& i, const Label& enc) {
        auto members = detail::dec_set(enc);
        if (!members) throw error("pfin-prod: malformed subset '" + enc + "'");
        std::vector<Successor> out;
        for (auto m : *members) {
          auto pr = detail::dec_pair(m);
          if (!pr) throw error("pfin-prod: malformed pair '" + std::string(m) + "'");
          out.push_back(Successor{Label(pr->first), i, Label(pr->second)});
        }
        return out;
      });
}

}  // namespace famlift
