#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "famlift/coinductive.hpp"
#include "famlift/inductive.hpp"
#include "famlift/stdlib.hpp"

// The document layer: a small parenthesised text format for containers,
// coalgebras, relations, predicates, algebras, and trees, one document kind
// per file. Parsing is strict (unknown fields rejected, labels checked
// against their declarations) and serialisation is canonical, so
// serialize ∘ parse is idempotent. The grammar is documented in
// docs/format.md.

namespace famlift::io {

// --- s-expressions -----------------------------------------------------------

struct Sexp {
  bool is_atom = false;
  std::string atom;         // set when is_atom
  std::vector<Sexp> items;  // set when !is_atom
  int line = 0;
  int col = 0;
};

namespace detail {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  struct Token {
    enum class Kind { open, close, atom, eof } kind;
    std::string value;
    int line;
    int col;
  };

  Token next() {
    skip_space();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Token::Kind::eof, "", line, col};
    char c = text_[pos_];
    if (c == '(') {
      advance();
      return {Token::Kind::open, "(", line, col};
    }
    if (c == ')') {
      advance();
      return {Token::Kind::close, ")", line, col};
    }
    if (c == '"') return quoted_atom(line, col);
    std::string value;
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '(' || ch == ')' || ch == '"' || ch == ';' || std::isspace(static_cast<unsigned char>(ch)))
        break;
      value += ch;
      advance();
    }
    return {Token::Kind::atom, value, line, col};
  }

  [[noreturn]] void fail(int line, int col, const std::string& msg) const {
    throw error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token quoted_atom(int line, int col) {
    advance();  // opening quote
    std::string value;
    while (true) {
      if (pos_ >= text_.size()) fail(line, col, "unterminated string");
      char c = text_[pos_];
      if (c == '"') {
        advance();
        return {Token::Kind::atom, value, line, col};
      }
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) fail(line, col, "unterminated escape");
        char e = text_[pos_];
        if (e != '"' && e != '\\') fail(line_, col_, "unknown escape");
        value += e;
        advance();
      } else {
        value += c;
        advance();
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline Sexp parse_form(Lexer& lx, Lexer::Token tok) {
  if (tok.kind == Lexer::Token::Kind::atom) {
    Sexp s;
    s.is_atom = true;
    s.atom = tok.value;
    s.line = tok.line;
    s.col = tok.col;
    return s;
  }
  if (tok.kind != Lexer::Token::Kind::open) lx.fail(tok.line, tok.col, "expected '(' or atom");
  Sexp s;
  s.line = tok.line;
  s.col = tok.col;
  while (true) {
    Lexer::Token t = lx.next();
    if (t.kind == Lexer::Token::Kind::close) return s;
    if (t.kind == Lexer::Token::Kind::eof) lx.fail(s.line, s.col, "unclosed '('");
    s.items.push_back(parse_form(lx, t));
  }
}

inline bool needs_quoting(const std::string& atom) {
  if (atom.empty()) return true;
  for (char c : atom)
    if (c == '(' || c == ')' || c == '"' || c == ';' || std::isspace(static_cast<unsigned char>(c)))
      return true;
  return false;
}

inline std::string write_atom(const std::string& atom) {
  if (!needs_quoting(atom)) return atom;
  std::string out = "\"";
  for (char c : atom) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

[[noreturn]] inline void fail_at(const Sexp& s, const std::string& msg) {
  throw error("line " + std::to_string(s.line) + ", col " + std::to_string(s.col) + ": " + msg);
}

inline const std::string& atom_of(const Sexp& s, const char* what) {
  if (!s.is_atom) fail_at(s, std::string("expected ") + what);
  return s.atom;
}

inline void expect_len(const Sexp& s, std::size_t min, const char* what) {
  if (s.is_atom || s.items.size() < min) fail_at(s, std::string("malformed ") + what);
}

}  // namespace detail

inline Sexp parse_sexp(std::string_view text) {
  detail::Lexer lx(text);
  detail::Lexer::Token tok = lx.next();
  if (tok.kind == detail::Lexer::Token::Kind::eof) lx.fail(tok.line, tok.col, "empty document");
  Sexp s = detail::parse_form(lx, tok);
  detail::Lexer::Token rest = lx.next();
  if (rest.kind != detail::Lexer::Token::Kind::eof)
    lx.fail(rest.line, rest.col, "trailing content after document");
  return s;
}

// --- document model ----------------------------------------------------------

enum class DocKind { container, coalgebra, relation, predicate, algebra, tree };

inline const char* kind_name(DocKind k) {
  switch (k) {
    case DocKind::container: return "container";
    case DocKind::coalgebra: return "coalgebra";
    case DocKind::relation: return "relation";
    case DocKind::predicate: return "predicate";
    case DocKind::algebra: return "algebra";
    case DocKind::tree: return "tree";
  }
  return "?";
}

// A parseable description of a finitary functor.
struct FunctorSpec {
  enum class Kind { pfin, pfin_prod, stdlib_ref, inline_container };
  Kind kind = Kind::pfin;
  std::vector<Label> alphabet;                // pfin_prod
  std::string name;                           // stdlib_ref
  std::optional<IndexedContainer> container;  // inline_container

  FinitaryFunctor build() const {
    switch (kind) {
      case Kind::pfin: return pfin_functor();
      case Kind::pfin_prod: return pfin_prod_functor(alphabet);
      case Kind::stdlib_ref: return stdlib_entry(name).functor;
      case Kind::inline_container: return as_functor(*container);
    }
    throw error("functor spec: bad kind");
  }
};

struct CoalgebraDoc {
  FunctorSpec functor;
  FinIndexedSet carrier;
  std::vector<std::vector<Label>> map;  // per index, aligned with carrier elements

  FiniteCoalgebra build() const { return FiniteCoalgebra(functor.build(), carrier, map); }
};

struct AlgebraDoc {
  FinIndexedSet carrier;
  std::vector<std::tuple<Label, Label, Label>> rules;  // (index, extension element, result)

  Algebra build(const IndexedContainer& c) const { return Algebra::from_table(c, carrier, rules); }
};

struct RawTree {
  Label shape;
  std::vector<std::tuple<Label, Label, RawTree>> children;  // (child index, position, subtree)
};

struct TreeDoc {
  Label index;
  RawTree term;

  WTree::Ptr build(const IndexedContainer& c) const { return build_node(c, index, term); }

 private:
  static WTree::Ptr build_node(const IndexedContainer& c, const Label& at, const RawTree& t) {
    std::vector<std::tuple<Label, Label, WTree::Ptr>> assignment;
    for (const auto& [j, p, sub] : t.children)
      assignment.emplace_back(j, p, build_node(c, j, sub));
    return in_tree(c, at, t.shape, assignment);
  }
};

struct SpecDocument {
  DocKind kind;
  int version = 1;
  std::variant<IndexedContainer, CoalgebraDoc, Relation, Predicate, AlgebraDoc, TreeDoc> payload;
};

// --- parsing ------------------------------------------------------------------

namespace detail {

// Collects the body fields of a document form, enforcing the allowed set and
// rejecting duplicates.
inline std::vector<const Sexp*> fields(const Sexp& doc, std::size_t from,
                                       const std::vector<std::string>& allowed) {
  std::vector<const Sexp*> out(allowed.size(), nullptr);
  for (std::size_t k = from; k < doc.items.size(); ++k) {
    const Sexp& item = doc.items[k];
    expect_len(item, 1, "field");
    const std::string& name = atom_of(item.items[0], "field name");
    bool known = false;
    for (std::size_t a = 0; a < allowed.size(); ++a) {
      if (allowed[a] != name) continue;
      if (out[a]) fail_at(item, "duplicate field '" + name + "'");
      out[a] = &item;
      known = true;
    }
    if (!known) fail_at(item, "unknown field '" + name + "'");
  }
  return out;
}

inline FinIndexedSet parse_set(const Sexp& s, const char* what) {
  expect_len(s, 1, what);
  auto fs = fields(s, 1, {"indices", "elems"});
  if (!fs[0]) fail_at(s, std::string(what) + ": missing 'indices'");
  std::vector<Label> indices;
  for (std::size_t k = 1; k < fs[0]->items.size(); ++k)
    indices.push_back(atom_of(fs[0]->items[k], "index label"));
  std::vector<std::vector<Label>> elems(indices.size());
  if (fs[1]) {
    for (std::size_t k = 1; k < fs[1]->items.size(); ++k) {
      const Sexp& entry = fs[1]->items[k];
      expect_len(entry, 1, "elems entry");
      const Label& idx = atom_of(entry.items[0], "index label");
      bool found = false;
      for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] != idx) continue;
        if (!elems[i].empty()) fail_at(entry, "duplicate elems entry for index '" + idx + "'");
        for (std::size_t e = 1; e < entry.items.size(); ++e)
          elems[i].push_back(atom_of(entry.items[e], "element label"));
        found = true;
      }
      if (!found) fail_at(entry, "unknown index '" + idx + "' in elems");
    }
  }
  try {
    return FinIndexedSet(std::move(indices), std::move(elems));
  } catch (const error& e) {
    fail_at(s, e.what());
  }
}

inline IndexedContainer parse_container_body(const Sexp& doc, std::size_t from) {
  auto fs = fields(doc, from, {"indices", "shapes", "positions"});
  if (!fs[0]) fail_at(doc, "container: missing 'indices'");
  std::vector<Label> indices;
  for (std::size_t k = 1; k < fs[0]->items.size(); ++k)
    indices.push_back(atom_of(fs[0]->items[k], "index label"));
  std::vector<std::vector<Label>> shapes(indices.size());
  if (fs[1]) {
    for (std::size_t k = 1; k < fs[1]->items.size(); ++k) {
      const Sexp& entry = fs[1]->items[k];
      expect_len(entry, 1, "shapes entry");
      const Label& idx = atom_of(entry.items[0], "index label");
      bool found = false;
      for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] != idx) continue;
        if (!shapes[i].empty()) fail_at(entry, "duplicate shapes entry for index '" + idx + "'");
        for (std::size_t e = 1; e < entry.items.size(); ++e)
          shapes[i].push_back(atom_of(entry.items[e], "shape label"));
        found = true;
      }
      if (!found) fail_at(entry, "unknown index '" + idx + "' in shapes");
    }
  }
  std::vector<IndexedContainer::PositionEntry> entries;
  if (fs[2]) {
    for (std::size_t k = 1; k < fs[2]->items.size(); ++k) {
      const Sexp& entry = fs[2]->items[k];
      expect_len(entry, 4, "positions entry");
      IndexedContainer::PositionEntry pe;
      pe.index = atom_of(entry.items[0], "index label");
      pe.shape = atom_of(entry.items[1], "shape label");
      pe.child_index = atom_of(entry.items[2], "index label");
      for (std::size_t e = 3; e < entry.items.size(); ++e)
        pe.positions.push_back(atom_of(entry.items[e], "position label"));
      entries.push_back(std::move(pe));
    }
  }
  try {
    return IndexedContainer(std::move(indices), std::move(shapes), entries);
  } catch (const error& e) {
    fail_at(doc, e.what());
  }
}

inline FunctorSpec parse_functor(const Sexp& s) {
  FunctorSpec spec;
  if (s.is_atom) {
    if (s.atom == "pfin") {
      spec.kind = FunctorSpec::Kind::pfin;
      return spec;
    }
    fail_at(s, "unknown functor '" + s.atom + "' (expected pfin or a list form)");
  }
  expect_len(s, 1, "functor");
  const std::string& head = atom_of(s.items[0], "functor kind");
  if (head == "pfin-prod") {
    spec.kind = FunctorSpec::Kind::pfin_prod;
    if (s.items.size() < 2) fail_at(s, "pfin-prod: empty alphabet");
    for (std::size_t k = 1; k < s.items.size(); ++k)
      spec.alphabet.push_back(atom_of(s.items[k], "alphabet label"));
    return spec;
  }
  if (head == "stdlib") {
    expect_len(s, 2, "stdlib functor");
    spec.kind = FunctorSpec::Kind::stdlib_ref;
    spec.name = atom_of(s.items[1], "stdlib name");
    stdlib_entry(spec.name);  // reject unknown names here, with position info
    return spec;
  }
  if (head == "container") {
    spec.kind = FunctorSpec::Kind::inline_container;
    spec.container = parse_container_body(s, 1);
    return spec;
  }
  fail_at(s, "unknown functor kind '" + head + "'");
}

inline RawTree parse_term(const Sexp& s) {
  RawTree t;
  if (s.is_atom) {
    t.shape = s.atom;
    return t;
  }
  expect_len(s, 1, "term");
  t.shape = atom_of(s.items[0], "shape label");
  for (std::size_t k = 1; k < s.items.size(); ++k) {
    const Sexp& child = s.items[k];
    expect_len(child, 3, "child entry");
    if (child.items.size() != 3) fail_at(child, "child entry needs (index position term)");
    t.children.emplace_back(atom_of(child.items[0], "index label"),
                            atom_of(child.items[1], "position label"),
                            parse_term(child.items[2]));
  }
  return t;
}

}  // namespace detail

inline SpecDocument parse_document(const std::string& text) {
  Sexp doc = parse_sexp(text);
  if (doc.is_atom) detail::fail_at(doc, "expected a document form");
  detail::expect_len(doc, 2, "document");
  const std::string& kind = detail::atom_of(doc.items[0], "document kind");
  const std::string& version = detail::atom_of(doc.items[1], "format version");
  if (version != "1") detail::fail_at(doc.items[1], "unsupported format version '" + version + "'");

  if (kind == "container") {
    return SpecDocument{DocKind::container, 1, detail::parse_container_body(doc, 2)};
  }

  if (kind == "predicate") {
    auto fs = detail::fields(doc, 2, {"base", "witnesses"});
    if (!fs[0]) detail::fail_at(doc, "predicate: missing 'base'");
    FinIndexedSet base = detail::parse_set(*fs[0], "base");
    std::vector<std::tuple<Label, Label, std::vector<Label>>> entries;
    if (fs[1]) {
      for (std::size_t k = 1; k < fs[1]->items.size(); ++k) {
        const Sexp& entry = fs[1]->items[k];
        detail::expect_len(entry, 3, "witnesses entry");
        Label idx = detail::atom_of(entry.items[0], "index label");
        Label elem = detail::atom_of(entry.items[1], "element label");
        if (!base.has_index(idx)) detail::fail_at(entry, "unknown index '" + idx + "'");
        if (!base.contains(idx, elem))
          detail::fail_at(entry, "element '" + elem + "' not declared in base");
        for (const auto& [pi, pe, pw] : entries)
          if (pi == idx && pe == elem)
            detail::fail_at(entry, "duplicate witnesses entry for '" + elem + "'");
        std::vector<Label> ws;
        for (std::size_t w = 2; w < entry.items.size(); ++w)
          ws.push_back(detail::atom_of(entry.items[w], "witness label"));
        entries.emplace_back(std::move(idx), std::move(elem), std::move(ws));
      }
    }
    try {
      return SpecDocument{DocKind::predicate, 1, Predicate::of(std::move(base), entries)};
    } catch (const error& e) {
      detail::fail_at(doc, e.what());
    }
  }

  if (kind == "relation") {
    auto fs = detail::fields(doc, 2, {"base", "pairs"});
    if (!fs[0]) detail::fail_at(doc, "relation: missing 'base'");
    FinIndexedSet base = detail::parse_set(*fs[0], "base");
    std::vector<std::tuple<Label, Label, Label, std::vector<Label>>> entries;
    if (fs[1]) {
      for (std::size_t k = 1; k < fs[1]->items.size(); ++k) {
        const Sexp& entry = fs[1]->items[k];
        detail::expect_len(entry, 4, "pairs entry");
        Label idx = detail::atom_of(entry.items[0], "index label");
        Label x = detail::atom_of(entry.items[1], "element label");
        Label y = detail::atom_of(entry.items[2], "element label");
        if (!base.has_index(idx)) detail::fail_at(entry, "unknown index '" + idx + "'");
        if (!base.contains(idx, x)) detail::fail_at(entry, "element '" + x + "' not declared");
        if (!base.contains(idx, y)) detail::fail_at(entry, "element '" + y + "' not declared");
        for (const auto& [pi, px, py, pw] : entries)
          if (pi == idx && px == x && py == y)
            detail::fail_at(entry, "duplicate pairs entry (" + x + "," + y + ")");
        std::vector<Label> ws;
        for (std::size_t w = 3; w < entry.items.size(); ++w)
          ws.push_back(detail::atom_of(entry.items[w], "witness label"));
        entries.emplace_back(std::move(idx), std::move(x), std::move(y), std::move(ws));
      }
    }
    try {
      Relation rel(base, [&](const Label& i, const Label& x, const Label& y) {
        for (const auto& [ei, ex, ey, ws] : entries)
          if (ei == i && ex == x && ey == y) return ws;
        return std::vector<Label>{};
      });
      return SpecDocument{DocKind::relation, 1, std::move(rel)};
    } catch (const error& e) {
      detail::fail_at(doc, e.what());
    }
  }

  if (kind == "coalgebra") {
    auto fs = detail::fields(doc, 2, {"functor", "carrier", "map"});
    if (!fs[0] || fs[0]->items.size() != 2)
      detail::fail_at(doc, "coalgebra: missing or malformed 'functor'");
    if (!fs[1]) detail::fail_at(doc, "coalgebra: missing 'carrier'");
    CoalgebraDoc cd;
    cd.functor = detail::parse_functor(fs[0]->items[1]);
    cd.carrier = detail::parse_set(*fs[1], "carrier");
    cd.map.resize(cd.carrier.index_count());
    std::vector<std::vector<bool>> seen(cd.carrier.index_count());
    for (std::size_t i = 0; i < cd.carrier.index_count(); ++i) {
      cd.map[i].resize(cd.carrier.elems_at(i).size());
      seen[i].resize(cd.carrier.elems_at(i).size(), false);
    }
    if (fs[2]) {
      for (std::size_t k = 1; k < fs[2]->items.size(); ++k) {
        const Sexp& entry = fs[2]->items[k];
        detail::expect_len(entry, 3, "map entry");
        if (entry.items.size() != 3) detail::fail_at(entry, "map entry needs (index state image)");
        Label idx = detail::atom_of(entry.items[0], "index label");
        Label x = detail::atom_of(entry.items[1], "element label");
        if (!cd.carrier.has_index(idx)) detail::fail_at(entry, "unknown index '" + idx + "'");
        if (!cd.carrier.contains(idx, x))
          detail::fail_at(entry, "state '" + x + "' not declared in carrier");
        std::size_t ip = cd.carrier.index_pos(idx);
        std::size_t xp = cd.carrier.elem_pos_at(ip, x);
        if (seen[ip][xp]) detail::fail_at(entry, "duplicate map entry for '" + x + "'");
        seen[ip][xp] = true;
        cd.map[ip][xp] = detail::atom_of(entry.items[2], "image");
      }
    }
    for (std::size_t i = 0; i < cd.carrier.index_count(); ++i)
      for (std::size_t k = 0; k < seen[i].size(); ++k)
        if (!seen[i][k])
          detail::fail_at(doc, "coalgebra: missing map entry for '" +
                                   cd.carrier.elems_at(i)[k] + "' at index '" +
                                   cd.carrier.indices()[i] + "'");
    try {
      FiniteCoalgebra built = cd.build();  // validates the images
      for (std::size_t i = 0; i < cd.carrier.index_count(); ++i)
        for (std::size_t k = 0; k < cd.map[i].size(); ++k)
          cd.map[i][k] = built.step_at(i, k);  // keep the canonical spellings
    } catch (const error& e) {
      detail::fail_at(doc, e.what());
    }
    return SpecDocument{DocKind::coalgebra, 1, std::move(cd)};
  }

  if (kind == "algebra") {
    auto fs = detail::fields(doc, 2, {"carrier", "rules"});
    if (!fs[0]) detail::fail_at(doc, "algebra: missing 'carrier'");
    AlgebraDoc ad;
    ad.carrier = detail::parse_set(*fs[0], "carrier");
    if (fs[1]) {
      for (std::size_t k = 1; k < fs[1]->items.size(); ++k) {
        const Sexp& entry = fs[1]->items[k];
        detail::expect_len(entry, 3, "rules entry");
        if (entry.items.size() != 3) detail::fail_at(entry, "rule needs (index element result)");
        Label idx = detail::atom_of(entry.items[0], "index label");
        Label elem = detail::atom_of(entry.items[1], "extension element");
        Label result = detail::atom_of(entry.items[2], "result label");
        if (!ad.carrier.has_index(idx)) detail::fail_at(entry, "unknown index '" + idx + "'");
        if (!ad.carrier.contains(idx, result))
          detail::fail_at(entry, "result '" + result + "' not declared in carrier");
        ad.rules.emplace_back(std::move(idx), std::move(elem), std::move(result));
      }
    }
    std::sort(ad.rules.begin(), ad.rules.end());
    return SpecDocument{DocKind::algebra, 1, std::move(ad)};
  }

  if (kind == "tree") {
    auto fs = detail::fields(doc, 2, {"index", "term"});
    if (!fs[0] || fs[0]->items.size() != 2)
      detail::fail_at(doc, "tree: missing or malformed 'index'");
    if (!fs[1] || fs[1]->items.size() != 2)
      detail::fail_at(doc, "tree: missing or malformed 'term'");
    TreeDoc td;
    td.index = detail::atom_of(fs[0]->items[1], "index label");
    td.term = detail::parse_term(fs[1]->items[1]);
    return SpecDocument{DocKind::tree, 1, std::move(td)};
  }

  detail::fail_at(doc.items[0], "unknown document kind '" + kind + "'");
}

// --- serialisation -------------------------------------------------------------

namespace detail {

inline void write_set_body(std::ostringstream& out, const FinIndexedSet& X, const char* field,
                           int indent) {
  std::string pad(indent, ' ');
  out << pad << "(" << field << " (indices";
  for (const Label& i : X.indices()) out << " " << write_atom(i);
  out << ")\n" << pad << "  (elems";
  for (std::size_t i = 0; i < X.index_count(); ++i) {
    out << " (" << write_atom(X.indices()[i]);
    for (const Label& x : X.elems_at(i)) out << " " << write_atom(x);
    out << ")";
  }
  out << "))";
}

inline void write_container_body(std::ostringstream& out, const IndexedContainer& c, int indent) {
  std::string pad(indent, ' ');
  out << pad << "(indices";
  for (const Label& i : c.indices()) out << " " << write_atom(i);
  out << ")\n" << pad << "(shapes";
  for (const Label& i : c.indices()) {
    out << " (" << write_atom(i);
    for (const Label& s : c.shapes(i)) out << " " << write_atom(s);
    out << ")";
  }
  out << ")\n" << pad << "(positions";
  bool any = false;
  for (const Label& i : c.indices()) {
    for (const Label& s : c.shapes(i)) {
      for (const Label& j : c.indices()) {
        std::vector<Label> ps = c.positions(i, s, j);
        if (ps.empty()) continue;
        out << "\n" << pad << "  (" << write_atom(i) << " " << write_atom(s) << " "
            << write_atom(j);
        for (const Label& p : ps) out << " " << write_atom(p);
        out << ")";
        any = true;
      }
    }
  }
  (void)any;
  out << ")";
}

inline void write_functor(std::ostringstream& out, const FunctorSpec& f) {
  switch (f.kind) {
    case FunctorSpec::Kind::pfin:
      out << "pfin";
      return;
    case FunctorSpec::Kind::pfin_prod:
      out << "(pfin-prod";
      for (const Label& a : f.alphabet) out << " " << write_atom(a);
      out << ")";
      return;
    case FunctorSpec::Kind::stdlib_ref:
      out << "(stdlib " << write_atom(f.name) << ")";
      return;
    case FunctorSpec::Kind::inline_container: {
      std::ostringstream body;
      write_container_body(body, *f.container, 4);
      out << "(container\n" << body.str() << ")";
      return;
    }
  }
}

inline void write_term(std::ostringstream& out, const RawTree& t) {
  if (t.children.empty()) {
    out << write_atom(t.shape);
    return;
  }
  out << "(" << write_atom(t.shape);
  for (const auto& [j, p, sub] : t.children) {
    out << " (" << write_atom(j) << " " << write_atom(p) << " ";
    write_term(out, sub);
    out << ")";
  }
  out << ")";
}

}  // namespace detail

inline std::string serialize_document(const SpecDocument& doc) {
  std::ostringstream out;
  switch (doc.kind) {
    case DocKind::container: {
      const auto& c = std::get<IndexedContainer>(doc.payload);
      out << "(container 1\n";
      detail::write_container_body(out, c, 2);
      out << ")\n";
      break;
    }
    case DocKind::predicate: {
      const auto& p = std::get<Predicate>(doc.payload);
      out << "(predicate 1\n";
      detail::write_set_body(out, p.base(), "base", 2);
      out << "\n  (witnesses";
      for (std::size_t i = 0; i < p.base().index_count(); ++i) {
        const Label& idx = p.base().indices()[i];
        for (const Label& x : p.base().elems_at(i)) {
          const auto& ws = p.witnesses(idx, x);
          if (ws.empty()) continue;
          out << "\n    (" << detail::write_atom(idx) << " " << detail::write_atom(x);
          for (const Label& w : ws) out << " " << detail::write_atom(w);
          out << ")";
        }
      }
      out << "))\n";
      break;
    }
    case DocKind::relation: {
      const auto& r = std::get<Relation>(doc.payload);
      out << "(relation 1\n";
      detail::write_set_body(out, r.base(), "base", 2);
      out << "\n  (pairs";
      for (std::size_t i = 0; i < r.base().index_count(); ++i) {
        const Label& idx = r.base().indices()[i];
        for (const Label& x : r.base().elems_at(i)) {
          for (const Label& y : r.base().elems_at(i)) {
            const auto& ws = r.witnesses(idx, x, y);
            if (ws.empty()) continue;
            out << "\n    (" << detail::write_atom(idx) << " " << detail::write_atom(x) << " "
                << detail::write_atom(y);
            for (const Label& w : ws) out << " " << detail::write_atom(w);
            out << ")";
          }
        }
      }
      out << "))\n";
      break;
    }
    case DocKind::coalgebra: {
      const auto& cd = std::get<CoalgebraDoc>(doc.payload);
      out << "(coalgebra 1\n  (functor ";
      detail::write_functor(out, cd.functor);
      out << ")\n";
      detail::write_set_body(out, cd.carrier, "carrier", 2);
      out << "\n  (map";
      for (std::size_t i = 0; i < cd.carrier.index_count(); ++i) {
        const Label& idx = cd.carrier.indices()[i];
        for (std::size_t k = 0; k < cd.carrier.elems_at(i).size(); ++k) {
          out << "\n    (" << detail::write_atom(idx) << " "
              << detail::write_atom(cd.carrier.elems_at(i)[k]) << " "
              << detail::write_atom(cd.map[i][k]) << ")";
        }
      }
      out << "))\n";
      break;
    }
    case DocKind::algebra: {
      const auto& ad = std::get<AlgebraDoc>(doc.payload);
      out << "(algebra 1\n";
      detail::write_set_body(out, ad.carrier, "carrier", 2);
      out << "\n  (rules";
      for (const auto& [i, e, r] : ad.rules)
        out << "\n    (" << detail::write_atom(i) << " " << detail::write_atom(e) << " "
            << detail::write_atom(r) << ")";
      out << "))\n";
      break;
    }
    case DocKind::tree: {
      const auto& td = std::get<TreeDoc>(doc.payload);
      out << "(tree 1\n  (index " << detail::write_atom(td.index) << ")\n  (term ";
      detail::write_term(out, td.term);
      out << "))\n";
      break;
    }
  }
  return out.str();
}

// --- DOT emission --------------------------------------------------------------

// Nodes are the carrier elements, edges come from the functor's successor
// structure. Ordering follows the carrier and the encoded elements, so the
// output is identical across runs.
inline std::string to_dot(const FiniteCoalgebra& k, const std::string& graph_name = "coalgebra") {
  auto esc = [](const Label& l) {
    std::string out;
    for (char c : l) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  };
  const FinIndexedSet& X = k.carrier();
  bool multi = X.index_count() > 1;
  auto node_id = [&](const Label& i, const Label& x) {
    return multi ? i + ":" + x : x;
  };
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n";
  for (std::size_t i = 0; i < X.index_count(); ++i) {
    const Label& idx = X.indices()[i];
    for (const Label& x : X.elems_at(i))
      out << "  \"" << esc(node_id(idx, x)) << "\";\n";
  }
  for (std::size_t i = 0; i < X.index_count(); ++i) {
    const Label& idx = X.indices()[i];
    for (const Label& x : X.elems_at(i)) {
      for (const Successor& s : k.functor().successors(X, idx, k.step(idx, x))) {
        out << "  \"" << esc(node_id(idx, x)) << "\" -> \""
            << esc(node_id(s.child_index, s.child_elem)) << "\"";
        if (!s.edge.empty()) out << " [label=\"" << esc(s.edge) << "\"]";
        out << ";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace famlift::io
