#pragma once

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "famlift/io.hpp"

// The command-line driver. Every subcommand is a thin wrapper around one
// library call; run_command is exposed so tests can drive it in-process.
// Exit codes: 0 = success / check holds, 1 = check fails (counterexamples
// printed), 2 = input error.

namespace famlift::cli {

inline const char* usage_text() {
  return
      "famlift: induction and coinduction checks over finite indexed sets\n"
      "\n"
      "usage:\n"
      "  famlift validate <file>\n"
      "  famlift enum --container C --depth D\n"
      "  famlift fold --container C --algebra H --tree T\n"
      "  famlift lift-pred --functor F --pred P\n"
      "  famlift lift-rel --functor F --rel R\n"
      "  famlift quotient --rel R\n"
      "  famlift coind-check --coalgebra K --rel R\n"
      "  famlift minimize --coalgebra K [--dot FILE]\n"
      "  famlift induct-check --container C --pred P --depth D\n"
      "\n"
      "C is a stdlib container name (nat | lam2 | odds-evens) or the path of a\n"
      "container document; F additionally accepts the stdlib functors\n"
      "(pfin | lts-ab). Other uppercase arguments are document paths.\n"
      "\n"
      "exit codes: 0 success/check holds; 1 check fails; 2 input error\n";
}

namespace detail {

struct UsageError : error {
  using error::error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline io::SpecDocument load_document(const std::string& path) {
  try {
    return io::parse_document(read_file(path));
  } catch (const error& e) {
    throw error(path + ": " + e.what());
  }
}

template <typename T>
const T& expect_kind(const io::SpecDocument& doc, io::DocKind kind, const std::string& path) {
  if (doc.kind != kind)
    throw error(path + ": expected a " + io::kind_name(kind) + " document, found " +
                io::kind_name(doc.kind));
  return std::get<T>(doc.payload);
}

inline IndexedContainer resolve_container(const std::string& arg) {
  for (const StdlibEntry& e : stdlib_entries())
    if (e.name == arg && e.container) return *e.container;
  return expect_kind<IndexedContainer>(load_document(arg), io::DocKind::container, arg);
}

inline FinitaryFunctor resolve_functor(const std::string& arg) {
  for (const StdlibEntry& e : stdlib_entries())
    if (e.name == arg) return e.functor;
  return as_functor(
      expect_kind<IndexedContainer>(load_document(arg), io::DocKind::container, arg));
}

inline int parse_depth(const std::string& value) {
  std::size_t used = 0;
  int depth = 0;
  try {
    depth = std::stoi(value, &used);
  } catch (const std::exception&) {
    throw error("invalid depth '" + value + "'");
  }
  if (used != value.size() || depth < 1) throw error("invalid depth '" + value + "'");
  return depth;
}

// Flags are always "--name value". Unknown or repeated flags are usage errors.
inline std::map<std::string, std::string> parse_flags(const std::vector<std::string>& args,
                                                      std::size_t from,
                                                      const std::vector<std::string>& required,
                                                      const std::vector<std::string>& optional) {
  std::map<std::string, std::string> flags;
  for (std::size_t k = from; k < args.size(); k += 2) {
    const std::string& name = args[k];
    bool known = false;
    for (const auto& f : required)
      if ("--" + f == name) known = true;
    for (const auto& f : optional)
      if ("--" + f == name) known = true;
    if (!known) throw UsageError("unknown flag '" + name + "'");
    if (k + 1 >= args.size()) throw UsageError("flag '" + name + "' needs a value");
    if (!flags.emplace(name.substr(2), args[k + 1]).second)
      throw UsageError("repeated flag '" + name + "'");
  }
  for (const auto& f : required)
    if (!flags.count(f)) throw UsageError("missing flag '--" + f + "'");
  return flags;
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  using namespace detail;
  try {
    if (args.empty()) {
      err << usage_text();
      return 2;
    }
    const std::string& cmd = args[0];

    if (cmd == "validate") {
      if (args.size() != 2) throw UsageError("validate takes exactly one file");
      io::SpecDocument doc = load_document(args[1]);
      out << "ok: " << io::kind_name(doc.kind) << "\n";
      return 0;
    }

    if (cmd == "enum") {
      auto flags = parse_flags(args, 1, {"container", "depth"}, {});
      IndexedContainer c = resolve_container(flags.at("container"));
      int depth = parse_depth(flags.at("depth"));
      TreeEnumeration e = enumerate_trees(c, depth);
      FinIndexedSet trees = tree_set(e);
      for (const Label& i : trees.indices()) {
        const auto& ts = trees.elems(i);
        out << "index " << i << ": " << ts.size() << (ts.size() == 1 ? " tree" : " trees")
            << "\n";
        for (const Label& t : ts) out << "  " << t << "\n";
      }
      return 0;
    }

    if (cmd == "fold") {
      auto flags = parse_flags(args, 1, {"container", "algebra", "tree"}, {});
      IndexedContainer c = resolve_container(flags.at("container"));
      const std::string& apath = flags.at("algebra");
      const std::string& tpath = flags.at("tree");
      Algebra h = expect_kind<io::AlgebraDoc>(load_document(apath), io::DocKind::algebra, apath)
                      .build(c);
      io::TreeDoc td = expect_kind<io::TreeDoc>(load_document(tpath), io::DocKind::tree, tpath);
      out << fold(c, h, *td.build(c)) << "\n";
      return 0;
    }

    if (cmd == "lift-pred") {
      auto flags = parse_flags(args, 1, {"functor", "pred"}, {});
      FinitaryFunctor F = resolve_functor(flags.at("functor"));
      const std::string& ppath = flags.at("pred");
      Predicate Q =
          expect_kind<Predicate>(load_document(ppath), io::DocKind::predicate, ppath);
      out << io::serialize_document(
          io::SpecDocument{io::DocKind::predicate, 1, lift_predicate_generic(F, Q)});
      return 0;
    }

    if (cmd == "lift-rel") {
      auto flags = parse_flags(args, 1, {"functor", "rel"}, {});
      FinitaryFunctor F = resolve_functor(flags.at("functor"));
      const std::string& rpath = flags.at("rel");
      Relation R = expect_kind<Relation>(load_document(rpath), io::DocKind::relation, rpath);
      out << io::serialize_document(
          io::SpecDocument{io::DocKind::relation, 1, lift_relation_generic(F, R)});
      return 0;
    }

    if (cmd == "quotient") {
      auto flags = parse_flags(args, 1, {"rel"}, {});
      const std::string& rpath = flags.at("rel");
      Relation R = expect_kind<Relation>(load_document(rpath), io::DocKind::relation, rpath);
      Quotient q = quotient(R);
      for (const Label& i : R.base().indices()) {
        out << "index " << i << ":\n";
        for (const auto& cls : q.partition.classes(i)) {
          out << "  " << cls.front() << ":";
          for (const Label& x : cls) out << " " << x;
          out << "\n";
        }
      }
      return 0;
    }

    if (cmd == "coind-check") {
      auto flags = parse_flags(args, 1, {"coalgebra", "rel"}, {});
      const std::string& kpath = flags.at("coalgebra");
      const std::string& rpath = flags.at("rel");
      FiniteCoalgebra k =
          expect_kind<io::CoalgebraDoc>(load_document(kpath), io::DocKind::coalgebra, kpath)
              .build();
      Relation R = expect_kind<Relation>(load_document(rpath), io::DocKind::relation, rpath);
      PremiseReport report = check_coinduction_premise(k, R);
      if (report.pass) {
        out << "premise holds\n";
        return 0;
      }
      for (const auto& [i, x, y] : report.violations)
        out << "violation " << i << " " << x << " " << y << "\n";
      out << "premise fails: " << report.violations.size() << " violating pair"
          << (report.violations.size() == 1 ? "" : "s") << "\n";
      return 1;
    }

    if (cmd == "minimize") {
      auto flags = parse_flags(args, 1, {"coalgebra"}, {"dot"});
      const std::string& kpath = flags.at("coalgebra");
      io::CoalgebraDoc cd =
          expect_kind<io::CoalgebraDoc>(load_document(kpath), io::DocKind::coalgebra, kpath);
      Minimized m = minimize(cd.build());
      io::CoalgebraDoc result;
      result.functor = cd.functor;
      result.carrier = m.coalgebra.carrier();
      result.map.resize(result.carrier.index_count());
      for (std::size_t i = 0; i < result.carrier.index_count(); ++i)
        for (const Label& x : result.carrier.elems_at(i))
          result.map[i].push_back(m.coalgebra.step(result.carrier.indices()[i], x));
      out << io::serialize_document(io::SpecDocument{io::DocKind::coalgebra, 1, result});
      if (flags.count("dot")) {
        std::ofstream dot(flags.at("dot"), std::ios::binary);
        if (!dot) throw error("cannot write file '" + flags.at("dot") + "'");
        dot << io::to_dot(m.coalgebra);
      }
      return 0;
    }

    if (cmd == "induct-check") {
      auto flags = parse_flags(args, 1, {"container", "pred", "depth"}, {});
      IndexedContainer c = resolve_container(flags.at("container"));
      int depth = parse_depth(flags.at("depth"));
      const std::string& ppath = flags.at("pred");
      Predicate Q =
          expect_kind<Predicate>(load_document(ppath), io::DocKind::predicate, ppath);
      FinIndexedSet trees = tree_set(enumerate_trees(c, depth));
      if (!(Q.base() == trees))
        throw error(ppath +
                    ": predicate base does not match the enumerated trees at this depth "
                    "(see 'famlift enum')");
      InductionReport report = check_induction_soundness(c, depth, Q);
      if (report.pass()) {
        out << "premise holds: all " << trees.total_size()
            << " enumerated trees satisfy the predicate\n";
        return 0;
      }
      for (const auto& [i, enc] : report.premise_counterexamples)
        out << "premise counterexample " << i << " " << enc << "\n";
      out << "premise fails: " << report.premise_counterexamples.size() << " counterexample"
          << (report.premise_counterexamples.size() == 1 ? "" : "s") << "\n";
      return 1;
    }

    err << "unknown command '" << cmd << "'\n\n" << usage_text();
    return 2;
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n\n" << usage_text();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace famlift::cli
