// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include "famlift/cli.hpp"
#include "famlift/famlift.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace famlift;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

void criterion(int number, const std::string& name, double time_limit_s,
               const std::function<void(Check&)>& body) {
  Check check;
  auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.expect(false, std::string("exception: ") + e.what());
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0 && elapsed >= time_limit_s)
    check.expect(false, "time limit exceeded (" + std::to_string(time_limit_s) + "s)");
  std::ostringstream line;
  line << (check.ok ? "PASS" : "FAIL") << " criterion " << number << " [" << std::fixed;
  line.precision(2);
  line << elapsed << "s] " << name;
  if (!check.ok) line << " -- " << check.detail;
  std::cout << line.str() << "\n";
  if (!check.ok) ++g_failures;
}

// Deterministic indexed set with n elements in every fibre.
FinIndexedSet uniform_set(const std::vector<Label>& indices, std::size_t n) {
  std::vector<std::vector<Label>> elems;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    std::vector<Label> xs;
    for (std::size_t k = 0; k < n; ++k)
      xs.push_back("x" + std::to_string(i) + "_" + std::to_string(k));
    elems.push_back(std::move(xs));
  }
  return FinIndexedSet(indices, std::move(elems));
}

std::vector<Label> functor_indices(const StdlibEntry& e) {
  return e.container ? e.container->indices() : std::vector<Label>{"st"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw error("cannot read " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --- criteria ------------------------------------------------------------------

void c1_fold_in_is_identity(Check& check) {
  for (const auto& entry : stdlib_entries()) {
    if (!entry.container) continue;
    const IndexedContainer& c = *entry.container;
    TreeEnumeration e = enumerate_trees(c, 5);
    Algebra in = Algebra::in_algebra();

    // The enumeration lists trees of depth <= 4 first at every index, and
    // deeper trees only reference those as children. Fold that shared prefix
    // once, then split the depth-5 tail over two worker threads, each with
    // its own memo seeded from the prefix.
    std::vector<std::size_t> prefix(e.indices.size());
    {
      TreeEnumeration e4 = enumerate_trees(c, 4);
      for (std::size_t i = 0; i < e.indices.size(); ++i) prefix[i] = e4.trees[i].size();
    }
    std::unordered_map<const WTree*, Label> fold_base;
    std::unordered_map<const WTree*, std::string> enc_base;
    std::size_t count = 0;
    bool ok = true;
    for (std::size_t i = 0; i < e.indices.size(); ++i) {
      for (std::size_t k = 0; k < prefix[i] && ok; ++k) {
        const WTree& t = *e.trees[i][k];
        ++count;
        if (fold(c, in, t, fold_base) != encode_tree(t, enc_base)) ok = false;
      }
    }

    auto worker = [&](std::size_t parity, bool* result) {
      std::unordered_map<const WTree*, Label> fold_memo = fold_base;
      std::unordered_map<const WTree*, std::string> enc_memo = enc_base;
      std::size_t reserve = 0;
      for (std::size_t i = 0; i < e.indices.size(); ++i)
        reserve += (e.trees[i].size() - prefix[i]) / 2 + 1;
      fold_memo.reserve(fold_base.size() + reserve);
      enc_memo.reserve(enc_base.size() + reserve);
      bool good = true;
      for (std::size_t i = 0; i < e.indices.size() && good; ++i) {
        for (std::size_t k = prefix[i] + parity; k < e.trees[i].size(); k += 2) {
          const WTree& t = *e.trees[i][k];
          if (fold(c, in, t, fold_memo) != encode_tree(t, enc_memo)) {
            good = false;
            break;
          }
        }
      }
      *result = good;
    };
    bool tail_ok[2] = {true, true};
    std::thread t0(worker, 0, &tail_ok[0]);
    std::thread t1(worker, 1, &tail_ok[1]);
    t0.join();
    t1.join();
    for (std::size_t i = 0; i < e.indices.size(); ++i)
      count += e.trees[i].size() - prefix[i];

    check.expect(ok && tail_ok[0] && tail_ok[1], entry.name + ": fold in != id at some tree");
    check.expect(count > 0, entry.name + ": empty enumeration");
  }
}

void c2_lifting_equivalence(Check& check) {
  gen::Rng rng(1002);
  std::size_t cases = 0;
  for (const auto& entry : stdlib_entries()) {
    if (!entry.container) continue;
    const IndexedContainer& c = *entry.container;
    for (int trial = 0; trial < 170; ++trial) {
      FinIndexedSet X = gen::random_set(rng, c.indices(), 3);
      Predicate Q = gen::random_predicate(rng, X, 2);
      Predicate Lc = lift_predicate_container(c, Q);
      Predicate Lg = lift_predicate_generic(as_functor(c), Q);
      Comprehension comp = comprehension(Q);
      check.expect(Lc.base() == Lg.base(), "lifting bases differ");
      ++cases;
      for (std::size_t i = 0; i < Lc.base().index_count() && check.ok; ++i) {
        const Label& idx = Lc.base().indices()[i];
        for (const Label& u : Lc.base().elems_at(i)) {
          const auto& cws = Lc.witnesses(idx, u);
          const auto& gws = Lg.witnesses(idx, u);
          check.expect(cws.size() == gws.size(),
                       entry.name + ": witness cardinality differs at " + u);
          if (!check.ok) return;
          // canonical bijection: project each generic witness to its tuple
          // of per-position choices and match against the container side
          std::vector<Label> projected;
          for (const Label& v : gws) {
            ExtensionElement el = decode_extension_elem(c, comp.total, idx, v);
            std::vector<Label> picks;
            for (const Label& xw : el.values) {
              auto pr = famlift::detail::dec_pair(xw);
              check.expect(pr.has_value(), "malformed comprehension element");
              if (!pr) return;
              picks.emplace_back(pr->second);
            }
            projected.push_back(famlift::detail::enc_tuple(picks));
          }
          std::vector<Label> expected = cws;
          std::sort(expected.begin(), expected.end());
          std::sort(projected.begin(), projected.end());
          check.expect(projected == expected,
                       entry.name + ": bijection mismatch at " + u);
          if (!check.ok) return;
        }
      }
    }
  }
  check.expect(cases >= 500, "generated only " + std::to_string(cases) + " cases");
}

void c3_truth_preservation(Check& check) {
  for (const auto& entry : stdlib_entries()) {
    std::vector<Label> idx = functor_indices(entry);
    for (std::size_t n = 0; n <= 4; ++n) {
      FinIndexedSet X = uniform_set(idx, n);
      Predicate L = lift_predicate_generic(entry.functor, truth_predicate(X));
      for (std::size_t i = 0; i < L.base().index_count(); ++i)
        for (std::size_t k = 0; k < L.base().elems_at(i).size(); ++k)
          check.expect(L.witnesses_at(i, k).size() == 1,
                       entry.name + ": non-singleton witness set at |X|=" +
                           std::to_string(n));
    }
  }
}

void c4_equality_preservation(Check& check) {
  for (const auto& entry : stdlib_entries()) {
    std::vector<Label> idx = functor_indices(entry);
    for (std::size_t n = 0; n <= 3; ++n) {
      FinIndexedSet X = uniform_set(idx, n);
      check.expect(lift_relation_generic(entry.functor, eq_relation(X)) ==
                       eq_relation(entry.functor.apply_obj(X)),
                   entry.name + ": lifted equality differs at |X|=" + std::to_string(n));
    }
  }
}

void c5_quotient_correctness(Check& check) {
  gen::Rng rng(1005);
  for (int trial = 0; trial < 200; ++trial) {
    FinIndexedSet X = gen::random_set(rng, {"i", "j"}, 6);
    Relation R = gen::random_relation(rng, X, 1, 5);
    Quotient q = quotient(R);
    Relation kernel = kernel_of_map(q.projection);
    auto closed = oracles::relation_closure(R);
    for (std::size_t i = 0; i < X.index_count(); ++i) {
      const auto& xs = X.elems_at(i);
      for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = 0; b < xs.size(); ++b)
          check.expect(kernel.holds_at(i, a, b) == closed[i][a][b],
                       "kernel/closure mismatch");
    }
    if (!check.ok) return;

    // the quotient of equality is a bijection
    Quotient qeq = quotient(eq_relation(X));
    check.expect(qeq.partition.discrete(), "quotient of equality not discrete");
    check.expect(qeq.projection.target().total_size() == X.total_size(),
                 "quotient of equality changes cardinality");
  }
}

void c6_pfin_rule_agreement(Check& check) {
  auto agree = [&](const Relation& R) {
    check.expect(
        lift_relation_pfin(R).same_boolean(lift_relation_generic(pfin_functor(), R)),
        "pfin rule disagrees with the generic lifting");
  };
  // exhaustive for |X| <= 3
  for (std::size_t n = 0; n <= 3 && check.ok; ++n) {
    FinIndexedSet X = uniform_set({"st"}, n);
    std::size_t slots = n * n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots) && check.ok; ++mask) {
      Relation R(X, [&](const Label&, const Label& x, const Label& y) {
        std::size_t a = X.elem_pos("st", x), b = X.elem_pos("st", y);
        return (mask >> (a * n + b)) & 1 ? std::vector<Label>{kStar} : std::vector<Label>{};
      });
      agree(R);
    }
  }
  // |X| = 4: every relation with at most 3 pairs, plus 2000 random samples
  FinIndexedSet X4 = uniform_set({"st"}, 4);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) slots.emplace_back(a, b);
  auto from_mask = [&](std::uint32_t mask) {
    return Relation(X4, [&](const Label&, const Label& x, const Label& y) {
      std::size_t a = X4.elem_pos("st", x), b = X4.elem_pos("st", y);
      return (mask >> (a * 4 + b)) & 1 ? std::vector<Label>{kStar} : std::vector<Label>{};
    });
  };
  for (std::uint32_t mask = 0; mask < (1u << 16) && check.ok; ++mask) {
    if (std::popcount(mask) > 3) continue;
    agree(from_mask(mask));
  }
  gen::Rng rng(1006);
  for (int trial = 0; trial < 2000 && check.ok; ++trial)
    agree(from_mask(static_cast<std::uint32_t>(gen::pick(rng, 0, (1u << 16) - 1))));
}

void c7_coinduction_soundness(Check& check) {
  gen::Rng rng(1007);
  std::size_t violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    FinitaryFunctor F = [&]() -> FinitaryFunctor {
      switch (trial % 4) {
        case 0: return as_functor(nat_container());
        case 1: return pfin_functor();
        case 2: return pfin_prod_functor({"a"});
        default: return pfin_prod_functor({"a", "b"});
      }
    }();
    std::vector<Label> idx = trial % 4 == 0 ? std::vector<Label>{"nat"}
                                            : std::vector<Label>{"st"};
    FinIndexedSet X = gen::random_set(rng, idx, 6, 1);
    FiniteCoalgebra k = gen::random_coalgebra(rng, F, X);
    EquivPartition bisim = largest_bisimulation(k);
    for (int r = 0; r < 100; ++r) {
      Relation R = gen::random_relation(rng, X);
      if (!check_coinduction_premise(k, R).pass) continue;
      for (const auto& [i, x, y] : R.related_pairs())
        if (!bisim.same_class(i, x, y)) ++violations;
    }
  }
  check.expect(violations == 0,
               std::to_string(violations) + " related pairs not merged by bisimilarity");
}

void c8_classical_agreement(Check& check) {
  gen::Rng rng(1008);
  for (int trial = 0; trial < 50; ++trial) {
    gen::LtsSpec spec = gen::random_lts(rng, 8, 2);
    FiniteCoalgebra k = gen::lts_coalgebra(spec);

    oracles::Lts lts;
    lts.states = spec.states;
    lts.labels = spec.labels;
    lts.transitions.resize(spec.states.size());
    for (const auto& [from, a, to] : spec.transitions) {
      std::size_t label = 0;
      while (spec.labels[label] != a) ++label;
      lts.transitions[lts.state_id(from)].emplace_back(label, lts.state_id(to));
    }

    Relation R = gen::random_equivalence(rng, k.carrier(), 1 + trial % 4);
    std::size_t n = spec.states.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        rel[a][b] = R.holds("st", spec.states[a], spec.states[b]);

    check.expect(check_coinduction_premise(k, R).pass ==
                     oracles::is_strong_bisimulation(lts, rel),
                 "premise check disagrees with the classical bisimulation condition");

    EquivPartition mine = largest_bisimulation(k);
    std::vector<std::size_t> theirs = oracles::classical_partition_refinement(lts);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        check.expect(mine.same_class("st", spec.states[a], spec.states[b]) ==
                         (theirs[a] == theirs[b]),
                     "partitions disagree with classical refinement");
    if (!check.ok) return;
  }
}

void c9_odds_evens_rule(Check& check) {
  IndexedContainer oe = odds_evens_container();
  std::vector<InductionPremise> ps = induction_premises(oe);
  check.expect(ps.size() == 3, "expected exactly three premises");
  if (!check.ok) return;
  // P(zero); (n : odds) Q(n) -> P(evenSucc n); (n : evens) P(n) -> Q(oddSucc n)
  check.expect(ps[0].index == "even" && ps[0].shape == "zero" && ps[0].hypotheses.empty(),
               "zero premise malformed");
  check.expect(ps[1].index == "even" && ps[1].shape == "evenSucc" &&
                   ps[1].hypotheses.size() == 1 && ps[1].hypotheses[0].child_index == "odd",
               "evenSucc premise malformed");
  check.expect(ps[2].index == "odd" && ps[2].shape == "oddSucc" &&
                   ps[2].hypotheses.size() == 1 && ps[2].hypotheses[0].child_index == "even",
               "oddSucc premise malformed");

  auto parity = [](const Label& i, const std::string& enc) {
    std::size_t succs = 0;
    for (std::size_t at = enc.find("Succ"); at != std::string::npos;
         at = enc.find("Succ", at + 1))
      ++succs;
    return i == "even" ? succs % 2 == 0 : succs % 2 == 1;
  };
  InductionReport report = check_induction_soundness(oe, 6, parity);
  check.expect(report.premise_holds, "parity premise fails");
  check.expect(report.conclusion_holds, "parity conclusion fails");
}

void c10_lam_rule(Check& check) {
  IndexedContainer lam = lam_container(2);

  // premise shapes: vars without hypotheses, app with two at the same scope,
  // abs with one at the next scope (absent at the top)
  for (const InductionPremise& p : induction_premises(lam)) {
    int n = std::stoi(p.index);
    if (p.shape == "app") {
      check.expect(p.hypotheses.size() == 2 && p.hypotheses[0].child_index == p.index &&
                       p.hypotheses[1].child_index == p.index,
                   "app premise malformed at scope " + p.index);
    } else if (p.shape == "abs") {
      check.expect(n < 2, "abs premise present at the top scope");
      check.expect(p.hypotheses.size() == 1 &&
                       p.hypotheses[0].child_index == std::to_string(n + 1),
                   "abs premise malformed at scope " + p.index);
    } else {
      check.expect(p.shape.rfind("var", 0) == 0 && p.hypotheses.empty(),
                   "variable premise malformed at scope " + p.index);
    }
  }

  // enumeration counts match the independent grammar counter
  TreeEnumeration e = enumerate_trees(lam, 3);
  for (int n = 0; n <= 2; ++n)
    check.expect(e.trees[n].size() == oracles::lam_term_count(n, 2, 3),
                 "tree count mismatch at scope " + std::to_string(n));
  if (!check.ok) return;

  // sample step table: the witness at a term is its variable-leaf count,
  // which stays within 2^(depth-1)
  FinIndexedSet trees = tree_set(e);
  std::function<std::size_t(const WTree&)> depth_of = [&](const WTree& t) {
    std::size_t d = 0;
    for (const auto& ch : t.children()) d = std::max(d, depth_of(*ch));
    return d + 1;
  };
  Predicate Q(trees, [&](const Label& i, const Label& enc) {
    // witness wk for every k up to the depth bound
    std::size_t ip = trees.index_pos(i);
    const auto& ts = e.trees[ip];
    std::unordered_map<const WTree*, std::string> memo;
    for (const auto& t : ts) {
      if (encode_tree(*t, memo) != enc) continue;
      std::size_t bound = std::size_t{1} << (depth_of(*t) - 1);
      std::vector<Label> ws;
      for (std::size_t k = 1; k <= bound; ++k) ws.push_back("w" + std::to_string(k));
      return ws;
    }
    return std::vector<Label>{};
  });

  std::function<std::size_t(const WTree&)> leaves = [&](const WTree& t) -> std::size_t {
    if (t.children().empty()) return 1;
    std::size_t n = 0;
    for (const auto& ch : t.children()) n += leaves(*ch);
    return n;
  };

  // record the reachable step instances, then drive induce from the table
  std::vector<std::tuple<Label, Label, Label, Label>> rules;
  std::unordered_map<const WTree*, std::string> memo;
  for (std::size_t i = 0; i < e.indices.size(); ++i) {
    for (const auto& t : e.trees[i]) {
      std::vector<Label> child_values, child_ws;
      for (const auto& ch : t->children()) {
        child_values.push_back(encode_tree(*ch, memo));
        child_ws.push_back("w" + std::to_string(leaves(*ch)));
      }
      ExtensionElement el{t->index(), t->shape(), child_values};
      rules.emplace_back(t->index(), el.encode(), famlift::detail::enc_tuple(child_ws),
                         "w" + std::to_string(leaves(*t)));
    }
  }
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  InductionStep step = InductionStep::from_table(rules);

  for (std::size_t i = 0; i < e.indices.size(); ++i) {
    for (const auto& t : e.trees[i]) {
      Label w = induce(lam, step, *t, Q);  // fibre-checked per node
      check.expect(w == "w" + std::to_string(leaves(*t)),
                   "unexpected witness for " + encode_tree(*t, memo));
      if (!check.ok) return;
    }
  }
}

void c11_adjunction(Check& check) {
  gen::Rng rng(1011);
  for (int trial = 0; trial < 100; ++trial) {
    FinIndexedSet X = gen::random_set(rng, {"i", "j"}, 3);
    FinIndexedSet Y = gen::random_set(rng, {"i", "j"}, 3, 1);
    IndexedMap f = gen::random_map(rng, X, Y);
    Predicate P = gen::random_predicate(rng, X, 2);
    Predicate Q = gen::random_predicate(rng, Y, 2);
    check.expect(oracles::hom_count(opreindex(f, P), Q) ==
                     oracles::hom_count(P, reindex(f, Q)),
                 "hom-set counts differ");
    if (!check.ok) return;
  }
}

void c12_cli_contract(Check& check) {
  fs::path fixtures(FAMLIFT_FIXTURE_DIR);
  fs::path golden_dir(FAMLIFT_GOLDEN_DIR);

  // the full corpus parses, validates, and round-trips canonically
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(fixtures)) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  check.expect(!files.empty(), "no fixtures found");
  for (const fs::path& p : files) {
    std::string text = slurp(p);
    std::string once = io::serialize_document(io::parse_document(text));
    std::string twice = io::serialize_document(io::parse_document(once));
    check.expect(once == twice, p.filename().string() + " does not round-trip");

    std::ostringstream out, err;
    int code = cli::run_command({"validate", p.string()}, out, err);
    check.expect(code == 0, p.filename().string() + " fails validate");
    if (!check.ok) return;
  }

  // golden outputs, stable across two consecutive runs, with exit codes
  struct Case {
    std::vector<std::string> args;
    std::string golden_file;
    int code;
  };
  auto fixture = [&](const char* name) { return (fixtures / name).string(); };
  const std::vector<Case> cases = {
      {{"enum", "--container", "nat", "--depth", "3"}, "enum-nat-d3.txt", 0},
      {{"enum", "--container", "odds-evens", "--depth", "5"}, "enum-oe-d5.txt", 0},
      {{"fold", "--container", "nat", "--algebra", fixture("nat-min3.algebra"), "--tree",
        fixture("nat-two.tree")},
       "fold-nat-two.txt",
       0},
      {{"quotient", "--rel", fixture("rel-123.relation")}, "quotient-123.txt", 0},
      {{"lift-rel", "--functor", "pfin", "--rel", fixture("rel-123.relation")},
       "lift-rel-pfin-123.txt",
       0},
      {{"lift-pred", "--functor", "pfin", "--pred", fixture("pred-two.predicate")},
       "lift-pred-pfin-two.txt",
       0},
      {{"coind-check", "--coalgebra", fixture("lts-loop.coalgebra"), "--rel",
        fixture("rel-loop.relation")},
       "coind-loop.txt",
       0},
      {{"coind-check", "--coalgebra", fixture("lts-mismatch.coalgebra"), "--rel",
        fixture("rel-mismatch.relation")},
       "coind-mismatch.txt",
       1},
      {{"minimize", "--coalgebra", fixture("lts-3state.coalgebra")}, "minimize-3state.txt", 0},
      {{"induct-check", "--container", "odds-evens", "--pred", fixture("parity-d4.predicate"),
        "--depth", "4"},
       "induct-parity.txt",
       0},
      {{"induct-check", "--container", "nat", "--pred", fixture("not-sz-d3.predicate"),
        "--depth", "3"},
       "induct-notsz.txt",
       1},
  };
  for (const Case& c : cases) {
    std::ostringstream out1, err1, out2, err2;
    int code1 = cli::run_command(c.args, out1, err1);
    int code2 = cli::run_command(c.args, out2, err2);
    check.expect(code1 == c.code, c.golden_file + ": exit code " + std::to_string(code1));
    check.expect(out1.str() == slurp(golden_dir / c.golden_file),
                 c.golden_file + ": output differs from golden");
    check.expect(out1.str() == out2.str() && code1 == code2,
                 c.golden_file + ": output not stable across runs");
    if (!check.ok) return;
  }

  // input errors exit with 2
  std::ostringstream out, err;
  check.expect(cli::run_command({"frobnicate"}, out, err) == 2, "unknown command not 2");
  check.expect(cli::run_command({"enum", "--container", "nat", "--oops", "3"}, out, err) == 2,
               "unknown flag not 2");
  check.expect(cli::run_command({"validate", (fixtures / "missing.file").string()}, out,
                                err) == 2,
               "missing file not 2");
}

}  // namespace

int main() {
  criterion(1, "fold of the in-algebra is the identity (depth 5, all stdlib containers)", 5.0,
            c1_fold_in_is_identity);
  criterion(2, "generic and container predicate liftings agree (>=500 cases)", 30.0,
            c2_lifting_equivalence);
  criterion(3, "truth predicates lift to all-singleton witnesses (|X|<=4)", 0, c3_truth_preservation);
  criterion(4, "equality relations lift to equality on the nose (|X|<=3)", 0,
            c4_equality_preservation);
  criterion(5, "quotient kernels equal the matrix-closure oracle (200 cases)", 0,
            c5_quotient_correctness);
  criterion(6, "powerset covering rule equals the generic lifting (|X|<=4)", 0,
            c6_pfin_rule_agreement);
  criterion(7, "coinduction premises only relate bisimilar states (100x100)", 60.0,
            c7_coinduction_soundness);
  criterion(8, "agreement with the classical bisimulation checker (50 LTS)", 0,
            c8_classical_agreement);
  criterion(9, "evens/odds induction rule instance and parity check (depth 6)", 0,
            c9_odds_evens_rule);
  criterion(10, "lambda induction rule instance, counts, and step table (depth 3)", 0,
            c10_lam_rule);
  criterion(11, "pushforward/pullback hom-set counts agree (100 cases)", 0, c11_adjunction);
  criterion(12, "document corpus round-trips; golden outputs and exit codes stable", 0,
            c12_cli_contract);

  if (g_failures) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
