#include <catch2/catch_amalgamated.hpp>

#include "famlift/finset.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace famlift;

namespace {

FinIndexedSet two_sorted() {
  return FinIndexedSet({"i", "j"}, {{"a", "b"}, {"c"}});
}

}  // namespace

TEST_CASE("indexed set invariants are enforced") {
  CHECK_THROWS_AS(FinIndexedSet({"i", "i"}, {{}, {}}), error);
  CHECK_THROWS_AS(FinIndexedSet({"i"}, {{"a", "a"}}), error);
  CHECK_THROWS_AS(FinIndexedSet({"i"}, {{"a"}, {"b"}}), error);
  CHECK_THROWS_AS(FinIndexedSet({"bad index"}, {{}}), error);

  FinIndexedSet X = two_sorted();
  CHECK(X.total_size() == 3);
  CHECK(X.contains("i", "b"));
  CHECK(!X.contains("j", "b"));
  // duplicate element labels are fine at distinct indices
  CHECK_NOTHROW(FinIndexedSet({"i", "j"}, {{"a"}, {"a"}}));
}

TEST_CASE("indexed map totality and image membership") {
  FinIndexedSet X = two_sorted();
  FinIndexedSet Y({"i", "j"}, {{"u"}, {"v"}});
  CHECK_NOTHROW(IndexedMap(X, Y, {{"u", "u"}, {"v"}}));
  CHECK_THROWS_AS(IndexedMap(X, Y, {{"u"}, {"v"}}), error);          // not total
  CHECK_THROWS_AS(IndexedMap(X, Y, {{"u", "nope"}, {"v"}}), error);  // image missing
  FinIndexedSet Z({"i"}, {{"u"}});
  CHECK_THROWS_AS(IndexedMap(X, Z, {{"u", "u"}}), error);  // index sets differ

  IndexedMap id = IndexedMap::identity(X);
  CHECK(id.apply("i", "a") == "a");
  CHECK(compose(id, id) == id);
}

TEST_CASE("reindexing substitutes along the map") {
  // identity leaves the predicate untouched
  FinIndexedSet X = two_sorted();
  Predicate P = Predicate::of(X, {{"i", "a", {"u", "v"}}, {"j", "c", {"w"}}});
  CHECK(reindex(IndexedMap::identity(X), P) == P);

  // X={a}, Y={b,c}, f(a)=b, P(b)={w1,w2}, P(c)={}  =>  result(a)={w1,w2}
  FinIndexedSet A({"i"}, {{"a"}});
  FinIndexedSet Y({"i"}, {{"b", "c"}});
  IndexedMap f(A, Y, {{"b"}});
  Predicate Q = Predicate::of(Y, {{"i", "b", {"w1", "w2"}}});
  Predicate R = reindex(f, Q);
  CHECK(R.witnesses("i", "a") == std::vector<Label>{"w1", "w2"});

  // constant map onto an empty fibre pulls back empty
  Predicate none = Predicate::of(Y, {{"i", "b", {"w"}}});
  IndexedMap to_c(A, Y, {{"c"}});
  CHECK(reindex(to_c, none).total_witnesses() == 0);

  // base mismatch is rejected
  CHECK_THROWS_AS(reindex(f, Predicate(A)), error);
}

TEST_CASE("opreindexing forms the disjoint union over fibres") {
  // f = id: witnesses are relabelled (x,w)
  FinIndexedSet A({"i"}, {{"a"}});
  Predicate P = Predicate::of(A, {{"i", "a", {"u"}}});
  Predicate S = opreindex(IndexedMap::identity(A), P);
  CHECK(S.witnesses("i", "a") == std::vector<Label>{"(a,u)"});

  // X={a,b}, Y={c}, f constant, P(a)={u}, P(b)={v,w}
  FinIndexedSet X({"i"}, {{"a", "b"}});
  FinIndexedSet Y({"i"}, {{"c"}});
  IndexedMap f(X, Y, {{"c", "c"}});
  Predicate Q = Predicate::of(X, {{"i", "a", {"u"}}, {"i", "b", {"v", "w"}}});
  Predicate R = opreindex(f, Q);
  CHECK(R.witnesses("i", "c") == std::vector<Label>{"(a,u)", "(b,v)", "(b,w)"});
  CHECK(R.card("i", "c") == 3);

  CHECK_THROWS_AS(opreindex(f, Predicate(Y)), error);
}

TEST_CASE("opreindexing preserves the total witness count") {
  gen::Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    FinIndexedSet X = gen::random_set(rng, {"i", "j"}, 4);
    FinIndexedSet Y = gen::random_set(rng, {"i", "j"}, 3, 1);
    IndexedMap f = gen::random_map(rng, X, Y);
    Predicate P = gen::random_predicate(rng, X, 3);
    CHECK(opreindex(f, P).total_witnesses() == P.total_witnesses());
  }
}

TEST_CASE("truth predicate") {
  FinIndexedSet empty({"i"}, {{}});
  CHECK(truth_predicate(empty).total_witnesses() == 0);

  FinIndexedSet X({"i"}, {{"a", "b", "c"}});
  Predicate T = truth_predicate(X);
  for (const Label& x : X.elems("i")) CHECK(T.witnesses("i", x) == std::vector<Label>{kStar});

  // reindexing preserves truth label-for-label
  gen::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    FinIndexedSet A = gen::random_set(rng, {"i"}, 4);
    FinIndexedSet B = gen::random_set(rng, {"i"}, 3, 1);
    IndexedMap f = gen::random_map(rng, A, B);
    CHECK(reindex(f, truth_predicate(B)) == truth_predicate(A));
  }
}

TEST_CASE("comprehension pairs elements with their witnesses") {
  // comprehension of truth is a bijection
  FinIndexedSet X = two_sorted();
  Comprehension ct = comprehension(truth_predicate(X));
  CHECK(ct.total.total_size() == X.total_size());
  for (std::size_t i = 0; i < X.index_count(); ++i)
    CHECK(ct.total.elems_at(i).size() == X.elems_at(i).size());

  // X={a,b}, P(a)={u,v}, P(b)={}
  FinIndexedSet A({"i"}, {{"a", "b"}});
  Predicate P = Predicate::of(A, {{"i", "a", {"u", "v"}}});
  Comprehension cp = comprehension(P);
  CHECK(cp.total.elems("i") == std::vector<Label>{"(a,u)", "(a,v)"});
  CHECK(cp.projection.apply("i", "(a,u)") == "a");
  CHECK(cp.projection.apply("i", "(a,v)") == "a");

  // fibre cardinalities of the projection match the witness sets
  std::size_t over_a = 0;
  for (const Label& e : cp.total.elems("i"))
    if (cp.projection.apply("i", e) == "a") ++over_a;
  CHECK(over_a == P.card("i", "a"));

  CHECK(comprehension(Predicate(A)).total.total_size() == 0);
}

TEST_CASE("reindexing is functorial on enumerated instances") {
  gen::Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    FinIndexedSet X = gen::random_set(rng, {"i", "j"}, 3);
    FinIndexedSet Y = gen::random_set(rng, {"i", "j"}, 3, 1);
    FinIndexedSet Z = gen::random_set(rng, {"i", "j"}, 3, 1);
    IndexedMap f = gen::random_map(rng, X, Y);
    IndexedMap g = gen::random_map(rng, Y, Z);
    Predicate P = gen::random_predicate(rng, Z, 2);
    Predicate Q = gen::random_predicate(rng, X, 2);

    CHECK(reindex(IndexedMap::identity(X), Q) == Q);
    CHECK(reindex(compose(g, f), P) == reindex(f, reindex(g, P)));
  }
}

TEST_CASE("opreindexing is left adjoint to reindexing at desk scale") {
  // hom-set counts agree: |Sigma_f P -> Q| = |P -> f* Q|
  gen::Rng rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    FinIndexedSet X = gen::random_set(rng, {"i", "j"}, 3);
    FinIndexedSet Y = gen::random_set(rng, {"i", "j"}, 3, 1);
    IndexedMap f = gen::random_map(rng, X, Y);
    Predicate P = gen::random_predicate(rng, X, 2);
    Predicate Q = gen::random_predicate(rng, Y, 2);
    CHECK(oracles::hom_count(opreindex(f, P), Q) == oracles::hom_count(P, reindex(f, Q)));
  }
}
