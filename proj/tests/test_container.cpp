#include <catch2/catch_amalgamated.hpp>

#include "famlift/container.hpp"
#include "famlift/stdlib.hpp"
#include "generators.hpp"

using namespace famlift;

TEST_CASE("container invariants are enforced") {
  CHECK_NOTHROW(validate_container(nat_container()));

  // unknown index in a position entry
  CHECK_THROWS_WITH(IndexedContainer({"i"}, {{"s"}}, {{"i", "s", "k", {"p"}}}),
                    Catch::Matchers::ContainsSubstring("unknown index"));
  CHECK_THROWS_WITH(IndexedContainer({"i"}, {{"s"}}, {{"k", "s", "i", {"p"}}}),
                    Catch::Matchers::ContainsSubstring("unknown index"));
  // duplicate position label at the same (i, s, j)
  CHECK_THROWS_WITH(IndexedContainer({"i"}, {{"s"}}, {{"i", "s", "i", {"p", "p"}}}),
                    Catch::Matchers::ContainsSubstring("duplicate position"));
  CHECK_THROWS_WITH(IndexedContainer({"i"}, {{"s", "s"}}, {}),
                    Catch::Matchers::ContainsSubstring("duplicate shape"));
  CHECK_THROWS_WITH(IndexedContainer({"i"}, {{"s"}}, {{"i", "nope", "i", {"p"}}}),
                    Catch::Matchers::ContainsSubstring("unknown shape"));
}

TEST_CASE("extension of the natural-numbers container") {
  IndexedContainer nat = nat_container();
  for (std::size_t n = 0; n <= 4; ++n) {
    std::vector<Label> xs;
    for (std::size_t k = 0; k < n; ++k) xs.push_back("x" + std::to_string(k));
    FinIndexedSet X = FinIndexedSet::single("nat", xs);
    CHECK(extension(nat, X).elems("nat").size() == 1 + n);
  }

  FinIndexedSet X = FinIndexedSet::single("nat", {"a", "b"});
  CHECK(extension(nat, X).elems("nat") ==
        std::vector<Label>{"z", "s(a)", "s(b)"});
}

TEST_CASE("extension enumerates assignments lexicographically, last position fastest") {
  IndexedContainer lam = lam_container(1);
  FinIndexedSet X(lam.indices(), {{"x", "y"}, {}});
  std::vector<Label> at0 = extension(lam, X).elems("0");
  CHECK(at0 == std::vector<Label>{"app(x,x)", "app(x,y)", "app(y,x)", "app(y,y)"});
}

TEST_CASE("extension with an empty argument keeps only nullary shapes") {
  // one nullary shape per index, plus shapes that need elements
  IndexedContainer c({"i", "j"}, {{"leaf", "node"}, {"tip"}},
                     {{"i", "node", "j", {"p"}}});
  FinIndexedSet empty({"i", "j"}, {{}, {}});
  FinIndexedSet ext = extension(c, empty);
  CHECK(ext.elems("i") == std::vector<Label>{"leaf"});
  CHECK(ext.elems("j") == std::vector<Label>{"tip"});
}

TEST_CASE("extension cardinality matches the shape/position formula") {
  gen::Rng rng(11);
  for (const auto& entry : stdlib_entries()) {
    if (!entry.container) continue;
    const IndexedContainer& c = *entry.container;
    for (int trial = 0; trial < 10; ++trial) {
      FinIndexedSet X = gen::random_set(rng, c.indices(), 4);
      FinIndexedSet ext = extension(c, X);
      for (const Label& i : c.indices()) {
        std::size_t expected = 0;
        for (const Label& s : c.shapes(i)) {
          std::size_t product = 1;
          for (const PositionKey& k : c.positions(i, s)) product *= X.elems(k.child_index).size();
          expected += product;
        }
        CHECK(ext.elems(i).size() == expected);
      }
    }
  }
}

TEST_CASE("extension map applies the function under the shape") {
  IndexedContainer nat = nat_container();
  FinIndexedSet X = FinIndexedSet::single("nat", {"a"});
  FinIndexedSet Y = FinIndexedSet::single("nat", {"b"});
  IndexedMap g(X, Y, {{"b"}});
  IndexedMap eg = extension_map(nat, g);
  CHECK(eg.apply("nat", "z") == "z");
  CHECK(eg.apply("nat", "s(a)") == "s(b)");

  CHECK(extension_map(nat, IndexedMap::identity(X)) ==
        IndexedMap::identity(extension(nat, X)));
}

TEST_CASE("extension map preserves the shape component") {
  gen::Rng rng(21);
  IndexedContainer lam = lam_container(2);
  for (int trial = 0; trial < 10; ++trial) {
    FinIndexedSet X = gen::random_set(rng, lam.indices(), 3);
    FinIndexedSet Y = gen::random_set(rng, lam.indices(), 3, 1);
    IndexedMap g = gen::random_map(rng, X, Y);
    IndexedMap eg = extension_map(lam, g);
    auto elems = extension_elements(lam, X);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const ExtensionElement& e : elems[i]) {
        Label mapped = eg.apply(e.index, e.encode());
        ExtensionElement d = decode_extension_elem(lam, Y, e.index, mapped);
        CHECK(d.shape == e.shape);
      }
    }
  }
}

TEST_CASE("functor laws hold for every stdlib functor") {
  gen::Rng rng(31);
  for (const auto& entry : stdlib_entries()) {
    const FinitaryFunctor& F = entry.functor;
    std::vector<Label> idx =
        entry.container ? entry.container->indices() : std::vector<Label>{"st"};
    std::size_t max_card = entry.container ? 3 : 2;
    for (int trial = 0; trial < 25; ++trial) {
      FinIndexedSet X = gen::random_set(rng, idx, max_card);
      FinIndexedSet Y = gen::random_set(rng, idx, max_card, 1);
      FinIndexedSet Z = gen::random_set(rng, idx, max_card, 1);
      IndexedMap f = gen::random_map(rng, X, Y);
      IndexedMap g = gen::random_map(rng, Y, Z);

      CHECK(F.apply_map(IndexedMap::identity(X)) == IndexedMap::identity(F.apply_obj(X)));
      CHECK(F.apply_map(compose(g, f)) == compose(F.apply_map(g), F.apply_map(f)));
    }
  }
}

TEST_CASE("container functor agrees with extension element-for-element") {
  IndexedContainer nat = nat_container();
  FinitaryFunctor F = as_functor(nat);
  FinIndexedSet X = FinIndexedSet::single("nat", {"a"});
  CHECK(F.apply_obj(X).elems("nat").size() == 2);
  CHECK(F.apply_obj(X) == extension(nat, X));

  FinIndexedSet Y = FinIndexedSet::single("nat", {"b", "c"});
  IndexedMap g(X, Y, {{"c"}});
  CHECK(F.apply_map(g) == extension_map(nat, g));
}

TEST_CASE("finite powerset functor") {
  FinitaryFunctor P = pfin_functor();

  FinIndexedSet empty = FinIndexedSet::single("st", {});
  CHECK(P.apply_obj(empty).elems("st") == std::vector<Label>{"{}"});

  FinIndexedSet ab = FinIndexedSet::single("st", {"a", "b"});
  CHECK(P.apply_obj(ab).elems("st") ==
        std::vector<Label>{"{}", "{a}", "{b}", "{a,b}"});

  // direct images collapse identified elements
  FinIndexedSet c = FinIndexedSet::single("st", {"c"});
  IndexedMap f(ab, c, {{"c", "c"}});
  CHECK(P.map_elem(f, "st", "{a,b}") == "{c}");

  // 2^|X| subsets
  FinIndexedSet four = FinIndexedSet::single("st", {"a", "b", "c", "d"});
  CHECK(P.apply_obj(four).elems("st").size() == 16);

  FinIndexedSet multi({"i", "j"}, {{}, {}});
  CHECK_THROWS_WITH(P.apply_obj(multi),
                    Catch::Matchers::ContainsSubstring("non-singleton"));
}

TEST_CASE("powerset-of-product functor enumerates labelled successor sets") {
  FinitaryFunctor F = pfin_prod_functor({"a", "b"});
  FinIndexedSet one = FinIndexedSet::single("st", {"s0"});
  FinIndexedSet fx = F.apply_obj(one);
  CHECK(fx.elems("st").size() == 4);  // 2^(2*1)
  CHECK(fx.elems("st")[0] == "{}");
  CHECK(fx.contains("st", "{(a,s0),(b,s0)}"));

  FinIndexedSet two = FinIndexedSet::single("st", {"s0", "s1"});
  IndexedMap collapse(two, one, {{"s0", "s0"}});
  CHECK(F.map_elem(collapse, "st", "{(a,s0),(a,s1)}") == "{(a,s0)}");

  CHECK_THROWS_AS(pfin_prod_functor({"a", "a"}), error);
}
