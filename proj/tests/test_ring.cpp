#include <catch2/catch_amalgamated.hpp>

#include "meadows/ring.hpp"
#include "support/oracles.hpp"

using namespace meadows;

TEST_CASE("cyclic rings pass the ring laws") {
  CHECK(check_ring_axioms(*cyclic_ring(2)).ok());
  CHECK(check_ring_axioms(*cyclic_ring(6)).ok());
  CHECK(check_ring_axioms(*cyclic_ring(1)).ok());
}

TEST_CASE("a broken multiplicative identity is reported with its witness") {
  FiniteRing r = *cyclic_ring(2);
  r.mul(1, 1) = 0;
  auto rep = check_ring_axioms(r);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.first().law == "multiplicative identity");
  CHECK(rep.first().witness == std::vector<std::string>{"1"});
}

TEST_CASE("malformed tables are a format error, not a law violation") {
  FiniteRing r = *cyclic_ring(2);
  r.add = op_table(3);
  CHECK_THROWS_AS(check_ring_axioms(r), format_error);
}

TEST_CASE("the trivial ring") {
  ring_ptr t = cyclic_ring(1);
  CHECK(t->zero == t->one);
  CHECK(units(*t) == std::vector<int>{0});
  CHECK_FALSE(is_field(*t));
}

TEST_CASE("cyclic_ring rejects n = 0") {
  CHECK_THROWS_AS(cyclic_ring(0), domain_error);
}

TEST_CASE("units of Z6") {
  ring_ptr z6 = cyclic_ring(6);
  CHECK(units(*z6) == std::vector<int>{1, 5});
  CHECK_FALSE(is_field(*z6));
  CHECK(is_field(*cyclic_ring(2)));
  CHECK(is_field(*cyclic_ring(5)));
}

TEST_CASE("ring products") {
  ring_ptr z2 = cyclic_ring(2);
  ring_ptr z3 = cyclic_ring(3);

  SECTION("Z2 x Z3 is isomorphic to Z6") {
    ring_ptr p = ring_product(*z2, *z3);
    REQUIRE(p->size() == 6);
    CHECK(check_ring_axioms(*p).ok());
    CHECK(oracles::ring_isomorphic(*p, *cyclic_ring(6)));
  }
  SECTION("Z2 x trivial is isomorphic to Z2") {
    CHECK(oracles::ring_isomorphic(*ring_product(*z2, *cyclic_ring(1)), *z2));
  }
  SECTION("Z2 x Z2 has the single unit (1,1)") {
    ring_ptr p = ring_product(*z2, *z2);
    auto u = units(*p);
    REQUIRE(u.size() == 1);
    CHECK(p->token(u[0]) == "(1,1)");
  }
  SECTION("iterated products keep flat tuple tokens") {
    ring_ptr p = ring_product(*ring_product(*z2, *z2), *z2);
    CHECK(p->index_of("(1,0,1)").has_value());
  }
  SECTION("Z2 x Z3 is not isomorphic to a non-ring-iso peer") {
    CHECK_FALSE(oracles::ring_isomorphic(*ring_product(*z2, *z2), *cyclic_ring(4)));
  }
}

TEST_CASE("finite fields") {
  SECTION("GF(2) is Z2") {
    CHECK(oracles::ring_isomorphic(*finite_field(2, 1), *cyclic_ring(2)));
  }
  SECTION("GF(4) uses x^2+x+1 and all nonzero elements are units") {
    ring_ptr f = finite_field(2, 2);
    REQUIRE(f->size() == 4);
    CHECK(check_ring_axioms(*f).ok());
    // elements 2 = x, 3 = x+1 under the base-2 encoding
    CHECK(f->mul(2, 2) == 3);  // x^2 = x+1
    CHECK(f->mul(2, 3) == 1);  // x(x+1) = 1
    CHECK(f->mul(3, 3) == 2);  // (x+1)^2 = x
    CHECK(is_field(*f));
  }
  SECTION("GF(9) and GF(16) are fields") {
    CHECK(is_field(*finite_field(3, 2)));
    CHECK(is_field(*finite_field(2, 4)));
  }
  SECTION("composite characteristic is rejected") {
    CHECK_THROWS_AS(finite_field(4, 1), domain_error);
  }
  SECTION("carrier cap") {
    CHECK_THROWS_AS(finite_field(2, 9), size_error);
  }
  SECTION("multiplicative group order is p^k - 1, by power iteration") {
    for (auto [p, k] : {std::pair{2, 2}, {2, 3}, {3, 2}, {5, 1}}) {
      ring_ptr f = finite_field(p, k);
      int q = f->size();
      CHECK(static_cast<int>(units(*f).size()) == q - 1);
      for (int x = 1; x < q; ++x) {
        int acc = f->one;
        for (int e = 0; e < q - 1; ++e) acc = f->mul(acc, x);
        CHECK(acc == f->one);
      }
    }
  }
}

TEST_CASE("homomorphism checking") {
  ring_ptr z2 = cyclic_ring(2);
  ring_ptr z4 = cyclic_ring(4);

  SECTION("identity is a hom") { CHECK(check_hom(identity_hom(z2)).ok()); }
  SECTION("Z4 -> Z2 reduction is a hom") {
    RingHom h{z4, z2, {0, 1, 0, 1}};
    CHECK(check_hom(h).ok());
  }
  SECTION("Z2 -> Z4 with 1 -> 1 is not additive at (1,1)") {
    RingHom h{z2, z4, {0, 1}};
    auto rep = check_hom(h);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.first().law == "additive");
    CHECK(rep.first().witness == std::vector<std::string>{"1", "1"});
  }
  SECTION("out-of-range target is a format error") {
    RingHom h{z2, z2, {0, 7}};
    CHECK_THROWS_AS(check_hom(h), format_error);
  }
}

TEST_CASE("ideal enumeration agrees with the brute-force subset scan") {
  for (ring_ptr r : {cyclic_ring(2), cyclic_ring(4), cyclic_ring(6),
                     ring_product(*cyclic_ring(2), *cyclic_ring(2)),
                     ring_product(*ring_product(*cyclic_ring(2), *cyclic_ring(2)),
                                  *cyclic_ring(2))}) {
    auto got = enumerate_ideals(r);
    std::set<std::vector<int>> members;
    for (const Ideal& i : got) members.insert(i.members);
    CHECK(members == oracles::ideals_by_subset_scan(*r));
    CHECK(members.size() == got.size());
  }
}

TEST_CASE("ideal enumeration on the named examples") {
  SECTION("a field has exactly (0) and itself") {
    auto ids = enumerate_ideals(cyclic_ring(2));
    REQUIRE(ids.size() == 2);
    CHECK(ids[0].members == std::vector<int>{0});
    CHECK(ids[1].members == std::vector<int>{0, 1});
  }
  SECTION("Z6 has four ideals") {
    auto ids = enumerate_ideals(cyclic_ring(6));
    REQUIRE(ids.size() == 4);
    CHECK(ids[0].members == std::vector<int>{0});
    CHECK(ids[1].members == std::vector<int>{0, 3});
    CHECK(ids[2].members == std::vector<int>{0, 2, 4});
    CHECK(ids[3].members == std::vector<int>{0, 1, 2, 3, 4, 5});
  }
  SECTION("Z2 x Z2 has the four product ideals") {
    CHECK(enumerate_ideals(ring_product(*cyclic_ring(2), *cyclic_ring(2))).size() == 4);
  }
}

TEST_CASE("ideal tokens") {
  ring_ptr z6 = cyclic_ring(6);
  auto ids = enumerate_ideals(z6);
  CHECK(ideal_token(ids[0]) == "(0)");
  CHECK(ideal_token(ids[1]) == "(3)");
  CHECK(ideal_token(ids[2]) == "(2)");
  CHECK(ideal_token(ids[3]) == "(1)");
}

TEST_CASE("quotients") {
  ring_ptr z6 = cyclic_ring(6);
  auto ids = enumerate_ideals(z6);

  SECTION("Z6/(3) is isomorphic to Z3") {
    QuotientResult q = quotient(z6, ids[1]);
    REQUIRE(q.ring->size() == 3);
    CHECK(check_ring_axioms(*q.ring).ok());
    CHECK(check_hom(q.projection).ok());
    CHECK(oracles::ring_isomorphic(*q.ring, *cyclic_ring(3)));
  }
  SECTION("R/(0) is R again, with a bijective projection") {
    QuotientResult q = quotient(z6, ids[0]);
    CHECK(q.ring->size() == 6);
    CHECK(oracles::ring_isomorphic(*q.ring, *z6));
    std::vector<bool> hit(6, false);
    for (int v : q.projection.map) hit[v] = true;
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
  }
  SECTION("R/R is trivial") {
    CHECK(quotient(z6, ids[3]).ring->size() == 1);
  }
  SECTION("a non-ideal is rejected") {
    Ideal bad{z6, {0, 1}};
    CHECK_THROWS_AS(quotient(z6, bad), domain_error);
  }
}

TEST_CASE("ring module invariants over the fixture rings") {
  std::vector<ring_ptr> rings = {cyclic_ring(2), cyclic_ring(3), cyclic_ring(4), cyclic_ring(6),
                                 ring_product(*cyclic_ring(2), *cyclic_ring(2)),
                                 ring_product(*cyclic_ring(2), *cyclic_ring(3))};
  for (const ring_ptr& r : rings) {
    INFO(r->name);
    auto ids = enumerate_ideals(r);

    // every quotient is a ring and its projection a hom; the kernel of
    // the projection is the ideal itself
    for (const Ideal& i : ids) {
      QuotientResult q = quotient(r, i);
      CHECK(check_ring_axioms(*q.ring).ok());
      CHECK(check_hom(q.projection).ok());
      CHECK(q.ring->size() * i.size() == r->size());
      CHECK(kernel(q.projection).members == i.members);
    }
    // closure under pairwise intersection
    for (const Ideal& i : ids)
      for (const Ideal& j : ids) {
        Ideal meet = ideal_intersection(i, j);
        bool found = false;
        for (const Ideal& k : ids) found = found || k.members == meet.members;
        CHECK(found);
      }
    // for finite commutative unital rings, two ideals means a field
    CHECK((ids.size() == 2) == is_field(*r));
  }
}

TEST_CASE("hom images are subrings and kernels are enumerated ideals") {
  ring_ptr z6 = cyclic_ring(6);
  ring_ptr z3 = cyclic_ring(3);
  ring_ptr z2 = cyclic_ring(2);
  std::vector<RingHom> homs = {identity_hom(z6),
                               RingHom{z6, z3, {0, 1, 2, 0, 1, 2}},
                               RingHom{z6, z2, {0, 1, 0, 1, 0, 1}},
                               RingHom{cyclic_ring(4), z2, {0, 1, 0, 1}}};
  for (const RingHom& h : homs) {
    REQUIRE(check_hom(h).ok());

    std::set<int> image(h.map.begin(), h.map.end());
    CHECK(image.count(h.dst->zero) == 1);
    CHECK(image.count(h.dst->one) == 1);
    for (int x : image)
      for (int y : image) {
        CHECK(image.count(h.dst->add(x, y)) == 1);
        CHECK(image.count(h.dst->mul(x, y)) == 1);
      }

    Ideal k = kernel(h);
    bool found = false;
    for (const Ideal& i : enumerate_ideals(h.src)) found = found || i.members == k.members;
    CHECK(found);
  }
}
