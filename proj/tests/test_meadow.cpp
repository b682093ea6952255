#include <catch2/catch_amalgamated.hpp>

#include "meadows/fixtures.hpp"
#include "meadows/meadow.hpp"
#include "support/oracles.hpp"

using namespace meadows;

namespace {

std::vector<std::string> tokens(const Meadow& m, const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(m.token(i));
  return out;
}

}  // namespace

TEST_CASE("the 4-element example is a pre-meadow but not one with a") {
  Meadow m = fixtures::example1();
  premeadow_report rep = check_premeadow(m);
  INFO(rep.summary());
  CHECK(rep.ok());
  REQUIRE(rep.axioms.size() == 10);

  classification c = classify(m);
  CHECK(c.level == meadow_level::pre_meadow);
  CHECK_THAT(c.detail, Catch::Matchers::ContainsSubstring("P_x") &&
                           Catch::Matchers::ContainsSubstring("P_a"));
}

TEST_CASE("the 5-element example is a common meadow") {
  Meadow m = fixtures::example2();
  CHECK(check_premeadow(m).ok());

  classification c = classify(m);
  REQUIRE(c.level == meadow_level::common_meadow);
  CHECK(c.a_elem == m.index_of("a"));
  CHECK(c.all_fiber_fields);
  CHECK(c.supplied_inv_valid == true);

  SECTION("fibers are {0,1}, {x,y}, {a}") {
    FiberPartition p = fibers(m);
    REQUIRE(p.count() == 3);
    CHECK(tokens(m, p.members[0]) == std::vector<std::string>{"0", "1"});
    CHECK(tokens(m, p.members[1]) == std::vector<std::string>{"x", "y"});
    CHECK(tokens(m, p.members[2]) == std::vector<std::string>{"a"});
  }
  SECTION("the zero monoid is the chain 0 > x > a") {
    ZeroLattice l = zero_monoid(m);
    REQUIRE(l.size() == 3);
    CHECK(l.token(l.zero) == "0");
    CHECK(l.token(l.a) == "a");
    int x = *l.index_of("x");
    CHECK(l.leq(x, l.zero));
    CHECK(l.leq(l.a, x));
  }
  SECTION("synthesized inverses match the stored vector") {
    inverse_synthesis s = synthesize_inverse(m);
    REQUIRE(s.ok());
    CHECK(*s.inv == std::vector<int>{4, 1, 4, 3, 4});  // a 1 a y a
    CHECK(*c.inv == *s.inv);
  }
}

TEST_CASE("fiber rings of the 5-element example") {
  Meadow m = fixtures::example2();
  int xnode = *m.index_of("x");

  ring_ptr px = fiber_ring(m, xnode);
  REQUIRE(px->size() == 2);
  CHECK(px->token(px->zero) == "x");
  CHECK(px->token(px->one) == "y");
  CHECK(check_ring_axioms(*px).ok());
  CHECK(oracles::ring_isomorphic(*px, *cyclic_ring(2)));

  SECTION("P_0 keeps the original constants") {
    ring_ptr p0 = fiber_ring(m, *m.index_of("0"));
    CHECK(p0->token(p0->zero) == "0");
    CHECK(p0->token(p0->one) == "1");
  }
  SECTION("the absorber fiber is not exposed") {
    CHECK_THROWS_AS(fiber_ring(m, *m.index_of("a")), domain_error);
  }
}

TEST_CASE("transition maps of the 5-element example") {
  Meadow m = fixtures::example2();
  int zero = *m.index_of("0"), x = *m.index_of("x"), a = *m.index_of("a");

  SECTION("P_0 -> P_x sends 0 to x and 1 to y") {
    RingHom f = transition_map(m, x, zero);
    CHECK(check_hom(f).ok());
    CHECK(f.dst->token(f(*f.src->index_of("0"))) == "x");
    CHECK(f.dst->token(f(*f.src->index_of("1"))) == "y");
  }
  SECTION("a fiber to itself gives the identity") {
    RingHom f = transition_map(m, x, x);
    CHECK(f.map == std::vector<int>{0, 1});
  }
  SECTION("everything collapses into the absorber fiber") {
    RingHom f = transition_map(m, a, zero);
    CHECK(f.map == std::vector<int>(2, 0));
  }
  SECTION("incomparable direction is rejected") {
    CHECK_THROWS_AS(transition_map(m, zero, x), domain_error);
  }
}

TEST_CASE("J sets of the 5-element example") {
  Meadow m = fixtures::example2();
  CHECK(tokens(m, compute_J(m, *m.index_of("1"))) == std::vector<std::string>{"0", "x", "a"});
  CHECK(tokens(m, compute_J(m, *m.index_of("0"))) == std::vector<std::string>{"a"});
  CHECK(tokens(m, compute_J(m, *m.index_of("x"))) == std::vector<std::string>{"a"});
  CHECK(tokens(m, compute_J(m, *m.index_of("y"))) == std::vector<std::string>{"x", "a"});
}

TEST_CASE("a mutated table is caught by the exhaustive axiom scan") {
  Meadow m = fixtures::example2();
  m.add(1, 2) = 2;  // 1 + x was y
  premeadow_report rep = check_premeadow(m);
  CHECK_FALSE(rep.ok());
  bool witnessed = false;
  for (const auto& ax : rep.axioms) witnessed = witnessed || (!ax.ok && !ax.witness.empty());
  CHECK(witnessed);
}

TEST_CASE("fibers demand the 0* fixed-point property") {
  Meadow junk;
  junk.name = "junk";
  junk.elems = {"0", "1"};
  junk.zero = 0;
  junk.one = 1;
  junk.add = op_table(2);
  junk.mul = op_table(2);
  junk.neg = {0, 1};
  junk.mul(0, 0) = 1;  // 0*0 = 1 but 0*1 = 0: no fixed point
  junk.mul(0, 1) = 0;
  junk.mul(1, 0) = 0;
  junk.mul(1, 1) = 1;
  CHECK_THROWS_AS(fibers(junk), precondition_error);
}

TEST_CASE("a supplied inverse vector is verified against M1..M4") {
  Meadow m = fixtures::example2();
  SECTION("the stored vector passes") {
    CHECK(check_inverse_axioms(m, *m.inv).ok());
  }
  SECTION("an all-a vector fails M3") {
    std::vector<int> bad(m.size(), *m.index_of("a"));
    CHECK_FALSE(check_inverse_axioms(m, bad).ok());
  }
  SECTION("classification survives a bad supplied vector via synthesis") {
    m.inv = std::vector<int>(m.size(), *m.index_of("a"));
    classification c = classify(m);
    CHECK(c.level == meadow_level::common_meadow);
    CHECK(c.supplied_inv_valid == false);
    CHECK(*c.inv == std::vector<int>{4, 1, 4, 3, 4});
  }
}

TEST_CASE("synthesis succeeds exactly when every J has one dominating maximal node") {
  // independent route: maximal_elements over the zero lattice
  for (const Meadow& m : {fixtures::example2(), meadow_from_diagram(fixtures::ce_pi1pi1()),
                          meadow_from_diagram(fixtures::z4top())}) {
    ZeroLattice lat = zero_monoid(m);
    FiberPartition p = fibers(m);
    bool all_dominating_singletons = true;
    for (int x = 0; x < m.size(); ++x) {
      std::vector<int> jpos;
      for (int z : compute_J(m, x)) jpos.push_back(p.pos(z));
      std::vector<int> mx = maximal_elements(lat, jpos);
      bool ok = mx.size() == 1;
      if (ok)
        for (int j : jpos) ok = ok && lat.leq(j, mx[0]);
      all_dominating_singletons = all_dominating_singletons && ok;
    }
    CHECK(synthesize_inverse(m).inv.has_value() == all_dominating_singletons);
  }
}

TEST_CASE("recovered transition maps compose functorially along chains") {
  Meadow m = fixtures::example2();
  int zero = *m.index_of("0"), x = *m.index_of("x"), a = *m.index_of("a");
  RingHom f_x0 = transition_map(m, x, zero);
  RingHom f_ax = transition_map(m, a, x);
  RingHom f_a0 = transition_map(m, a, zero);
  CHECK(compose(f_ax, f_x0).map == f_a0.map);
}

TEST_CASE("P10 holds as a property over the bundled fixtures") {
  for (const Meadow& m : {fixtures::example1(), fixtures::example2()}) {
    for (int x = 0; x < m.size(); ++x)
      for (int y = 0; y < m.size(); ++y)
        CHECK(m.zero_times(m.add(x, y)) == m.mul(m.zero_times(x), m.zero_times(y)));
  }
}
