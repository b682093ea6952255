#include <catch2/catch_amalgamated.hpp>

#include "meadows/fixtures.hpp"
#include "meadows/mr.hpp"
#include "support/oracles.hpp"

using namespace meadows;

TEST_CASE("M(Z2) has two nodes") {
  MRDiagram mr = build_MR(cyclic_ring(2));
  REQUIRE(mr.diagram.size() == 2);
  CHECK(mr.diagram.lattice.token(mr.diagram.top()) == "(0)");
  CHECK(mr.diagram.lattice.token(mr.diagram.bottom()) == "a");
  CHECK(meadow_from_diagram(mr.diagram).size() == 3);
}

TEST_CASE("M(Z6) is the diamond with quotient sizes 6,3,2,1") {
  MRDiagram mr = build_MR(cyclic_ring(6));
  REQUIRE(mr.diagram.size() == 4);
  std::vector<int> sizes;
  for (const ring_ptr& r : mr.diagram.rings) sizes.push_back(r->size());
  CHECK(sizes == std::vector<int>{6, 3, 2, 1});

  CHECK(mr.diagram.lattice.token(0) == "(0)");
  CHECK(mr.diagram.lattice.token(1) == "(3)");
  CHECK(mr.diagram.lattice.token(2) == "(2)");
  CHECK(mr.diagram.lattice.token(3) == "a");
  CHECK_FALSE(mr.diagram.lattice.leq(1, 2));
  CHECK_FALSE(mr.diagram.lattice.leq(2, 1));

  CHECK(oracles::ring_isomorphic(*mr.diagram.rings[1], *cyclic_ring(3)));
  CHECK(oracles::ring_isomorphic(*mr.diagram.rings[2], *cyclic_ring(2)));

  Meadow m = meadow_from_diagram(mr.diagram);
  CHECK(m.size() == 6 + 3 + 2 + 1);
}

TEST_CASE("the zero lattice of M(R) mirrors reverse ideal inclusion") {
  for (const ring_ptr& r : {cyclic_ring(6), cyclic_ring(4),
                            ring_product(*cyclic_ring(2), *cyclic_ring(2))}) {
    MRDiagram mr = build_MR(r);
    const ZeroLattice& lat = mr.diagram.lattice;
    for (int i = 0; i < lat.size(); ++i)
      for (int j = 0; j < lat.size(); ++j)
        CHECK(lat.leq(j, i) == mr.ideals[i].subset_of(mr.ideals[j]));
  }
}

TEST_CASE("fibers of M(Z6) by size") {
  Meadow m = meadow_from_diagram(build_MR(cyclic_ring(6)).diagram);
  FiberPartition p = fibers(m);
  std::vector<std::size_t> sizes;
  for (const auto& f : p.members) sizes.push_back(f.size());
  CHECK(sizes == std::vector<std::size_t>{6, 3, 2, 1});
}

TEST_CASE("greatest J over the ideal lattice") {
  ring_ptr z2 = cyclic_ring(2);
  ring_ptr z8 = ring_product(*ring_product(*z2, *z2), *z2);  // Z2^3

  SECTION("x = (1,0,1) inverts first at the ideal generated by (0,1,0)") {
    int x = *z8->index_of("(1,0,1)");
    greatest_J_result g = greatest_J_in_MR(z8, x);
    REQUIRE(g.ideal.has_value());
    CHECK(g.ideal->members == principal_ideal(z8, *z8->index_of("(0,1,0)")).members);
  }
  SECTION("a unit inverts at the zero ideal") {
    int x = *z8->index_of("(1,1,1)");
    greatest_J_result g = greatest_J_in_MR(z8, x);
    REQUIRE(g.ideal.has_value());
    CHECK(g.ideal->members == std::vector<int>{z8->zero});
  }
  SECTION("zero inverts only in the trivial quotient") {
    greatest_J_result g = greatest_J_in_MR(z8, z8->zero);
    REQUIRE(g.ideal.has_value());
    CHECK(g.ideal->size() == z8->size());
  }
}

TEST_CASE("verify_MR_common on the fixture rings") {
  for (const ring_ptr& r : fixtures::fixture_rings()) {
    INFO(r->name);
    MRCommonReport rep = verify_MR_common(r);
    INFO(rep.detail);
    CHECK(rep.common);
  }
}

TEST_CASE("M(Z4) is a chain, hence common") {
  MRDiagram mr = build_MR(cyclic_ring(4));
  REQUIRE(mr.diagram.size() == 3);
  // (0) < (2) < Z4 by inclusion: a chain has all meets along it
  CHECK(mr.diagram.lattice.leq(1, 0));
  CHECK(mr.diagram.lattice.leq(2, 1));
  CHECK(verify_MR_common(cyclic_ring(4)).common);
}

TEST_CASE("carrier size of M(R) is the sum of quotient sizes") {
  for (const ring_ptr& r : fixtures::fixture_rings()) {
    MRDiagram mr = build_MR(r);
    std::size_t expect = 0;
    for (const Ideal& i : mr.ideals) expect += r->size() / i.size();
    CHECK(meadow_from_diagram(mr.diagram).size() == static_cast<int>(expect));
  }
}

TEST_CASE("caps are enforced") {
  limits tight;
  tight.ideal_cap = 2;
  CHECK_THROWS_AS(build_MR(cyclic_ring(6), tight), size_error);
  limits small;
  small.meadow_cap = 4;
  CHECK_THROWS_AS(build_MR(cyclic_ring(6), small), size_error);
}
