#include <catch2/catch_amalgamated.hpp>

#include "meadows/fixtures.hpp"
#include "meadows/io.hpp"
#include "meadows/mr.hpp"

using namespace meadows;

namespace {

int count_lines_with(const std::string& text, const std::string& needle) {
  int n = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.find(needle) != std::string::npos) ++n;
  return n;
}

}  // namespace

TEST_CASE("ring files round trip") {
  for (ring_ptr r : {cyclic_ring(6), finite_field(2, 2),
                     ring_product(*cyclic_ring(2), *cyclic_ring(2))}) {
    std::string text = io::serialize_ring(*r);
    ring_ptr back = io::parse_ring(text);
    CHECK(*back == *r);
    CHECK(io::serialize_ring(*back) == text);
  }
}

TEST_CASE("monoid files round trip") {
  MulMonoid s = fixtures::defect_monoid();
  std::string text = io::serialize_monoid(s);
  MulMonoid back = io::parse_monoid(text);
  CHECK(back.elems == s.elems);
  CHECK(back.mul == s.mul);
  CHECK(back.identity == s.identity);
  CHECK(back.absorber == s.absorber);
  CHECK(io::serialize_monoid(back) == text);
}

TEST_CASE("meadow files round trip, inv included and omitted") {
  Meadow with_inv = fixtures::example2();
  std::string text = io::serialize_meadow(with_inv);
  CHECK(io::parse_meadow(text) == with_inv);
  CHECK(io::serialize_meadow(io::parse_meadow(text)) == text);

  Meadow no_inv = fixtures::example1();
  std::string text2 = io::serialize_meadow(no_inv);
  CHECK(io::parse_meadow(text2) == no_inv);
}

TEST_CASE("diagram files round trip through covering edges") {
  for (const RingDiagram& d : {fixtures::flasque_z2z2(), fixtures::ce_pi1pi1(),
                               fixtures::z4top(), fixtures::gf4_chain3()}) {
    std::string text = io::serialize_diagram(d);
    DiagramInput in = io::parse_diagram_input(text);
    diagram_validation v = validate_diagram(in);
    REQUIRE(v.ok());
    CHECK(v.diagram->lattice == d.lattice);
    for (int i = 0; i < d.size(); ++i) CHECK(*v.diagram->rings[i] == *d.rings[i]);
    for (const auto& [key, hom] : d.homs) CHECK(v.diagram->hom(key.first, key.second) == hom);
    CHECK(io::serialize_diagram(*v.diagram) == text);
    CHECK(meadow_from_diagram(*v.diagram) == meadow_from_diagram(d));
  }
}

TEST_CASE("syntax errors carry their line") {
  SECTION("short table row") {
    std::string text =
        "ring bad\nelements 0 1 2\nzero 0\none 1\nadd\n0 1 2\n1 2\n2 0 1\nmul\n0 0 0\n0 1 2\n0 2 1\n";
    try {
      io::parse_ring(text);
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.line == 7);
    }
  }
  SECTION("unknown element token") {
    std::string text = "ring bad\nelements 0 1\nzero 0\none q\nadd\n0 1\n1 0\nmul\n0 0\n0 1\n";
    CHECK_THROWS_AS(io::parse_ring(text), parse_error);
  }
  SECTION("missing bottom line") {
    std::string text = "diagram d\nnode top ring Z2\n";
    CHECK_THROWS_AS(io::parse_diagram_input(text), parse_error);
  }
  SECTION("unknown kind") {
    CHECK_THROWS_AS(io::detect_kind("widget w\n"), parse_error);
  }
  SECTION("validation failure is a load failure when requested") {
    std::string text = "ring bad\nelements 0 1\nzero 0\none 1\nadd\n0 1\n1 0\nmul\n0 0\n0 0\n";
    CHECK_THROWS_AS(io::parse_ring(text, true), domain_error);
    CHECK(io::parse_ring(text, false)->name == "bad");
  }
}

TEST_CASE("comments and blank lines are ignored") {
  std::string text =
      "# a ring\nring z2 # name\n\nelements 0 1\nzero 0\none 1\nadd\n0 1\n1 0\n# table\nmul\n0 0\n0 1\n";
  ring_ptr r = io::parse_ring(text);
  CHECK(r->name == "z2");
  CHECK(r->add == cyclic_ring(2)->add);
  CHECK(r->mul == cyclic_ring(2)->mul);
}

TEST_CASE("builtin ring names") {
  CHECK(io::builtin_ring("Z6")->size() == 6);
  CHECK(io::builtin_ring("GF4")->size() == 4);
  CHECK(io::builtin_ring("Z2xZ3")->size() == 6);
  CHECK(io::builtin_ring("Z2xZ2xZ2")->size() == 8);
  CHECK(io::builtin_ring("Q7") == nullptr);
  CHECK(io::builtin_ring("GF6") == nullptr);  // stoi ok but not a prime power
}

TEST_CASE("diagram files resolve builtin and workspace ring names") {
  std::string text =
      "diagram d\nnode top ring Z2\nbottom a\n";
  DiagramInput in = io::parse_diagram_input(text);
  CHECK(in.rings[0]->name == "Z2");

  io::Workspace ws;
  FiniteRing mine = *cyclic_ring(2);
  mine.name = "mine";
  ws.add_ring(make_ring(mine), "here");
  std::string text2 = "diagram d\nnode top ring mine\nbottom a\n";
  DiagramInput in2 = io::parse_diagram_input(text2, &ws);
  CHECK(in2.rings[0]->name == "mine");
  CHECK(ws.source_of("ring:mine") == std::optional<std::string>("here"));
  CHECK_THROWS_AS(ws.add_ring(make_ring(mine)), domain_error);
}

TEST_CASE("DOT output shapes") {
  SECTION("M(Z6) renders the diamond: 4 nodes, 4 edges") {
    std::string dot = io::emit_dot(build_MR(cyclic_ring(6)).diagram);
    CHECK(count_lines_with(dot, "[label=") == 4);
    CHECK(count_lines_with(dot, " -> ") == 4);
    CHECK(dot.find("\"(0)\" [label=\"(0): Z6/(0) (n=6)\"]") != std::string::npos);
    // byte stability
    CHECK(io::emit_dot(build_MR(cyclic_ring(6)).diagram) == dot);
  }
  SECTION("a single ring over the 2-chain renders 2 nodes, 1 edge") {
    DiagramInput in;
    in.name = "chain";
    in.node_ids = {"top", "a"};
    in.rings = {cyclic_ring(2), nullptr};
    in.bottom = 1;
    std::string dot = io::emit_dot(*validate_diagram(in).diagram);
    CHECK(count_lines_with(dot, "[label=") == 2);
    CHECK(count_lines_with(dot, " -> ") == 1);
  }
  SECTION("M(Z2xZ3xZ5) renders the cube: 8 nodes, 12 edges") {
    ring_ptr z30 =
        ring_product(*ring_product(*cyclic_ring(2), *cyclic_ring(3)), *cyclic_ring(5));
    std::string dot = io::emit_dot(build_MR(z30).diagram);
    CHECK(count_lines_with(dot, "[label=") == 8);
    CHECK(count_lines_with(dot, " -> ") == 12);
  }
  SECTION("meadow DOT uses fiber names and sizes") {
    std::string dot = io::emit_dot(fixtures::example2());
    CHECK(count_lines_with(dot, "[label=") == 3);
    CHECK(count_lines_with(dot, " -> ") == 2);
    CHECK(dot.find("P_x (n=2)") != std::string::npos);
  }
  SECTION("top is rendered first") {
    std::string dot = io::emit_dot(fixtures::example2());
    CHECK(dot.find("\"0\"") < dot.find("\"x\""));
  }
}

TEST_CASE("fixture files are written and load back") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "meadow-fixture-io-test";
  fs::remove_all(dir);
  std::vector<std::string> files = fixtures::write_all(dir);
  CHECK(files.size() >= 15);
  for (const std::string& f : files) CHECK(fs::exists(dir / f));

  // the diagram with @file ring references parses relative to its dir
  std::string text = io::read_file(dir / "mr-z6.diagram");
  DiagramInput in = io::parse_diagram_input(text, nullptr, dir);
  diagram_validation v = validate_diagram(in);
  REQUIRE(v.ok());
  CHECK(meadow_from_diagram(*v.diagram).size() == 12);

  Meadow m = io::parse_meadow(io::read_file(dir / "mr-z6.meadow"));
  CHECK(m.size() == 12);
  fs::remove_all(dir);
}
