#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "meadows/diagram.hpp"
#include "meadows/io.hpp"
#include "meadows/lattice.hpp"
#include "meadows/meadow.hpp"
#include "meadows/mr.hpp"
#include "meadows/ring.hpp"

namespace meadows::fixtures {

namespace detail {

inline op_table table_from(const std::vector<std::string>& elems,
                           const std::vector<std::vector<std::string>>& rows) {
  const int n = static_cast<int>(elems.size());
  op_table t(n);
  auto idx = [&](const std::string& tok) {
    for (int i = 0; i < n; ++i)
      if (elems[i] == tok) return i;
    throw error("fixture table uses unknown token " + tok);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = idx(rows[i][j]);
  return t;
}

inline std::vector<int> row_from(const std::vector<std::string>& elems,
                                 const std::vector<std::string>& row) {
  std::vector<int> out;
  for (const auto& tok : row) {
    bool found = false;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == tok) {
        out.push_back(static_cast<int>(i));
        found = true;
        break;
      }
    if (!found) throw error("fixture row uses unknown token " + tok);
  }
  return out;
}

inline RingDiagram build(const DiagramInput& in) {
  diagram_validation v = validate_diagram(in);
  if (!v.ok()) throw error("fixture diagram " + in.name + " invalid: " + v.report.summary());
  return std::move(*v.diagram);
}

template <typename F>
std::vector<int> map_by_token(const FiniteRing& src, const FiniteRing& dst, F f) {
  std::vector<int> m;
  for (int i = 0; i < src.size(); ++i) {
    auto d = dst.index_of(f(src.token(i)));
    if (!d) throw error("fixture map target missing for " + src.token(i));
    m.push_back(*d);
  }
  return m;
}

// "(a,b,c)" -> component at idx; tuples produced by ring_product are flat
inline std::string tuple_part(const std::string& tok, int idx) {
  std::string inner = tok.substr(1, tok.size() - 2);
  std::vector<std::string> parts;
  std::string cur;
  for (char c : inner) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts[idx];
}

}  // namespace detail

/// The 4-element pre-meadow with two singleton fibers (P_x and P_a), so
/// not a pre-meadow with a.
inline Meadow example1() {
  Meadow m;
  m.name = "example1";
  m.elems = {"0", "1", "x", "a"};
  m.zero = 0;
  m.one = 1;
  m.add = detail::table_from(m.elems, {{"0", "1", "x", "a"},
                                       {"1", "0", "x", "a"},
                                       {"x", "x", "x", "a"},
                                       {"a", "a", "a", "a"}});
  m.neg = detail::row_from(m.elems, {"0", "1", "x", "a"});
  m.mul = detail::table_from(m.elems, {{"0", "0", "x", "a"},
                                       {"0", "1", "x", "a"},
                                       {"x", "x", "x", "a"},
                                       {"a", "a", "a", "a"}});
  return m;
}

/// The 5-element common meadow with fibers {0,1}, {x,y}, {a} and inverses
/// 1->1, y->y, 0,x,a->a.
inline Meadow example2() {
  Meadow m;
  m.name = "example2";
  m.elems = {"0", "1", "x", "y", "a"};
  m.zero = 0;
  m.one = 1;
  m.add = detail::table_from(m.elems, {{"0", "1", "x", "y", "a"},
                                       {"1", "0", "y", "x", "a"},
                                       {"x", "y", "x", "y", "a"},
                                       {"y", "x", "y", "x", "a"},
                                       {"a", "a", "a", "a", "a"}});
  m.neg = detail::row_from(m.elems, {"0", "1", "x", "y", "a"});
  m.mul = detail::table_from(m.elems, {{"0", "0", "x", "x", "a"},
                                       {"0", "1", "x", "y", "a"},
                                       {"x", "x", "x", "x", "a"},
                                       {"x", "y", "x", "y", "a"},
                                       {"a", "a", "a", "a", "a"}});
  m.inv = detail::row_from(m.elems, {"a", "1", "a", "y", "a"});
  return m;
}

/// Z2xZ2 over the 4-chain-with-split lattice: identity down to the mid
/// node, then the two coordinate projections. A flasque common meadow.
inline RingDiagram flasque_z2z2() {
  ring_ptr z22 = ring_product(*cyclic_ring(2), *cyclic_ring(2));
  ring_ptr z2 = cyclic_ring(2);
  DiagramInput in;
  in.name = "flasque-z2z2";
  in.node_ids = {"top", "mid", "l", "r", "a"};
  in.rings = {z22, z22, z2, z2, nullptr};
  in.bottom = 4;
  auto id = [](const std::string& t) { return t; };
  auto pi = [](int c) {
    return [c](const std::string& t) { return detail::tuple_part(t, c); };
  };
  in.edges = {{0, 1, detail::map_by_token(*z22, *z22, id)},
              {1, 2, detail::map_by_token(*z22, *z2, pi(0))},
              {1, 3, detail::map_by_token(*z22, *z2, pi(1))}};
  return detail::build(in);
}

/// Same shape but both lower maps are the first projection. Flasque, yet
/// not a common meadow: J_(1,0) has two maximal nodes.
inline RingDiagram ce_pi1pi1() {
  ring_ptr z22 = ring_product(*cyclic_ring(2), *cyclic_ring(2));
  ring_ptr z2 = cyclic_ring(2);
  DiagramInput in;
  in.name = "ce-pi1pi1";
  in.node_ids = {"top", "mid", "l", "r", "a"};
  in.rings = {z22, z22, z2, z2, nullptr};
  in.bottom = 4;
  auto id = [](const std::string& t) { return t; };
  auto pi0 = [](const std::string& t) { return detail::tuple_part(t, 0); };
  in.edges = {{0, 1, detail::map_by_token(*z22, *z22, id)},
              {1, 2, detail::map_by_token(*z22, *z2, pi0)},
              {1, 3, detail::map_by_token(*z22, *z2, pi0)}};
  return detail::build(in);
}

/// Z2 on top of Z2xZ2 via the diagonal, then the first projection twice.
/// Not flasque; every x in P_0 has a greatest J-node but (1,0) below does
/// not, so the P_0-only scan would be unsound here.
inline RingDiagram ce_z2top() {
  ring_ptr z22 = ring_product(*cyclic_ring(2), *cyclic_ring(2));
  ring_ptr z2 = cyclic_ring(2);
  DiagramInput in;
  in.name = "ce-z2top";
  in.node_ids = {"top", "mid", "l", "r", "a"};
  in.rings = {z2, z22, z2, z2, nullptr};
  in.bottom = 4;
  auto diag = [](const std::string& t) { return "(" + t + "," + t + ")"; };
  auto pi0 = [](const std::string& t) { return detail::tuple_part(t, 0); };
  in.edges = {{0, 1, detail::map_by_token(*z2, *z22, diag)},
              {1, 2, detail::map_by_token(*z22, *z2, pi0)},
              {1, 3, detail::map_by_token(*z22, *z2, pi0)}};
  return detail::build(in);
}

/// Finite analog of the non-flasque example: Z4 on top, the mod-2
/// diagonal into Z2xZ2, then the two projections. The diagonal misses
/// (1,0), so the meadow is not flasque; its closure has 11 elements.
inline RingDiagram z4top() {
  ring_ptr z4 = cyclic_ring(4);
  ring_ptr z22 = ring_product(*cyclic_ring(2), *cyclic_ring(2));
  ring_ptr z2 = cyclic_ring(2);
  DiagramInput in;
  in.name = "z4top";
  in.node_ids = {"top", "mid", "l", "r", "a"};
  in.rings = {z4, z22, z2, z2, nullptr};
  in.bottom = 4;
  auto diag = [](const std::string& t) {
    std::string b = std::to_string(std::stoi(t) % 2);
    return "(" + b + "," + b + ")";
  };
  auto pi = [](int c) {
    return [c](const std::string& t) { return detail::tuple_part(t, c); };
  };
  in.edges = {{0, 1, detail::map_by_token(*z4, *z22, diag)},
              {1, 2, detail::map_by_token(*z22, *z2, pi(0))},
              {1, 3, detail::map_by_token(*z22, *z2, pi(1))}};
  return detail::build(in);
}

/// GF(4) copied along a 3-chain with identity transition maps; already in
/// product form, so the decomposition isomorphism must succeed.
inline RingDiagram gf4_chain3() {
  ring_ptr gf4 = finite_field(2, 2);
  DiagramInput in;
  in.name = "gf4-chain3";
  in.node_ids = {"top", "mid", "a"};
  in.rings = {gf4, gf4, nullptr};
  in.bottom = 2;
  auto id = [](const std::string& t) { return t; };
  in.edges = {{0, 1, detail::map_by_token(*gf4, *gf4, id)}};
  return detail::build(in);
}

/// S = {0, x, y, a} with x*y = a: the diamond.
inline MulMonoid diamond_monoid() {
  MulMonoid s;
  s.name = "diamond";
  s.elems = {"0", "x", "y", "a"};
  s.identity = 0;
  s.absorber = 3;
  s.mul = detail::table_from(s.elems, {{"0", "x", "y", "a"},
                                       {"x", "x", "a", "a"},
                                       {"y", "a", "y", "a"},
                                       {"a", "a", "a", "a"}});
  return s;
}

/// The k-element chain 0 > m1 > ... > a as an idempotent monoid.
inline MulMonoid chain_monoid(int k) {
  if (k < 2) throw domain_error("chain monoid needs at least two elements");
  MulMonoid s;
  s.name = "chain" + std::to_string(k);
  s.elems.push_back("0");
  for (int i = 1; i + 1 < k; ++i) s.elems.push_back("m" + std::to_string(i));
  s.elems.push_back("a");
  s.identity = 0;
  s.absorber = k - 1;
  s.mul = op_table(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) s.mul(i, j) = std::max(i, j);
  return s;
}

/// S = {0, s, a} with s*s = a: commutative, associative, not idempotent.
inline MulMonoid defect_monoid() {
  MulMonoid s;
  s.name = "defect3";
  s.elems = {"0", "s", "a"};
  s.identity = 0;
  s.absorber = 2;
  s.mul = detail::table_from(s.elems, {{"0", "s", "a"},
                                       {"s", "a", "a"},
                                       {"a", "a", "a"}});
  return s;
}

/// The rings exercised throughout the test and acceptance suites.
inline std::vector<ring_ptr> fixture_rings() {
  ring_ptr z2 = cyclic_ring(2);
  ring_ptr z22 = ring_product(*z2, *z2);
  return {z2,
          cyclic_ring(3),
          cyclic_ring(4),
          cyclic_ring(6),
          z22,
          ring_product(*z22, *z2),
          ring_product(*ring_product(*z22, *z2), *z2),
          ring_product(*z2, *cyclic_ring(3))};
}

/// Materializes every fixture as files under dir; returns the paths
/// written (relative to dir).
inline std::vector<std::string> write_all(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& text) {
    io::write_file(dir / name, text);
    written.push_back(name);
  };

  put("example1.meadow", io::serialize_meadow(example1()));
  put("example2.meadow", io::serialize_meadow(example2()));
  put("flasque-z2z2.diagram", io::serialize_diagram(flasque_z2z2()));
  put("ce-pi1pi1.diagram", io::serialize_diagram(ce_pi1pi1()));
  put("ce-z2top.diagram", io::serialize_diagram(ce_z2top()));
  put("z4top.diagram", io::serialize_diagram(z4top()));
  put("gf4-chain3.diagram", io::serialize_diagram(gf4_chain3()));
  put("diamond.monoid", io::serialize_monoid(diamond_monoid()));
  put("chain3.monoid", io::serialize_monoid(chain_monoid(3)));
  put("defect.monoid", io::serialize_monoid(defect_monoid()));

  put("z2.ring", io::serialize_ring(*cyclic_ring(2)));
  put("z3.ring", io::serialize_ring(*cyclic_ring(3)));
  put("z4.ring", io::serialize_ring(*cyclic_ring(4)));
  put("z6.ring", io::serialize_ring(*cyclic_ring(6)));
  put("gf4.ring", io::serialize_ring(*finite_field(2, 2)));
  put("z2xz2.ring", io::serialize_ring(*ring_product(*cyclic_ring(2), *cyclic_ring(2))));
  put("z2xz3.ring", io::serialize_ring(*ring_product(*cyclic_ring(2), *cyclic_ring(3))));
  put("z2xz3xz5.ring",
      io::serialize_ring(*ring_product(*ring_product(*cyclic_ring(2), *cyclic_ring(3)),
                                       *cyclic_ring(5))));

  MRDiagram mr = build_MR(cyclic_ring(6));
  for (int i = 0; i < mr.diagram.size(); ++i) {
    if (i == mr.diagram.bottom()) continue;
    put("mr-z6.n" + std::to_string(i) + ".ring", io::serialize_ring(*mr.diagram.rings[i]));
  }
  put("mr-z6.diagram", io::serialize_diagram(mr.diagram, [&](int i) {
        return "@mr-z6.n" + std::to_string(i) + ".ring";
      }));
  put("mr-z6.meadow", io::serialize_meadow(meadow_from_diagram(mr.diagram)));
  put("mr-z6.dot", io::emit_dot(mr.diagram));
  return written;
}

}  // namespace meadows::fixtures
