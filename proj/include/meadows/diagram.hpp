#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meadows/core.hpp"
#include "meadows/lattice.hpp"
#include "meadows/meadow.hpp"
#include "meadows/ring.hpp"

namespace meadows {

/// One downward edge of a diagram with its element map. The map may be
/// left empty when the target is the bottom node (the hom into the
/// trivial ring is unique).
struct DiagramEdge {
  int hi = -1;
  int lo = -1;
  std::vector<int> map;
};

/// Raw material for a directed lattice of rings, before validation.
/// The bottom node's ring may be null; the trivial ring is implied.
struct DiagramInput {
  std::string name;
  std::vector<std::string> node_ids;
  std::vector<ring_ptr> rings;
  int bottom = -1;
  std::vector<DiagramEdge> edges;
};

/// A validated directed lattice of rings. Homs are stored for every
/// comparable pair (upper, lower), identity included.
struct RingDiagram {
  std::string name;
  ZeroLattice lattice;  // node ids as tokens; zero = top, a = bottom
  std::vector<ring_ptr> rings;
  std::map<std::pair<int, int>, RingHom> homs;

  int size() const { return lattice.size(); }
  int top() const { return lattice.zero; }
  int bottom() const { return lattice.a; }
  const RingHom& hom(int upper, int lower) const { return homs.at({upper, lower}); }
};

struct diagram_validation {
  validation_report report;
  std::optional<RingDiagram> diagram;

  bool ok() const { return report.ok(); }
};

/// Checks shape (unique bottom-bounded lattice order, trivial bottom
/// ring), validates every node ring and edge hom, synthesizes the homs of
/// all comparable pairs from the given edges, and enforces
/// path-independence of composition.
inline diagram_validation validate_diagram(const DiagramInput& in) {
  diagram_validation out;
  validation_report& rep = out.report;
  const int n = static_cast<int>(in.node_ids.size());
  if (n == 0) {
    rep.fail("structure", {"no nodes"});
    return out;
  }
  if (in.bottom < 0 || in.bottom >= n) {
    rep.fail("structure", {"missing bottom node"});
    return out;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (in.node_ids[i] == in.node_ids[j]) {
        rep.fail("structure", {"duplicate node id " + in.node_ids[i]});
        return out;
      }
  for (const DiagramEdge& e : in.edges) {
    if (e.hi < 0 || e.hi >= n || e.lo < 0 || e.lo >= n) {
      rep.fail("structure", {"edge endpoint out of range"});
      return out;
    }
    if (e.hi == e.lo) {
      rep.fail("structure", {"self edge at " + in.node_ids[e.hi]});
      return out;
    }
  }

  // order: lo <= hi along edges, transitively; bottom below everything
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (const DiagramEdge& e : in.edges) leq[e.lo][e.hi] = true;
  for (int i = 0; i < n; ++i) leq[in.bottom][i] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq[i][j] && leq[j][i]) {
        rep.fail("structure", {"order has a cycle through " + in.node_ids[i]});
        return out;
      }
  int top = -1;
  for (int t = 0; t < n; ++t) {
    bool is_top = true;
    for (int i = 0; i < n; ++i) is_top = is_top && leq[i][t];
    if (is_top) {
      top = t;
      break;  // unique if any: two tops would be mutually <=
    }
  }
  if (top < 0) {
    rep.fail("structure", {"no unique top node"});
    return out;
  }

  // all pairwise meets must exist
  op_table meet(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> lower;
      for (int k = 0; k < n; ++k)
        if (leq[k][i] && leq[k][j]) lower.push_back(k);
      int glb = -1;
      for (int cand : lower) {
        bool dominates = true;
        for (int k : lower) dominates = dominates && leq[k][cand];
        if (dominates) {
          glb = cand;
          break;
        }
      }
      if (glb < 0) {
        rep.fail("structure",
                 {"nodes " + in.node_ids[i] + ", " + in.node_ids[j] + " have no meet"});
        return out;
      }
      meet(i, j) = glb;
    }

  ZeroLattice lattice;
  try {
    lattice = from_mul_table(in.node_ids, meet, top, in.bottom, in.name);
  } catch (const domain_error& e) {
    rep.fail("structure", {e.what()});
    return out;
  }

  // rings: bottom trivial (implied when absent), everything valid, and
  // only the bottom may be trivial (otherwise the meadow would acquire a
  // second singleton fiber)
  std::vector<ring_ptr> rings(in.rings);
  rings.resize(n);
  if (!rings[in.bottom]) rings[in.bottom] = trivial_ring();
  if (rings[in.bottom]->size() != 1) {
    rep.fail("structure", {"bottom ring " + rings[in.bottom]->name + " is not trivial"});
    return out;
  }
  for (int i = 0; i < n; ++i) {
    if (!rings[i]) {
      rep.fail("structure", {"node " + in.node_ids[i] + " has no ring"});
      return out;
    }
    if (i != in.bottom && rings[i]->size() == 1) {
      rep.fail("structure", {"non-bottom node " + in.node_ids[i] + " carries a trivial ring"});
      return out;
    }
    if (auto r = check_ring_axioms(*rings[i]); !r.ok()) {
      rep.fail("ring " + in.node_ids[i], {r.summary()});
      return out;
    }
  }

  // given edge homs
  std::map<std::pair<int, int>, RingHom> given;
  for (const DiagramEdge& e : in.edges) {
    std::pair<int, int> key{e.hi, e.lo};
    if (given.count(key)) {
      rep.fail("structure",
               {"duplicate edge " + in.node_ids[e.hi] + " -> " + in.node_ids[e.lo]});
      return out;
    }
    RingHom h{rings[e.hi], rings[e.lo], e.map};
    if (e.map.empty()) {
      if (e.lo != in.bottom) {
        rep.fail("structure", {"edge " + in.node_ids[e.hi] + " -> " + in.node_ids[e.lo] +
                               " has no map"});
        return out;
      }
      h.map.assign(rings[e.hi]->size(), 0);
    }
    try {
      if (auto r = check_hom(h); !r.ok()) {
        rep.fail("edge " + in.node_ids[e.hi] + " -> " + in.node_ids[e.lo], {r.summary()});
        return out;
      }
    } catch (const format_error& fe) {
      rep.fail("edge " + in.node_ids[e.hi] + " -> " + in.node_ids[e.lo], {fe.what()});
      return out;
    }
    given.emplace(key, std::move(h));
  }

  // resolve every comparable pair, smallest intervals first, checking
  // that all ways of composing along the diagram agree
  std::map<std::pair<int, int>, RingHom> homs;
  for (int i = 0; i < n; ++i) homs.emplace(std::pair{i, i}, identity_hom(rings[i]));

  std::vector<std::pair<int, int>> pairs;
  for (int w = 0; w < n; ++w)
    for (int z = 0; z < n; ++z)
      if (z != w && leq[z][w]) pairs.emplace_back(w, z);
  auto interval = [&](const std::pair<int, int>& p) {
    int c = 0;
    for (int m = 0; m < n; ++m)
      if (leq[p.second][m] && leq[m][p.first]) ++c;
    return c;
  };
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const auto& a, const auto& b) { return interval(a) < interval(b); });

  for (auto [w, z] : pairs) {
    std::vector<std::pair<std::string, RingHom>> cands;
    if (auto it = given.find({w, z}); it != given.end())
      cands.emplace_back("edge " + in.node_ids[w] + " -> " + in.node_ids[z], it->second);
    for (int m = 0; m < n; ++m) {
      if (m == w || m == z || !leq[z][m] || !leq[m][w]) continue;
      cands.emplace_back("path via " + in.node_ids[m],
                         compose(homs.at({m, z}), homs.at({w, m})));
    }
    if (z == in.bottom && cands.empty())
      cands.emplace_back("implied", RingHom{rings[w], rings[z],
                                            std::vector<int>(rings[w]->size(), 0)});
    if (cands.empty()) {
      rep.fail("structure", {"comparable pair " + in.node_ids[w] + " >= " + in.node_ids[z] +
                             " has no map"});
      return out;
    }
    for (std::size_t k = 1; k < cands.size(); ++k) {
      if (cands[k].second.map != cands[0].second.map) {
        int x = 0;
        while (cands[k].second.map[x] == cands[0].second.map[x]) ++x;
        rep.fail("functoriality",
                 {in.node_ids[w] + " -> " + in.node_ids[z], cands[0].first, cands[k].first,
                  "disagree at " + rings[w]->token(x)});
        return out;
      }
    }
    homs.emplace(std::pair{w, z}, std::move(cands[0].second));
  }

  out.diagram = RingDiagram{in.name, std::move(lattice), std::move(rings), std::move(homs)};
  return out;
}

/// Carrier index -> (node, ring element) in the layout used by
/// meadow_from_diagram.
inline std::vector<std::pair<int, int>> carrier_layout(const RingDiagram& d) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < d.size(); ++i)
    for (int e = 0; e < d.rings[i]->size(); ++e) out.emplace_back(i, e);
  return out;
}

/// The meadow of a validated diagram: carrier is the disjoint union of
/// the node rings, and both operations push their operands to the meet
/// node. Carrier tokens are "<node>.<elem>"; the bottom contributes the
/// single element "<node>".
inline Meadow meadow_from_diagram(const RingDiagram& d, std::size_t cap = limits{}.meadow_cap) {
  const int n = d.size();
  std::size_t total = 0;
  for (int i = 0; i < n; ++i) total += static_cast<std::size_t>(d.rings[i]->size());
  if (total > cap) throw size_error("diagram carrier exceeds cap");

  Meadow m;
  m.name = d.name;
  std::vector<int> base(n, 0);  // carrier offset of each node block
  for (int i = 0; i < n; ++i) {
    base[i] = static_cast<int>(m.elems.size());
    const FiniteRing& r = *d.rings[i];
    for (int e = 0; e < r.size(); ++e)
      m.elems.push_back(i == d.bottom() ? d.lattice.token(i)
                                        : d.lattice.token(i) + "." + r.token(e));
  }
  const int size = static_cast<int>(m.elems.size());
  std::vector<int> node_of(size), elem_of(size);
  for (int i = 0; i < n; ++i)
    for (int e = 0; e < d.rings[i]->size(); ++e) {
      node_of[base[i] + e] = i;
      elem_of[base[i] + e] = e;
    }

  m.zero = base[d.top()] + d.rings[d.top()]->zero;
  m.one = base[d.top()] + d.rings[d.top()]->one;
  m.add = op_table(size);
  m.mul = op_table(size);
  m.neg.resize(size);
  for (int x = 0; x < size; ++x) {
    int i = node_of[x];
    m.neg[x] = base[i] + d.rings[i]->neg(elem_of[x]);
    for (int y = 0; y < size; ++y) {
      int j = node_of[y];
      int k = d.lattice.meet(i, j);
      int xe = d.hom(i, k)(elem_of[x]);
      int ye = d.hom(j, k)(elem_of[y]);
      m.add(x, y) = base[k] + d.rings[k]->add(xe, ye);
      m.mul(x, y) = base[k] + d.rings[k]->mul(xe, ye);
    }
  }
  return m;
}

}  // namespace meadows
