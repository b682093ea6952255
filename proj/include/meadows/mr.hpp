#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meadows/core.hpp"
#include "meadows/diagram.hpp"
#include "meadows/flasque.hpp"
#include "meadows/meadow.hpp"
#include "meadows/ring.hpp"

namespace meadows {

/// The directed lattice of M(R): one node per ideal of R ordered by
/// reverse inclusion ((0) on top, R at the bottom as the trivial
/// quotient), rings R/I, homs the canonical projections.
struct MRDiagram {
  RingDiagram diagram;
  ring_ptr base;
  std::vector<Ideal> ideals;  // aligned with diagram nodes
};

inline MRDiagram build_MR(const ring_ptr& r, const limits& caps = {}) {
  if (static_cast<std::size_t>(r->size()) > caps.ring_cap)
    throw size_error("ring exceeds carrier cap");
  std::vector<Ideal> ideals = enumerate_ideals(r);
  if (ideals.size() > caps.ideal_cap) throw size_error("ideal count exceeds cap");

  const int n = static_cast<int>(ideals.size());
  std::size_t carrier = 0;
  for (const Ideal& i : ideals) carrier += static_cast<std::size_t>(r->size() / i.size());
  if (carrier > caps.meadow_cap) throw size_error("M(R) carrier exceeds cap");

  DiagramInput in;
  in.name = "M(" + r->name + ")";
  std::vector<RingHom> projections;
  for (int i = 0; i < n; ++i) {
    bool full = ideals[i].size() == r->size();
    in.node_ids.push_back(full ? "a" : ideal_token(ideals[i]));
    QuotientResult q = quotient(r, ideals[i]);
    in.rings.push_back(q.ring);
    projections.push_back(std::move(q.projection));
    if (full) in.bottom = i;
  }

  // covering edges of reverse inclusion: hi's ideal contained in lo's,
  // nothing strictly between
  for (int hi = 0; hi < n; ++hi)
    for (int lo = 0; lo < n; ++lo) {
      if (hi == lo || !ideals[hi].subset_of(ideals[lo]) ) continue;
      if (ideals[hi].size() == ideals[lo].size()) continue;
      bool covering = true;
      for (int m = 0; m < n && covering; ++m)
        if (m != hi && m != lo && ideals[hi].subset_of(ideals[m]) &&
            ideals[m].subset_of(ideals[lo]) && ideals[m].size() != ideals[hi].size() &&
            ideals[m].size() != ideals[lo].size())
          covering = false;
      if (!covering) continue;
      DiagramEdge e{hi, lo, {}};
      const FiniteRing& src = *in.rings[hi];
      for (int x = 0; x < src.size(); ++x) {
        int rep = *r->index_of(src.token(x));  // quotient tokens are R tokens
        e.map.push_back(projections[lo](rep));
      }
      in.edges.push_back(std::move(e));
    }

  diagram_validation v = validate_diagram(in);
  if (!v.ok()) throw error("internal: M(" + r->name + ") failed validation: " + v.report.summary());
  return MRDiagram{std::move(*v.diagram), r, std::move(ideals)};
}

struct greatest_J_result {
  std::optional<Ideal> ideal;        // the inclusion-smallest I with x+I a unit
  std::vector<Ideal> maximal_nodes;  // inclusion-minimal members of J_x when absent
};

/// Direct scan of the ideal lattice for the greatest element of J_x,
/// i.e. the smallest ideal I such that x + I is invertible in R/I.
inline greatest_J_result greatest_J_in_MR(const ring_ptr& r, int x) {
  if (x < 0 || x >= r->size()) throw domain_error("element index out of range");
  std::vector<Ideal> in_J;
  for (const Ideal& i : enumerate_ideals(r)) {
    QuotientResult q = quotient(r, i);
    if (is_unit(*q.ring, q.projection(x))) in_J.push_back(i);
  }
  std::vector<Ideal> minimal;
  for (const Ideal& i : in_J) {
    bool has_smaller = false;
    for (const Ideal& j : in_J)
      if (!(j == i) && j.subset_of(i)) has_smaller = true;
    if (!has_smaller) minimal.push_back(i);
  }
  greatest_J_result out;
  if (minimal.size() == 1) {
    bool dominates = true;
    for (const Ideal& j : in_J) dominates = dominates && minimal[0].subset_of(j);
    if (dominates) {
      out.ideal = minimal[0];
      return out;
    }
  }
  out.maximal_nodes = std::move(minimal);
  return out;
}

struct MRCommonReport {
  bool common = false;
  std::string detail;
};

/// True iff inverse synthesis succeeds on the meadow of build_MR(R).
/// The greatest-J scan over the ideal lattice is cross-checked against
/// compute_J for every carrier element.
inline MRCommonReport verify_MR_common(const ring_ptr& r, const limits& caps = {}) {
  MRDiagram mr = build_MR(r, caps);
  Meadow m = meadow_from_diagram(mr.diagram, caps.meadow_cap);
  inverse_synthesis synth = synthesize_inverse(m);

  MRCommonReport rep;
  if (!synth.ok()) {
    rep.common = false;
    rep.detail = synth.inv ? "inverse axioms failed: " + synth.m_axioms.summary()
                           : std::to_string(synth.failures.size()) +
                                 " element(s) whose J_x has no greatest element";
    return rep;
  }

  // cross-check: per carrier element, the lattice-level minimal ideal
  // with an invertible image must be the greatest node of compute_J
  std::vector<QuotientResult> quots;
  for (const Ideal& k : mr.ideals) quots.push_back(quotient(r, k));
  std::vector<std::pair<int, int>> layout = carrier_layout(mr.diagram);
  for (int u = 0; u < m.size(); ++u) {
    auto [node, elem] = layout[u];
    int rep_in_r = *r->index_of(mr.diagram.rings[node]->token(elem));

    std::vector<const Ideal*> in_J;
    for (std::size_t ki = 0; ki < mr.ideals.size(); ++ki) {
      const Ideal& k = mr.ideals[ki];
      if (!mr.ideals[node].subset_of(k)) continue;
      if (is_unit(*quots[ki].ring, quots[ki].projection(rep_in_r))) in_J.push_back(&k);
    }
    const Ideal* smallest = nullptr;
    for (const Ideal* k : in_J) {
      bool minimal = true;
      for (const Ideal* j : in_J) minimal = minimal && k->subset_of(*j);
      if (minimal) smallest = k;
    }
    if (!smallest) {
      rep.common = false;
      rep.detail = "cross-check: no smallest ideal for " + m.token(u);
      return rep;
    }

    std::vector<int> jx = compute_J(m, u);
    int g = -1;
    for (int cand : jx) {
      bool top = true;
      for (int z : jx) top = top && m.mul(z, cand) == z;
      if (top) g = cand;
    }
    // node element for ideal k sits at the zero of its fiber block
    int expected_node = -1;
    for (std::size_t i = 0; i < mr.ideals.size(); ++i)
      if (mr.ideals[i] == *smallest) expected_node = static_cast<int>(i);
    int base = 0;
    for (int i = 0; i < expected_node; ++i) base += mr.diagram.rings[i]->size();
    int expected_elem = base + mr.diagram.rings[expected_node]->zero;
    if (g != expected_elem) {
      rep.common = false;
      rep.detail = "cross-check: greatest(J) mismatch at " + m.token(u);
      return rep;
    }
  }
  rep.common = true;
  rep.detail = "inverse synthesized; greatest(J) cross-checked for " +
               std::to_string(m.size()) + " elements";
  return rep;
}

}  // namespace meadows
