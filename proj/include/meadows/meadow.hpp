#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "meadows/core.hpp"
#include "meadows/lattice.hpp"
#include "meadows/ring.hpp"

namespace meadows {

/// A finite carrier with total +, -, * and an optional inverse vector.
/// Negation is stored explicitly: additive inverses are fiber-relative
/// (x + (-x) = 0*x, not 0), so the tables cannot reconstruct it uniquely.
struct Meadow {
  std::string name;
  std::vector<std::string> elems;
  op_table add;
  op_table mul;
  std::vector<int> neg;
  int zero = 0;
  int one = 0;
  std::optional<std::vector<int>> inv;

  int size() const { return static_cast<int>(elems.size()); }
  const std::string& token(int i) const { return elems[i]; }

  std::optional<int> index_of(std::string_view tok) const {
    for (int i = 0; i < size(); ++i)
      if (elems[i] == tok) return i;
    return std::nullopt;
  }

  /// 0*x, the fiber index of x.
  int zero_times(int x) const { return mul(zero, x); }

  friend bool operator==(const Meadow&, const Meadow&) = default;
};

inline void require_meadow_shape(const Meadow& m) {
  const int n = m.size();
  if (n < 1) throw format_error("meadow " + m.name + " has no elements");
  if (m.add.size() != n || m.mul.size() != n)
    throw format_error("meadow " + m.name + ": table dimensions do not match element count");
  if (!m.add.closed() || !m.mul.closed())
    throw format_error("meadow " + m.name + ": table entry out of range");
  if (static_cast<int>(m.neg.size()) != n)
    throw format_error("meadow " + m.name + ": neg vector length mismatch");
  for (int v : m.neg)
    if (v < 0 || v >= n) throw format_error("meadow " + m.name + ": neg entry out of range");
  if (m.zero < 0 || m.zero >= n || m.one < 0 || m.one >= n)
    throw format_error("meadow " + m.name + ": zero/one index out of range");
  if (m.inv) {
    if (static_cast<int>(m.inv->size()) != n)
      throw format_error("meadow " + m.name + ": inv vector length mismatch");
    for (int v : *m.inv)
      if (v < 0 || v >= n) throw format_error("meadow " + m.name + ": inv entry out of range");
  }
  std::set<std::string> seen(m.elems.begin(), m.elems.end());
  if (static_cast<int>(seen.size()) != n)
    throw format_error("meadow " + m.name + ": duplicate element token");
}

struct axiom_check {
  std::string axiom;
  bool ok = true;
  std::vector<std::string> witness;
};

struct premeadow_report {
  std::vector<axiom_check> axioms;  // P1..P10, in order

  bool ok() const {
    for (const auto& a : axioms)
      if (!a.ok) return false;
    return true;
  }

  const axiom_check* find(std::string_view name) const {
    for (const auto& a : axioms)
      if (a.axiom == name) return &a;
    return nullptr;
  }

  std::string summary() const {
    std::string s;
    for (const auto& a : axioms) {
      if (a.ok) continue;
      if (!s.empty()) s += "; ";
      s += a.axiom;
      if (!a.witness.empty()) {
        s += " at (";
        for (std::size_t i = 0; i < a.witness.size(); ++i) {
          if (i) s += ", ";
          s += a.witness[i];
        }
        s += ")";
      }
    }
    return s.empty() ? "pass" : s;
  }
};

/// Exhaustive check of the pre-meadow laws P1..P10. Every axiom is
/// evaluated; each failing one carries its first witness tuple in scan
/// order.
inline premeadow_report check_premeadow(const Meadow& m) {
  require_meadow_shape(m);
  const int n = m.size();
  premeadow_report rep;
  auto tok = [&](int i) { return m.token(i); };

  auto scan1 = [&](std::string name, auto pred) {
    axiom_check c;
    c.axiom = std::move(name);
    for (int x = 0; x < n && c.ok; ++x)
      if (!pred(x)) {
        c.ok = false;
        c.witness = {tok(x)};
      }
    rep.axioms.push_back(std::move(c));
  };
  auto scan2 = [&](std::string name, auto pred) {
    axiom_check c;
    c.axiom = std::move(name);
    for (int x = 0; x < n && c.ok; ++x)
      for (int y = 0; y < n && c.ok; ++y)
        if (!pred(x, y)) {
          c.ok = false;
          c.witness = {tok(x), tok(y)};
        }
    rep.axioms.push_back(std::move(c));
  };
  auto scan3 = [&](std::string name, auto pred) {
    axiom_check c;
    c.axiom = std::move(name);
    for (int x = 0; x < n && c.ok; ++x)
      for (int y = 0; y < n && c.ok; ++y)
        for (int z = 0; z < n && c.ok; ++z)
          if (!pred(x, y, z)) {
            c.ok = false;
            c.witness = {tok(x), tok(y), tok(z)};
          }
    rep.axioms.push_back(std::move(c));
  };

  scan3("P1 additive associativity",
        [&](int x, int y, int z) { return m.add(m.add(x, y), z) == m.add(x, m.add(y, z)); });
  scan2("P2 additive commutativity", [&](int x, int y) { return m.add(x, y) == m.add(y, x); });
  scan1("P3 additive identity", [&](int x) { return m.add(x, m.zero) == x; });
  scan1("P4 negation gives 0*x", [&](int x) { return m.add(x, m.neg[x]) == m.zero_times(x); });
  scan3("P5 multiplicative associativity",
        [&](int x, int y, int z) { return m.mul(m.mul(x, y), z) == m.mul(x, m.mul(y, z)); });
  scan2("P6 multiplicative commutativity", [&](int x, int y) { return m.mul(x, y) == m.mul(y, x); });
  scan1("P7 multiplicative identity", [&](int x) { return m.mul(m.one, x) == x; });
  scan3("P8 distributivity", [&](int x, int y, int z) {
    return m.mul(x, m.add(y, z)) == m.add(m.mul(x, y), m.mul(x, z));
  });
  scan1("P9 negation involutive", [&](int x) { return m.neg[m.neg[x]] == x; });
  scan2("P10 zero absorption",
        [&](int x, int y) { return m.zero_times(m.add(x, y)) == m.mul(m.zero_times(x), y); });
  return rep;
}

/// The partition of the carrier into fibers P_z = {x : 0*x = z},
/// indexed by the elements of 0*M (each node lies in its own fiber).
struct FiberPartition {
  std::vector<int> nodes;                 // node element indices, ascending
  std::vector<std::vector<int>> members;  // aligned with nodes
  std::vector<int> node_of;               // element -> its node element index

  int count() const { return static_cast<int>(nodes.size()); }

  int pos(int node_elem) const {
    for (int i = 0; i < count(); ++i)
      if (nodes[i] == node_elem) return i;
    throw domain_error("not a node of the zero monoid");
  }

  const std::vector<int>& fiber_of_node(int node_elem) const { return members[pos(node_elem)]; }
};

inline FiberPartition fibers(const Meadow& m) {
  require_meadow_shape(m);
  const int n = m.size();
  FiberPartition p;
  p.node_of.resize(n);
  std::set<int> nodeset;
  for (int x = 0; x < n; ++x) {
    int z = m.zero_times(x);
    if (m.zero_times(z) != z)
      throw precondition_error("not a pre-meadow: 0*x is not fixed by 0* at " + m.token(x));
    p.node_of[x] = z;
    nodeset.insert(z);
  }
  p.nodes.assign(nodeset.begin(), nodeset.end());
  p.members.resize(p.nodes.size());
  for (int x = 0; x < n; ++x) p.members[p.pos(p.node_of[x])].push_back(x);
  return p;
}

/// The zero monoid 0*M as a validated ZeroLattice. Node tokens are the
/// carrier tokens of the node elements; order follows the carrier.
inline ZeroLattice zero_monoid(const Meadow& m) {
  FiberPartition p = fibers(m);
  const int k = p.count();
  op_table mul(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int prod = m.mul(p.nodes[i], p.nodes[j]);
      bool found = false;
      for (int t = 0; t < k; ++t)
        if (p.nodes[t] == prod) {
          mul(i, j) = t;
          found = true;
          break;
        }
      if (!found)
        throw precondition_error("not a pre-meadow: zero monoid is not closed at " +
                                 m.token(p.nodes[i]) + " * " + m.token(p.nodes[j]));
    }
  // bottom = meet of everything
  int bot = 0;
  for (int i = 1; i < k; ++i) bot = mul(bot, i);
  std::vector<std::string> toks;
  toks.reserve(k);
  for (int z : p.nodes) toks.push_back(m.token(z));
  int zero_pos = p.pos(m.zero_times(m.zero));
  try {
    return from_mul_table(std::move(toks), std::move(mul), zero_pos, bot, m.name);
  } catch (const domain_error& e) {
    throw precondition_error(std::string("not a pre-meadow: ") + e.what());
  }
}

/// Node element index of the absorber (bottom of the zero monoid).
inline int bottom_node(const Meadow& m, const FiberPartition& p) {
  int bot = p.nodes[0];
  for (int z : p.nodes) bot = m.mul(bot, z);
  return bot;
}

namespace detail {

// Fiber P_z as a ring: zero = z, one = 1 + z. Unlike the public
// fiber_ring this accepts the absorber node, whose trivial fiber is
// needed as a transition-map target.
inline ring_ptr fiber_ring_at(const Meadow& m, const FiberPartition& p, int z) {
  const std::vector<int>& f = p.fiber_of_node(z);
  const int k = static_cast<int>(f.size());
  auto pos = [&](int elem) {
    for (int i = 0; i < k; ++i)
      if (f[i] == elem) return i;
    throw precondition_error("fiber of " + m.token(z) + " is not closed in " + m.name);
  };
  FiniteRing r;
  r.name = "P_" + m.token(z);
  for (int e : f) r.elems.push_back(m.token(e));
  r.zero = pos(z);
  r.one = pos(m.add(m.one, z));
  r.add = op_table(k);
  r.mul = op_table(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      r.add(i, j) = pos(m.add(f[i], f[j]));
      r.mul(i, j) = pos(m.mul(f[i], f[j]));
    }
  return make_ring(std::move(r));
}

// Is x's image in fiber z a unit there? (1_z = 1 + z.)
inline bool unit_at(const Meadow& m, const FiberPartition& p, int x, int z) {
  int img = m.add(x, z);
  int one_z = m.add(m.one, z);
  for (int u : p.fiber_of_node(z))
    if (m.mul(img, u) == one_z) return true;
  return false;
}

}  // namespace detail

/// Fiber ring at a non-absorber node z.
inline ring_ptr fiber_ring(const Meadow& m, int z) {
  FiberPartition p = fibers(m);
  if (z == bottom_node(m, p))
    throw domain_error("fiber ring at the absorber is not exposed; it is the trivial ring");
  return detail::fiber_ring_at(m, p, z);
}

/// The transition homomorphism from fiber w down to fiber z (z <= w),
/// x -> x + z.
inline RingHom transition_map(const Meadow& m, int z, int w) {
  FiberPartition p = fibers(m);
  if (m.mul(z, w) != z)
    throw domain_error("transition map needs " + m.token(z) + " <= " + m.token(w));
  ring_ptr src = detail::fiber_ring_at(m, p, w);
  ring_ptr dst = detail::fiber_ring_at(m, p, z);
  RingHom h{src, dst, {}};
  for (int e : p.fiber_of_node(w)) {
    auto t = dst->index_of(m.token(m.add(e, z)));
    if (!t) throw precondition_error("transition image leaves the target fiber in " + m.name);
    h.map.push_back(*t);
  }
  return h;
}

/// J_x: the nodes z <= 0*x at which the image of x is a unit. Always
/// contains the absorber (the trivial fiber's element is a unit there).
inline std::vector<int> compute_J(const Meadow& m, int x) {
  FiberPartition p = fibers(m);
  std::vector<int> out;
  int zx = m.zero_times(x);
  for (int z : p.nodes)
    if (m.mul(z, zx) == z && detail::unit_at(m, p, x, z)) out.push_back(z);
  return out;
}

struct inverse_failure {
  int elem = -1;
  std::vector<int> maximal_nodes;  // the maximal antichain of J_elem
};

struct inverse_synthesis {
  std::optional<std::vector<int>> inv;
  std::vector<inverse_failure> failures;
  validation_report m_axioms;  // M1..M4 verification of the result

  bool ok() const { return inv.has_value() && m_axioms.ok(); }
};

/// Verify the common-meadow inverse laws M1..M4 for a full inverse vector.
inline validation_report check_inverse_axioms(const Meadow& m, const std::vector<int>& inv) {
  const int n = m.size();
  validation_report rep;
  FiberPartition p = fibers(m);
  int a = bottom_node(m, p);
  auto tok = [&](int i) { return m.token(i); };
  for (int x = 0; x < n; ++x)
    if (m.mul(x, inv[x]) != m.add(m.one, m.zero_times(inv[x]))) {
      rep.fail("M1 x*inv(x) = 1 + 0*inv(x)", {tok(x)});
      return rep;
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (inv[m.mul(x, y)] != m.mul(inv[x], inv[y])) {
        rep.fail("M2 inv(x*y) = inv(x)*inv(y)", {tok(x), tok(y)});
        return rep;
      }
  for (int x = 0; x < n; ++x) {
    int u = m.add(m.one, m.zero_times(x));
    if (inv[u] != u) {
      rep.fail("M3 inv(1 + 0*x) = 1 + 0*x", {tok(x)});
      return rep;
    }
  }
  if (inv[m.zero] != a) {
    rep.fail("M4 inv(0) = a", {tok(m.zero)});
    return rep;
  }
  return rep;
}

/// Synthesize the inverse vector: x^-1 is the fiber-ring inverse of the
/// image of x at the greatest element of J_x. Absent when some J_x lacks
/// a greatest element; the failures carry each maximal antichain.
inline inverse_synthesis synthesize_inverse(const Meadow& m) {
  FiberPartition p = fibers(m);
  ZeroLattice lat = zero_monoid(m);
  const int n = m.size();
  inverse_synthesis out;
  std::vector<int> inv(n, -1);
  for (int x = 0; x < n; ++x) {
    std::vector<int> jx;
    int zx = m.zero_times(x);
    for (int z : p.nodes)
      if (m.mul(z, zx) == z && detail::unit_at(m, p, x, z)) jx.push_back(z);
    // hunt for the greatest node of J_x
    int g = -1;
    for (int cand : jx) {
      bool top = true;
      for (int z : jx)
        if (m.mul(z, cand) != z) {
          top = false;
          break;
        }
      if (top) {
        g = cand;
        break;
      }
    }
    if (g < 0) {
      std::vector<int> maximal;
      for (int cand : jx) {
        bool dominated = false;
        for (int z : jx)
          if (z != cand && m.mul(cand, z) == cand) dominated = true;
        if (!dominated) maximal.push_back(cand);
      }
      out.failures.push_back({x, std::move(maximal)});
      continue;
    }
    int img = m.add(x, g);
    int one_g = m.add(m.one, g);
    for (int u : p.fiber_of_node(g))
      if (m.mul(img, u) == one_g) {
        inv[x] = u;
        break;
      }
  }
  if (out.failures.empty()) {
    out.m_axioms = check_inverse_axioms(m, inv);
    out.inv = std::move(inv);
  }
  return out;
}

enum class meadow_level { not_pre_meadow, pre_meadow, pre_meadow_with_a, common_meadow };

inline std::string to_string(meadow_level l) {
  switch (l) {
    case meadow_level::not_pre_meadow: return "not-pre-meadow";
    case meadow_level::pre_meadow: return "pre-meadow";
    case meadow_level::pre_meadow_with_a: return "pre-meadow-with-a";
    case meadow_level::common_meadow: return "common-meadow";
  }
  return "?";
}

struct classification {
  meadow_level level = meadow_level::not_pre_meadow;
  premeadow_report axioms;
  std::string detail;                      // why the level stops where it does
  std::optional<int> a_elem;               // the absorbing element, when with-a
  bool all_fiber_fields = false;           // every non-absorber fiber is a field
  std::optional<std::vector<int>> inv;     // synthesized inverse when common
  std::vector<inverse_failure> no_greatest;
  std::optional<bool> supplied_inv_valid;  // when the value carried an inv
};

/// Full classification ladder: pre-meadow laws, then the unique absorbing
/// singleton fiber, then inverse existence. When every fiber ring is a
/// field the common-meadow verdict is reached without consulting any
/// supplied inverse vector.
inline classification classify(const Meadow& m) {
  classification c;
  c.axioms = check_premeadow(m);
  if (!c.axioms.ok()) {
    c.level = meadow_level::not_pre_meadow;
    c.detail = c.axioms.summary();
    return c;
  }
  c.level = meadow_level::pre_meadow;

  FiberPartition p = fibers(m);
  std::vector<int> singletons;
  for (int i = 0; i < p.count(); ++i)
    if (p.members[i].size() == 1) singletons.push_back(p.nodes[i]);
  if (singletons.size() != 1) {
    if (singletons.empty()) {
      c.detail = "no singleton fiber";
    } else {
      std::string s;
      for (std::size_t i = 0; i < singletons.size(); ++i) {
        if (i) s += i + 1 == singletons.size() ? " and " : ", ";
        s += "P_" + m.token(singletons[i]);
      }
      c.detail = "expected exactly one singleton fiber, found " + s;
    }
    return c;
  }
  int a = singletons[0];
  for (int x = 0; x < m.size(); ++x)
    if (m.add(x, a) != a) {
      c.detail = "singleton fiber element " + m.token(a) + " does not absorb addition at " +
                 m.token(x);
      return c;
    }
  c.level = meadow_level::pre_meadow_with_a;
  c.a_elem = a;

  c.all_fiber_fields = true;
  for (int z : p.nodes) {
    if (z == a) continue;
    if (!is_field(*detail::fiber_ring_at(m, p, z))) {
      c.all_fiber_fields = false;
      break;
    }
  }

  inverse_synthesis synth = synthesize_inverse(m);
  c.no_greatest = synth.failures;
  if (m.inv) c.supplied_inv_valid = check_inverse_axioms(m, *m.inv).ok();

  if (c.all_fiber_fields || synth.ok()) {
    c.level = meadow_level::common_meadow;
    c.inv = synth.inv;
  } else if (c.supplied_inv_valid.value_or(false)) {
    c.level = meadow_level::common_meadow;
    c.inv = m.inv;
  } else {
    std::string s = std::to_string(c.no_greatest.size()) + " element(s) whose J_x has no greatest element";
    if (!c.no_greatest.empty())
      s += ", first: " + m.token(c.no_greatest.front().elem);
    c.detail = s;
  }
  return c;
}

}  // namespace meadows
