#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "meadows/core.hpp"
#include "meadows/lattice.hpp"
#include "meadows/meadow.hpp"
#include "meadows/ring.hpp"

namespace meadows {

namespace detail {

struct with_a_view {
  FiberPartition part;
  int a_elem = -1;  // absorber node element
};

// Enforces the pre-meadow-with-a hypothesis shared by the flasque
// operations: exactly one singleton fiber whose element absorbs addition.
inline with_a_view require_with_a(const Meadow& m) {
  with_a_view v{fibers(m), -1};
  for (int i = 0; i < v.part.count(); ++i)
    if (v.part.members[i].size() == 1) {
      if (v.a_elem >= 0)
        throw precondition_error(m.name + " is not a pre-meadow with a: several singleton fibers");
      v.a_elem = v.part.nodes[i];
    }
  if (v.a_elem < 0)
    throw precondition_error(m.name + " is not a pre-meadow with a: no singleton fiber");
  for (int x = 0; x < m.size(); ++x)
    if (m.add(x, v.a_elem) != v.a_elem)
      throw precondition_error(m.name + " is not a pre-meadow with a: addition not absorbed at " +
                               m.token(x));
  return v;
}

}  // namespace detail

struct FlasqueReport {
  bool flasque = true;
  std::optional<std::pair<int, int>> failing_pair;  // (upper, lower) node elements
  std::optional<int> missing_target;                // fiber element not reached
  std::string route;
};

/// Surjectivity of every comparable-pair transition map.
inline FlasqueReport is_flasque(const Meadow& m) {
  auto v = detail::require_with_a(m);
  FlasqueReport rep;
  rep.route = "all-pairs";
  for (int w : v.part.nodes)
    for (int z : v.part.nodes) {
      if (z == w || m.mul(z, w) != z) continue;
      for (int t : v.part.fiber_of_node(z)) {
        bool hit = false;
        for (int s : v.part.fiber_of_node(w))
          if (m.add(s, z) == t) {
            hit = true;
            break;
          }
        if (!hit) {
          rep.flasque = false;
          rep.failing_pair = {w, z};
          rep.missing_target = t;
          return rep;
        }
      }
    }
  return rep;
}

/// Surjectivity of the maps out of P_0 only; equivalent to is_flasque.
inline FlasqueReport is_flasque_via_top(const Meadow& m) {
  auto v = detail::require_with_a(m);
  FlasqueReport rep;
  rep.route = "from-top";
  int top = m.zero_times(m.zero);
  for (int z : v.part.nodes) {
    if (z == top) continue;
    for (int t : v.part.fiber_of_node(z)) {
      bool hit = false;
      for (int s : v.part.fiber_of_node(top))
        if (m.add(s, z) == t) {
          hit = true;
          break;
        }
      if (!hit) {
        rep.flasque = false;
        rep.failing_pair = {top, z};
        rep.missing_target = t;
        return rep;
      }
    }
  }
  return rep;
}

/// The largest flasque sub-meadow sharing P_0: fiber at z becomes the
/// image of the transition map from P_0. A flasque input comes back
/// verbatim.
inline Meadow flasque_closure(const Meadow& m) {
  auto v = detail::require_with_a(m);
  const int n = m.size();
  std::vector<bool> keep(n, false);
  int top = m.zero_times(m.zero);
  for (int z : v.part.nodes)
    for (int y : v.part.fiber_of_node(top)) keep[m.add(y, z)] = true;

  std::vector<int> old_of;  // new index -> old index
  std::vector<int> new_of(n, -1);
  for (int x = 0; x < n; ++x)
    if (keep[x]) {
      new_of[x] = static_cast<int>(old_of.size());
      old_of.push_back(x);
    }
  if (static_cast<int>(old_of.size()) == n) return m;

  const int k = static_cast<int>(old_of.size());
  Meadow out;
  out.name = m.name;
  for (int x : old_of) out.elems.push_back(m.token(x));
  out.zero = new_of[m.zero];
  out.one = new_of[m.one];
  out.add = op_table(k);
  out.mul = op_table(k);
  out.neg.resize(k);
  for (int i = 0; i < k; ++i) {
    out.neg[i] = new_of[m.neg[old_of[i]]];
    for (int j = 0; j < k; ++j) {
      out.add(i, j) = new_of[m.add(old_of[i], old_of[j])];
      out.mul(i, j) = new_of[m.mul(old_of[i], old_of[j])];
    }
  }
  if (m.inv) {
    bool inside = true;
    for (int x : old_of) inside = inside && new_of[(*m.inv)[x]] >= 0;
    if (inside) {
      std::vector<int> inv(k);
      for (int i = 0; i < k; ++i) inv[i] = new_of[(*m.inv)[old_of[i]]];
      out.inv = std::move(inv);
    }
  }
  return out;
}

/// R x (S \ {a}) with componentwise operations, plus an adjoined
/// absorbing element. Every fiber is a copy of R and every transition map
/// is the identity.
inline Meadow product_meadow(const FiniteRing& r, const ZeroLattice& s) {
  std::vector<int> snodes;  // S order, absorber excluded
  for (int i = 0; i < s.size(); ++i)
    if (i != s.a) snodes.push_back(i);

  Meadow m;
  m.name = r.name + "x" + (s.name.empty() ? "S" : s.name);
  const int nr = r.size();
  const int k = static_cast<int>(snodes.size());
  const int size = nr * k + 1;
  const int a = size - 1;
  std::vector<int> spos(s.size(), -1);
  for (int i = 0; i < k; ++i) spos[snodes[i]] = i;
  auto id = [&](int re, int sn) { return spos[sn] * nr + re; };

  for (int sn : snodes)
    for (int e = 0; e < nr; ++e) m.elems.push_back(r.token(e) + "@" + s.token(sn));
  m.elems.push_back("a");

  if (k == 0) {
    m.zero = m.one = a;
  } else {
    m.zero = id(r.zero, s.zero);
    m.one = id(r.one, s.zero);
  }
  m.add = op_table(size);
  m.mul = op_table(size);
  m.neg.resize(size);
  m.neg[a] = a;
  for (int x = 0; x < size; ++x) {
    m.add(x, a) = m.add(a, x) = a;
    m.mul(x, a) = m.mul(a, x) = a;
  }
  for (int i = 0; i < k; ++i)
    for (int e = 0; e < nr; ++e) {
      int x = id(e, snodes[i]);
      m.neg[x] = id(r.neg(e), snodes[i]);
      for (int j = 0; j < k; ++j)
        for (int f = 0; f < nr; ++f) {
          int y = id(f, snodes[j]);
          int sn = s.meet(snodes[i], snodes[j]);
          if (sn == s.a) {
            m.add(x, y) = a;
            m.mul(x, y) = a;
          } else {
            m.add(x, y) = id(r.add(e, f), sn);
            m.mul(x, y) = id(r.mul(e, f), sn);
          }
        }
    }
  if (!r.trivial()) {
    // the explicit inverse of the product construction
    std::vector<int> inv(size, a);
    std::vector<bool> unit(nr, false);
    for (int u : units(r)) unit[u] = true;
    auto rinv = [&](int e) {
      for (int f = 0; f < nr; ++f)
        if (r.mul(e, f) == r.one) return f;
      return -1;
    };
    for (int i = 0; i < k; ++i)
      for (int e = 0; e < nr; ++e)
        if (unit[e]) inv[id(e, snodes[i])] = id(rinv(e), snodes[i]);
    m.inv = std::move(inv);
  }
  return m;
}

struct decomposition_result {
  Meadow mprime;                        // P_0 x (0*M \ {a}) adjoined a
  std::optional<std::vector<int>> iso;  // mprime element -> M element
  std::vector<std::string> reasons;     // nonempty iff iso is absent

  bool ok() const { return iso.has_value(); }
};

/// Builds M' = P_0 x (0*M \ {a}) and, when M is flasque with P_0 a field,
/// the verified isomorphism phi(x, z) = x + z.
inline decomposition_result decomposition_iso(const Meadow& m) {
  classification cls = classify(m);
  if (cls.level != meadow_level::common_meadow)
    throw precondition_error(m.name + " is not a common meadow");

  FiberPartition p = fibers(m);
  ZeroLattice lat = zero_monoid(m);
  int top = m.zero_times(m.zero);
  ring_ptr p0 = detail::fiber_ring_at(m, p, top);

  decomposition_result out;
  out.mprime = product_meadow(*p0, lat);
  if (!is_flasque(m).flasque) out.reasons.push_back("not flasque");
  if (!is_field(*p0)) out.reasons.push_back("P_0 is not a field");
  if (!out.reasons.empty()) return out;

  const std::vector<int>& p0_members = p.fiber_of_node(top);
  const int nr = static_cast<int>(p0_members.size());
  const int k = lat.size() - 1;  // nodes minus absorber
  std::vector<int> phi(out.mprime.size(), -1);
  int pos = 0;
  for (int sn = 0; sn < lat.size(); ++sn) {
    if (sn == lat.a) continue;
    int z = p.nodes[sn];  // lattice order mirrors the node list
    for (int e = 0; e < nr; ++e) phi[pos++] = m.add(p0_members[e], z);
  }
  phi[nr * k] = p.nodes[lat.a];

  std::vector<bool> hit(m.size(), false);
  for (int v : phi) {
    if (v < 0 || hit[v]) {
      out.reasons.push_back("phi is not bijective");
      return out;
    }
    hit[v] = true;
  }
  if (static_cast<int>(phi.size()) != m.size()) {
    out.reasons.push_back("phi is not bijective");
    return out;
  }

  const Meadow& mp = out.mprime;
  if (phi[mp.one] != m.one || phi[mp.zero] != m.zero)
    throw error("internal: phi does not fix the constants");
  for (int e = 0; e < nr; ++e)
    if (phi[e] != p0_members[e]) throw error("internal: phi is not the identity on P_0");
  for (int x = 0; x < mp.size(); ++x) {
    if (phi[mp.neg[x]] != m.neg[phi[x]])
      throw error("internal: phi does not preserve negation");
    for (int y = 0; y < mp.size(); ++y) {
      if (phi[mp.add(x, y)] != m.add(phi[x], phi[y]) ||
          phi[mp.mul(x, y)] != m.mul(phi[x], phi[y]))
        throw error("internal: phi does not preserve operations");
    }
  }
  out.iso = std::move(phi);
  return out;
}

struct flasque_inverse_report {
  bool exists = false;
  std::vector<int> failing;  // elements of P_0 whose J_x lacks a greatest element
  std::string detail;
};

/// The flasque fast path: inverses exist iff J_x has a greatest element
/// for the elements of P_0 alone. Rejects non-flasque inputs, where the
/// restricted scan would be unsound. On success the greatest element of
/// every J is cross-checked via greatest(J_y) meet 0*x.
inline flasque_inverse_report flasque_inverse_exists(const Meadow& m) {
  if (!is_flasque(m).flasque)
    throw precondition_error(m.name + " is not flasque; the P_0 scan requires flasqueness");
  FiberPartition p = fibers(m);
  int top = m.zero_times(m.zero);

  auto greatest_of_J = [&](int x) -> int {  // -1 when absent
    std::vector<int> jx = compute_J(m, x);
    for (int cand : jx) {
      bool g = true;
      for (int z : jx)
        if (m.mul(z, cand) != z) {
          g = false;
          break;
        }
      if (g) return cand;
    }
    return -1;
  };

  flasque_inverse_report rep;
  std::vector<int> g0(m.size(), -1);
  for (int y : p.fiber_of_node(top)) {
    g0[y] = greatest_of_J(y);
    if (g0[y] < 0) rep.failing.push_back(y);
  }
  rep.exists = rep.failing.empty();
  if (!rep.exists) {
    rep.detail = "J_x has no greatest element for " + std::to_string(rep.failing.size()) +
                 " element(s) of P_0";
    return rep;
  }
  // every x is y + 0*x with y in P_0; its greatest J-node is g(J_y) meet 0*x
  int checked = 0;
  for (int x = 0; x < m.size(); ++x) {
    int zx = m.zero_times(x);
    int y = -1;
    for (int cand : p.fiber_of_node(top))
      if (m.add(cand, zx) == x) {
        y = cand;
        break;
      }
    if (y < 0) throw error("internal: flasque meadow without a P_0 preimage");
    int expected = m.mul(g0[y], zx);
    if (greatest_of_J(x) != expected)
      throw error("internal: greatest(J_x) disagrees with greatest(J_y) meet 0*x at " +
                  m.token(x));
    ++checked;
  }
  rep.detail = "greatest(J) cross-checked for " + std::to_string(checked) + " elements";
  return rep;
}

struct defect_report {
  bool identity_holds = false;
  std::optional<std::array<std::string, 3>> identity_witness;
  std::optional<std::array<std::string, 3>> distributivity_witness;
};

/// For a non-idempotent commutative monoid S with absorber, the product
/// structure R x (S \ {a}) is not distributive, but distributivity holds
/// up to the correcting term (0, s) for a left factor with S-part s.
/// Verifies the corrected identity over all triples and exhibits a triple
/// where plain distributivity fails.
inline defect_report check_defect_identity(const FiniteRing& r, const MulMonoid& s) {
  if (auto rep = check_monoid(s); !rep.ok())
    throw domain_error("not a commutative monoid with absorber: " + rep.summary());
  bool idem = true;
  for (int x = 0; x < s.size() && idem; ++x) idem = s.mul(x, x) == x;
  if (idem) throw domain_error("monoid is idempotent; use the product meadow instead");

  std::vector<int> snodes;
  for (int i = 0; i < s.size(); ++i)
    if (i != s.absorber) snodes.push_back(i);
  const int nr = r.size();
  const int k = static_cast<int>(snodes.size());
  const int size = nr * k + 1;
  const int a = size - 1;
  std::vector<int> spos(s.size(), -1);
  for (int i = 0; i < k; ++i) spos[snodes[i]] = i;
  auto id = [&](int re, int sn) { return sn == s.absorber ? a : spos[sn] * nr + re; };
  auto add = [&](int x, int y) {
    if (x == a || y == a) return a;
    return id(r.add(x % nr, y % nr), s.mul(snodes[x / nr], snodes[y / nr]));
  };
  auto mul = [&](int x, int y) {
    if (x == a || y == a) return a;
    return id(r.mul(x % nr, y % nr), s.mul(snodes[x / nr], snodes[y / nr]));
  };
  auto tok = [&](int x) {
    if (x == a) return std::string("a");
    return r.token(x % nr) + "@" + s.token(snodes[x / nr]);
  };

  defect_report rep;
  rep.identity_holds = true;
  for (int u = 0; u < size - 1; ++u) {
    int defect = id(r.zero, snodes[u / nr]);
    for (int v = 0; v < size - 1; ++v)
      for (int w = 0; w < size - 1; ++w) {
        int lhs = add(mul(u, v), mul(u, w));
        int dist = mul(u, add(v, w));
        int rhs = add(dist, defect);
        if (lhs != rhs && rep.identity_holds) {
          rep.identity_holds = false;
          rep.identity_witness = {tok(u), tok(v), tok(w)};
        }
        if (lhs != dist && !rep.distributivity_witness)
          rep.distributivity_witness = {tok(u), tok(v), tok(w)};
      }
  }
  return rep;
}

}  // namespace meadows
