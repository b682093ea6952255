#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "meadows/core.hpp"

namespace meadows {

/// A finite unital commutative ring given by dense operation tables.
///
/// Elements are identified by their index into `elems`; `add` and `mul`
/// are n-by-n index tables. The trivial ring (n = 1, zero = one) is a
/// legal value and the only ring in which zero equals one.
struct FiniteRing {
  std::string name;
  std::vector<std::string> elems;
  int zero = 0;
  int one = 0;
  op_table add;
  op_table mul;

  int size() const { return static_cast<int>(elems.size()); }
  const std::string& token(int i) const { return elems[i]; }

  std::optional<int> index_of(std::string_view tok) const {
    for (int i = 0; i < size(); ++i)
      if (elems[i] == tok) return i;
    return std::nullopt;
  }

  /// Additive inverse of x, by scan. Requires the add table to be a group.
  int neg(int x) const {
    for (int y = 0; y < size(); ++y)
      if (add(x, y) == zero) return y;
    throw domain_error("no additive inverse for " + token(x) + " in " + name);
  }

  bool trivial() const { return size() == 1; }

  friend bool operator==(const FiniteRing&, const FiniteRing&) = default;
};

using ring_ptr = std::shared_ptr<const FiniteRing>;

inline ring_ptr make_ring(FiniteRing r) { return std::make_shared<const FiniteRing>(std::move(r)); }

/// An element-wise unital ring homomorphism.
struct RingHom {
  ring_ptr src;
  ring_ptr dst;
  std::vector<int> map;  // one dst index per src element

  int operator()(int i) const { return map[i]; }

  friend bool operator==(const RingHom& a, const RingHom& b) { return a.map == b.map; }
};

/// An ideal of a ring, stored as the sorted set of member indices.
struct Ideal {
  ring_ptr ring;
  std::vector<int> members;  // sorted ascending

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int x) const { return std::binary_search(members.begin(), members.end(), x); }

  bool operator==(const Ideal& o) const { return members == o.members; }
  bool subset_of(const Ideal& o) const {
    return std::includes(o.members.begin(), o.members.end(), members.begin(), members.end());
  }
};

namespace detail {

inline void require_table_shape(const FiniteRing& r) {
  const int n = r.size();
  if (n < 1) throw format_error("ring " + r.name + " has no elements");
  if (r.add.size() != n || r.mul.size() != n)
    throw format_error("ring " + r.name + ": table dimensions do not match element count");
  if (!r.add.closed() || !r.mul.closed())
    throw format_error("ring " + r.name + ": table entry out of range");
  if (r.zero < 0 || r.zero >= n || r.one < 0 || r.one >= n)
    throw format_error("ring " + r.name + ": zero/one index out of range");
  std::set<std::string> seen(r.elems.begin(), r.elems.end());
  if (static_cast<int>(seen.size()) != n)
    throw format_error("ring " + r.name + ": duplicate element token");
}

}  // namespace detail

/// Checks the commutative-ring laws exhaustively and reports the first
/// violated law with a witness. Malformed tables throw format_error.
inline validation_report check_ring_axioms(const FiniteRing& r) {
  detail::require_table_shape(r);
  const int n = r.size();
  validation_report rep;
  auto tok = [&](int i) { return r.token(i); };

  for (int x = 0; x < n; ++x)
    if (r.add(x, r.zero) != x) {
      rep.fail("additive identity", {tok(x)});
      return rep;
    }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (r.add(x, y) != r.add(y, x)) {
        rep.fail("additive commutativity", {tok(x), tok(y)});
        return rep;
      }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (r.add(r.add(x, y), z) != r.add(x, r.add(y, z))) {
          rep.fail("additive associativity", {tok(x), tok(y), tok(z)});
          return rep;
        }
  for (int x = 0; x < n; ++x) {
    bool has = false;
    for (int y = 0; y < n && !has; ++y) has = r.add(x, y) == r.zero;
    if (!has) {
      rep.fail("additive inverse", {tok(x)});
      return rep;
    }
  }
  for (int x = 0; x < n; ++x)
    if (r.mul(r.one, x) != x) {
      rep.fail("multiplicative identity", {tok(x)});
      return rep;
    }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (r.mul(x, y) != r.mul(y, x)) {
        rep.fail("multiplicative commutativity", {tok(x), tok(y)});
        return rep;
      }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (r.mul(r.mul(x, y), z) != r.mul(x, r.mul(y, z))) {
          rep.fail("multiplicative associativity", {tok(x), tok(y), tok(z)});
          return rep;
        }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (r.mul(x, r.add(y, z)) != r.add(r.mul(x, y), r.mul(x, z))) {
          rep.fail("distributivity", {tok(x), tok(y), tok(z)});
          return rep;
        }
  return rep;
}

/// Z_n with addition and multiplication mod n; n = 1 is the trivial ring.
inline ring_ptr cyclic_ring(int n) {
  if (n < 1) throw domain_error("cyclic ring needs n >= 1");
  FiniteRing r;
  r.name = "Z" + std::to_string(n);
  r.elems.reserve(n);
  for (int i = 0; i < n; ++i) r.elems.push_back(std::to_string(i));
  r.zero = 0;
  r.one = n == 1 ? 0 : 1;
  r.add = op_table(n);
  r.mul = op_table(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      r.add(i, j) = (i + j) % n;
      r.mul(i, j) = (i * j) % n;
    }
  return make_ring(std::move(r));
}

/// The one-element ring used as the bottom of every diagram.
inline ring_ptr trivial_ring(std::string name = "trivial", std::string token = "a") {
  FiniteRing r;
  r.name = std::move(name);
  r.elems = {std::move(token)};
  r.zero = r.one = 0;
  r.add = op_table(1);
  r.mul = op_table(1);
  return make_ring(std::move(r));
}

namespace detail {

// "(a,b)" + "c" -> "(a,b,c)": keeps iterated products flat.
inline std::string pair_token(const std::string& a, const std::string& b) {
  auto inner = [](const std::string& t) -> std::string {
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') return t.substr(1, t.size() - 2);
    return t;
  };
  return "(" + inner(a) + "," + inner(b) + ")";
}

}  // namespace detail

/// Componentwise product ring. Elements are pair tokens, ordered
/// lexicographically by constituent tokens.
inline ring_ptr ring_product(const FiniteRing& a, const FiniteRing& b) {
  struct entry {
    std::string tok;
    int i, j;
  };
  std::vector<entry> es;
  es.reserve(static_cast<std::size_t>(a.size()) * b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) es.push_back({detail::pair_token(a.token(i), b.token(j)), i, j});
  std::sort(es.begin(), es.end(), [&](const entry& x, const entry& y) {
    if (a.token(x.i) != a.token(y.i)) return a.token(x.i) < a.token(y.i);
    return b.token(x.j) < b.token(y.j);
  });

  const int n = static_cast<int>(es.size());
  std::map<std::pair<int, int>, int> idx;
  FiniteRing p;
  p.name = a.name + "x" + b.name;
  for (int k = 0; k < n; ++k) {
    p.elems.push_back(es[k].tok);
    idx[{es[k].i, es[k].j}] = k;
  }
  p.zero = idx[{a.zero, b.zero}];
  p.one = idx[{a.one, b.one}];
  p.add = op_table(n);
  p.mul = op_table(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      p.add(u, v) = idx[{a.add(es[u].i, es[v].i), b.add(es[u].j, es[v].j)}];
      p.mul(u, v) = idx[{a.mul(es[u].i, es[v].i), b.mul(es[u].j, es[v].j)}];
    }
  return make_ring(std::move(p));
}

namespace detail {

// Polynomials over Z_p as coefficient vectors, least degree first.
inline std::vector<int> poly_mod(std::vector<int> f, const std::vector<int>& g, int p) {
  // g monic; reduce f mod g
  while (f.size() >= g.size()) {
    int lead = f.back();
    if (lead != 0) {
      std::size_t shift = f.size() - g.size();
      for (std::size_t i = 0; i < g.size(); ++i) {
        int t = f[shift + i] - lead * g[i];
        f[shift + i] = ((t % p) + p) % p;
      }
    }
    f.pop_back();
  }
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

inline std::vector<int> poly_mul(const std::vector<int>& f, const std::vector<int>& g, int p) {
  if (f.empty() || g.empty()) return {};
  std::vector<int> h(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) h[i + j] = (h[i + j] + f[i] * g[j]) % p;
  while (!h.empty() && h.back() == 0) h.pop_back();
  return h;
}

// Decode m in base p into coefficients (c0, c1, ...), degree k-1 padded.
inline std::vector<int> decode_poly(long m, int p, int k) {
  std::vector<int> c(k, 0);
  for (int i = 0; i < k; ++i) {
    c[i] = static_cast<int>(m % p);
    m /= p;
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

inline bool is_irreducible(const std::vector<int>& f, int p) {
  const int k = static_cast<int>(f.size()) - 1;
  // trial division by every monic polynomial of degree 1..k/2
  for (int d = 1; 2 * d <= k; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long m = 0; m < count; ++m) {
      std::vector<int> g = decode_poly(m, p, d);
      g.resize(d, 0);
      g.push_back(1);  // monic of degree d
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

/// GF(p^k) as polynomials over Z_p modulo the lexicographically least
/// irreducible monic polynomial of degree k (found by exhaustive search).
/// Element i encodes the coefficient vector of i written in base p.
inline ring_ptr finite_field(int p, int k, std::size_t cap = limits{}.ring_cap) {
  if (!detail::is_prime(p)) throw domain_error(std::to_string(p) + " is not prime");
  if (k < 1) throw domain_error("field extension degree must be >= 1");
  long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (static_cast<std::size_t>(q) > cap) throw size_error("field size exceeds carrier cap");
  }

  std::vector<int> modulus;
  for (long m = 0; m < q; ++m) {
    std::vector<int> f = detail::decode_poly(m, p, k);
    f.resize(k, 0);
    f.push_back(1);  // monic degree k
    if (detail::is_irreducible(f, p)) {
      modulus = f;
      break;
    }
  }
  // an irreducible polynomial of every degree exists over Z_p
  if (modulus.empty()) throw domain_error("no irreducible modulus found");

  auto encode = [&](const std::vector<int>& c) {
    long m = 0;
    for (std::size_t i = c.size(); i-- > 0;) m = m * p + c[i];
    return static_cast<int>(m);
  };

  const int n = static_cast<int>(q);
  FiniteRing f;
  f.name = "GF" + std::to_string(q);
  for (int i = 0; i < n; ++i) f.elems.push_back(std::to_string(i));
  f.zero = 0;
  f.one = n == 1 ? 0 : 1;
  f.add = op_table(n);
  f.mul = op_table(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> a = detail::decode_poly(i, p, k);
    for (int j = 0; j < n; ++j) {
      std::vector<int> b = detail::decode_poly(j, p, k);
      std::vector<int> s(std::max(a.size(), b.size()), 0);
      for (std::size_t t = 0; t < s.size(); ++t)
        s[t] = ((t < a.size() ? a[t] : 0) + (t < b.size() ? b[t] : 0)) % p;
      while (!s.empty() && s.back() == 0) s.pop_back();
      f.add(i, j) = encode(s);
      f.mul(i, j) = encode(detail::poly_mod(detail::poly_mul(a, b, p), modulus, p));
    }
  }
  return make_ring(std::move(f));
}

/// Checks the unital-homomorphism laws; reports the first violating pair.
inline validation_report check_hom(const RingHom& h) {
  const FiniteRing& s = *h.src;
  const FiniteRing& d = *h.dst;
  if (static_cast<int>(h.map.size()) != s.size())
    throw format_error("hom map length does not match source ring size");
  for (int v : h.map)
    if (v < 0 || v >= d.size()) throw format_error("hom target index out of range");

  validation_report rep;
  if (h.map[s.zero] != d.zero) {
    rep.fail("zero preserved", {s.token(s.zero)});
    return rep;
  }
  if (h.map[s.one] != d.one) {
    rep.fail("one preserved", {s.token(s.one)});
    return rep;
  }
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y) {
      if (h.map[s.add(x, y)] != d.add(h.map[x], h.map[y])) {
        rep.fail("additive", {s.token(x), s.token(y)});
        return rep;
      }
      if (h.map[s.mul(x, y)] != d.mul(h.map[x], h.map[y])) {
        rep.fail("multiplicative", {s.token(x), s.token(y)});
        return rep;
      }
    }
  return rep;
}

inline RingHom identity_hom(const ring_ptr& r) {
  RingHom h{r, r, {}};
  h.map.resize(r->size());
  for (int i = 0; i < r->size(); ++i) h.map[i] = i;
  return h;
}

inline RingHom compose(const RingHom& outer, const RingHom& inner) {
  RingHom h{inner.src, outer.dst, {}};
  h.map.reserve(inner.map.size());
  for (int v : inner.map) h.map.push_back(outer.map[v]);
  return h;
}

/// True when the sorted index set is an ideal of r.
inline bool is_ideal(const FiniteRing& r, const std::vector<int>& members) {
  if (!std::binary_search(members.begin(), members.end(), r.zero)) return false;
  auto in = [&](int x) { return std::binary_search(members.begin(), members.end(), x); };
  for (int x : members) {
    if (!in(r.neg(x))) return false;
    for (int y : members)
      if (!in(r.add(x, y))) return false;
    for (int s = 0; s < r.size(); ++s)
      if (!in(r.mul(s, x))) return false;
  }
  return true;
}

/// The ideal generated by x: {r*x : r in R} (R unital commutative).
inline Ideal principal_ideal(const ring_ptr& r, int x) {
  std::set<int> m;
  for (int s = 0; s < r->size(); ++s) m.insert(r->mul(s, x));
  return Ideal{r, {m.begin(), m.end()}};
}

inline Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  std::set<int> m;
  const FiniteRing& r = *a.ring;
  for (int x : a.members)
    for (int y : b.members) m.insert(r.add(x, y));
  return Ideal{a.ring, {m.begin(), m.end()}};
}

inline Ideal ideal_intersection(const Ideal& a, const Ideal& b) {
  std::vector<int> m;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::back_inserter(m));
  return Ideal{a.ring, std::move(m)};
}

/// All ideals of r, found as the join closure of the principal ideals.
/// Sorted canonically: by size, then lexicographically by member list.
/// A 2^n subset scan is avoided on purpose; every ideal is a finite join
/// of principal ideals, so the worklist below reaches all of them.
inline std::vector<Ideal> enumerate_ideals(const ring_ptr& r) {
  std::set<std::vector<int>> seen;
  std::vector<Ideal> out;
  std::vector<Ideal> work;
  for (int x = 0; x < r->size(); ++x) {
    Ideal i = principal_ideal(r, x);
    if (seen.insert(i.members).second) {
      out.push_back(i);
      work.push_back(std::move(i));
    }
  }
  while (!work.empty()) {
    Ideal cur = std::move(work.back());
    work.pop_back();
    for (std::size_t k = 0; k < out.size(); ++k) {
      Ideal j = ideal_sum(cur, out[k]);
      if (seen.insert(j.members).second) {
        out.push_back(j);
        work.push_back(std::move(j));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Ideal& a, const Ideal& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

/// Canonical display token for an ideal: "(g1,g2,...)" over a small
/// generating set; "(0)" for the zero ideal.
inline std::string ideal_token(const Ideal& i) {
  const FiniteRing& r = *i.ring;
  if (i.size() == 1) return "(" + r.token(r.zero) + ")";
  // prefer a single generator when one exists
  for (int x : i.members) {
    if (x == r.zero) continue;
    if (principal_ideal(i.ring, x).members == i.members) return "(" + r.token(x) + ")";
  }
  // greedy: extend by the least element not yet spanned
  std::vector<int> gens;
  Ideal span = principal_ideal(i.ring, r.zero);
  while (span.members != i.members) {
    int next = -1;
    for (int x : i.members)
      if (!span.contains(x)) {
        next = x;
        break;
      }
    gens.push_back(next);
    span = ideal_sum(span, principal_ideal(i.ring, next));
  }
  std::string s = "(";
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (k) s += ",";
    s += r.token(gens[k]);
  }
  return s + ")";
}

struct QuotientResult {
  ring_ptr ring;
  RingHom projection;
};

/// The coset ring R/I with canonical least-index representatives, and the
/// projection homomorphism. Cosets are ordered lexicographically by their
/// representative token.
inline QuotientResult quotient(const ring_ptr& r, const Ideal& i) {
  if (i.ring.get() != r.get() || !is_ideal(*r, i.members))
    throw domain_error("not an ideal of " + r->name);
  const int n = r->size();
  std::vector<int> rep_of(n, -1);  // element -> least-index coset representative
  for (int x = 0; x < n; ++x) {
    if (rep_of[x] >= 0) continue;
    int rep = x;
    std::vector<int> coset;
    for (int m : i.members) coset.push_back(r->add(x, m));
    for (int c : coset) rep = std::min(rep, c);
    for (int c : coset) rep_of[c] = rep;
  }
  std::vector<int> reps;
  for (int x = 0; x < n; ++x)
    if (rep_of[x] == x) reps.push_back(x);
  std::sort(reps.begin(), reps.end(),
            [&](int a, int b) { return r->token(a) < r->token(b); });

  const int m = static_cast<int>(reps.size());
  std::vector<int> pos_of_rep(n, -1);
  for (int k = 0; k < m; ++k) pos_of_rep[reps[k]] = k;

  FiniteRing q;
  q.name = r->name + "/" + ideal_token(i);
  for (int k = 0; k < m; ++k) q.elems.push_back(r->token(reps[k]));
  q.zero = pos_of_rep[rep_of[r->zero]];
  q.one = pos_of_rep[rep_of[r->one]];
  q.add = op_table(m);
  q.mul = op_table(m);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v) {
      q.add(u, v) = pos_of_rep[rep_of[r->add(reps[u], reps[v])]];
      q.mul(u, v) = pos_of_rep[rep_of[r->mul(reps[u], reps[v])]];
    }
  ring_ptr qp = make_ring(std::move(q));

  RingHom proj{r, qp, {}};
  proj.map.resize(n);
  for (int x = 0; x < n; ++x) proj.map[x] = pos_of_rep[rep_of[x]];
  return {qp, std::move(proj)};
}

/// Kernel of a homomorphism, as an ideal of its source.
inline Ideal kernel(const RingHom& h) {
  std::vector<int> m;
  for (int x = 0; x < h.src->size(); ++x)
    if (h.map[x] == h.dst->zero) m.push_back(x);
  return Ideal{h.src, std::move(m)};
}

/// Indices of the invertible elements. In the trivial ring the sole
/// element is a unit (0 = 1 there).
inline std::vector<int> units(const FiniteRing& r) {
  std::vector<int> u;
  for (int x = 0; x < r.size(); ++x)
    for (int y = 0; y < r.size(); ++y)
      if (r.mul(x, y) == r.one) {
        u.push_back(x);
        break;
      }
  return u;
}

inline bool is_unit(const FiniteRing& r, int x) {
  for (int y = 0; y < r.size(); ++y)
    if (r.mul(x, y) == r.one) return true;
  return false;
}

/// True iff |R| >= 2 and every nonzero element is invertible.
inline bool is_field(const FiniteRing& r) {
  if (r.size() < 2) return false;
  return static_cast<int>(units(r).size()) == r.size() - 1;
}

}  // namespace meadows
