#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "meadows/core.hpp"

namespace meadows {

/// A finite commutative monoid with an identity and an absorbing element,
/// not necessarily idempotent. Idempotent instances validate into a
/// ZeroLattice; non-idempotent ones only feed the distributivity-defect
/// check.
struct MulMonoid {
  std::string name;
  std::vector<std::string> elems;
  op_table mul;
  int identity = 0;
  int absorber = 0;

  int size() const { return static_cast<int>(elems.size()); }
  const std::string& token(int i) const { return elems[i]; }

  std::optional<int> index_of(std::string_view tok) const {
    for (int i = 0; i < size(); ++i)
      if (elems[i] == tok) return i;
    return std::nullopt;
  }
};

/// Commutativity, associativity, identity and absorber laws (idempotence
/// is deliberately not checked here).
inline validation_report check_monoid(const MulMonoid& m) {
  const int n = m.size();
  if (n < 1) throw format_error("monoid has no elements");
  if (m.mul.size() != n) throw format_error("monoid table dimensions do not match element count");
  if (!m.mul.closed()) throw format_error("monoid table entry out of range");
  if (m.identity < 0 || m.identity >= n || m.absorber < 0 || m.absorber >= n)
    throw format_error("monoid identity/absorber index out of range");

  validation_report rep;
  auto tok = [&](int i) { return m.token(i); };
  for (int x = 0; x < n; ++x)
    if (m.mul(m.identity, x) != x || m.mul(x, m.identity) != x) {
      rep.fail("identity", {tok(x)});
      return rep;
    }
  for (int x = 0; x < n; ++x)
    if (m.mul(m.absorber, x) != m.absorber || m.mul(x, m.absorber) != m.absorber) {
      rep.fail("absorber", {tok(x)});
      return rep;
    }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (m.mul(x, y) != m.mul(y, x)) {
        rep.fail("commutativity", {tok(x), tok(y)});
        return rep;
      }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z))) {
          rep.fail("associativity", {tok(x), tok(y), tok(z)});
          return rep;
        }
  return rep;
}

/// The zero monoid of a meadow: an idempotent commutative monoid with
/// identity `zero` and absorbing element `a`. The derived order
/// z <= w iff z*w = z is a bounded meet-semilattice with top `zero`
/// and bottom `a`; the monoid product is the meet.
struct ZeroLattice {
  std::string name;
  std::vector<std::string> elems;
  op_table mul;
  int zero = 0;  // identity, top of the order
  int a = 0;     // absorber, bottom of the order

  int size() const { return static_cast<int>(elems.size()); }
  const std::string& token(int i) const { return elems[i]; }

  std::optional<int> index_of(std::string_view tok) const {
    for (int i = 0; i < size(); ++i)
      if (elems[i] == tok) return i;
    return std::nullopt;
  }

  int meet(int z, int w) const { return mul(z, w); }
  bool leq(int z, int w) const { return mul(z, w) == z; }

  friend bool operator==(const ZeroLattice&, const ZeroLattice&) = default;
};

/// Validates the idempotent-monoid laws and materializes the lattice.
/// Throws domain_error naming the first violated law ("not idempotent"
/// with a witness, structural identity/absorber failures, order defects).
inline ZeroLattice from_mul_table(std::vector<std::string> elems, op_table mul, int zero, int a,
                                  std::string name = {}) {
  MulMonoid m{name, std::move(elems), std::move(mul), zero, a};
  if (auto rep = check_monoid(m); !rep.ok())
    throw domain_error("not a zero lattice: " + rep.summary());
  const int n = m.size();
  for (int x = 0; x < n; ++x)
    if (m.mul(x, x) != x) throw domain_error("not idempotent: " + m.token(x));
  // with commutativity, associativity and idempotence the derived relation
  // is automatically a partial order; verify antisymmetry as a guard
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && m.mul(x, y) == x && m.mul(y, x) == y)
        throw domain_error("order fails antisymmetry: " + m.token(x) + ", " + m.token(y));
  return ZeroLattice{std::move(m.name), std::move(m.elems), std::move(m.mul), zero, a};
}

inline ZeroLattice from_mul_table(const MulMonoid& m) {
  return from_mul_table(m.elems, m.mul, m.identity, m.absorber, m.name);
}

/// The unique g in S dominating all of S, when it exists.
inline std::optional<int> greatest(const ZeroLattice& l, std::span<const int> s) {
  if (s.empty()) throw domain_error("greatest of empty subset");
  for (int g : s) {
    bool top = true;
    for (int x : s)
      if (!l.leq(x, g)) {
        top = false;
        break;
      }
    if (top) return g;
  }
  return std::nullopt;
}

/// Elements of S with no strictly greater element in S.
inline std::vector<int> maximal_elements(const ZeroLattice& l, std::span<const int> s) {
  if (s.empty()) throw domain_error("maximal elements of empty subset");
  std::vector<int> out;
  for (int x : s) {
    bool maximal = true;
    for (int y : s)
      if (y != x && l.leq(x, y)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(x);
  }
  return out;
}

/// Covering pairs (upper, lower) of the derived order, for Hasse output.
inline std::vector<std::pair<int, int>> covering_pairs(const ZeroLattice& l) {
  std::vector<std::pair<int, int>> out;
  const int n = l.size();
  for (int hi = 0; hi < n; ++hi)
    for (int lo = 0; lo < n; ++lo) {
      if (hi == lo || !l.leq(lo, hi)) continue;
      bool covering = true;
      for (int m = 0; m < n && covering; ++m)
        if (m != hi && m != lo && l.leq(lo, m) && l.leq(m, hi)) covering = false;
      if (covering) out.emplace_back(hi, lo);
    }
  return out;
}

}  // namespace meadows
