#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "meadows/core.hpp"
#include "meadows/diagram.hpp"
#include "meadows/lattice.hpp"
#include "meadows/meadow.hpp"
#include "meadows/ring.hpp"

namespace meadows::io {

enum class file_kind { ring, monoid, meadow, diagram };

inline std::string to_string(file_kind k) {
  switch (k) {
    case file_kind::ring: return "ring";
    case file_kind::monoid: return "monoid";
    case file_kind::meadow: return "meadow";
    case file_kind::diagram: return "diagram";
  }
  return "?";
}

namespace detail {

struct line {
  int no;
  std::vector<std::string> tokens;
};

// Line-oriented token stream: '#' starts a comment, blank lines skipped.
class reader {
 public:
  explicit reader(std::string_view text) {
    int no = 0;
    std::string cur;
    std::istringstream in{std::string(text)};
    while (std::getline(in, cur)) {
      ++no;
      if (auto h = cur.find('#'); h != std::string::npos) cur.erase(h);
      std::istringstream ls(cur);
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) toks.push_back(t);
      if (!toks.empty()) lines_.push_back({no, std::move(toks)});
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  const line& peek() const {
    if (done()) throw parse_error(last_line_ + 1, "unexpected end of file");
    return lines_[pos_];
  }
  line next() {
    line l = peek();
    ++pos_;
    last_line_ = l.no;
    return l;
  }
  int last_line() const { return last_line_; }

 private:
  std::vector<line> lines_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

inline line expect(reader& r, const std::string& keyword, std::size_t arity) {
  line l = r.next();
  if (l.tokens[0] != keyword)
    throw parse_error(l.no, "expected '" + keyword + "', got '" + l.tokens[0] + "'");
  if (l.tokens.size() != arity + 1)
    throw parse_error(l.no, "'" + keyword + "' takes " + std::to_string(arity) + " argument(s)");
  return l;
}

inline int token_index(const std::vector<std::string>& elems, const std::string& tok, int lineno) {
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == tok) return static_cast<int>(i);
  throw parse_error(lineno, "unknown element token '" + tok + "'");
}

inline op_table read_table(reader& r, const std::vector<std::string>& elems) {
  const int n = static_cast<int>(elems.size());
  op_table t(n);
  for (int i = 0; i < n; ++i) {
    line l = r.next();
    if (static_cast<int>(l.tokens.size()) != n)
      throw parse_error(l.no, "table row has " + std::to_string(l.tokens.size()) +
                                  " tokens, expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) t(i, j) = token_index(elems, l.tokens[j], l.no);
  }
  return t;
}

inline std::vector<std::string> table_rows(const op_table& t, const std::vector<std::string>& elems) {
  std::vector<std::string> rows;
  for (int i = 0; i < t.size(); ++i) {
    std::string row;
    for (int j = 0; j < t.size(); ++j) {
      if (j) row += ' ';
      row += elems[t(i, j)];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline file_kind detect_kind(std::string_view text) {
  detail::reader r(text);
  const auto& l = r.peek();
  const std::string& kw = l.tokens[0];
  if (kw == "ring") return file_kind::ring;
  if (kw == "monoid") return file_kind::monoid;
  if (kw == "meadow") return file_kind::meadow;
  if (kw == "diagram") return file_kind::diagram;
  throw parse_error(l.no, "unknown file kind '" + kw + "'");
}

/// Parses the ring format. With validate, the ring laws are checked and a
/// violation is a load failure.
inline ring_ptr parse_ring(std::string_view text, bool validate = true) {
  detail::reader r(text);
  FiniteRing ring;
  ring.name = detail::expect(r, "ring", 1).tokens[1];
  {
    detail::line l = r.next();
    if (l.tokens[0] != "elements") throw parse_error(l.no, "expected 'elements'");
    ring.elems.assign(l.tokens.begin() + 1, l.tokens.end());
    if (ring.elems.empty()) throw parse_error(l.no, "ring needs at least one element");
  }
  ring.zero = detail::token_index(ring.elems, detail::expect(r, "zero", 1).tokens[1], r.last_line());
  ring.one = detail::token_index(ring.elems, detail::expect(r, "one", 1).tokens[1], r.last_line());
  detail::expect(r, "add", 0);
  ring.add = detail::read_table(r, ring.elems);
  detail::expect(r, "mul", 0);
  ring.mul = detail::read_table(r, ring.elems);
  if (!r.done()) throw parse_error(r.peek().no, "trailing content after ring");
  if (validate)
    if (auto rep = check_ring_axioms(ring); !rep.ok())
      throw domain_error("ring " + ring.name + " is not a ring: " + rep.summary());
  return make_ring(std::move(ring));
}

inline MulMonoid parse_monoid(std::string_view text, bool validate = true) {
  detail::reader r(text);
  MulMonoid m;
  m.name = detail::expect(r, "monoid", 1).tokens[1];
  {
    detail::line l = r.next();
    if (l.tokens[0] != "elements") throw parse_error(l.no, "expected 'elements'");
    m.elems.assign(l.tokens.begin() + 1, l.tokens.end());
    if (m.elems.empty()) throw parse_error(l.no, "monoid needs at least one element");
  }
  m.identity =
      detail::token_index(m.elems, detail::expect(r, "identity", 1).tokens[1], r.last_line());
  m.absorber =
      detail::token_index(m.elems, detail::expect(r, "absorber", 1).tokens[1], r.last_line());
  detail::expect(r, "mul", 0);
  m.mul = detail::read_table(r, m.elems);
  if (!r.done()) throw parse_error(r.peek().no, "trailing content after monoid");
  if (validate)
    if (auto rep = check_monoid(m); !rep.ok())
      throw domain_error("monoid " + m.name + " is invalid: " + rep.summary());
  return m;
}

/// Parses the meadow format; the inv vector is optional. With validate,
/// failing the pre-meadow laws is a load failure.
inline Meadow parse_meadow(std::string_view text, bool validate = true) {
  detail::reader r(text);
  Meadow m;
  m.name = detail::expect(r, "meadow", 1).tokens[1];
  {
    detail::line l = r.next();
    if (l.tokens[0] != "elements") throw parse_error(l.no, "expected 'elements'");
    m.elems.assign(l.tokens.begin() + 1, l.tokens.end());
    if (m.elems.empty()) throw parse_error(l.no, "meadow needs at least one element");
  }
  m.zero = detail::token_index(m.elems, detail::expect(r, "zero", 1).tokens[1], r.last_line());
  m.one = detail::token_index(m.elems, detail::expect(r, "one", 1).tokens[1], r.last_line());
  detail::expect(r, "add", 0);
  m.add = detail::read_table(r, m.elems);
  {
    detail::line l = r.next();
    if (l.tokens[0] != "neg") throw parse_error(l.no, "expected 'neg'");
    if (l.tokens.size() != m.elems.size() + 1)
      throw parse_error(l.no, "'neg' needs one token per element");
    for (std::size_t i = 1; i < l.tokens.size(); ++i)
      m.neg.push_back(detail::token_index(m.elems, l.tokens[i], l.no));
  }
  detail::expect(r, "mul", 0);
  m.mul = detail::read_table(r, m.elems);
  if (!r.done() && r.peek().tokens[0] == "inv") {
    detail::line l = r.next();
    if (l.tokens.size() != m.elems.size() + 1)
      throw parse_error(l.no, "'inv' needs one token per element");
    std::vector<int> inv;
    for (std::size_t i = 1; i < l.tokens.size(); ++i)
      inv.push_back(detail::token_index(m.elems, l.tokens[i], l.no));
    m.inv = std::move(inv);
  }
  if (!r.done()) throw parse_error(r.peek().no, "trailing content after meadow");
  if (validate)
    if (auto rep = check_premeadow(m); !rep.ok())
      throw domain_error("meadow " + m.name + " is not a pre-meadow: " + rep.summary());
  return m;
}

/// Registry of named, validated values with their source provenance.
class Workspace {
 public:
  void add_ring(const ring_ptr& r, std::string source = {}) {
    if (rings_.count(r->name)) throw domain_error("duplicate ring name " + r->name);
    rings_[r->name] = r;
    if (!source.empty()) provenance_["ring:" + r->name] = std::move(source);
  }
  ring_ptr find_ring(const std::string& name) const {
    auto it = rings_.find(name);
    return it == rings_.end() ? nullptr : it->second;
  }
  const std::map<std::string, ring_ptr>& rings() const { return rings_; }
  std::optional<std::string> source_of(const std::string& key) const {
    auto it = provenance_.find(key);
    if (it == provenance_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::map<std::string, ring_ptr> rings_;
  std::map<std::string, std::string> provenance_;
};

/// "Z<n>", "GF<q>" and 'x'-separated products of those, e.g. "Z2xZ3".
inline ring_ptr builtin_ring(const std::string& name) {
  auto parse_factor = [](const std::string& part) -> ring_ptr {
    auto digits = [](const std::string& s) {
      return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
    };
    if (part.size() > 1 && part[0] == 'Z' && digits(part.substr(1)))
      return cyclic_ring(std::stoi(part.substr(1)));
    if (part.size() > 2 && part.rfind("GF", 0) == 0 && digits(part.substr(2))) {
      int q = std::stoi(part.substr(2));
      int p = 2;
      while (p <= q && q % p != 0) ++p;
      int k = 0;
      int power = 1;
      while (power < q) {
        power *= p;
        ++k;
      }
      if (power != q) return nullptr;  // not a prime power
      return finite_field(p, std::max(k, 1));
    }
    return nullptr;
  };

  ring_ptr acc;
  std::string part;
  std::istringstream in(name);
  while (std::getline(in, part, 'x')) {
    ring_ptr f = parse_factor(part);
    if (!f) return nullptr;
    acc = acc ? ring_product(*acc, *f) : f;
  }
  return acc;
}

/// Resolves a diagram's ring reference: "@file" (relative to base_dir),
/// then workspace name, then builtin constructor name.
inline ring_ptr resolve_ring_spec(const std::string& spec, const Workspace* ws,
                                  const std::filesystem::path& base_dir) {
  if (!spec.empty() && spec[0] == '@') {
    std::filesystem::path p = base_dir / spec.substr(1);
    std::ifstream f(p);
    if (!f) throw domain_error("cannot open ring file " + p.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_ring(ss.str());
  }
  if (ws)
    if (ring_ptr r = ws->find_ring(spec)) return r;
  if (ring_ptr r = builtin_ring(spec)) return r;
  throw domain_error("unknown ring '" + spec + "'");
}

/// Parses the diagram format into raw input; run validate_diagram on the
/// result to obtain a usable value.
inline DiagramInput parse_diagram_input(std::string_view text, const Workspace* ws = nullptr,
                                        const std::filesystem::path& base_dir = ".") {
  detail::reader r(text);
  DiagramInput d;
  d.name = detail::expect(r, "diagram", 1).tokens[1];
  auto node_index = [&](const std::string& id) -> int {
    for (std::size_t i = 0; i < d.node_ids.size(); ++i)
      if (d.node_ids[i] == id) return static_cast<int>(i);
    return -1;
  };
  while (!r.done()) {
    detail::line l = r.next();
    const std::string& kw = l.tokens[0];
    if (kw == "node") {
      if (l.tokens.size() != 4 || l.tokens[2] != "ring")
        throw parse_error(l.no, "expected 'node <id> ring <name|@file>'");
      if (node_index(l.tokens[1]) >= 0)
        throw parse_error(l.no, "duplicate node " + l.tokens[1]);
      d.node_ids.push_back(l.tokens[1]);
      d.rings.push_back(resolve_ring_spec(l.tokens[3], ws, base_dir));
    } else if (kw == "bottom") {
      if (l.tokens.size() != 2) throw parse_error(l.no, "expected 'bottom <id>'");
      if (d.bottom >= 0) throw parse_error(l.no, "duplicate bottom line");
      int i = node_index(l.tokens[1]);
      if (i < 0) {
        d.node_ids.push_back(l.tokens[1]);
        d.rings.push_back(nullptr);
        i = static_cast<int>(d.node_ids.size()) - 1;
      }
      d.bottom = i;
    } else if (kw == "edge") {
      if (l.tokens.size() != 3) throw parse_error(l.no, "expected 'edge <hi> <lo>'");
      int hi = node_index(l.tokens[1]);
      int lo = node_index(l.tokens[2]);
      if (hi < 0) throw parse_error(l.no, "unknown node " + l.tokens[1]);
      if (lo < 0) throw parse_error(l.no, "unknown node " + l.tokens[2]);
      DiagramEdge e{hi, lo, {}};
      const ring_ptr& src = d.rings[hi];
      const ring_ptr dst = d.rings[lo] ? d.rings[lo] : trivial_ring();
      if (!src) throw parse_error(l.no, "edge out of the bottom node");
      std::vector<int> map(src->size(), -1);
      int given = 0;
      while (!r.done() && r.peek().tokens[0] == "map") {
        detail::line ml = r.next();
        if (ml.tokens.size() != 3) throw parse_error(ml.no, "expected 'map <src> <dst>'");
        auto si = src->index_of(ml.tokens[1]);
        if (!si) throw parse_error(ml.no, "unknown source element '" + ml.tokens[1] + "'");
        auto di = dst->index_of(ml.tokens[2]);
        if (!di) throw parse_error(ml.no, "unknown target element '" + ml.tokens[2] + "'");
        if (map[*si] >= 0) throw parse_error(ml.no, "duplicate map for '" + ml.tokens[1] + "'");
        map[*si] = *di;
        ++given;
      }
      // maps may only be omitted when the target is trivial (the bottom)
      if (given == 0 && dst->size() != 1)
        throw parse_error(l.no, "edge " + l.tokens[1] + " -> " + l.tokens[2] + " has no maps");
      if (given > 0) {
        if (given != src->size())
          throw parse_error(r.last_line(), "edge " + l.tokens[1] + " -> " + l.tokens[2] + " maps " +
                                               std::to_string(given) + " of " +
                                               std::to_string(src->size()) + " elements");
        e.map = std::move(map);
      }
      d.edges.push_back(std::move(e));
    } else {
      throw parse_error(l.no, "unexpected keyword '" + kw + "'");
    }
  }
  if (d.bottom < 0) throw parse_error(r.last_line(), "diagram has no 'bottom' line");
  return d;
}

// ---- serialization ----------------------------------------------------

inline std::string serialize_ring(const FiniteRing& r) {
  std::ostringstream o;
  o << "ring " << r.name << "\nelements";
  for (const auto& t : r.elems) o << ' ' << t;
  o << "\nzero " << r.token(r.zero) << "\none " << r.token(r.one) << "\nadd\n";
  for (const auto& row : detail::table_rows(r.add, r.elems)) o << row << '\n';
  o << "mul\n";
  for (const auto& row : detail::table_rows(r.mul, r.elems)) o << row << '\n';
  return o.str();
}

inline std::string serialize_monoid(const MulMonoid& m) {
  std::ostringstream o;
  o << "monoid " << m.name << "\nelements";
  for (const auto& t : m.elems) o << ' ' << t;
  o << "\nidentity " << m.token(m.identity) << "\nabsorber " << m.token(m.absorber) << "\nmul\n";
  for (const auto& row : detail::table_rows(m.mul, m.elems)) o << row << '\n';
  return o.str();
}

inline std::string serialize_meadow(const Meadow& m) {
  std::ostringstream o;
  o << "meadow " << m.name << "\nelements";
  for (const auto& t : m.elems) o << ' ' << t;
  o << "\nzero " << m.token(m.zero) << "\none " << m.token(m.one) << "\nadd\n";
  for (const auto& row : detail::table_rows(m.add, m.elems)) o << row << '\n';
  o << "neg";
  for (int v : m.neg) o << ' ' << m.token(v);
  o << "\nmul\n";
  for (const auto& row : detail::table_rows(m.mul, m.elems)) o << row << '\n';
  if (m.inv) {
    o << "inv";
    for (int v : *m.inv) o << ' ' << m.token(v);
    o << '\n';
  }
  return o.str();
}

/// Serializes a diagram, writing covering edges only; edges into the
/// bottom are implied and omitted. ring_ref names each node's ring in the
/// output (by default its own name).
inline std::string serialize_diagram(const RingDiagram& d,
                                     std::function<std::string(int)> ring_ref = {}) {
  if (!ring_ref) ring_ref = [&](int i) { return d.rings[i]->name; };
  std::ostringstream o;
  o << "diagram " << d.name << '\n';
  for (int i = 0; i < d.size(); ++i) {
    if (i == d.bottom()) continue;
    o << "node " << d.lattice.token(i) << " ring " << ring_ref(i) << '\n';
  }
  o << "bottom " << d.lattice.token(d.bottom()) << '\n';
  for (auto [hi, lo] : covering_pairs(d.lattice)) {
    if (lo == d.bottom()) continue;
    o << "edge " << d.lattice.token(hi) << ' ' << d.lattice.token(lo) << '\n';
    const RingHom& h = d.hom(hi, lo);
    for (int x = 0; x < h.src->size(); ++x)
      o << "map " << h.src->token(x) << ' ' << h.dst->token(h.map[x]) << '\n';
  }
  return o.str();
}

// ---- DOT output --------------------------------------------------------

namespace detail {

inline std::string dot_of_lattice(const std::string& name, const ZeroLattice& lat,
                                  const std::vector<std::string>& labels) {
  // render order: top first, then remaining nodes in stored order
  std::vector<int> order{lat.zero};
  for (int i = 0; i < lat.size(); ++i)
    if (i != lat.zero) order.push_back(i);
  std::ostringstream o;
  o << "digraph \"" << name << "\" {\n  rankdir=TB;\n";
  for (int i : order)
    o << "  \"" << lat.token(i) << "\" [label=\"" << labels[i] << "\"];\n";
  std::vector<std::pair<int, int>> edges = covering_pairs(lat);
  std::vector<int> pos(lat.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  std::sort(edges.begin(), edges.end(), [&](auto a, auto b) {
    if (pos[a.first] != pos[b.first]) return pos[a.first] < pos[b.first];
    return pos[a.second] < pos[b.second];
  });
  for (auto [hi, lo] : edges)
    o << "  \"" << lat.token(hi) << "\" -> \"" << lat.token(lo) << "\";\n";
  o << "}\n";
  return o.str();
}

}  // namespace detail

inline std::string emit_dot(const RingDiagram& d) {
  std::vector<std::string> labels;
  for (int i = 0; i < d.size(); ++i)
    labels.push_back(d.lattice.token(i) + ": " + d.rings[i]->name + " (n=" +
                     std::to_string(d.rings[i]->size()) + ")");
  return detail::dot_of_lattice(d.name, d.lattice, labels);
}

inline std::string emit_dot(const Meadow& m) {
  ZeroLattice lat = zero_monoid(m);
  FiberPartition part = fibers(m);
  std::vector<std::string> labels;
  for (int i = 0; i < lat.size(); ++i)
    labels.push_back(lat.token(i) + ": P_" + lat.token(i) + " (n=" +
                     std::to_string(part.members[i].size()) + ")");
  return detail::dot_of_lattice(m.name, lat, labels);
}

// ---- files --------------------------------------------------------------

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw std::filesystem::filesystem_error(
      "cannot open", p, std::make_error_code(std::errc::no_such_file_or_directory));
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, std::string_view text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::filesystem::filesystem_error(
      "cannot write", p, std::make_error_code(std::errc::permission_denied));
  f << text;
}

}  // namespace meadows::io
