// Command-line workbench for finite common meadows and pre-meadows:
// classification, flasqueness, M(R), closures, decomposition and inverse
// queries over the plain-text ring/monoid/meadow/diagram formats.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meadows/meadows.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace meadows;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;
constexpr int kExitInternal = 70;

int level_exit(meadow_level l) {
  switch (l) {
    case meadow_level::common_meadow: return 0;
    case meadow_level::pre_meadow_with_a: return 1;
    case meadow_level::pre_meadow: return 2;
    case meadow_level::not_pre_meadow: return 3;
  }
  return kExitInternal;
}

struct Options {
  bool json = false;
  bool quiet = false;
  std::size_t max_carrier = limits{}.meadow_cap;

  limits caps() const {
    limits l;
    l.meadow_cap = max_carrier;
    return l;
  }
};

void say(const Options& opt, const std::string& line) {
  if (!opt.quiet && !opt.json) std::cout << line << '\n';
}

void emit_json(const Options& opt, const ordered_json& j) {
  if (opt.json) std::cout << j.dump(2) << '\n';
}

struct Loaded {
  io::file_kind kind;
  ring_ptr ring;
  std::optional<MulMonoid> monoid;
  std::optional<Meadow> meadow;                  // raw; classification is the caller's job
  std::optional<diagram_validation> diagram;
};

Loaded load_file(const fs::path& p) {
  std::string text = io::read_file(p);
  Loaded out{io::detect_kind(text), nullptr, {}, {}, {}};
  switch (out.kind) {
    case io::file_kind::ring: out.ring = io::parse_ring(text, /*validate=*/false); break;
    case io::file_kind::monoid: out.monoid = io::parse_monoid(text, /*validate=*/false); break;
    case io::file_kind::meadow: out.meadow = io::parse_meadow(text, /*validate=*/false); break;
    case io::file_kind::diagram: {
      DiagramInput in = io::parse_diagram_input(text, nullptr, p.parent_path());
      out.diagram = validate_diagram(in);
      break;
    }
  }
  return out;
}

// The meadow behind a file: raw tables, or the meadow of a valid diagram.
// Returns nullopt (after reporting) when a diagram fails validation.
std::optional<Meadow> meadow_of(const Loaded& l, const Options& opt, ordered_json& rep) {
  if (l.kind == io::file_kind::meadow) return l.meadow;
  if (l.kind == io::file_kind::diagram) {
    if (!l.diagram->ok()) {
      rep["level"] = "invalid";
      for (const auto& v : l.diagram->report.violations) rep["witnesses"].push_back(v.to_string());
      return std::nullopt;
    }
    return meadow_from_diagram(*l.diagram->diagram, opt.caps().meadow_cap);
  }
  throw domain_error("expected a meadow or diagram file");
}

std::string node_display(const Meadow& m, int z) {
  const std::string& t = m.token(z);
  auto dot = t.rfind('.');
  return dot == std::string::npos ? t : t.substr(0, dot);
}

std::string elem_display(const Meadow& m, const FiberPartition& p, int x) {
  std::string nd = node_display(m, p.node_of[x]);
  const std::string& t = m.token(x);
  if (t == nd) return t;  // the absorbing element
  if (t.size() > nd.size() + 1 && t.compare(0, nd.size(), nd) == 0 && t[nd.size()] == '.')
    return t.substr(nd.size() + 1) + "@" + nd;
  return t + "@" + nd;
}

// Accepts a carrier token, or "<elem>@<node>" with "top"/"bottom" aliases.
int resolve_elem(const Meadow& m, const FiberPartition& p, const std::string& ref) {
  if (auto i = m.index_of(ref)) return *i;
  auto at = ref.rfind('@');
  if (at == std::string::npos) throw domain_error("unknown element '" + ref + "'");
  std::string elem = ref.substr(0, at);
  std::string node = ref.substr(at + 1);
  int z = -1;
  int bottom = bottom_node(m, p);
  if (node == "top") {
    z = m.zero_times(m.zero);
  } else if (node == "bottom") {
    z = bottom;
  } else {
    for (int cand : p.nodes)
      if (m.token(cand) == node || node_display(m, cand) == node) {
        z = cand;
        break;
      }
  }
  if (z < 0) throw domain_error("unknown node '" + node + "'");
  for (int x : p.fiber_of_node(z)) {
    const std::string& t = m.token(x);
    if (t == elem || t == node_display(m, z) + "." + elem) return x;
  }
  throw domain_error("no element '" + elem + "' in fiber " + node_display(m, z));
}

ordered_json lattice_json(const Meadow& m) {
  ZeroLattice lat = zero_monoid(m);
  ordered_json j;
  j["nodes"] = ordered_json::array();
  for (int i = 0; i < lat.size(); ++i) j["nodes"].push_back(lat.token(i));
  j["edges"] = ordered_json::array();
  for (auto [hi, lo] : covering_pairs(lat))
    j["edges"].push_back({lat.token(hi), lat.token(lo)});
  return j;
}

ordered_json base_report(const std::string& kind) {
  ordered_json j;
  j["kind"] = kind;
  j["level"] = nullptr;
  j["flasque"] = nullptr;
  j["witnesses"] = ordered_json::array();
  j["lattice"] = nullptr;
  return j;
}

int run_check(const fs::path& file, const Options& opt) {
  Loaded l = load_file(file);
  ordered_json rep = base_report(io::to_string(l.kind));

  if (l.kind == io::file_kind::ring) {
    auto r = check_ring_axioms(*l.ring);
    rep["level"] = r.ok() ? "valid" : "invalid";
    for (const auto& v : r.violations) rep["witnesses"].push_back(v.to_string());
    say(opt, "ring " + l.ring->name + ": " + (r.ok() ? "valid" : "invalid: " + r.summary()));
    emit_json(opt, rep);
    return r.ok() ? 0 : 3;
  }
  if (l.kind == io::file_kind::monoid) {
    auto r = check_monoid(*l.monoid);
    rep["level"] = r.ok() ? "valid" : "invalid";
    for (const auto& v : r.violations) rep["witnesses"].push_back(v.to_string());
    say(opt, "monoid " + l.monoid->name + ": " + (r.ok() ? "valid" : "invalid: " + r.summary()));
    emit_json(opt, rep);
    return r.ok() ? 0 : 3;
  }

  std::optional<Meadow> m = meadow_of(l, opt, rep);
  if (!m) {
    say(opt, file.string() + ": invalid diagram: " + l.diagram->report.summary());
    emit_json(opt, rep);
    return 3;
  }
  classification cls = classify(*m);
  rep["level"] = to_string(cls.level);
  if (!cls.detail.empty()) rep["witnesses"].push_back(cls.detail);
  std::string line = m->name + ": " + to_string(cls.level);
  if (!cls.detail.empty()) line += " (" + cls.detail + ")";
  say(opt, line);

  if (cls.level >= meadow_level::pre_meadow) {
    FiberPartition p = fibers(*m);
    std::string fl = "fibers:";
    for (int i = 0; i < p.count(); ++i) {
      fl += (i ? "; P_" : " P_") + m->token(p.nodes[i]) + " = {";
      for (std::size_t k = 0; k < p.members[i].size(); ++k)
        fl += (k ? ", " : "") + m->token(p.members[i][k]);
      fl += "}";
    }
    say(opt, fl);
    rep["lattice"] = lattice_json(*m);
  }
  if (cls.level >= meadow_level::pre_meadow_with_a) {
    FlasqueReport f = is_flasque(*m);
    rep["flasque"] = f.flasque;
    say(opt, std::string("flasque: ") + (f.flasque ? "true" : "false"));
    for (const auto& fail : cls.no_greatest) {
      FiberPartition p = fibers(*m);
      std::string w = "J_" + elem_display(*m, p, fail.elem) + " has " +
                      std::to_string(fail.maximal_nodes.size()) + " maximal nodes:";
      for (int z : fail.maximal_nodes) w += " " + node_display(*m, z);
      rep["witnesses"].push_back(w);
      say(opt, w);
    }
  }
  if (cls.level == meadow_level::common_meadow && cls.inv) {
    FiberPartition p = fibers(*m);
    std::string iv = "inverse:";
    for (int x = 0; x < m->size(); ++x)
      iv += " " + m->token(x) + "->" + m->token((*cls.inv)[x]);
    say(opt, iv);
  }
  if (cls.supplied_inv_valid && !*cls.supplied_inv_valid)
    say(opt, "warning: supplied inverse vector violates the inverse axioms");
  emit_json(opt, rep);
  return level_exit(cls.level);
}

int run_flasque(const fs::path& file, const Options& opt) {
  Loaded l = load_file(file);
  ordered_json rep = base_report(io::to_string(l.kind));
  std::optional<Meadow> m = meadow_of(l, opt, rep);
  if (!m) {
    say(opt, file.string() + ": invalid diagram: " + l.diagram->report.summary());
    emit_json(opt, rep);
    return 3;
  }
  classification cls = classify(*m);
  rep["level"] = to_string(cls.level);
  if (cls.level < meadow_level::pre_meadow_with_a) {
    say(opt, m->name + ": not a pre-meadow with a (" + to_string(cls.level) + ")");
    emit_json(opt, rep);
    return level_exit(cls.level);
  }
  FlasqueReport all = is_flasque(*m);
  FlasqueReport top = is_flasque_via_top(*m);
  if (all.flasque != top.flasque) {
    std::cerr << "internal error: flasque routes disagree\n";
    return kExitInternal;
  }
  rep["flasque"] = all.flasque;
  rep["lattice"] = lattice_json(*m);
  bool common = cls.level == meadow_level::common_meadow;
  std::string line = m->name + ": flasque: " + (all.flasque ? "true" : "false") +
                     "; common: " + (common ? "true" : "false");
  say(opt, line);
  if (!all.flasque && all.failing_pair) {
    FiberPartition p = fibers(*m);
    std::string w = "transition " + node_display(*m, all.failing_pair->first) + " -> " +
                    node_display(*m, all.failing_pair->second) + " misses " +
                    elem_display(*m, p, *all.missing_target);
    rep["witnesses"].push_back(w);
    say(opt, w);
  }
  emit_json(opt, rep);
  return level_exit(cls.level);
}

int run_mr(const fs::path& file, const Options& opt, const std::string& out,
           const std::string& dot_out, const std::string& meadow_out) {
  ring_ptr r;
  if (fs::exists(file)) {
    Loaded l = load_file(file);
    if (l.kind != io::file_kind::ring) throw domain_error("mr expects a ring file");
    if (auto v = check_ring_axioms(*l.ring); !v.ok())
      throw domain_error("ring " + l.ring->name + " is invalid: " + v.summary());
    r = l.ring;
  } else if ((r = io::builtin_ring(file.string()))) {
    // name like Z6 accepted in place of a file
  } else {
    throw fs::filesystem_error("cannot open", file,
                               std::make_error_code(std::errc::no_such_file_or_directory));
  }

  MRDiagram mr = build_MR(r, opt.caps());
  Meadow m = meadow_from_diagram(mr.diagram, opt.caps().meadow_cap);
  say(opt, "M(" + r->name + "): " + std::to_string(mr.diagram.size()) + " nodes, carrier " +
               std::to_string(m.size()));

  ordered_json rep = base_report("diagram");
  rep["level"] = to_string(classify(m).level);
  rep["flasque"] = is_flasque(m).flasque;
  rep["lattice"] = lattice_json(m);

  if (!out.empty()) {
    fs::path op(out);
    std::string stem = op.stem().string();
    for (int i = 0; i < mr.diagram.size(); ++i) {
      if (i == mr.diagram.bottom()) continue;
      io::write_file(op.parent_path() / (stem + ".n" + std::to_string(i) + ".ring"),
                     io::serialize_ring(*mr.diagram.rings[i]));
    }
    io::write_file(op, io::serialize_diagram(mr.diagram, [&](int i) {
                     return "@" + stem + ".n" + std::to_string(i) + ".ring";
                   }));
    say(opt, "wrote " + out);
  } else if (!opt.json && !opt.quiet) {
    std::cout << io::serialize_diagram(mr.diagram);
  }
  if (!dot_out.empty()) {
    io::write_file(dot_out, io::emit_dot(mr.diagram));
    say(opt, "wrote " + dot_out);
  }
  if (!meadow_out.empty()) {
    io::write_file(meadow_out, io::serialize_meadow(m));
    say(opt, "wrote " + meadow_out);
  }
  emit_json(opt, rep);
  return 0;
}

int run_closure(const fs::path& file, const Options& opt, const std::string& out) {
  Loaded l = load_file(file);
  ordered_json rep = base_report(io::to_string(l.kind));
  std::optional<Meadow> m = meadow_of(l, opt, rep);
  if (!m) {
    say(opt, file.string() + ": invalid diagram: " + l.diagram->report.summary());
    emit_json(opt, rep);
    return 3;
  }
  classification cls = classify(*m);
  if (cls.level < meadow_level::pre_meadow_with_a) {
    rep["level"] = to_string(cls.level);
    say(opt, m->name + ": not a pre-meadow with a (" + to_string(cls.level) + ")");
    emit_json(opt, rep);
    return level_exit(cls.level);
  }
  Meadow closed = flasque_closure(*m);
  bool verbatim = closed == *m;
  rep["level"] = to_string(classify(closed).level);
  rep["flasque"] = is_flasque(closed).flasque;
  rep["lattice"] = lattice_json(closed);
  rep["witnesses"].push_back("carrier " + std::to_string(m->size()) + " -> " +
                             std::to_string(closed.size()));
  say(opt, m->name + ": closure carrier " + std::to_string(m->size()) + " -> " +
               std::to_string(closed.size()) + (verbatim ? " (input already flasque)" : ""));
  if (!out.empty()) {
    io::write_file(out, io::serialize_meadow(closed));
    say(opt, "wrote " + out);
  }
  emit_json(opt, rep);
  return 0;
}

int run_decompose(const fs::path& file, const Options& opt) {
  Loaded l = load_file(file);
  ordered_json rep = base_report(io::to_string(l.kind));
  std::optional<Meadow> m = meadow_of(l, opt, rep);
  if (!m) {
    say(opt, file.string() + ": invalid diagram: " + l.diagram->report.summary());
    emit_json(opt, rep);
    return 3;
  }
  classification cls = classify(*m);
  rep["level"] = to_string(cls.level);
  if (cls.level != meadow_level::common_meadow) {
    say(opt, m->name + ": not a common meadow; no decomposition attempted");
    emit_json(opt, rep);
    return level_exit(cls.level);
  }
  decomposition_result d = decomposition_iso(*m);
  rep["flasque"] = is_flasque(*m).flasque;
  rep["lattice"] = lattice_json(*m);
  if (d.ok()) {
    say(opt, m->name + ": isomorphic to " + d.mprime.name + " (carrier " +
                 std::to_string(d.mprime.size()) + ")");
    for (int x = 0; x < d.mprime.size(); ++x) {
      std::string line = "phi(" + d.mprime.token(x) + ") = " + m->token((*d.iso)[x]);
      rep["witnesses"].push_back(line);
      say(opt, line);
    }
    emit_json(opt, rep);
    return 0;
  }
  std::string why;
  for (std::size_t i = 0; i < d.reasons.size(); ++i) why += (i ? "; " : "") + d.reasons[i];
  rep["witnesses"].push_back(why);
  say(opt, m->name + ": no decomposition isomorphism (" + why + "); M' carrier " +
               std::to_string(d.mprime.size()) + " vs " + std::to_string(m->size()));
  emit_json(opt, rep);
  return 1;
}

int run_invert(const fs::path& file, const std::string& ref, const Options& opt) {
  Loaded l = load_file(file);
  ordered_json rep = base_report(io::to_string(l.kind));
  std::optional<Meadow> m = meadow_of(l, opt, rep);
  if (!m) {
    say(opt, file.string() + ": invalid diagram: " + l.diagram->report.summary());
    emit_json(opt, rep);
    return 3;
  }
  FiberPartition p = fibers(*m);
  int x = resolve_elem(*m, p, ref);
  std::vector<int> jx = compute_J(*m, x);
  ZeroLattice lat = zero_monoid(*m);
  rep["level"] = to_string(classify(*m).level);
  rep["lattice"] = lattice_json(*m);

  std::string jline = "J_" + elem_display(*m, p, x) + " = {";
  for (std::size_t i = 0; i < jx.size(); ++i)
    jline += (i ? ", " : "") + node_display(*m, jx[i]);
  jline += "}";
  say(opt, jline);
  rep["witnesses"].push_back(jline);

  std::vector<int> jpos;
  for (int z : jx) jpos.push_back(p.pos(z));
  std::optional<int> g = greatest(lat, jpos);
  if (!g) {
    std::vector<int> mx = maximal_elements(lat, jpos);
    std::string line = "no greatest element; maximal:";
    for (int i : mx) line += " " + node_display(*m, p.nodes[i]);
    say(opt, line);
    rep["witnesses"].push_back(line);
    emit_json(opt, rep);
    return 1;
  }
  int gnode = p.nodes[*g];
  int img = m->add(x, gnode);
  int one_g = m->add(m->one, gnode);
  int inv = -1;
  for (int u : p.fiber_of_node(gnode))
    if (m->mul(img, u) == one_g) inv = u;
  std::string line = "greatest node " + node_display(*m, gnode) + "; inverse " +
                     elem_display(*m, p, inv);
  say(opt, line);
  rep["witnesses"].push_back(line);
  emit_json(opt, rep);
  return 0;
}

int run_dot(const fs::path& file, const Options& opt, const std::string& out) {
  Loaded l = load_file(file);
  std::string dot;
  if (l.kind == io::file_kind::diagram) {
    if (!l.diagram->ok())
      throw domain_error("invalid diagram: " + l.diagram->report.summary());
    dot = io::emit_dot(*l.diagram->diagram);
  } else if (l.kind == io::file_kind::meadow) {
    dot = io::emit_dot(*l.meadow);
  } else {
    throw domain_error("dot expects a diagram or meadow file");
  }
  if (out.empty()) {
    std::cout << dot;
  } else {
    io::write_file(out, dot);
    say(opt, "wrote " + out);
  }
  return 0;
}

int run_fixtures(const fs::path& dir, const Options& opt) {
  std::vector<std::string> files = fixtures::write_all(dir);
  for (const auto& f : files) say(opt, (dir / f).string());
  if (opt.json) {
    ordered_json j;
    j["dir"] = dir.string();
    j["files"] = files;
    std::cout << j.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite common meadows workbench"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--max-carrier", opt.max_carrier, "carrier cap for constructed meadows");
  app.add_flag("--json", opt.json, "machine-readable report on stdout");
  app.add_flag("--quiet", opt.quiet, "suppress informational output");

  std::string file, elem, out, dot_out, meadow_out, dir;
  CLI::App* c_check = app.add_subcommand("check", "validate and classify a file");
  c_check->add_option("file", file)->required();
  CLI::App* c_flasque = app.add_subcommand("flasque", "decide flasqueness via both routes");
  c_flasque->add_option("file", file)->required();
  CLI::App* c_mr = app.add_subcommand("mr", "build M(R) from a ring");
  c_mr->add_option("ringfile", file)->required();
  c_mr->add_option("-o,--out", out, "write the diagram (plus node ring files)");
  c_mr->add_option("--dot", dot_out, "write DOT output");
  c_mr->add_option("--meadow", meadow_out, "write the meadow of M(R)");
  CLI::App* c_closure = app.add_subcommand("closure", "flasque closure of a meadow");
  c_closure->add_option("file", file)->required();
  c_closure->add_option("-o,--out", out, "write the closure as a meadow file");
  CLI::App* c_dec = app.add_subcommand("decompose", "decomposition isomorphism");
  c_dec->add_option("file", file)->required();
  CLI::App* c_inv = app.add_subcommand("invert", "J_x, its greatest node and the inverse");
  c_inv->add_option("file", file)->required();
  c_inv->add_option("elem", elem, "element, as a token or <elem>@<node>")->required();
  CLI::App* c_dot = app.add_subcommand("dot", "Hasse diagram as DOT");
  c_dot->add_option("file", file)->required();
  c_dot->add_option("-o,--out", out, "output path (stdout when omitted)");
  CLI::App* c_fix = app.add_subcommand("fixtures", "write all bundled fixtures to a directory");
  c_fix->add_option("dir", dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c_check->parsed()) return run_check(file, opt);
    if (c_flasque->parsed()) return run_flasque(file, opt);
    if (c_mr->parsed()) return run_mr(file, opt, out, dot_out, meadow_out);
    if (c_closure->parsed()) return run_closure(file, opt, out);
    if (c_dec->parsed()) return run_decompose(file, opt);
    if (c_inv->parsed()) return run_invert(file, elem, opt);
    if (c_dot->parsed()) return run_dot(file, opt, out);
    if (c_fix->parsed()) return run_fixtures(dir, opt);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoInput;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return kExitUsage;
}
