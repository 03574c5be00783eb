#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "lpa/text_io.hpp"

namespace lpa::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Graph load_graph(const std::string& path) {
  try {
    return parse_graph(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

ProjectiveSpec load_spec(const std::string& path, const Graph& g) {
  try {
    return parse_spec(read_file(path), g);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

std::set<VertexRef> parse_vertex_list(const std::string& text, const Graph& g) {
  std::set<VertexRef> out;
  std::string item;
  std::istringstream in(text);
  // Split on commas that are not inside an index bracket.
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.insert(parse_vertex_ref(cur, g));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.insert(parse_vertex_ref(cur, g));
  if (out.empty()) throw Error("empty vertex list");
  return out;
}

void print_chain(std::ostream& out, const char* label, const std::vector<MonoidStep>& chain) {
  out << label << ":\n";
  if (chain.empty()) out << "  (no steps)\n";
  for (const auto& s : chain) out << "  " << to_string(s) << "\n";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in Leavitt path algebras, graph monoids and Steinberg algebras", "lpa"};
  app.require_subcommand(1);

  std::string graph_path, expr, expr2, spec_path, vertex, point, x_text, y_text, h_list;
  std::vector<std::string> part;
  std::uint32_t depth = 6, extra = 0, family_bound = 2;
  std::size_t max_states = 200000, maxlen = 1;
  bool show_stats = false;

  auto graph_arg = [&](CLI::App* sub) { sub->add_option("graph", graph_path, "Graph document")->required(); };

  auto* validate = app.add_subcommand("validate", "Parse a graph document and classify its concrete vertices");
  graph_arg(validate);

  auto* nf = app.add_subcommand("nf", "Normal form of an element");
  graph_arg(nf);
  nf->add_option("expr", expr, "Element expression, e.g. \"v - e[1].e[1]^\"")->required();
  nf->add_flag("--stats", show_stats, "Also report the number of rewrite steps");

  auto* mul = app.add_subcommand("mul", "Normal form of a product");
  graph_arg(mul);
  mul->add_option("a", expr, "Left factor")->required();
  mul->add_option("b", expr2, "Right factor")->required();

  auto* star_cmd = app.add_subcommand("star", "Normal form of the involution of an element");
  graph_arg(star_cmd);
  star_cmd->add_option("expr", expr, "Element expression")->required();

  auto* grade = app.add_subcommand("grade", "Homogeneous components of the normal form");
  graph_arg(grade);
  grade->add_option("expr", expr, "Element expression")->required();

  auto* meq = app.add_subcommand("monoid-eq", "Search for a common reduct of two graph monoid elements");
  graph_arg(meq);
  meq->add_option("x", x_text, "Monoid element, e.g. \"w[1] + q(v;{e[1]})\"")->required();
  meq->add_option("y", y_text, "Monoid element")->required();
  meq->add_option("--depth", depth, "Maximum reduction steps on each side")->capture_default_str();
  meq->add_option("--extra", extra, "Extra family edges per infinite emitter in the universe")->capture_default_str();
  meq->add_option("--max-states", max_states, "State cap for the search")->capture_default_str();

  auto* decompose = app.add_subcommand("decompose", "Normalize a projective presentation");
  graph_arg(decompose);
  decompose->add_option("spec", spec_path, "Spec file with lines `v; {e, f[1]}; n`")->required();

  auto* outsplit = app.add_subcommand("outsplit", "Out-split a vertex with E1 given explicitly");
  graph_arg(outsplit);
  outsplit->add_option("vertex", vertex, "Vertex to split")->required();
  outsplit->add_option("edges", part, "Edges of the first part")->required();

  auto* pend = app.add_subcommand("pipeline-end", "Endomorphism ring of a projective as a restricted Steinberg algebra");
  graph_arg(pend);
  pend->add_option("spec", spec_path, "Spec file")->required();

  auto* pcstar = app.add_subcommand("pipeline-cstar", "Graph-level corner pipeline with stabilization");
  graph_arg(pcstar);
  pcstar->add_option("spec", spec_path, "Spec file")->required();

  for (auto* sub : {pend, pcstar}) {
    sub->add_option("--maxlen", maxlen, "Path length bound for the basis sample")->capture_default_str();
    sub->add_option("--bound", family_bound, "Family index bound for the basis sample")->capture_default_str();
  }

  auto* cbasis = app.add_subcommand("corner-basis", "Basis bisections of the groupoid restricted to H");
  graph_arg(cbasis);
  cbasis->add_option("--H", h_list, "Comma-separated vertices")->required();
  cbasis->add_option("--maxlen", maxlen, "Path length bound")->capture_default_str();
  cbasis->add_option("--bound", family_bound, "Family index bound")->capture_default_str();

  auto* scheck = app.add_subcommand("steinberg-check", "Compare pi(ab) with pi(a) * pi(b)");
  graph_arg(scheck);
  scheck->add_option("a", expr, "Left factor")->required();
  scheck->add_option("b", expr2, "Right factor")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate pi(a) at a groupoid point (mu, nu, tail)");
  graph_arg(eval);
  eval->add_option("expr", expr, "Element expression")->required();
  eval->add_option("point", point, "Groupoid point, e.g. \"(e[1], e[1], w[1])\"")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run `lpa --help` for usage\n";
    return 2;
  }

  try {
    const Graph g = load_graph(graph_path);
    auto element = [&](const std::string& text) { return normal_form(g, parse_element(text, g)); };

    if (validate->parsed()) {
      out << "ok: " << g.vertices().size() << " vertices, " << g.vertex_families().size() << " vertex families, "
          << g.edges().size() << " edges, " << g.edge_families().size() << " edge families\n";
      for (const auto& v : g.vertices()) {
        const auto ref = VertexRef::concrete(v);
        out << "  " << v << ": " << to_string(g.classify(ref)) << "\n";
      }
      return 0;
    }
    if (nf->parsed()) {
      NormalFormStats stats;
      const LpaElement a = normal_form(g, parse_element(expr, g), &stats);
      out << print_element(a) << "\n";
      if (show_stats) out << "rewrite steps: " << stats.rewrite_steps << "\n";
      return 0;
    }
    if (mul->parsed()) {
      out << print_element(product(g, parse_element(expr, g), parse_element(expr2, g))) << "\n";
      return 0;
    }
    if (star_cmd->parsed()) {
      out << print_element(normal_form(g, star(parse_element(expr, g)))) << "\n";
      return 0;
    }
    if (grade->parsed()) {
      const auto parts = graded_components(element(expr));
      if (parts.empty()) out << "0\n";
      for (const auto& [d, a] : parts) out << "degree " << d << ": " << print_element(a) << "\n";
      return 0;
    }
    if (meq->parsed()) {
      const MonoidElement x = parse_monoid_element(x_text, g);
      const MonoidElement y = parse_monoid_element(y_text, g);
      const MonoidUniverse u = universe_from(g, {x, y}, extra);
      const EquivalenceResult r = equivalent(g, x, y, u, {depth, max_states});
      out << to_string(r.verdict) << "\n";
      if (r.verdict == Verdict::Yes) {
        out << "common reduct: " << to_string(r.common) << "\n";
        print_chain(out, "left", r.left);
        print_chain(out, "right", r.right);
        return 0;
      }
      out << (r.truncated ? "state cap reached" : "no common reduct within depth " + std::to_string(depth))
          << " (" << r.states << " states)\n";
      return 1;
    }
    if (decompose->parsed()) {
      const ProjectiveSpec s = load_spec(spec_path, g);
      const ProjectiveSpec n = normalize_projective_spec(g, s);
      out << print_spec(n);
      return 0;
    }
    if (outsplit->parsed()) {
      std::vector<EdgeRef> e1;
      for (const auto& e : part) e1.push_back(parse_edge_ref(e, g));
      std::sort(e1.begin(), e1.end());
      const OutSplitResult r = out_split(g, parse_vertex_ref(vertex, g), e1);
      for (const auto& line : r.trace) out << line << "\n";
      out << print_graph(r.graph);
      return 0;
    }
    if (pend->parsed() || pcstar->parsed()) {
      const ProjectiveSpec s = load_spec(spec_path, g);
      const PipelineOptions opts{maxlen, family_bound};
      out << print_report(pend->parsed() ? end_pipeline(g, s, opts) : cstar_pipeline(g, s, opts));
      return 0;
    }
    if (cbasis->parsed()) {
      const auto basis = restrict_basis(g, parse_vertex_list(h_list, g), maxlen, family_bound);
      out << basis.size() << " bisections\n";
      for (const auto& b : basis) out << "  " << to_string(b) << "  <->  " << to_string(Monomial{b.alpha, b.beta}) << "\n";
      return 0;
    }
    if (scheck->parsed()) {
      const LpaElement a = element(expr), b = element(expr2);
      const SteinbergElement lhs = pi_map(product(g, a, b));
      const SteinbergElement rhs = convolve(g, pi_map(a), pi_map(b));
      out << "pi(ab)       = " << to_string(lhs) << "\n";
      out << "pi(a)*pi(b)  = " << to_string(rhs) << "\n";
      out << "agree: " << (lhs == rhs ? "yes" : "no") << "\n";
      return lhs == rhs ? 0 : 2;
    }
    if (eval->parsed()) {
      const SteinbergElement f = pi_map(element(expr));
      out << to_string(evaluate(g, f, parse_groupoid_point(point, g))) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace lpa::cli
