#include "lpa/text_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lpa {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t col = 0;  // 1-based
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Lexer {
 public:
  Lexer(const std::string& text, std::size_t line, std::size_t col0 = 1) : line_(line) {
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      Token t;
      t.col = col0 + i;
      if (ident_start(c)) {
        std::size_t j = i;
        while (j < text.size() && ident_char(text[j])) ++j;
        t.kind = Tok::Ident;
        t.text = text.substr(i, j - i);
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        t.kind = Tok::Int;
        t.text = text.substr(i, j - i);
        i = j;
      } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
        t.kind = Tok::Punct;
        t.text = "->";
        i += 2;
      } else if (std::string("[](){};,.^*+-/#:").find(c) != std::string::npos) {
        t.kind = Tok::Punct;
        t.text = std::string(1, c);
        ++i;
      } else {
        throw ParseError(line, t.col, std::string("unexpected character '") + c + "'");
      }
      toks_.push_back(std::move(t));
    }
    Token end;
    end.col = col0 + text.size();
    toks_.push_back(end);
  }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is(const char* punct) const { return peek().kind == Tok::Punct && peek().text == punct; }
  bool accept(const char* punct) {
    if (!is(punct)) return false;
    next();
    return true;
  }
  void expect(const char* punct) {
    if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail("expected " + what);
    return next().text;
  }
  std::uint32_t number(const std::string& what) {
    if (peek().kind != Tok::Int) fail("expected " + what);
    const Token t = next();
    if (t.text.size() > 9) throw ParseError(line_, t.col, "number too large");
    return static_cast<std::uint32_t>(std::stoul(t.text));
  }
  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(line_, t.col, msg + (t.kind == Tok::End ? " at end of input" : ""));
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const { throw ParseError(line_, t.col, msg); }
  std::size_t line() const { return line_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

// `[i]` or `[i,j]` after an identifier; none() when absent.
MultiIndex read_index(Lexer& lx) {
  if (!lx.accept("[")) return MultiIndex::none();
  const Token at = lx.peek();
  const std::uint32_t i = lx.number("an index");
  MultiIndex idx = MultiIndex::of(i);
  if (lx.accept(",")) idx = MultiIndex::of(i, lx.number("an index"));
  lx.expect("]");
  if (!idx.valid()) lx.fail_at(at, "family indices start at 1");
  return idx;
}

VertexRef read_vertex(Lexer& lx, const Graph& g) {
  const Token at = lx.peek();
  const std::string name = lx.ident("a vertex");
  const MultiIndex idx = read_index(lx);
  if (idx.arity == 0) {
    if (g.vertex_families().count(name)) lx.fail_at(at, "vertex family '" + name + "' needs an index");
    if (!g.vertices().count(name)) lx.fail_at(at, "unknown vertex '" + name + "'");
    return VertexRef::concrete(name);
  }
  auto it = g.vertex_families().find(name);
  if (it == g.vertex_families().end()) lx.fail_at(at, "'" + name + "' is not a vertex family and takes no index");
  if (it->second.arity != idx.arity) lx.fail_at(at, "vertex family '" + name + "' has a different arity");
  return VertexRef::member(name, idx);
}

EdgeRef read_edge(Lexer& lx, const Graph& g) {
  const Token at = lx.peek();
  const std::string name = lx.ident("an edge");
  const MultiIndex idx = read_index(lx);
  if (idx.arity == 0) {
    if (g.edge_families().count(name)) lx.fail_at(at, "edge family '" + name + "' needs an index");
    if (!g.edges().count(name)) lx.fail_at(at, "unknown edge '" + name + "'");
    return EdgeRef::concrete(name);
  }
  auto it = g.edge_families().find(name);
  if (it == g.edge_families().end()) lx.fail_at(at, "'" + name + "' is not an edge family and takes no index");
  if (it->second.arity != idx.arity) lx.fail_at(at, "edge family '" + name + "' has a different arity");
  return EdgeRef::member(name, idx);
}

Path read_path(Lexer& lx, const Graph& g) {
  const Token at = lx.peek();
  const std::string name = at.kind == Tok::Ident ? at.text : std::string();
  const bool is_vertex = g.vertices().count(name) || g.vertex_families().count(name);
  if (is_vertex) return g.vertex_path(read_vertex(lx, g));
  std::vector<EdgeRef> edges{read_edge(lx, g)};
  while (lx.accept(".")) edges.push_back(read_edge(lx, g));
  const VertexRef start = g.source(edges.front());
  try {
    return g.path(start, std::move(edges));
  } catch (const Error& e) {
    lx.fail_at(at, e.what());
  }
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

// Drops a `#` comment; `#` followed by a digit is an index placeholder.
std::string strip_comment(const std::string& line) {
  for (std::size_t i = 0; i < line.size(); ++i)
    if (line[i] == '#' && !(i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1]))))
      return line.substr(0, i);
  return line;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// ---------------------------------------------------------------------------
// Graph documents

struct RawLine {
  std::size_t line;
  std::string text;
};

const char* const kSections[] = {"VERTICES", "VERTEX_FAMILIES", "EDGES", "EDGE_FAMILIES", "SOURCE_OVERRIDES"};

// Name tables available while edges are being resolved.
struct Names {
  std::set<std::string> vertices;
  std::map<std::string, std::uint8_t> vertex_families;
};

VertexRef read_vertex_named(Lexer& lx, const Names& names) {
  const Token at = lx.peek();
  const std::string name = lx.ident("a vertex");
  const MultiIndex idx = read_index(lx);
  if (idx.arity == 0) {
    if (names.vertex_families.count(name)) lx.fail_at(at, "vertex family '" + name + "' needs an index");
    if (!names.vertices.count(name)) lx.fail_at(at, "unknown vertex '" + name + "'");
    return VertexRef::concrete(name);
  }
  auto it = names.vertex_families.find(name);
  if (it == names.vertex_families.end()) lx.fail_at(at, "'" + name + "' is not a vertex family and takes no index");
  if (it->second != idx.arity) lx.fail_at(at, "vertex family '" + name + "' has a different arity");
  return VertexRef::member(name, idx);
}

Endpoint read_endpoint(Lexer& lx, const Names& names, std::uint8_t edge_arity) {
  const Token at = lx.peek();
  const std::string name = lx.ident("a vertex or vertex family");
  if (!lx.is("[")) {
    if (names.vertices.count(name)) return VertexRef::concrete(name);
    auto it = names.vertex_families.find(name);
    if (it == names.vertex_families.end()) lx.fail_at(at, "unknown vertex '" + name + "'");
    if (it->second != edge_arity) lx.fail_at(at, "diagonal endpoint '" + name + "' must match the family arity");
    IndexedEndpoint ep{name, {}};
    for (int k = 0; k < edge_arity; ++k) ep.map.push_back({k, 0});
    return ep;
  }
  auto it = names.vertex_families.find(name);
  if (it == names.vertex_families.end()) lx.fail_at(at, "'" + name + "' is not a vertex family and takes no index");
  lx.expect("[");
  std::vector<IndexTerm> terms;
  do {
    if (lx.accept("#")) {
      const Token ct = lx.peek();
      const std::uint32_t c = lx.number("a coordinate number");
      if (c < 1 || c > edge_arity) lx.fail_at(ct, "coordinate #" + std::to_string(c) + " exceeds the family arity");
      std::uint32_t off = 0;
      if (lx.accept("+")) off = lx.number("an offset");
      terms.push_back({static_cast<int>(c) - 1, off});
    } else {
      const Token ct = lx.peek();
      const std::uint32_t k = lx.number("an index or #coordinate");
      if (k == 0) lx.fail_at(ct, "family indices start at 1");
      terms.push_back({-1, k});
    }
  } while (lx.accept(","));
  lx.expect("]");
  if (terms.size() != it->second) lx.fail_at(at, "vertex family '" + name + "' has a different arity");
  const bool constant = std::all_of(terms.begin(), terms.end(), [](const IndexTerm& t) { return t.coord < 0; });
  if (constant) {
    MultiIndex idx = terms.size() == 1 ? MultiIndex::of(terms[0].offset) : MultiIndex::of(terms[0].offset, terms[1].offset);
    return VertexRef::member(name, idx);
  }
  return IndexedEndpoint{name, std::move(terms)};
}

std::string print_endpoint(const Endpoint& ep) {
  if (const auto* v = std::get_if<VertexRef>(&ep)) return to_string(*v);
  const auto& ix = std::get<IndexedEndpoint>(ep);
  std::string s = ix.family + "[";
  for (std::size_t i = 0; i < ix.map.size(); ++i) {
    if (i) s += ",";
    const auto& t = ix.map[i];
    if (t.coord < 0) {
      s += std::to_string(t.offset);
    } else {
      s += "#" + std::to_string(t.coord + 1);
      if (t.offset) s += "+" + std::to_string(t.offset);
    }
  }
  return s + "]";
}

}  // namespace

Graph parse_graph(const std::string& text) {
  std::map<std::string, std::vector<RawLine>> sections;
  std::string current;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string body = strip_comment(lines[i]);
    if (blank(body)) continue;
    const std::string t = trim(body);
    if (std::find(std::begin(kSections), std::end(kSections), t) != std::end(kSections)) {
      if (sections.count(t)) throw ParseError(i + 1, 1, "section " + t + " appears twice");
      current = t;
      sections[t];
      continue;
    }
    if (current.empty()) throw ParseError(i + 1, 1, "content before the first section header");
    sections[current].push_back({i + 1, body});
  }
  if (sections["VERTICES"].empty() && sections["VERTEX_FAMILIES"].empty())
    throw ParseError(lines.size() + 1, 1, "graph has no vertices");

  Names names;
  std::vector<std::string> vertices;
  std::vector<VertexFamilySpec> vfams;
  for (const auto& raw : sections["VERTICES"]) {
    Lexer lx(raw.text, raw.line);
    while (!lx.at_end()) {
      vertices.push_back(lx.ident("a vertex name"));
      lx.accept(",");
    }
  }
  names.vertices.insert(vertices.begin(), vertices.end());
  for (const auto& raw : sections["VERTEX_FAMILIES"]) {
    Lexer lx(raw.text, raw.line);
    while (!lx.at_end()) {
      VertexFamilySpec f{lx.ident("a vertex family name"), 1};
      if (lx.accept("/")) {
        const Token at = lx.peek();
        const std::uint32_t a = lx.number("an arity");
        if (a < 1 || a > 2) lx.fail_at(at, "arity must be 1 or 2");
        f.arity = static_cast<std::uint8_t>(a);
      }
      names.vertex_families[f.id] = f.arity;
      vfams.push_back(std::move(f));
      lx.accept(",");
    }
  }

  std::vector<EdgeSpec> edges;
  for (const auto& raw : sections["EDGES"]) {
    Lexer lx(raw.text, raw.line);
    EdgeSpec e;
    e.id = lx.ident("an edge name");
    lx.expect(":");
    e.source = read_vertex_named(lx, names);
    lx.expect("->");
    e.range = read_vertex_named(lx, names);
    lx.expect_end();
    edges.push_back(std::move(e));
  }

  std::vector<EdgeFamilySpec> efams;
  std::map<std::string, std::size_t> efam_index;
  for (const auto& raw : sections["EDGE_FAMILIES"]) {
    Lexer lx(raw.text, raw.line);
    EdgeFamilySpec f;
    f.id = lx.ident("an edge family name");
    if (lx.accept("/")) {
      const Token at = lx.peek();
      const std::uint32_t a = lx.number("an arity");
      if (a < 1 || a > 2) lx.fail_at(at, "arity must be 1 or 2");
      f.arity = static_cast<std::uint8_t>(a);
    }
    lx.expect(":");
    f.source = read_endpoint(lx, names, f.arity);
    lx.expect("->");
    f.range = read_endpoint(lx, names, f.arity);
    lx.expect_end();
    efam_index[f.id] = efams.size();
    efams.push_back(std::move(f));
  }

  for (const auto& raw : sections["SOURCE_OVERRIDES"]) {
    Lexer lx(raw.text, raw.line);
    const Token at = lx.peek();
    const std::string fam = lx.ident("an edge family name");
    auto it = efam_index.find(fam);
    if (it == efam_index.end()) lx.fail_at(at, "unknown edge family '" + fam + "'");
    const MultiIndex idx = read_index(lx);
    if (idx.arity != efams[it->second].arity) lx.fail_at(at, "override index does not match the family arity");
    lx.expect(":");
    const VertexRef src = read_vertex_named(lx, names);
    lx.expect_end();
    if (!efams[it->second].source_overrides.emplace(idx, src).second) lx.fail_at(at, "duplicate override");
  }

  return Graph(std::move(vertices), std::move(vfams), std::move(edges), std::move(efams));
}

std::string print_graph(const Graph& g) {
  std::string out = "VERTICES\n";
  if (!g.vertices().empty()) {
    std::string line;
    for (const auto& v : g.vertices()) line += (line.empty() ? "" : " ") + v;
    out += line + "\n";
  }
  if (!g.vertex_families().empty()) {
    out += "VERTEX_FAMILIES\n";
    for (const auto& [id, f] : g.vertex_families()) out += id + (f.arity == 2 ? "/2" : "") + "\n";
  }
  if (!g.edges().empty()) {
    out += "EDGES\n";
    for (const auto& [id, e] : g.edges()) out += id + ": " + to_string(e.source) + " -> " + to_string(e.range) + "\n";
  }
  std::string overrides;
  if (!g.edge_families().empty()) {
    out += "EDGE_FAMILIES\n";
    for (const auto& [id, f] : g.edge_families()) {
      out += id + (f.arity == 2 ? "/2" : "") + ": " + print_endpoint(f.source) + " -> " + print_endpoint(f.range) + "\n";
      for (const auto& [idx, src] : f.source_overrides) overrides += id + to_string(idx) + ": " + to_string(src) + "\n";
    }
  }
  if (!overrides.empty()) out += "SOURCE_OVERRIDES\n" + overrides;
  return out;
}

VertexRef parse_vertex_ref(const std::string& text, const Graph& g) {
  Lexer lx(text, 1);
  VertexRef v = read_vertex(lx, g);
  lx.expect_end();
  return v;
}

EdgeRef parse_edge_ref(const std::string& text, const Graph& g) {
  Lexer lx(text, 1);
  EdgeRef e = read_edge(lx, g);
  lx.expect_end();
  return e;
}

Path parse_path(const std::string& text, const Graph& g) {
  Lexer lx(text, 1);
  Path p = read_path(lx, g);
  lx.expect_end();
  return p;
}

namespace {

BoundaryPoint read_boundary_point(Lexer& lx, const Graph& g) {
  if (lx.peek().kind == Tok::Ident && lx.peek().text == "lasso" && lx.peek(1).kind == Tok::Punct &&
      lx.peek(1).text == "(") {
    const Token at = lx.next();
    lx.expect("(");
    Path prefix = read_path(lx, g);
    lx.expect(";");
    Path cycle = read_path(lx, g);
    lx.expect(")");
    try {
      return make_lasso(g, prefix, cycle);
    } catch (const Error& e) {
      lx.fail_at(at, e.what());
    }
  }
  return finite_point(read_path(lx, g));
}

}  // namespace

BoundaryPoint parse_boundary_point(const std::string& text, const Graph& g) {
  Lexer lx(text, 1);
  BoundaryPoint x = read_boundary_point(lx, g);
  lx.expect_end();
  return x;
}

GroupoidPoint parse_groupoid_point(const std::string& text, const Graph& g) {
  Lexer lx(text, 1);
  const Token at = lx.peek();
  lx.expect("(");
  Path mu = read_path(lx, g);
  lx.expect(",");
  Path nu = read_path(lx, g);
  lx.expect(",");
  BoundaryPoint tail = read_boundary_point(lx, g);
  lx.expect(")");
  lx.expect_end();
  try {
    return make_point(g, mu, nu, tail);
  } catch (const Error& e) {
    lx.fail_at(at, e.what());
  }
}

// ---------------------------------------------------------------------------
// Element expressions

namespace {

class ElementParser {
 public:
  ElementParser(const std::string& text, const Graph& g) : lx_(text, 1), g_(g) {}

  LpaElement parse() {
    LpaElement a = sum();
    lx_.expect_end();
    return a;
  }

 private:
  LpaElement sum() {
    LpaElement out;
    Scalar sign = 1;
    if (lx_.accept("-")) sign = -1;
    else lx_.accept("+");
    out.add(scaled(), sign);
    for (;;) {
      if (lx_.accept("+")) out.add(scaled());
      else if (lx_.accept("-")) out.add(scaled(), -1);
      else break;
    }
    return out;
  }

  LpaElement scaled() {
    if (lx_.peek().kind != Tok::Int) return product();
    const Token at = lx_.peek();
    std::string lit = lx_.next().text;
    if (lx_.accept("/")) lit += "/" + std::to_string(lx_.number("a denominator"));
    Scalar c;
    try {
      c = parse_scalar(lit);
    } catch (const Error& e) {
      lx_.fail_at(at, e.what());
    }
    if (!lx_.accept("*")) {
      if (c == 0) return {};
      lx_.fail_at(at, "a scalar needs a factor, as in " + lit + "*v");
    }
    return c * scaled();
  }

  LpaElement product() {
    LpaElement acc = starred();
    while (lx_.is(".")) {
      const Token at = lx_.next();
      LpaElement rhs = starred();
      if (!acc.is_zero() && !rhs.is_zero() && !composable(acc, rhs))
        lx_.fail_at(at, "factors are not composable (no term of the left factor ends where a term of the right begins)");
      acc = multiply(acc, rhs);
    }
    return acc;
  }

  // Some pair p q*, g d* has s(q) = s(g); otherwise the product is vacuous.
  static bool composable(const LpaElement& a, const LpaElement& b) {
    for (const auto& [ma, ca] : a.terms())
      for (const auto& [mb, cb] : b.terms())
        if (ma.q.start() == mb.p.start()) return true;
    return false;
  }

  LpaElement starred() {
    LpaElement a = atom();
    while (lx_.accept("^")) a = star(a);
    return a;
  }

  LpaElement atom() {
    if (lx_.accept("(")) {
      LpaElement a = sum();
      lx_.expect(")");
      return a;
    }
    const Token at = lx_.peek();
    if (at.kind != Tok::Ident) lx_.fail("expected a vertex, an edge or '('");
    const std::string& name = at.text;
    if (g_.vertices().count(name) || g_.vertex_families().count(name)) return vertex_element(g_, read_vertex(lx_, g_));
    if (g_.edges().count(name) || g_.edge_families().count(name)) return edge_element(g_, read_edge(lx_, g_));
    lx_.fail_at(at, "unknown identifier '" + name + "'");
  }

  Lexer lx_;
  const Graph& g_;
};

}  // namespace

LpaElement parse_element(const std::string& text, const Graph& g) { return ElementParser(text, g).parse(); }

std::string print_element(const LpaElement& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : a.terms()) {
    const bool neg = c < 0;
    const Scalar mag = neg ? Scalar(-c) : c;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (mag != 1) s += to_string(mag) + "*";
    s += to_string(m);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Monoid elements and projective specs

namespace {

MonoidGen read_monoid_gen(Lexer& lx, const Graph& g) {
  if (lx.peek().kind == Tok::Ident && lx.peek().text == "q" && lx.peek(1).kind == Tok::Punct && lx.peek(1).text == "(") {
    const Token at = lx.next();
    lx.expect("(");
    MonoidGen gen{read_vertex(lx, g), {}};
    lx.expect(";");
    lx.expect("{");
    if (!lx.is("}")) {
      do gen.z.push_back(read_edge(lx, g));
      while (lx.accept(","));
    }
    lx.expect("}");
    lx.expect(")");
    std::sort(gen.z.begin(), gen.z.end());
    gen.z.erase(std::unique(gen.z.begin(), gen.z.end()), gen.z.end());
    if (gen.z.empty()) lx.fail_at(at, "q-generators need a nonempty edge set");
    try {
      validate_monoid_element(g, MonoidElement::of(gen));
    } catch (const Error& e) {
      lx.fail_at(at, e.what());
    }
    return gen;
  }
  return {read_vertex(lx, g), {}};
}

std::vector<EdgeRef> read_edge_set(Lexer& lx, const Graph& g) {
  std::vector<EdgeRef> out;
  lx.expect("{");
  if (!lx.is("}")) {
    do out.push_back(read_edge(lx, g));
    while (lx.accept(","));
  }
  lx.expect("}");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

MonoidElement parse_monoid_element(const std::string& text, const Graph& g) {
  Lexer lx(text, 1);
  MonoidElement x;
  if (lx.peek().kind == Tok::Int && lx.peek().text == "0" && lx.peek(1).kind == Tok::End) return x;
  do {
    std::uint64_t n = 1;
    if (lx.peek().kind == Tok::Int) {
      const Token at = lx.peek();
      n = lx.number("a multiplicity");
      if (n == 0) lx.fail_at(at, "multiplicity must be positive");
      lx.expect("*");
    }
    x.add(read_monoid_gen(lx, g), n);
  } while (lx.accept("+"));
  lx.expect_end();
  return x;
}

ProjectiveSpec parse_spec(const std::string& text, const Graph& g) {
  ProjectiveSpec s;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string body = strip_comment(lines[i]);
    if (blank(body)) continue;
    Lexer lx(body, i + 1);
    const Token at = lx.peek();
    SpecSummand x;
    x.vertex = read_vertex(lx, g);
    lx.expect(";");
    x.t = read_edge_set(lx, g);
    lx.expect(";");
    const Token nt = lx.peek();
    x.n = lx.number("a multiplicity");
    if (x.n == 0) lx.fail_at(nt, "multiplicity must be positive");
    lx.expect_end();
    try {
      validate_spec(g, {x});
    } catch (const Error& e) {
      lx.fail_at(at, e.what());
    }
    s.push_back(std::move(x));
  }
  if (s.empty()) throw ParseError(lines.size() + 1, 1, "spec has no summands");
  return s;
}

std::string print_spec(const ProjectiveSpec& s) { return to_string(s); }

// ---------------------------------------------------------------------------
// Reports

std::string print_report(const PipelineReport& r) {
  std::ostringstream out;
  const bool cstar = r.kind == "cstar";
  out << "pipeline: " << (cstar ? "graph-level corner (stabilized)" : "endomorphism ring") << "\n";
  out << "trace:\n";
  for (const auto& line : r.trace) out << "  " << line << "\n";

  out << "H = {";
  for (std::size_t i = 0; i < r.H.size(); ++i) out << (i ? ", " : "") << to_string(r.H[i]);
  out << "}\n";
  out << "|H| = sigma = " << r.H.size() << "\n";
  out << "heads:\n";
  for (const auto& b : r.blocks)
    out << "  " << to_string(b.h) << " -> " << to_string(b.base) << " via " << to_string(b.head) << "\n";

  const std::size_t n = r.shape.size();
  const std::string R = cstar ? "C*(F)" : "R";
  const std::string S = cstar ? "C*(SF)" : "S";
  out << "matrix shape " << n << "x" << n
      << (cstar ? " (R = C*(F), S = C*(SF); graph level only):\n" : " (R = L_K(F), S = L_K(G)):\n");
  auto print_matrix = [&](bool after) {
    for (const auto& row : r.shape.cells) {
      out << "  [";
      for (std::size_t j = 0; j < row.size(); ++j) {
        const auto& c = row[j];
        out << (j ? " | " : " ");
        if (after) out << to_string(c.row_h) << " " << S << " " << to_string(c.col_h);
        else out << to_string(c.row_base) << " " << R << " " << to_string(c.col_base);
      }
      out << " ]\n";
    }
  };
  print_matrix(false);
  out << "  ~=\n";
  print_matrix(true);

  out << "final graph:\n";
  std::istringstream graph(print_graph(r.final_graph));
  for (std::string line; std::getline(graph, line);) out << "  " << line << "\n";
  out << "restricted groupoid basis sample (" << r.basis_sample.size() << " bisections):\n";
  for (const auto& b : r.basis_sample) out << "  " << to_string(b) << "\n";
  return out.str();
}

}  // namespace lpa
