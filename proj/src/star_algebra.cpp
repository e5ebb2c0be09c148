#include "ckbench/star_algebra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include "ckbench/errors.hpp"

namespace ckb {

namespace {

Path suffix(const Path& p, std::size_t from) {
  return Path{p.source, {p.edges.begin() + static_cast<std::ptrdiff_t>(from), p.edges.end()}};
}

// Is `head` an initial segment of `whole`, i.e. t_whole = t_head t_rest?
bool is_prefix(const Graph& g, const Path& head, const Path& whole) {
  if (head.size() > whole.size()) return false;
  if (head.empty()) return g.range(whole) == head.source;
  return std::equal(head.edges.begin(), head.edges.end(), whole.edges.begin());
}

std::optional<Word> word_product(const Graph& g, const Word& a, const Word& b) {
  if (a.nu.size() <= b.mu.size()) {
    if (!is_prefix(g, a.nu, b.mu)) return std::nullopt;
    return Word{*g.concat(a.mu, suffix(b.mu, a.nu.size())), b.nu};
  }
  if (!is_prefix(g, b.mu, a.nu)) return std::nullopt;
  return Word{a.mu, *g.concat(b.nu, suffix(a.nu, b.mu.size()))};
}

void accumulate(StarElement::TermMap& terms, const Word& w, const Radical& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

}  // namespace

void require_same_graph(const StarElement& x, const StarElement& y) {
  if (x.graph_ptr() != y.graph_ptr()) throw GraphMismatchError();
}

StarElement::StarElement(GraphPtr graph) : graph_(std::move(graph)) {}

StarElement StarElement::vertex(GraphPtr graph, VertexId v) {
  StarElement out(graph);
  out.add_term(1, Graph::empty_path(v), Graph::empty_path(v));
  return out;
}

StarElement StarElement::edge(GraphPtr graph, EdgeId e) {
  StarElement out(graph);
  const Path p = graph->edge_path(e);
  out.add_term(1, p, Graph::empty_path(p.source));
  return out;
}

StarElement StarElement::word(GraphPtr graph, const Radical& coeff, Path mu, Path nu) {
  if (!graph->valid(mu) || !graph->valid(nu)) throw std::invalid_argument("word built from a non-composable path");
  if (mu.source != nu.source) throw std::invalid_argument("word t_mu t_nu* needs s(mu) = s(nu)");
  StarElement out(graph);
  out.add_term(coeff, std::move(mu), std::move(nu));
  return out;
}

StarElement StarElement::unit(GraphPtr graph) {
  StarElement out(graph);
  for (std::size_t v = 0; v < graph->vertex_count(); ++v)
    out.add_term(1, Graph::empty_path(static_cast<VertexId>(v)), Graph::empty_path(static_cast<VertexId>(v)));
  return out;
}

void StarElement::add_term(const Radical& coeff, Path mu, Path nu) {
  if (mu.source != nu.source) return;  // t_mu t_nu* = 0
  accumulate(terms_, Word{std::move(mu), std::move(nu)}, coeff);
}

bool StarElement::is_core() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.mu.size() == t.first.nu.size(); });
}

std::size_t StarElement::max_level() const {
  std::size_t level = 0;
  for (const auto& [w, c] : terms_) level = std::max({level, w.mu.size(), w.nu.size()});
  return level;
}

StarElement& StarElement::operator+=(const StarElement& other) {
  require_same_graph(*this, other);
  for (const auto& [w, c] : other.terms_) accumulate(terms_, w, c);
  return *this;
}

StarElement& StarElement::operator-=(const StarElement& other) {
  require_same_graph(*this, other);
  for (const auto& [w, c] : other.terms_) accumulate(terms_, w, -c);
  return *this;
}

StarElement StarElement::operator-() const {
  StarElement out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

StarElement operator*(const StarElement& a, const StarElement& b) {
  require_same_graph(a, b);
  StarElement out(a.graph_);
  const Graph& g = *a.graph_;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      if (auto w = word_product(g, wa, wb)) accumulate(out.terms_, *w, ca * cb);
    }
  }
  return out;
}

StarElement operator*(const Radical& c, const StarElement& x) {
  StarElement out(x.graph_);
  if (c.is_zero()) return out;
  for (const auto& [w, coeff] : x.terms_) out.terms_.emplace(w, c * coeff);
  return out;
}

std::string StarElement::str() const {
  if (terms_.empty()) return "# zero\n";
  std::string out;
  for (const auto& [w, c] : terms_)
    out += "TERM " + c.str() + " " + graph_->path_str(w.mu) + " " + graph_->path_str(w.nu) + "\n";
  return out;
}

StarElement StarElement::parse(GraphPtr graph, std::string_view text) {
  StarElement out(graph);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens[0] != "TERM" || tokens.size() != 4) throw ParseError(line_no, "expected 'TERM <radical> <mu> <nu>'");
    try {
      const Radical c = Radical::parse(tokens[1]);
      Path mu = graph->parse_path(tokens[2]);
      Path nu = graph->parse_path(tokens[3]);
      if (mu.source != nu.source) throw ParseError(0, "term has s(mu) != s(nu)");
      out.add_term(c, std::move(mu), std::move(nu));
    } catch (const ParseError& err) {
      throw ParseError(line_no, err.what());
    }
  }
  return out;
}

StarElement multiply(const StarElement& x, const StarElement& y) { return x * y; }

StarElement adjoint(const StarElement& x) {
  StarElement out(x.graph_ptr());
  for (const auto& [w, c] : x.terms()) out.add_term(c, w.nu, w.mu);
  return out;
}

std::map<int, StarElement> degree_decompose(const StarElement& x) {
  std::map<int, StarElement> out;
  for (const auto& [w, c] : x.terms()) {
    auto it = out.try_emplace(w.degree(), x.graph_ptr()).first;
    it->second.add_term(c, w.mu, w.nu);
  }
  return out;
}

StarElement expand_to_level(const StarElement& x, std::size_t level) {
  const Graph& g = x.graph();
  StarElement out(x.graph_ptr());
  std::vector<std::pair<Word, Radical>> work(x.terms().begin(), x.terms().end());
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    const std::size_t m = w.min_length();
    if (m > level) throw std::invalid_argument("term already above the requested level");
    if (m == level) {
      out.add_term(c, std::move(w.mu), std::move(w.nu));
      continue;
    }
    const VertexId v = w.mu.source;
    if (g.in_edges(v).empty()) throw SingularVertexError(g.vertex_name(v));
    for (EdgeId e : g.in_edges(v)) work.emplace_back(Word{*g.append(w.mu, e), *g.append(w.nu, e)}, c);
  }
  return out;
}

std::vector<StarElement> i_expand(const StarElement& x, std::size_t i) {
  const Graph& g = x.graph();
  std::vector<StarElement> by_level(i + 1, StarElement(x.graph_ptr()));
  for (const auto& [w, c] : x.terms()) {
    if (w.mu.size() != w.nu.size() || w.mu.size() > i)
      throw NotCoreError("element is not in C_" + std::to_string(i));
    by_level[w.mu.size()].add_term(c, w.mu, w.nu);
  }
  std::vector<StarElement> comps(i + 1, StarElement(x.graph_ptr()));
  for (std::size_t j = 0; j < i; ++j) {
    for (const auto& [w, c] : by_level[j].terms()) {
      const VertexId v = w.mu.source;
      if (g.in_edges(v).empty()) {
        comps[j].add_term(c, w.mu, w.nu);
        continue;
      }
      for (EdgeId e : g.in_edges(v)) by_level[j + 1].add_term(c, *g.append(w.mu, e), *g.append(w.nu, e));
    }
  }
  comps[i] = by_level[i];
  return comps;
}

bool equal(const StarElement& x, const StarElement& y) {
  require_same_graph(x, y);
  const StarElement diff = x - y;
  for (const auto& [degree, comp] : degree_decompose(diff)) {
    std::size_t level = 0;
    for (const auto& [w, c] : comp.terms()) level = std::max(level, w.min_length());
    try {
      if (!expand_to_level(comp, level).is_zero()) return false;
    } catch (const SingularVertexError& err) {
      if (degree != 0)
        throw UndecidableError("equality past singular vertex '" + err.vertex() + "' outside the core");
      for (const auto& part : i_expand(comp, comp.max_level())) {
        if (!part.is_zero()) return false;
      }
    }
  }
  return true;
}

NormResult op_norm(const StarElement& x) {
  const Graph& g = x.graph();
  const VertexReport report = g.classify_vertices();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (report.vertices[v].singular) throw SingularVertexError(g.vertex_name(static_cast<VertexId>(v)));
  }
  const auto parts = degree_decompose(x);
  if (parts.empty()) return {};
  if (parts.size() > 1) throw MixedDegreeError("op_norm needs a single gauge degree");
  StarElement element = parts.begin()->first >= 0 ? x : adjoint(x);
  std::size_t level = 0;
  for (const auto& [w, c] : element.terms()) level = std::max(level, w.min_length());
  element = expand_to_level(element, level);

  // Per source vertex, rows are the mu's and columns the nu's of a block of matrix units.
  struct Block {
    std::map<Path, int> rows, cols;
    std::vector<std::tuple<int, int, double>> entries;
  };
  std::map<VertexId, Block> blocks;
  std::size_t term_count = 0;
  for (const auto& [w, c] : element.terms()) {
    Block& b = blocks[w.mu.source];
    const int r = b.rows.try_emplace(w.mu, static_cast<int>(b.rows.size())).first->second;
    const int k = b.cols.try_emplace(w.nu, static_cast<int>(b.cols.size())).first->second;
    b.entries.emplace_back(r, k, c.eval());
    term_count += c.terms().size();
  }
  NormResult result;
  const double eps = std::numeric_limits<double>::epsilon();
  for (const auto& [v, b] : blocks) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(b.rows.size()), static_cast<Eigen::Index>(b.cols.size()));
    for (const auto& [r, k, val] : b.entries) m(r, k) = val;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const double sigma = svd.singularValues()(0);
    const double dim = static_cast<double>(std::max(m.rows(), m.cols()));
    const double bound = (4.0 * static_cast<double>(term_count) + 8.0 * dim) * eps * std::max(1.0, m.norm());
    result.value = std::max(result.value, sigma);
    result.error_bound = std::max(result.error_bound, bound);
  }
  return result;
}

StarElement random_core_element(const GraphPtr& graph, std::size_t max_level, std::size_t terms, SplitMix64& rng) {
  StarElement out(graph);
  for (std::size_t t = 0; t < terms; ++t) {
    const auto& paths = graph->level(rng.below(max_level + 1)).paths;
    if (paths.empty()) continue;
    const Path& mu = paths[rng.below(paths.size())];
    std::vector<const Path*> partners;
    for (const Path& p : paths) {
      if (p.source == mu.source) partners.push_back(&p);
    }
    const Path& nu = *partners[rng.below(partners.size())];
    Radical c(rng.between(-3, 3));
    if (rng.below(4) == 0) c = c * Radical::sqrt_of(2);
    if (!c.is_zero()) out.add_term(c, mu, nu);
  }
  return out;
}

}  // namespace ckb
