#include "ckbench/hilbert_module.hpp"

#include "ckbench/core_endo.hpp"

namespace ckb {

std::string word_label(const IndexWord& w) {
  if (w.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
  return out;
}

GraphPathSystem::GraphPathSystem(GraphPtr graph, std::size_t max_depth) : graph_(std::move(graph)), max_depth_(max_depth) {
  if (!graph_->classify_vertices().path_space_admissible)
    throw InadmissibleGraphError("path space needs every vertex to emit and receive edges");
  if (max_depth_ < 1) throw std::invalid_argument("truncation depth must be at least 1");
}

Radical GraphPathSystem::frame_scale(std::size_t i) const {
  const Edge& e = graph_->edge(static_cast<EdgeId>(i));
  return Radical::sqrt_of(static_cast<long>(graph_->out_edges(e.src).size()));
}

RadFunction GraphPathSystem::frame_vector(std::size_t i) const {
  return RadFunction::indicator(graph_, graph_->edge_path(static_cast<EdgeId>(i)));
}

RadFunction GraphPathSystem::expected_gram(std::size_t i, std::size_t j) const {
  if (i != j) return zero();
  return RadFunction::indicator(graph_, Graph::empty_path(graph_->edge(static_cast<EdgeId>(i)).src));
}

std::vector<IndexWord> GraphPathSystem::words(std::size_t degree) const {
  std::vector<IndexWord> out;
  if (degree == 0) return {IndexWord{}};
  for (const Path& p : graph_->level(degree).paths) {
    IndexWord w;
    for (EdgeId e : p.edges) w.push_back(static_cast<int>(e));
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<RadFunction> GraphPathSystem::basis(std::size_t depth) const {
  std::vector<RadFunction> out;
  for (const Path& p : graph_->level(depth).paths) out.push_back(RadFunction::indicator(graph_, p));
  return out;
}

RadMatrix GraphPathSystem::as_matrix(const RadFunction& c, std::size_t depth) const {
  const RadFunction lifted = c.lift(depth);
  RadMatrix out(lifted.values().size(), lifted.values().size());
  for (std::size_t i = 0; i < lifted.values().size(); ++i) out.set(i, i, lifted.values()[i]);
  return out;
}

StarElement diagonal_to_star(const GraphPtr& graph, const RadFunction& c) {
  StarElement out(graph);
  const auto& paths = c.paths();
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (!c.values()[i].is_zero()) out.add_term(c.values()[i], paths[i], paths[i]);
  }
  return out;
}

namespace {

Path word_path(const Graph& g, const IndexWord& w) {
  Path p{g.edge(static_cast<EdgeId>(w.back())).src, {}};
  for (int e : w) p.edges.push_back(static_cast<EdgeId>(e));
  return p;
}

}  // namespace

StarElement operator_to_star(const HilbertModule<GraphPathSystem>& module, const CompactOp<RadFunction>& t) {
  const GraphPtr& graph = module.system().graph_ptr();
  const Graph& g = *graph;
  StarElement out(graph);
  for (const auto& [key, c] : t.entries) {
    const auto& paths = c.paths();
    for (std::size_t i = 0; i < paths.size(); ++i) {
      if (c.values()[i].is_zero()) continue;
      const Path& lambda = paths[i];
      const auto mu = key.first.empty() ? std::optional<Path>(lambda) : g.concat(word_path(g, key.first), lambda);
      const auto nu = key.second.empty() ? std::optional<Path>(lambda) : g.concat(word_path(g, key.second), lambda);
      if (mu && nu) out.add_term(c.values()[i], *mu, *nu);
    }
  }
  return out;
}

CheckReport beta_crosscheck(const GraphPtr& graph, const Path& mu, const Path& nu) {
  CheckReport report{"module beta against core beta"};
  const VertexReport info = graph->classify_vertices();
  if (!info.beta_admissible || !info.all_regular)
    throw InadmissibleGraphError("cross-check needs every vertex to emit and receive edges");
  if (mu.size() != nu.size()) throw NotCoreError("cross-check needs |mu| = |nu|");
  if (!graph->valid(mu) || !graph->valid(nu)) throw std::invalid_argument("path not in the graph");
  const HilbertModule<GraphPathSystem> module(GraphPathSystem(graph, std::max<std::size_t>(2, mu.size() + 1)));
  const auto element_of = [&](const Path& p) {
    if (p.empty()) return module.scalar_element(RadFunction::indicator(graph, p));
    IndexWord w;
    for (EdgeId e : p.edges) w.push_back(static_cast<int>(e));
    return module.frame_element(w);
  };
  const auto rank_one = module.theta(element_of(mu), element_of(nu));
  const StarElement via_module = operator_to_star(module, module.conj_beta(rank_one));
  // t_mu t_nu^* vanishes when the sources differ, and so does Theta on the frame side
  const StarElement word = mu.source == nu.source ? StarElement::word(graph, Radical(1), mu, nu) : StarElement(graph);
  const StarElement direct = CoreEndo(graph).beta(word);
  report.expect(equal(via_module, direct), [&] {
    return "U Theta U* differs from beta on " + graph->path_str(mu) + " " + graph->path_str(nu) + "\n-- module --\n" +
           via_module.str() + "-- core --\n" + direct.str();
  });
  report.expect(equal(operator_to_star(module, rank_one), word), [&] { return "dictionary does not send Theta to the word"; });
  return report;
}

}  // namespace ckb
