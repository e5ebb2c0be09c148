#include "ckbench/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ckbench/errors.hpp"

namespace ckb {

namespace {

bool valid_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

}  // namespace

Graph::Graph(std::vector<std::string> vertex_names, std::vector<Edge> edges)
    : vertex_names_(std::move(vertex_names)), edges_(std::move(edges)) {
  for (std::size_t v = 0; v < vertex_names_.size(); ++v) {
    if (!vertex_index_.emplace(vertex_names_[v], static_cast<VertexId>(v)).second)
      throw std::invalid_argument("duplicate vertex name '" + vertex_names_[v] + "'");
  }
  out_.resize(vertex_names_.size());
  in_.resize(vertex_names_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.src < 0 || edge.rng < 0 || edge.src >= static_cast<VertexId>(vertex_names_.size()) ||
        edge.rng >= static_cast<VertexId>(vertex_names_.size()))
      throw std::invalid_argument("edge '" + edge.name + "' has a dangling endpoint");
    if (vertex_index_.count(edge.name) != 0 || !edge_index_.emplace(edge.name, static_cast<EdgeId>(e)).second)
      throw std::invalid_argument("duplicate name '" + edge.name + "'");
    out_[edge.src].push_back(static_cast<EdgeId>(e));
    in_[edge.rng].push_back(static_cast<EdgeId>(e));
  }
}

Graph::Graph(const Graph& other) : Graph(other.vertex_names_, other.edges_) {}

Graph Graph::parse(std::string_view text) {
  struct PendingEdge {
    std::string name, src, rng;
    int line;
  };
  std::vector<std::string> vertices;
  std::map<std::string, int, std::less<>> declared;  // name -> line
  std::vector<PendingEdge> pending;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t stmt_start = 0;
    while (stmt_start <= raw.size()) {
      std::size_t stmt_end = raw.find(';', stmt_start);
      if (stmt_end == std::string_view::npos) stmt_end = raw.size();
      const auto tokens = split_ws(raw.substr(stmt_start, stmt_end - stmt_start));
      stmt_start = stmt_end + 1;
      if (tokens.empty()) continue;
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        if (!valid_name(tokens[t])) throw ParseError(line_no, "invalid name '" + tokens[t] + "'");
      }
      const auto declare = [&](const std::string& name) {
        if (const auto it = declared.find(name); it != declared.end())
          throw ParseError(line_no, "duplicate name '" + name + "' (first declared on line " +
                                        std::to_string(it->second) + ")");
        declared.emplace(name, line_no);
      };
      if (tokens[0] == "V") {
        if (tokens.size() != 2) throw ParseError(line_no, "expected 'V <name>'");
        declare(tokens[1]);
        vertices.push_back(tokens[1]);
      } else if (tokens[0] == "E") {
        if (tokens.size() != 4) throw ParseError(line_no, "expected 'E <name> <src> <rng>'");
        declare(tokens[1]);
        pending.push_back({tokens[1], tokens[2], tokens[3], line_no});
      } else {
        throw ParseError(line_no, "unknown record '" + tokens[0] + "'");
      }
    }
    if (eol == text.size()) break;
  }
  std::map<std::string, VertexId, std::less<>> index;
  for (std::size_t v = 0; v < vertices.size(); ++v) index.emplace(vertices[v], static_cast<VertexId>(v));
  std::vector<Edge> edges;
  for (const auto& pe : pending) {
    const auto src = index.find(pe.src);
    const auto rng = index.find(pe.rng);
    if (src == index.end()) throw ParseError(pe.line, "edge '" + pe.name + "' has dangling source '" + pe.src + "'");
    if (rng == index.end()) throw ParseError(pe.line, "edge '" + pe.name + "' has dangling range '" + pe.rng + "'");
    edges.push_back({pe.name, src->second, rng->second});
  }
  return Graph(std::move(vertices), std::move(edges));
}

Graph Graph::bouquet(int loops) {
  std::vector<Edge> edges;
  for (int i = 1; i <= loops; ++i) edges.push_back({"e" + std::to_string(i), 0, 0});
  return Graph({"v"}, std::move(edges));
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  const auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Graph::find_edge(std::string_view name) const {
  const auto it = edge_index_.find(name);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

bool Graph::valid(const Path& p) const {
  if (p.source < 0 || p.source >= static_cast<VertexId>(vertex_count())) return false;
  if (p.empty()) return true;
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) {
    if (edges_[p.edges[i]].src != edges_[p.edges[i + 1]].rng) return false;
  }
  return edges_[p.edges.back()].src == p.source;
}

std::optional<Path> Graph::concat(const Path& a, const Path& b) const {
  if (a.source != range(b)) return std::nullopt;
  Path out{b.source, a.edges};
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

std::optional<Path> Graph::prepend(EdgeId e, const Path& p) const {
  if (edges_.at(e).src != range(p)) return std::nullopt;
  Path out{p.source, {e}};
  out.edges.insert(out.edges.end(), p.edges.begin(), p.edges.end());
  return out;
}

std::optional<Path> Graph::append(const Path& p, EdgeId e) const {
  if (p.source != edges_.at(e).rng) return std::nullopt;
  Path out{edges_[e].src, p.edges};
  out.edges.push_back(e);
  return out;
}

Path Graph::prefix(const Path& p, std::size_t length) const {
  if (length >= p.size()) return p;
  if (length == 0) return empty_path(range(p));
  Path out{edges_[p.edges[length - 1]].src, {p.edges.begin(), p.edges.begin() + static_cast<std::ptrdiff_t>(length)}};
  return out;
}

std::string Graph::path_str(const Path& p) const {
  if (p.empty()) return "@" + vertex_names_.at(p.source);
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i > 0) out += '.';
    out += edges_[p.edges[i]].name;
  }
  return out;
}

Path Graph::parse_path(std::string_view text) const {
  if (text.empty()) throw ParseError(0, "empty path token");
  if (text.front() == '@') {
    const auto v = find_vertex(text.substr(1));
    if (!v) throw ParseError(0, "unknown vertex '" + std::string(text.substr(1)) + "'");
    return empty_path(*v);
  }
  Path p;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    if (dot == std::string_view::npos) dot = text.size();
    const auto name = text.substr(start, dot - start);
    const auto e = find_edge(name);
    if (!e) throw ParseError(0, "unknown edge '" + std::string(name) + "'");
    p.edges.push_back(*e);
    start = dot + 1;
    if (dot == text.size()) break;
  }
  p.source = edges_[p.edges.back()].src;
  if (!valid(p)) throw ParseError(0, "path '" + std::string(text) + "' is not composable");
  return p;
}

const PathLevel& Graph::level(std::size_t length) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (const auto it = levels_.find(length); it != levels_.end()) return *it->second;
  std::vector<Path> current;
  for (std::size_t v = 0; v < vertex_count(); ++v) current.push_back(empty_path(static_cast<VertexId>(v)));
  for (std::size_t n = 1; n <= length; ++n) {
    std::vector<Path> next;
    if (n == 1) {
      for (std::size_t e = 0; e < edge_count(); ++e) next.push_back(edge_path(static_cast<EdgeId>(e)));
    } else {
      for (const Path& p : current) {
        for (EdgeId e : in_[p.source]) next.push_back(*append(p, e));
      }
      std::sort(next.begin(), next.end());
    }
    current = std::move(next);
  }
  auto lvl = std::make_unique<PathLevel>();
  lvl->paths = std::move(current);
  for (std::size_t i = 0; i < lvl->paths.size(); ++i) lvl->index.emplace(lvl->paths[i], i);
  const auto& ref = *lvl;
  levels_.emplace(length, std::move(lvl));
  return ref;
}

VertexReport Graph::classify_vertices() const {
  VertexReport report;
  for (std::size_t v = 0; v < vertex_count(); ++v) {
    VertexInfo info{out_[v].size(), in_[v].size(), in_[v].empty()};
    report.beta_admissible = report.beta_admissible && info.out_degree > 0;
    report.path_space_admissible = report.path_space_admissible && info.out_degree > 0 && info.in_degree > 0;
    report.all_regular = report.all_regular && !info.singular;
    report.vertices.push_back(info);
  }
  return report;
}

std::string Graph::str() const {
  std::string out;
  for (const auto& v : vertex_names_) out += "V " + v + "\n";
  for (const auto& e : edges_) out += "E " + e.name + " " + vertex_names_[e.src] + " " + vertex_names_[e.rng] + "\n";
  return out;
}

GraphPtr load_graph(std::string_view text) { return std::make_shared<const Graph>(Graph::parse(text)); }

std::string read_text_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + filename + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

GraphPtr load_graph_file(const std::string& filename) { return load_graph(read_text_file(filename)); }

GraphPtr make_bouquet(int loops) { return std::make_shared<const Graph>(Graph::bouquet(loops)); }

}  // namespace ckb
