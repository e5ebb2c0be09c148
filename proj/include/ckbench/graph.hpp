#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ckb {

using VertexId = int;
using EdgeId = int;

struct Edge {
  std::string name;
  VertexId src;
  VertexId rng;
};

// mu_1 ... mu_n with s(mu_i) = r(mu_{i+1}). `source` is s(mu_n), or the base
// vertex of an empty path. Ordered by length, then edges, then source.
struct Path {
  VertexId source = 0;
  std::vector<EdgeId> edges;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  friend bool operator==(const Path&, const Path&) = default;
  friend bool operator<(const Path& a, const Path& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    if (a.edges != b.edges) return a.edges < b.edges;
    return a.source < b.source;
  }
};

struct PathLevel {
  std::vector<Path> paths;
  std::map<Path, std::size_t> index;
};

struct VertexInfo {
  std::size_t out_degree = 0;  // |s^-1(v)|
  std::size_t in_degree = 0;   // |r^-1(v)|
  bool singular = false;       // r^-1(v) empty
};

struct VertexReport {
  std::vector<VertexInfo> vertices;
  bool beta_admissible = true;
  bool path_space_admissible = true;
  bool all_regular = true;
};

class Graph {
 public:
  Graph(std::vector<std::string> vertex_names, std::vector<Edge> edges);
  Graph(const Graph& other);
  Graph& operator=(const Graph&) = delete;

  static Graph parse(std::string_view text);
  static Graph bouquet(int loops);

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;

  // s^-1(v) and r^-1(v), in edge order.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_.at(v); }

  VertexId range(const Path& p) const { return p.empty() ? p.source : edges_[p.edges.front()].rng; }
  VertexId source(const Path& p) const { return p.source; }
  bool valid(const Path& p) const;

  static Path empty_path(VertexId v) { return Path{v, {}}; }
  Path edge_path(EdgeId e) const { return Path{edges_.at(e).src, {e}}; }
  // a followed by b; requires s(a) = r(b).
  std::optional<Path> concat(const Path& a, const Path& b) const;
  std::optional<Path> prepend(EdgeId e, const Path& p) const;
  std::optional<Path> append(const Path& p, EdgeId e) const;
  Path prefix(const Path& p, std::size_t length) const;

  std::string path_str(const Path& p) const;
  Path parse_path(std::string_view text) const;

  std::vector<Path> paths(std::size_t length) const { return level(length).paths; }
  const PathLevel& level(std::size_t length) const;

  VertexReport classify_vertices() const;
  std::string str() const;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::map<std::string, VertexId, std::less<>> vertex_index_;
  std::map<std::string, EdgeId, std::less<>> edge_index_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::size_t, std::unique_ptr<PathLevel>> levels_;
};

using GraphPtr = std::shared_ptr<const Graph>;

GraphPtr load_graph(std::string_view text);
GraphPtr load_graph_file(const std::string& filename);
GraphPtr make_bouquet(int loops);
std::string read_text_file(const std::string& filename);

}  // namespace ckb
