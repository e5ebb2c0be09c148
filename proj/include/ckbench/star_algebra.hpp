#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ckbench/graph.hpp"
#include "ckbench/radical.hpp"
#include "ckbench/random.hpp"

namespace ckb {

// The word t_mu t_nu^*; ordered by (|mu|, mu, nu).
struct Word {
  Path mu;
  Path nu;
  int degree() const { return static_cast<int>(mu.size()) - static_cast<int>(nu.size()); }
  std::size_t min_length() const { return std::min(mu.size(), nu.size()); }
  friend bool operator==(const Word&, const Word&) = default;
  friend bool operator<(const Word& a, const Word& b) {
    if (!(a.mu == b.mu)) return a.mu < b.mu;
    return a.nu < b.nu;
  }
};

class StarElement {
 public:
  using TermMap = std::map<Word, Radical>;

  explicit StarElement(GraphPtr graph);

  static StarElement vertex(GraphPtr graph, VertexId v);
  static StarElement edge(GraphPtr graph, EdgeId e);
  static StarElement word(GraphPtr graph, const Radical& coeff, Path mu, Path nu);
  static StarElement unit(GraphPtr graph);

  void add_term(const Radical& coeff, Path mu, Path nu);
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Graph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  bool is_core() const;
  std::size_t max_level() const;

  StarElement& operator+=(const StarElement& other);
  StarElement& operator-=(const StarElement& other);
  StarElement operator-() const;
  friend StarElement operator+(StarElement a, const StarElement& b) { return a += b; }
  friend StarElement operator-(StarElement a, const StarElement& b) { return a -= b; }
  friend StarElement operator*(const StarElement& a, const StarElement& b);
  friend StarElement operator*(const Radical& c, const StarElement& x);

  // Element file lines, one TERM per term in canonical order; "# zero" for 0.
  std::string str() const;
  static StarElement parse(GraphPtr graph, std::string_view text);

 private:
  GraphPtr graph_;
  TermMap terms_;
};

StarElement multiply(const StarElement& x, const StarElement& y);
StarElement adjoint(const StarElement& x);
std::map<int, StarElement> degree_decompose(const StarElement& x);
StarElement expand_to_level(const StarElement& x, std::size_t level);
bool equal(const StarElement& x, const StarElement& y);
std::vector<StarElement> i_expand(const StarElement& x, std::size_t i);

struct NormResult {
  double value = 0.0;
  double error_bound = 0.0;
};
NormResult op_norm(const StarElement& x);

void require_same_graph(const StarElement& x, const StarElement& y);

// Sum of `terms` random words t_mu t_nu^* with |mu| = |nu| <= max_level and small coefficients.
StarElement random_core_element(const GraphPtr& graph, std::size_t max_level, std::size_t terms, SplitMix64& rng);

}  // namespace ckb
