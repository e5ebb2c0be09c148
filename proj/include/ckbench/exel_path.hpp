#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ckbench/errors.hpp"
#include "ckbench/graph.hpp"
#include "ckbench/radical.hpp"
#include "ckbench/random.hpp"
#include "ckbench/report.hpp"

namespace ckb {

inline std::string scalar_str(const Rational& q) { return q.get_str(); }
inline std::string scalar_str(const Radical& r) { return r.str(); }

// Locally constant function on the infinite path space of a graph with no
// sinks and no sources, stored by its values on the length-`depth` prefixes.
template <class Scalar>
class BasicDepthFunction {
 public:
  BasicDepthFunction(GraphPtr graph, std::size_t depth) : graph_(std::move(graph)), depth_(depth) {
    if (!graph_->classify_vertices().path_space_admissible)
      throw InadmissibleGraphError("path space needs every vertex to emit and receive edges");
    values_.assign(graph_->level(depth_).paths.size(), Scalar());
  }

  static BasicDepthFunction constant(GraphPtr graph, const Scalar& c) {
    BasicDepthFunction out(std::move(graph), 0);
    std::fill(out.values_.begin(), out.values_.end(), c);
    return out;
  }

  static BasicDepthFunction indicator(GraphPtr graph, const Path& mu) {
    BasicDepthFunction out(graph, mu.size());
    out.set(mu, Scalar(1));
    return out;
  }

  const Graph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  std::size_t depth() const { return depth_; }
  const std::vector<Scalar>& values() const { return values_; }
  const std::vector<Path>& paths() const { return graph_->level(depth_).paths; }

  const Scalar& at(const Path& p) const { return values_.at(slot(p)); }
  void set(const Path& p, Scalar value) { values_.at(slot(p)) = std::move(value); }
  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Scalar& s) { return s == Scalar(); });
  }

  BasicDepthFunction lift(std::size_t depth) const {
    if (depth < depth_) throw std::invalid_argument("cannot lift to a smaller depth");
    if (depth == depth_) return *this;
    BasicDepthFunction out(graph_, depth, NoCheck{});
    const auto& target = graph_->level(depth).paths;
    for (std::size_t i = 0; i < target.size(); ++i) out.values_[i] = at(graph_->prefix(target[i], depth_));
    return out;
  }

  BasicDepthFunction& operator+=(const BasicDepthFunction& o) { return combine(o, [](Scalar& a, const Scalar& b) { a += b; }); }
  BasicDepthFunction& operator-=(const BasicDepthFunction& o) { return combine(o, [](Scalar& a, const Scalar& b) { a -= b; }); }
  BasicDepthFunction& operator*=(const BasicDepthFunction& o) { return combine(o, [](Scalar& a, const Scalar& b) { a = a * b; }); }
  friend BasicDepthFunction operator+(BasicDepthFunction a, const BasicDepthFunction& b) { return a += b; }
  friend BasicDepthFunction operator-(BasicDepthFunction a, const BasicDepthFunction& b) { return a -= b; }
  friend BasicDepthFunction operator*(BasicDepthFunction a, const BasicDepthFunction& b) { return a *= b; }
  friend BasicDepthFunction operator*(const Scalar& c, BasicDepthFunction a) {
    for (auto& v : a.values_) v = c * v;
    return a;
  }
  friend bool operator==(const BasicDepthFunction& a, const BasicDepthFunction& b) {
    if (a.graph_ != b.graph_) return false;
    const std::size_t d = std::max(a.depth_, b.depth_);
    return a.lift(d).values_ == b.lift(d).values_;
  }

  // File form: one `F <path> <value>` line per path.
  std::string str() const {
    std::string out;
    const auto& ps = paths();
    for (std::size_t i = 0; i < ps.size(); ++i) out += "F " + graph_->path_str(ps[i]) + " " + scalar_str(values_[i]) + "\n";
    return out;
  }

 private:
  struct NoCheck {};
  BasicDepthFunction(GraphPtr graph, std::size_t depth, NoCheck) : graph_(std::move(graph)), depth_(depth) {
    values_.assign(graph_->level(depth_).paths.size(), Scalar());
  }

  std::size_t slot(const Path& p) const {
    if (p.size() != depth_) throw std::invalid_argument("path length does not match the function depth");
    const auto& index = graph_->level(depth_).index;
    const auto it = index.find(p);
    if (it == index.end()) throw std::invalid_argument("path not in the graph");
    return it->second;
  }

  template <class Op>
  BasicDepthFunction& combine(const BasicDepthFunction& o, Op op) {
    if (graph_ != o.graph_) throw GraphMismatchError();
    const std::size_t d = std::max(depth_, o.depth_);
    if (d != depth_) *this = lift(d);
    if (d == o.depth_) {
      for (std::size_t i = 0; i < values_.size(); ++i) op(values_[i], o.values_[i]);
    } else {
      const BasicDepthFunction lifted = o.lift(d);
      for (std::size_t i = 0; i < values_.size(); ++i) op(values_[i], lifted.values_[i]);
    }
    return *this;
  }

  template <class S>
  friend BasicDepthFunction<S> alpha_shift(const BasicDepthFunction<S>& f);
  template <class S>
  friend BasicDepthFunction<S> transfer_L(const BasicDepthFunction<S>& f);

  GraphPtr graph_;
  std::size_t depth_;
  std::vector<Scalar> values_;
};

using DepthFunction = BasicDepthFunction<Rational>;
using RadFunction = BasicDepthFunction<Radical>;

// (alpha f)(eta_1 ... eta_{k+1}) = f(eta_2 ... eta_{k+1})
template <class S>
BasicDepthFunction<S> alpha_shift(const BasicDepthFunction<S>& f) {
  using F = BasicDepthFunction<S>;
  F out(f.graph_, f.depth_ + 1, typename F::NoCheck{});
  const auto& target = f.graph_->level(f.depth_ + 1).paths;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const Path& p = target[i];
    out.values_[i] = f.at(Path{p.source, {p.edges.begin() + 1, p.edges.end()}});
  }
  return out;
}

// L(f)(eta) = |s^-1(r(eta))|^-1 sum_{s(e) = r(eta)} f(e eta); output depth max(k - 1, 1).
template <class S>
BasicDepthFunction<S> transfer_L(const BasicDepthFunction<S>& f) {
  using F = BasicDepthFunction<S>;
  if (f.depth_ == 0) return transfer_L(f.lift(1));
  const Graph& g = *f.graph_;
  const std::size_t d = std::max<std::size_t>(f.depth_ - 1, 1);
  F out(f.graph_, d, typename F::NoCheck{});
  const auto& target = g.level(d).paths;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const Path& eta = target[i];
    const auto& preimages = g.out_edges(g.range(eta));
    S sum{};
    for (EdgeId e : preimages) sum += f.at(g.prefix(*g.prepend(e, eta), f.depth_));
    out.values_[i] = S(Rational(1, static_cast<unsigned long>(preimages.size()))) * sum;
  }
  return out;
}

DepthFunction ml_inner(const DepthFunction& a, const DepthFunction& b);
CheckReport transfer_identity_check(const DepthFunction& a, const DepthFunction& b);
// Missing paths default to zero and are reported through `warnings`.
DepthFunction parse_depth_function(const GraphPtr& graph, std::string_view text, std::vector<std::string>* warnings);
RadFunction to_radical(const DepthFunction& f);
// Values p/q with |p| <= 4, 1 <= q <= 3.
DepthFunction random_depth_function(const GraphPtr& graph, std::size_t depth, SplitMix64& rng);

}  // namespace ckb
