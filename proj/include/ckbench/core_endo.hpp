#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ckbench/report.hpp"
#include "ckbench/star_algebra.hpp"
#include "ckbench/tensor.hpp"

namespace ckb {

class CoreEndo {
 public:
  explicit CoreEndo(GraphPtr graph);  // rejects sinks

  const GraphPtr& graph_ptr() const { return graph_; }
  StarElement beta(const StarElement& x) const;
  StarElement build_w() const;
  CheckReport w_isometry_check() const;

  struct MatrixUnitFamily {
    std::vector<Path> paths;
    std::map<std::pair<std::size_t, std::size_t>, StarElement> units;
    CheckReport report;
  };
  MatrixUnitFamily matrix_unit_images(std::size_t level, VertexId v) const;

  CheckReport covariance_check(const StarElement& x) const;
  CheckReport homomorphism_check(const StarElement& x, const StarElement& y) const;
  // beta(beta(x)) against W^2 x W*^2.
  CheckReport iterate_check(const StarElement& x) const;

 private:
  GraphPtr graph_;
  std::vector<std::size_t> out_degree_;
};

// Every t_mu t_nu^* with |mu| = |nu| <= max_level and s(mu) = s(nu).
std::vector<StarElement> core_matrix_units(const GraphPtr& graph, std::size_t max_level);

// e_{mu nu} (x) 1 -> s_mu s_nu^* on the bouquet whose edges are the letters in order.
StarElement tensor_to_core(const GraphPtr& bouquet, const TensorElement& x);
RadMatrix averaging_projection(std::size_t n);
RadMatrix completing_unitary(std::size_t n);
CheckReport tensor_beta_compare(std::size_t n, const TensorElement& x);

}  // namespace ckb
