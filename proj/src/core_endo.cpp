#include "ckbench/core_endo.hpp"

#include "ckbench/errors.hpp"

namespace ckb {

namespace {

std::string show(const StarElement& x) { return x.str(); }

std::string two_sides(const std::string& what, const StarElement& lhs, const StarElement& rhs) {
  return what + "\n-- lhs --\n" + show(lhs) + "-- rhs --\n" + show(rhs);
}

}  // namespace

CoreEndo::CoreEndo(GraphPtr graph) : graph_(std::move(graph)) {
  for (std::size_t v = 0; v < graph_->vertex_count(); ++v) {
    const std::size_t d = graph_->out_edges(static_cast<VertexId>(v)).size();
    if (d == 0) throw InadmissibleGraphError("vertex '" + graph_->vertex_name(static_cast<VertexId>(v)) + "' is a sink");
    out_degree_.push_back(d);
  }
}

StarElement CoreEndo::beta(const StarElement& x) const {
  if (x.graph_ptr() != graph_) throw GraphMismatchError();
  if (!x.is_core()) throw NotCoreError("beta is defined on the core only");
  const Graph& g = *graph_;
  StarElement out(graph_);
  for (const auto& [w, c] : x.terms()) {
    const VertexId rm = g.range(w.mu);
    const VertexId rn = g.range(w.nu);
    const Radical coeff = c * rad_inv_sqrt(static_cast<std::uint64_t>(out_degree_[rm] * out_degree_[rn]));
    for (EdgeId e : g.out_edges(rm)) {
      const Path mu = *g.prepend(e, w.mu);
      for (EdgeId f : g.out_edges(rn)) out.add_term(coeff, mu, *g.prepend(f, w.nu));
    }
  }
  return out;
}

StarElement CoreEndo::build_w() const {
  StarElement w(graph_);
  for (std::size_t e = 0; e < graph_->edge_count(); ++e) {
    const Path p = graph_->edge_path(static_cast<EdgeId>(e));
    w.add_term(rad_inv_sqrt(static_cast<std::uint64_t>(out_degree_[p.source])), p, Graph::empty_path(p.source));
  }
  return w;
}

CheckReport CoreEndo::w_isometry_check() const {
  CheckReport report{"W isometry"};
  const StarElement w = build_w();
  const StarElement lhs = adjoint(w) * w;
  const StarElement one = StarElement::unit(graph_);
  report.expect(equal(lhs, one), [&] { return two_sides("W*W != 1", lhs, one); });
  const auto parts = degree_decompose(w);
  report.expect(parts.size() == 1 && parts.begin()->first == 1, [&] { return "W is not homogeneous of degree 1\n" + show(w); });
  return report;
}

CoreEndo::MatrixUnitFamily CoreEndo::matrix_unit_images(std::size_t level, VertexId v) const {
  MatrixUnitFamily family;
  family.report.name = "matrix units level " + std::to_string(level) + " at " + graph_->vertex_name(v);
  for (const Path& p : graph_->level(level).paths) {
    if (p.source == v) family.paths.push_back(p);
  }
  const std::size_t n = family.paths.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      StarElement unit = beta(StarElement::word(graph_, 1, family.paths[a], family.paths[b]));
      family.report.expect(!unit.is_zero(), [&] { return "zero image for " + graph_->path_str(family.paths[a]); });
      bool raised = true;
      for (const auto& [w, c] : unit.terms()) raised = raised && w.mu.size() == level + 1 && w.nu.size() == level + 1;
      family.report.expect(raised, [&] { return "image not in level " + std::to_string(level + 1) + "\n" + show(unit); });
      family.units.emplace(std::make_pair(a, b), std::move(unit));
    }
  }
  const auto& u = family.units;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const StarElement& eab = u.at({a, b});
      family.report.expect(equal(adjoint(eab), u.at({b, a})), [&] { return two_sides("adjoint law", adjoint(eab), u.at({b, a})); });
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          const StarElement lhs = eab * u.at({c, d});
          const StarElement rhs = b == c ? u.at({a, d}) : StarElement(graph_);
          family.report.expect(equal(lhs, rhs), [&] {
            return two_sides("product law for (" + graph_->path_str(family.paths[a]) + "," + graph_->path_str(family.paths[b]) +
                                 ")(" + graph_->path_str(family.paths[c]) + "," + graph_->path_str(family.paths[d]) + ")",
                             lhs, rhs);
          });
        }
      }
    }
  }
  return family;
}

CheckReport CoreEndo::covariance_check(const StarElement& x) const {
  CheckReport report{"covariance"};
  const StarElement w = build_w();
  const StarElement lhs = beta(x);
  const StarElement rhs = w * x * adjoint(w);
  report.expect(equal(lhs, rhs), [&] { return two_sides("beta(x) != W x W*\n-- x --\n" + show(x), lhs, rhs); });
  return report;
}

CheckReport CoreEndo::homomorphism_check(const StarElement& x, const StarElement& y) const {
  CheckReport report{"homomorphism"};
  const StarElement prod = beta(x * y);
  const StarElement split = beta(x) * beta(y);
  report.expect(equal(prod, split), [&] {
    return two_sides("beta(xy) != beta(x)beta(y)\n-- x --\n" + show(x) + "-- y --\n" + show(y), prod, split);
  });
  const StarElement star_first = beta(adjoint(x));
  const StarElement star_last = adjoint(beta(x));
  report.expect(equal(star_first, star_last), [&] { return two_sides("beta(x*) != beta(x)*\n-- x --\n" + show(x), star_first, star_last); });
  return report;
}

CheckReport CoreEndo::iterate_check(const StarElement& x) const {
  CheckReport report{"beta iterate"};
  const StarElement w = build_w();
  const StarElement w2 = w * w;
  const StarElement lhs = beta(beta(x));
  const StarElement rhs = w2 * x * adjoint(w2);
  report.expect(equal(lhs, rhs), [&] { return two_sides("beta^2(x) != W^2 x W*^2\n-- x --\n" + show(x), lhs, rhs); });
  return report;
}

std::vector<StarElement> core_matrix_units(const GraphPtr& graph, std::size_t max_level) {
  std::vector<StarElement> out;
  for (std::size_t level = 0; level <= max_level; ++level) {
    const auto& paths = graph->level(level).paths;
    for (const Path& mu : paths) {
      for (const Path& nu : paths) {
        if (mu.source == nu.source) out.push_back(StarElement::word(graph, 1, mu, nu));
      }
    }
  }
  return out;
}

StarElement tensor_to_core(const GraphPtr& bouquet, const TensorElement& x) {
  if (bouquet->vertex_count() != 1 || bouquet->edge_count() != x.n())
    throw InadmissibleGraphError("dictionary needs the bouquet on " + std::to_string(x.n()) + " loops");
  StarElement out(bouquet);
  for (const auto& [ij, c] : x.matrix().entries()) {
    const auto mu = digits(ij.first, x.n(), x.depth());
    const auto nu = digits(ij.second, x.n(), x.depth());
    out.add_term(c, Path{0, {mu.begin(), mu.end()}}, Path{0, {nu.begin(), nu.end()}});
  }
  return out;
}

RadMatrix averaging_projection(std::size_t n) {
  RadMatrix p(n, n);
  const Radical c = Radical(Rational(1, static_cast<unsigned long>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.set(i, j, c);
  }
  return p;
}

RadMatrix completing_unitary(std::size_t n) {
  std::vector<std::vector<Rational>> candidates{std::vector<Rational>(n, Rational(1))};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n, Rational(0));
    e[i] = 1;
    candidates.push_back(std::move(e));
  }
  return orthonormal_columns(candidates, n);
}

CheckReport tensor_beta_compare(std::size_t n, const TensorElement& x) {
  CheckReport report{"tensor form of beta"};
  if (x.n() != n) throw std::invalid_argument("tensor element has the wrong matrix size");
  const GraphPtr bouquet = make_bouquet(static_cast<int>(n));
  const CoreEndo endo(bouquet);
  const RadMatrix p = averaging_projection(n);
  report.expect(p * p == p, [&] { return "p^2 != p\n" + p.str(); });
  report.expect(p.trace() == Radical(1), [&] { return "trace(p) = " + p.trace().str(); });

  const TensorElement p_x(n, x.depth() + 1, kron(p, x.matrix()));
  const StarElement lhs = endo.beta(tensor_to_core(bouquet, x));
  const StarElement rhs = tensor_to_core(bouquet, p_x);
  report.expect(equal(lhs, rhs), [&] { return two_sides("beta(x) != p (x) x for x = " + x.str(), lhs, rhs); });

  const RadMatrix u = completing_unitary(n);
  report.expect(u.rows() == n && u.cols() == n && u * u.transpose() == RadMatrix::identity(n),
                [&] { return "completion is not unitary\n" + u.str(); });
  const RadMatrix e11 = RadMatrix::unit(n, 0, 0);
  report.expect(u * e11 * u.transpose() == p, [&] { return "u e11 u* != p\n" + u.str(); });

  const std::size_t rest = ipow(n, x.depth());
  const RadMatrix u1 = kron(u, RadMatrix::identity(rest));
  const TensorElement conj(n, x.depth() + 1, u1 * kron(e11, x.matrix()) * u1.transpose());
  report.expect(conj == p_x, [&] { return "Ad(u(x)1)(e11 (x) x) != p (x) x for x = " + x.str(); });
  const StarElement conj_core = tensor_to_core(bouquet, conj);
  report.expect(equal(conj_core, lhs), [&] { return two_sides("Ad(u(x)1)(e11 (x) x) != beta(x)", conj_core, lhs); });
  return report;
}

}  // namespace ckb
