#include "ckbench/ktheory.hpp"

#include <sstream>
#include <stdexcept>

#include "ckbench/core_endo.hpp"
#include "ckbench/errors.hpp"
#include "ckbench/star_algebra.hpp"

namespace ckb {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.at(i, i) = 1;
  return out;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  if (rows.empty()) return IntMatrix();
  IntMatrix out(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != out.cols_) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < out.cols_; ++j) out.at(i, j) = rows[i][j];
  }
  return out;
}

IntMatrix IntMatrix::parse(const std::string& text) {
  std::vector<std::vector<BigInt>> rows;
  std::stringstream row_stream(text);
  std::string row;
  while (std::getline(row_stream, row, ';')) {
    std::vector<BigInt> entries;
    std::stringstream cell_stream(row);
    std::string cell;
    while (std::getline(cell_stream, cell, ',')) {
      const auto first = cell.find_first_not_of(" \t");
      const auto last = cell.find_last_not_of(" \t");
      if (first == std::string::npos) throw std::invalid_argument("empty matrix entry");
      std::string token = cell.substr(first, last - first + 1);
      if (token.front() == '+') token.erase(0, 1);
      BigInt value;
      if (token.empty() || value.set_str(token, 10) != 0) throw std::invalid_argument("bad matrix entry '" + cell + "'");
      entries.push_back(value);
    }
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw std::invalid_argument("empty matrix");
  IntMatrix out(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != out.cols_) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < out.cols_; ++j) out.at(i, j) = rows[i][j];
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shapes do not multiply");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  }
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shapes differ");
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

BigInt IntMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = at(i, j);
  }
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::string IntMatrix::str() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + at(i, j).get_str();
    out += "]\n";
  }
  return out;
}

namespace {

// Elementary operations applied to the working matrix while keeping U, U^-1, V, V^-1 in step.
struct SmithState {
  IntMatrix A, U, U_inv, V, V_inv;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (IntMatrix* m : {&A, &U}) {
      for (std::size_t c = 0; c < m->cols(); ++c) std::swap(m->at(i, c), m->at(j, c));
    }
    for (std::size_t r = 0; r < U_inv.rows(); ++r) std::swap(U_inv.at(r, i), U_inv.at(r, j));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (IntMatrix* m : {&A, &V}) {
      for (std::size_t r = 0; r < m->rows(); ++r) std::swap(m->at(r, i), m->at(r, j));
    }
    for (std::size_t c = 0; c < V_inv.cols(); ++c) std::swap(V_inv.at(i, c), V_inv.at(j, c));
  }
  // row_i += k row_j
  void add_row(std::size_t i, std::size_t j, const BigInt& k) {
    for (IntMatrix* m : {&A, &U}) {
      for (std::size_t c = 0; c < m->cols(); ++c) m->at(i, c) += k * m->at(j, c);
    }
    for (std::size_t r = 0; r < U_inv.rows(); ++r) U_inv.at(r, j) -= k * U_inv.at(r, i);
  }
  // col_i += k col_j
  void add_col(std::size_t i, std::size_t j, const BigInt& k) {
    for (IntMatrix* m : {&A, &V}) {
      for (std::size_t r = 0; r < m->rows(); ++r) m->at(r, i) += k * m->at(r, j);
    }
    for (std::size_t c = 0; c < V_inv.cols(); ++c) V_inv.at(j, c) -= k * V_inv.at(i, c);
  }
  void negate_row(std::size_t i) {
    for (IntMatrix* m : {&A, &U}) {
      for (std::size_t c = 0; c < m->cols(); ++c) m->at(i, c) = -m->at(i, c);
    }
    for (std::size_t r = 0; r < U_inv.rows(); ++r) U_inv.at(r, i) = -U_inv.at(r, i);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithState s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()),
               IntMatrix::identity(m.cols())};
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the trailing block
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (s.A.at(i, j) != 0 && (pi == rows || abs(s.A.at(i, j)) < abs(s.A.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    s.swap_rows(t, pi);
    s.swap_cols(t, pj);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s.A.at(i, t) == 0) continue;
        const BigInt q = s.A.at(i, t) / s.A.at(t, t);
        if (q != 0) s.add_row(i, t, -q);
        if (s.A.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s.A.at(t, j) == 0) continue;
        const BigInt q = s.A.at(t, j) / s.A.at(t, t);
        if (q != 0) s.add_col(j, t, -q);
        if (s.A.at(t, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t best_i = t, best_j = t;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (s.A.at(i, t) != 0 && abs(s.A.at(i, t)) < abs(s.A.at(best_i, best_j))) {
            best_i = i;
            best_j = t;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (s.A.at(t, j) != 0 && abs(s.A.at(t, j)) < abs(s.A.at(best_i, best_j))) {
            best_i = t;
            best_j = j;
          }
        }
        s.swap_rows(t, best_i);
        s.swap_cols(t, best_j);
        continue;
      }
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (s.A.at(i, j) % s.A.at(t, t) != 0) {
            bad = i;
            break;
          }
        }
      }
      if (bad == rows) break;
      s.add_row(t, bad, 1);
    }
    if (s.A.at(t, t) < 0) s.negate_row(t);
  }
  SmithForm out{s.U, s.A, s.V, s.U_inv, s.V_inv, t};
  return out;
}

std::string GroupPresentation::str() const {
  if (trivial()) return "0";
  std::string out;
  if (free_rank == 1) out = "Z";
  if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
  for (const BigInt& d : torsion) out += (out.empty() ? "" : " + ") + std::string("Z/") + d.get_str();
  return out;
}

GroupPresentation cokernel(const IntMatrix& m) {
  const SmithForm snf = smith_normal_form(m);
  GroupPresentation out;
  out.free_rank = m.rows() - snf.rank;
  for (std::size_t i = 0; i < snf.rank; ++i) {
    if (snf.D.at(i, i) > 1) out.torsion.push_back(snf.D.at(i, i));
  }
  return out;
}

CokerKer coker_ker(const IntMatrix& square) {
  if (square.rows() != square.cols()) throw std::invalid_argument("coker_ker needs a square matrix");
  const SmithForm snf = smith_normal_form(square);
  return CokerKer{cokernel(square), square.cols() - snf.rank};
}

GraphKTheory graph_k_theory(const GraphPtr& graph) {
  const Graph& g = *graph;
  const VertexReport info = g.classify_vertices();
  if (!info.all_regular || !info.beta_admissible)
    throw InadmissibleGraphError("K-theory evaluation needs every vertex to emit and receive edges");
  const std::size_t n = g.vertex_count();
  GraphKTheory out{{}, {}, IntMatrix(n, n), IntMatrix(n, n), {}, CheckReport{"graph K-theory"}};

  // Traces of beta(t_e t_e^*) in each source-vertex block of the next stage.
  const CoreEndo endo(graph);
  std::vector<bool> seen(n, false);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) {
    const Path mu = g.edge_path(e);
    const StarElement image = endo.beta(StarElement::word(graph, Radical(1), mu, mu));
    std::vector<Rational> trace(n);
    for (const auto& [w, c] : image.terms()) {
      if (!(w.mu == w.nu)) continue;
      if (!c.is_rational()) throw std::runtime_error("irrational trace in the stage beta matrix");
      trace[w.mu.source] += c.rational_part();
    }
    const VertexId v = mu.source;
    for (std::size_t w = 0; w < n; ++w) {
      if (trace[w].get_den() != 1) throw std::runtime_error("non-integral trace in the stage beta matrix");
      const BigInt value = trace[w].get_num();
      if (!seen[v]) {
        out.stage_beta.at(w, v) = value;
      } else {
        out.report.expect(out.stage_beta.at(w, v) == value, [&] { return "beta_* depends on the projection within block " + g.vertex_name(v); });
      }
    }
    seen[v] = true;
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) out.connecting.at(g.edge(e).src, g.edge(e).rng) += 1;
  out.report.expect(out.stage_beta * out.connecting == out.connecting * out.stage_beta,
                    [] { return "beta_* does not commute with the connecting map"; });

  const IntMatrix m = out.stage_beta - out.connecting;
  const SmithForm snf = smith_normal_form(m);

  // The limit of (coker M, C) is coker M when C acts surjectively on it; likewise C must be invertible on ker M.
  const IntMatrix x = snf.U * out.connecting * snf.U_inv;
  IntMatrix augmented(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      augmented.at(i, j) = x.at(i, j);
      augmented.at(i, n + j) = snf.D.at(i, j);
    }
  }
  if (!cokernel(augmented).trivial())
    throw std::runtime_error("stationary limit does not stabilize: the connecting map is not onto coker(beta_* - id)");
  const std::size_t kernel = n - snf.rank;
  if (kernel > 0) {
    const IntMatrix image = snf.V_inv * out.connecting * snf.V;
    IntMatrix restricted(kernel, kernel);
    for (std::size_t i = 0; i < kernel; ++i) {
      for (std::size_t j = 0; j < kernel; ++j) restricted.at(i, j) = image.at(snf.rank + i, snf.rank + j);
    }
    const BigInt det = restricted.determinant();
    if (det != 1 && det != -1)
      throw std::runtime_error("stationary limit does not stabilize: the connecting map is not invertible on ker(beta_* - id)");
  }
  out.k0 = cokernel(m);
  out.k1.free_rank = kernel;

  IntMatrix adjacency(n, n);
  for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e) adjacency.at(g.edge(e).src, g.edge(e).rng) += 1;
  out.classical = coker_ker(adjacency.transpose() - IntMatrix::identity(n));
  out.report.expect(out.classical.coker == out.k0 && out.classical.ker_rank == kernel, [&] {
    return "stagewise K_0 = " + out.k0.str() + ", classical coker(A^t - I) = " + out.classical.coker.str();
  });
  return out;
}

PaschkeResult paschke_sequence(const IntMatrix& beta_star, bool k1_of_core_is_zero) {
  if (beta_star.rows() != beta_star.cols()) throw std::invalid_argument("beta_* must be square");
  const CokerKer ck = coker_ker(beta_star - IntMatrix::identity(beta_star.rows()));
  PaschkeResult out;
  out.af = k1_of_core_is_zero;
  out.k0 = ck.coker;
  out.k1.free_rank = ck.ker_rank;
  const std::string rank = std::to_string(beta_star.rows());
  const std::string k0_core = rank == "1" ? "Z" : "Z^" + rank;
  if (k1_of_core_is_zero) {
    out.diagram = k0_core + " --(beta_* - id)--> " + k0_core + " --> K_0 = " + out.k0.str() + "\n" +
                  "  ^                                  |\n" +
                  "  |                                  v\n" +
                  "K_1 = " + out.k1.str() + " <-- 0 <--(beta_* - id)-- 0\n" +
                  "K_1(core) = 0 is assumed (AF core), not computed\n";
  } else {
    out.diagram = "K_1(core) unknown; exactness gives only:\n"
                  "  coker(beta_* - id on K_0(core)) = " + out.k0.str() + " embeds in K_0 of the crossed product\n" +
                  "  ker(beta_* - id on K_0(core)) = " + (ck.ker_rank == 0 ? std::string("0") : GroupPresentation{ck.ker_rank, {}}.str()) +
                  " is the image of K_1 of the crossed product\n";
  }
  return out;
}

}  // namespace ckb
