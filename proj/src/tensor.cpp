#include "ckbench/tensor.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace ckb {

std::size_t ipow(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(out, base, &out)) throw std::overflow_error("tensor dimension overflow");
  }
  return out;
}

std::vector<int> digits(std::size_t index, std::size_t base, std::size_t length) {
  std::vector<int> out(length);
  for (std::size_t t = length; t-- > 0;) {
    out[t] = static_cast<int>(index % base);
    index /= base;
  }
  return out;
}

std::size_t from_digits(const std::vector<int>& letters, std::size_t base) {
  std::size_t out = 0;
  for (int d : letters) out = out * base + static_cast<std::size_t>(d);
  return out;
}

RadMatrix RadMatrix::identity(std::size_t n) {
  RadMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.entries_.emplace(Index{i, i}, Radical(1));
  return out;
}

RadMatrix RadMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  RadMatrix out(n, n);
  out.set(i, j, 1);
  return out;
}

Radical RadMatrix::at(std::size_t i, std::size_t j) const {
  const auto it = entries_.find({i, j});
  return it == entries_.end() ? Radical() : it->second;
}

void RadMatrix::set(std::size_t i, std::size_t j, const Radical& value) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  if (value.is_zero()) {
    entries_.erase({i, j});
  } else {
    entries_[{i, j}] = value;
  }
}

void RadMatrix::add(std::size_t i, std::size_t j, const Radical& value) {
  if (value.is_zero()) return;
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  auto [it, inserted] = entries_.try_emplace({i, j}, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

RadMatrix& RadMatrix::operator+=(const RadMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (const auto& [ij, v] : other.entries_) add(ij.first, ij.second, v);
  return *this;
}

RadMatrix& RadMatrix::operator-=(const RadMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (const auto& [ij, v] : other.entries_) add(ij.first, ij.second, -v);
  return *this;
}

RadMatrix operator*(const RadMatrix& a, const RadMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  RadMatrix out(a.rows_, b.cols_);
  std::map<std::size_t, std::vector<std::pair<std::size_t, const Radical*>>> b_rows;
  for (const auto& [ij, v] : b.entries_) b_rows[ij.first].emplace_back(ij.second, &v);
  for (const auto& [ik, av] : a.entries_) {
    const auto it = b_rows.find(ik.second);
    if (it == b_rows.end()) continue;
    for (const auto& [j, bv] : it->second) out.add(ik.first, j, av * *bv);
  }
  return out;
}

RadMatrix operator*(const Radical& c, const RadMatrix& a) {
  RadMatrix out(a.rows_, a.cols_);
  if (c.is_zero()) return out;
  for (const auto& [ij, v] : a.entries_) out.entries_.emplace(ij, c * v);
  return out;
}

RadMatrix RadMatrix::transpose() const {
  RadMatrix out(cols_, rows_);
  for (const auto& [ij, v] : entries_) out.entries_.emplace(Index{ij.second, ij.first}, v);
  return out;
}

Radical RadMatrix::trace() const {
  Radical out;
  for (const auto& [ij, v] : entries_) {
    if (ij.first == ij.second) out += v;
  }
  return out;
}

std::string RadMatrix::str() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0) out += ", ";
      out += at(i, j).str();
    }
    out += "]\n";
  }
  return out;
}

RadMatrix kron(const RadMatrix& a, const RadMatrix& b) {
  RadMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (const auto& [ij, av] : a.entries()) {
    for (const auto& [kl, bv] : b.entries())
      out.set(ij.first * b.rows() + kl.first, ij.second * b.cols() + kl.second, av * bv);
  }
  return out;
}

std::vector<std::vector<double>> to_dense(const RadMatrix& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols(), 0.0));
  for (const auto& [ij, v] : m.entries()) out[ij.first][ij.second] = v.eval();
  return out;
}

RadMatrix orthonormal_columns(const std::vector<std::vector<Rational>>& candidates, std::size_t dim) {
  const auto dot = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  std::vector<std::vector<Rational>> basis;
  std::vector<Rational> norms;
  for (const auto& c : candidates) {
    if (c.size() != dim) throw std::invalid_argument("candidate vector has wrong length");
    std::vector<Rational> v = c;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Rational f = dot(c, basis[k]) / norms[k];
      for (std::size_t i = 0; i < dim; ++i) v[i] -= f * basis[k][i];
    }
    const Rational nn = dot(v, v);
    if (sgn(nn) == 0) continue;
    basis.push_back(std::move(v));
    norms.push_back(nn);
  }
  RadMatrix out(dim, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Radical scale = rad_inv_sqrt(norms[k]);
    for (std::size_t i = 0; i < dim; ++i) out.set(i, k, scale * Radical(basis[k][i]));
  }
  return out;
}

double min_eigenvalue(const RadMatrix& symmetric) {
  if (symmetric.rows() != symmetric.cols()) throw std::invalid_argument("eigenvalues of a non-square matrix");
  if (symmetric.rows() == 0) return 0.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(symmetric.rows()), static_cast<Eigen::Index>(symmetric.cols()));
  for (const auto& [ij, v] : symmetric.entries()) m(static_cast<Eigen::Index>(ij.first), static_cast<Eigen::Index>(ij.second)) = v.eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

TensorElement::TensorElement(std::size_t n, std::size_t depth)
    : n_(n), depth_(depth), matrix_(ipow(n, depth), ipow(n, depth)) {}

TensorElement::TensorElement(std::size_t n, std::size_t depth, RadMatrix matrix)
    : n_(n), depth_(depth), matrix_(std::move(matrix)) {
  const std::size_t dim = ipow(n, depth);
  if (matrix_.rows() != dim || matrix_.cols() != dim) throw std::invalid_argument("tensor matrix has wrong size");
}

TensorElement TensorElement::identity(std::size_t n) { return TensorElement(n, 0, RadMatrix::identity(1)); }

TensorElement TensorElement::unit(std::size_t n, const std::vector<int>& mu, const std::vector<int>& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("matrix unit needs equal-length multi-indices");
  for (int letter : mu) {
    if (letter < 0 || static_cast<std::size_t>(letter) >= n) throw std::out_of_range("matrix unit letter out of range");
  }
  for (int letter : nu) {
    if (letter < 0 || static_cast<std::size_t>(letter) >= n) throw std::out_of_range("matrix unit letter out of range");
  }
  const std::size_t dim = ipow(n, mu.size());
  return TensorElement(n, mu.size(), RadMatrix::unit(dim, from_digits(mu, n), from_digits(nu, n)));
}

std::vector<TensorElement> TensorElement::basis(std::size_t n, std::size_t depth) {
  const std::size_t dim = ipow(n, depth);
  std::vector<TensorElement> out;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) out.emplace_back(n, depth, RadMatrix::unit(dim, i, j));
  }
  return out;
}

TensorElement TensorElement::lift(std::size_t depth) const {
  if (depth < depth_) throw std::invalid_argument("cannot lift to a smaller depth");
  if (depth == depth_) return *this;
  return TensorElement(n_, depth, kron(matrix_, RadMatrix::identity(ipow(n_, depth - depth_))));
}

namespace {
void require_same_n(const TensorElement& a, const TensorElement& b) {
  if (a.n() != b.n()) throw std::invalid_argument("tensor factors of different size");
}
}  // namespace

TensorElement& TensorElement::operator+=(const TensorElement& other) {
  require_same_n(*this, other);
  const std::size_t d = std::max(depth_, other.depth_);
  *this = lift(d);
  matrix_ += other.lift(d).matrix_;
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other) {
  require_same_n(*this, other);
  const std::size_t d = std::max(depth_, other.depth_);
  *this = lift(d);
  matrix_ -= other.lift(d).matrix_;
  return *this;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) {
  require_same_n(a, b);
  const std::size_t d = std::max(a.depth_, b.depth_);
  return TensorElement(a.n_, d, a.lift(d).matrix_ * b.lift(d).matrix_);
}

TensorElement operator*(const Radical& c, const TensorElement& a) { return TensorElement(a.n_, a.depth_, c * a.matrix_); }

bool operator==(const TensorElement& a, const TensorElement& b) {
  if (a.n_ != b.n_) return false;
  const std::size_t d = std::max(a.depth_, b.depth_);
  return a.lift(d).matrix_ == b.lift(d).matrix_;
}

std::string TensorElement::str() const {
  if (matrix_.is_zero()) return "0";
  std::string out;
  for (const auto& [ij, v] : matrix_.entries()) {
    if (!out.empty()) out += " + ";
    const auto mu = digits(ij.first, n_, depth_);
    const auto nu = digits(ij.second, n_, depth_);
    std::string label = "e[";
    for (int d : mu) label += std::to_string(d + 1);
    label += ",";
    for (int d : nu) label += std::to_string(d + 1);
    label += "]";
    out += "(" + v.str() + ")" + (depth_ == 0 ? std::string("1") : label);
  }
  return out;
}

}  // namespace ckb
