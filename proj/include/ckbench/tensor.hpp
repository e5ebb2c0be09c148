#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ckbench/radical.hpp"

namespace ckb {

// Sparse matrix with exact Radical entries.
class RadMatrix {
 public:
  using Index = std::pair<std::size_t, std::size_t>;

  RadMatrix() = default;
  RadMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  static RadMatrix identity(std::size_t n);
  static RadMatrix unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::map<Index, Radical>& entries() const { return entries_; }
  Radical at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Radical& value);
  void add(std::size_t i, std::size_t j, const Radical& value);
  bool is_zero() const { return entries_.empty(); }

  RadMatrix& operator+=(const RadMatrix& other);
  RadMatrix& operator-=(const RadMatrix& other);
  friend RadMatrix operator+(RadMatrix a, const RadMatrix& b) { return a += b; }
  friend RadMatrix operator-(RadMatrix a, const RadMatrix& b) { return a -= b; }
  friend RadMatrix operator*(const RadMatrix& a, const RadMatrix& b);
  friend RadMatrix operator*(const Radical& c, const RadMatrix& a);
  friend bool operator==(const RadMatrix&, const RadMatrix&) = default;

  RadMatrix transpose() const;
  Radical trace() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<Index, Radical> entries_;
};

RadMatrix kron(const RadMatrix& a, const RadMatrix& b);
std::vector<std::vector<double>> to_dense(const RadMatrix& m);
// Smallest eigenvalue of a symmetric matrix after float evaluation.
double min_eigenvalue(const RadMatrix& symmetric);

// a_1 (x) ... (x) a_k (x) 1 in M_n^{(x)k}; the first factor is the most significant index digit.
class TensorElement {
 public:
  TensorElement(std::size_t n, std::size_t depth);  // zero
  TensorElement(std::size_t n, std::size_t depth, RadMatrix matrix);
  static TensorElement identity(std::size_t n);
  // e_{mu nu} (x) 1 for multi-indices with letters in [0, n).
  static TensorElement unit(std::size_t n, const std::vector<int>& mu, const std::vector<int>& nu);
  static std::vector<TensorElement> basis(std::size_t n, std::size_t depth);

  std::size_t n() const { return n_; }
  std::size_t depth() const { return depth_; }
  const RadMatrix& matrix() const { return matrix_; }
  bool is_zero() const { return matrix_.is_zero(); }

  TensorElement lift(std::size_t depth) const;
  TensorElement adjoint() const { return TensorElement(n_, depth_, matrix_.transpose()); }

  TensorElement& operator+=(const TensorElement& other);
  TensorElement& operator-=(const TensorElement& other);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
  friend TensorElement operator*(const Radical& c, const TensorElement& a);
  friend bool operator==(const TensorElement& a, const TensorElement& b);

  std::string str() const;

 private:
  std::size_t n_;
  std::size_t depth_;
  RadMatrix matrix_;
};

// Orthogonalizes the candidate rational vectors in order (dependent ones are
// dropped) and returns the normalized results as matrix columns.
RadMatrix orthonormal_columns(const std::vector<std::vector<Rational>>& candidates, std::size_t dim);

std::size_t ipow(std::size_t base, std::size_t exponent);
std::vector<int> digits(std::size_t index, std::size_t base, std::size_t length);
std::size_t from_digits(const std::vector<int>& letters, std::size_t base);

}  // namespace ckb
