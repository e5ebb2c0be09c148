#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "ckbench/graph.hpp"
#include "ckbench/report.hpp"

namespace ckb {

using BigInt = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  // "a,b;c,d"
  static IntMatrix parse(const std::string& text);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& at(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
  const BigInt& at(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  IntMatrix transpose() const;
  BigInt determinant() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// U M V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithForm {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;
};
SmithForm smith_normal_form(const IntMatrix& m);

struct GroupPresentation {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors, each >= 2

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const;
  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

GroupPresentation cokernel(const IntMatrix& m);

struct CokerKer {
  GroupPresentation coker;
  std::size_t ker_rank = 0;
};
CokerKer coker_ker(const IntMatrix& square);

struct GraphKTheory {
  GroupPresentation k0;
  GroupPresentation k1;
  IntMatrix stage_beta;  // beta_* between consecutive stages, indexed by source vertex
  IntMatrix connecting;  // inclusion of stage i into stage i + 1
  CokerKer classical;    // coker / ker of (A^t - I)
  CheckReport report;
};
// Throws std::runtime_error when the stationary limit does not stabilize.
GraphKTheory graph_k_theory(const GraphPtr& graph);

struct PaschkeResult {
  bool af = false;
  GroupPresentation k0;
  GroupPresentation k1;
  std::string diagram;
};
PaschkeResult paschke_sequence(const IntMatrix& beta_star, bool k1_of_core_is_zero);

}  // namespace ckb
