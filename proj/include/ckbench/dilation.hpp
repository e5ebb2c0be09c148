#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ckbench/report.hpp"

namespace ckb {

using IntVec = std::vector<long>;
using IntRows = std::vector<IntVec>;  // row-major small integer matrix

long determinant(const IntRows& m);
IntRows matmul(const IntRows& a, const IntRows& b);
IntVec apply(const IntRows& m, const IntVec& x);
IntRows matrix_power(const IntRows& m, std::size_t k);
// Column-style Hermite form: m U = H, H upper triangular, 0 <= H[r][c] < H[r][r] for c > r.
IntRows hermite_form(const IntRows& m);
// Canonical representative of x modulo the column lattice of H.
IntVec reduce_mod(const IntRows& hermite, IntVec x);
// "a,b;c,d"
IntRows parse_int_rows(const std::string& text);
std::string vec_str(const IntVec& v);

struct LatticeSystem {
  std::size_t d = 0;
  IntRows B;
  std::vector<IntVec> sigma;
  IntRows hermite;  // Hermite form of B
  long det = 0;

  bool in_lattice(const IntVec& x) const;        // x in B Z^d
  std::optional<IntVec> preimage(const IntVec& x) const;  // B^-1 x when integral
};

// Canonical transversal: the integer points of the half-open box of the Hermite form.
std::vector<IntVec> coset_reps(const IntRows& B);
// Validates a supplied transversal, or builds the canonical one.
LatticeSystem make_lattice_system(const IntRows& B, std::optional<std::vector<IntVec>> sigma = std::nullopt);
std::vector<IntVec> sigma_i(const LatticeSystem& sys, std::size_t i);
CheckReport sigma_i_check(const LatticeSystem& sys, std::size_t i);

// Finitely supported sequences on Z^d.
using SparseVec = std::map<IntVec, long>;

SparseVec delta(const IntVec& k);
SparseVec translate(const SparseVec& x, const IntVec& m);  // u_m
SparseVec apply_v(const LatticeSystem& sys, const SparseVec& x);
SparseVec apply_v_star(const LatticeSystem& sys, const SparseVec& x);

// The symbol u_m v^i v^{*i} u_n^*.
struct DilationTerm {
  IntVec m;
  std::size_t i = 0;
  IntVec n;
};
SparseVec apply_term(const LatticeSystem& sys, const DilationTerm& t, const SparseVec& x);
DilationTerm dilation_beta(const LatticeSystem& sys, const DilationTerm& t);
std::string term_str(const DilationTerm& t);

std::vector<IntVec> box_points(std::size_t d, long radius);

// Covariance v u_m = u_{Bm} v, the v* u_m v rule, the Sigma partition of unity, v*v = 1 and vv* = [k in B Z^d] on every delta in the box.
CheckReport lattice_rep_check(const LatticeSystem& sys, long radius);
CheckReport sigma_matrix_unit_check(const LatticeSystem& sys, std::size_t i, long radius);
CheckReport dilation_beta_check(const LatticeSystem& sys, const DilationTerm& t, long radius);
// beta(x) beta(y) = v x y v^* on the box.
CheckReport dilation_product_check(const LatticeSystem& sys, const DilationTerm& x, const DilationTerm& y, long radius);

}  // namespace ckb
