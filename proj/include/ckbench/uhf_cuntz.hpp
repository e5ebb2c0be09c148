#pragma once

#include <string>
#include <vector>

#include "ckbench/hilbert_module.hpp"
#include "ckbench/report.hpp"
#include "ckbench/star_algebra.hpp"
#include "ckbench/tensor.hpp"

namespace ckb {

// UHF(n^inf) with the projection p = 1_N (+) 0_{n-N}.
struct UhfSystem {
  std::size_t n = 2;
  std::size_t N = 1;

  UhfSystem(std::size_t n_, std::size_t big_n);
  RadMatrix projection() const;
  std::size_t generators() const { return n * N; }
};

// p (x) a
TensorElement uhf_alpha(const UhfSystem& sys, const TensorElement& a);
// tr(p a_1 p) (a_2 (x) ...), tr normalized on p M_n p.
TensorElement uhf_L(const UhfSystem& sys, const TensorElement& a);

// Coefficient system for the module over UHF(n^inf) with frame E_ij = N^{1/2} q(e_ij (x) 1), index i N + j.
class UhfExelSystem {
 public:
  using Coeff = TensorElement;

  UhfExelSystem(UhfSystem sys, std::size_t max_depth);

  const UhfSystem& uhf() const { return sys_; }
  std::string name() const { return "UHF system"; }
  std::size_t max_depth() const { return max_depth_; }
  std::size_t depth(const Coeff& c) const { return c.depth(); }
  Coeff one() const { return TensorElement::identity(sys_.n); }
  Coeff zero() const { return TensorElement(sys_.n, 0); }
  Coeff adjoint(const Coeff& c) const { return c.adjoint(); }
  Coeff alpha(const Coeff& c) const { return uhf_alpha(sys_, c); }
  Coeff transfer(const Coeff& c) const { return uhf_L(sys_, c); }

  std::size_t frame_size() const { return sys_.n * sys_.N; }
  Radical frame_scale(std::size_t) const { return Radical::sqrt_of(static_cast<long>(sys_.N)); }
  Coeff frame_vector(std::size_t index) const;
  Coeff expected_gram(std::size_t i, std::size_t j) const { return i == j ? one() : zero(); }
  std::string frame_label(std::size_t index) const;

  std::vector<IndexWord> words(std::size_t degree) const;
  std::vector<Coeff> basis(std::size_t depth) const { return TensorElement::basis(sys_.n, depth); }
  RadMatrix as_matrix(const Coeff& c, std::size_t depth) const { return c.lift(depth).matrix(); }
  std::string str(const Coeff& c) const { return c.str() + "\n"; }

 private:
  UhfSystem sys_;
  std::size_t max_depth_;
};

using UhfModule = HilbertModule<UhfExelSystem>;

// Both sides of (pi(L(a)) d_x | d_y) = N^-1 sum_{i<N} (pi(a) d_ix | d_iy) in the prefix model.
Radical prefix_matrix_element(const TensorElement& a, const std::vector<int>& x, const std::vector<int>& y);
CheckReport prefix_rep_check(const UhfSystem& sys, const TensorElement& a, const std::vector<int>& x, const std::vector<int>& y);

// The canonical Cuntz family s_ij = t_{e_{iN+j+1}} on the bouquet of nN loops.
std::vector<StarElement> canonical_cuntz_family(const UhfSystem& sys);
CheckReport cuntz_relations_check(const std::vector<StarElement>& family);

// pi_T(e_mu,nu (x) 1) = sum_{lambda in [N]^k} T_{mu lambda} T_{nu lambda}^*
class CuntzRepresentation {
 public:
  CuntzRepresentation(UhfSystem sys, std::vector<StarElement> family);  // throws on a relation violation
  StarElement operator()(const TensorElement& a) const;
  const std::vector<StarElement>& family() const { return family_; }
  const UhfSystem& uhf() const { return sys_; }

 private:
  const StarElement& product(const std::vector<int>& letters) const;

  UhfSystem sys_;
  std::vector<StarElement> family_;
  mutable std::map<std::vector<int>, StarElement> products_;
};

CheckReport pi_matrix_unit_check(const CuntzRepresentation& pi, std::size_t depth);
CheckReport pi_multiplicative_check(const CuntzRepresentation& pi, const std::vector<std::pair<TensorElement, TensorElement>>& pairs);
CheckReport pi_relation_check(const CuntzRepresentation& pi, std::size_t depth);
CheckReport e_basis_check(const UhfSystem& sys);
CheckReport iso_generators_check(const UhfSystem& sys, std::size_t depth);
CheckReport almost_faithful_probe(const UhfSystem& sys, std::size_t depth);
// Smallest eigenvalue of L(a^* a) over the given elements, with exact assembly.
double transfer_positivity(const UhfSystem& sys, const std::vector<TensorElement>& elements);

struct RankRescale {
  UhfSystem system;
  RadMatrix unitary;  // columns: an orthonormal basis of range(p), then of range(1 - p)
  CheckReport report;
};
RankRescale rank_rescale(std::size_t m, std::size_t k, const RadMatrix& projection);

TensorElement random_tensor(std::size_t n, std::size_t depth, std::size_t terms, SplitMix64& rng);

}  // namespace ckb
