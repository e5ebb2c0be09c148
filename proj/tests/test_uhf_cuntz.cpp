#include <doctest.h>

#include "ckbench/uhf_cuntz.hpp"

using namespace ckb;

namespace {
// tr on p M_n p normalized, applied to the first factor entry by entry.
TensorElement dense_L(const UhfSystem& sys, const TensorElement& a) {
  const TensorElement lifted = a.depth() == 0 ? a.lift(1) : a;
  const std::size_t k = lifted.depth();
  const std::size_t rest = ipow(sys.n, k - 1);
  RadMatrix out(rest, rest);
  for (std::size_t r = 0; r < rest; ++r) {
    for (std::size_t c = 0; c < rest; ++c) {
      Radical sum;
      for (std::size_t i = 0; i < sys.N; ++i) sum += lifted.matrix().at(i * rest + r, i * rest + c);
      if (!sum.is_zero()) out.set(r, c, Radical(Rational(1, static_cast<unsigned long>(sys.N))) * sum);
    }
  }
  return TensorElement(sys.n, k - 1, out);
}

std::vector<TensorElement> basis_upto(std::size_t n, std::size_t depth) {
  std::vector<TensorElement> out;
  for (std::size_t d = 0; d <= depth; ++d) {
    for (auto& b : TensorElement::basis(n, d)) out.push_back(std::move(b));
  }
  return out;
}

const std::vector<UhfSystem> kSystems = {UhfSystem(2, 1), UhfSystem(2, 2), UhfSystem(3, 2)};
}  // namespace

TEST_CASE("system validation") {
  CHECK_THROWS(UhfSystem(2, 0));
  CHECK_THROWS(UhfSystem(2, 3));
  CHECK(UhfSystem(3, 2).generators() == 6);
  CHECK(UhfSystem(3, 2).projection().trace() == Radical(2));
}

TEST_CASE("alpha and L") {
  for (const auto& sys : kSystems) {
    const TensorElement one = TensorElement::identity(sys.n);
    CHECK(uhf_L(sys, one) == one);
    for (const auto& a : basis_upto(sys.n, 2)) {
      CHECK(uhf_L(sys, a) == dense_L(sys, a));
      CHECK(uhf_L(sys, uhf_alpha(sys, a)) == a);
      CHECK(uhf_alpha(sys, a).matrix() == kron(sys.projection(), a.matrix()));
    }
    SplitMix64 rng(sys.n * 10 + sys.N);
    for (int t = 0; t < 10; ++t) {
      const TensorElement a = random_tensor(sys.n, 2, 5, rng);
      const TensorElement b = random_tensor(sys.n, 2, 5, rng);
      CHECK(uhf_L(sys, uhf_alpha(sys, a) * b) == a * uhf_L(sys, b));
      CHECK(uhf_alpha(sys, a) * uhf_alpha(sys, b) == uhf_alpha(sys, a * b));
    }
  }
}

TEST_CASE("alpha examples") {
  const UhfSystem two(2, 1);
  CHECK(uhf_alpha(two, TensorElement::identity(2)) == TensorElement::unit(2, {0}, {0}));
  const UhfSystem three(3, 2);
  const TensorElement e33 = TensorElement::unit(3, {2}, {2});
  CHECK(uhf_alpha(three, e33).matrix() == kron(three.projection(), e33.matrix()));
  CHECK(uhf_L(two, TensorElement::unit(2, {0}, {0})) == TensorElement::identity(2));
  CHECK(uhf_L(two, TensorElement::unit(2, {1}, {1})).is_zero());
}

TEST_CASE("L is positive") {
  SplitMix64 rng(4);
  std::vector<TensorElement> sample;
  for (int t = 0; t < 6; ++t) sample.push_back(random_tensor(2, 2, 4, rng));
  CHECK(transfer_positivity(UhfSystem(2, 1), sample) >= -1e-9);
}

TEST_CASE("prefix model examples") {
  const UhfSystem sys(2, 1);
  const TensorElement e11 = TensorElement::unit(2, {0}, {0});
  const TensorElement e22 = TensorElement::unit(2, {1}, {1});
  const std::vector<int> x{0, 1};
  const std::vector<int> y{1, 1};
  CHECK(prefix_matrix_element(uhf_L(sys, e11), x, x) == Radical(1));
  CHECK(prefix_matrix_element(e11, {0, 0, 1}, {0, 0, 1}) == Radical(1));
  CHECK(prefix_rep_check(sys, e11, x, x).passed());
  CHECK(prefix_matrix_element(uhf_L(sys, e22), x, y).is_zero());
  CHECK(prefix_rep_check(sys, e22, x, y).passed());
  const TensorElement one = TensorElement::identity(2);
  CHECK(prefix_matrix_element(uhf_L(sys, one), x, x) == Radical(1));
  CHECK(prefix_matrix_element(uhf_L(sys, one), x, y).is_zero());
  CHECK_THROWS(prefix_rep_check(sys, e11, {0}, {0}));
  CHECK_THROWS(prefix_rep_check(sys, e11, {0, 2}, {0, 0}));
}

TEST_CASE("Cuntz representation") {
  const UhfSystem sys(2, 1);
  const CuntzRepresentation pi(sys, canonical_cuntz_family(sys));
  const auto& s = pi.family();
  CHECK(equal(pi(TensorElement::unit(2, {0}, {1})), s[0] * adjoint(s[1])));
  CHECK(equal(pi(TensorElement::identity(2)), StarElement::unit(s[0].graph_ptr())));
  CHECK(cuntz_relations_check(s).passed());
  for (const auto& system : kSystems) {
    const CuntzRepresentation rep(system, canonical_cuntz_family(system));
    CHECK(pi_matrix_unit_check(rep, 2).passed());
    SplitMix64 rng(5);
    std::vector<std::pair<TensorElement, TensorElement>> pairs;
    for (int t = 0; t < 5; ++t) pairs.emplace_back(random_tensor(system.n, 2, 3, rng), random_tensor(system.n, 1, 3, rng));
    CHECK(pi_multiplicative_check(rep, pairs).passed());
  }
  // a non-Cuntz family is refused
  auto bad = canonical_cuntz_family(sys);
  bad[1] = bad[0];
  CHECK_THROWS(CuntzRepresentation(sys, bad));
}

TEST_CASE("isomorphism chain") {
  for (const auto& sys : kSystems) {
    CHECK(e_basis_check(sys).passed());
    CHECK(pi_relation_check(CuntzRepresentation(sys, canonical_cuntz_family(sys)), 1).passed());
    CHECK(iso_generators_check(sys, 2).passed());
  }
  CHECK(almost_faithful_probe(UhfSystem(2, 1), 2).passed());
}

TEST_CASE("rank rescaling") {
  const RankRescale trivial = rank_rescale(2, 1, RadMatrix::unit(2, 0, 0));
  CHECK(trivial.system.n == 2);
  CHECK(trivial.system.N == 1);
  CHECK(trivial.unitary == RadMatrix::identity(2));
  CHECK(trivial.report.passed());

  const RankRescale doubled = rank_rescale(2, 2, kron(RadMatrix::unit(2, 0, 0), RadMatrix::identity(2)));
  CHECK(doubled.system.n == 4);
  CHECK(doubled.system.N == 2);
  CHECK(doubled.report.passed());

  RadMatrix avg(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) avg.set(i, j, Radical(Rational(1, 2)));
  }
  const RankRescale rotated = rank_rescale(2, 1, avg);
  RadMatrix u(2, 2);
  const Radical h = rad_inv_sqrt(2);
  u.set(0, 0, h);
  u.set(0, 1, h);
  u.set(1, 0, h);
  u.set(1, 1, -h);
  CHECK(rotated.system.N == 1);
  CHECK(rotated.unitary == u);
  CHECK(rotated.report.passed());
  CHECK_THROWS(rank_rescale(2, 1, RadMatrix::identity(2) + RadMatrix::identity(2)));
  CHECK_THROWS(rank_rescale(2, 1, RadMatrix(2, 2)));
}
