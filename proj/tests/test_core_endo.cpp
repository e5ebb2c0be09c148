#include <doctest.h>

#include "ckbench/core_endo.hpp"
#include "ckbench/errors.hpp"
#include "ckbench/uhf_cuntz.hpp"
#include "oracles.hpp"

using namespace ckb;

namespace {
GraphPtr two_cycle() { return load_graph("V u; V v; E x v u; E y u v"); }
}  // namespace

TEST_CASE("W on bouquets and the two-cycle") {
  for (int n = 2; n <= 4; ++n) {
    const GraphPtr g = make_bouquet(n);
    const StarElement w = CoreEndo(g).build_w();
    StarElement expected(g);
    for (EdgeId e = 0; e < n; ++e) expected += rad_inv_sqrt(static_cast<std::uint64_t>(n)) * StarElement::edge(g, e);
    CHECK(w.terms() == expected.terms());
    CHECK(equal(adjoint(w) * w, StarElement::unit(g)));
  }
  const GraphPtr c = two_cycle();
  const StarElement w = CoreEndo(c).build_w();
  CHECK(w.terms() == (StarElement::edge(c, 0) + StarElement::edge(c, 1)).terms());
  CHECK(CoreEndo(c).w_isometry_check().passed());
}

TEST_CASE("beta of p_v on O_2 is the averaged matrix") {
  const GraphPtr g = make_bouquet(2);
  const CoreEndo endo(g);
  const StarElement b = endo.beta(StarElement::vertex(g, 0));
  StarElement expected(g);
  for (EdgeId e = 0; e < 2; ++e) {
    for (EdgeId f = 0; f < 2; ++f) expected.add_term(Radical(Rational(1, 2)), g->edge_path(e), g->edge_path(f));
  }
  CHECK(equal(b, expected));
  const StarElement w = endo.build_w();
  CHECK(equal(b, w * adjoint(w)));
}

TEST_CASE("beta agrees with the term-by-term matrix model") {
  const std::vector<GraphPtr> graphs = {make_bouquet(2), make_bouquet(3), two_cycle(),
                                        load_graph("V u; V v; E a u u; E b u v; E c v u; E d v v")};
  SplitMix64 rng(11);
  for (const auto& g : graphs) {
    const CoreEndo endo(g);
    const oracle::CoreModel model(*g, 3);
    for (const StarElement& x : core_matrix_units(g, 1)) CHECK(model.of(endo.beta(x)) == oracle::beta_model(*g, x, model));
    for (int t = 0; t < 10; ++t) {
      const StarElement x = random_core_element(g, 2, 3, rng);
      CHECK(model.of(endo.beta(x)) == oracle::beta_model(*g, x, model));
    }
  }
}

TEST_CASE("covariance, homomorphism and iterates") {
  const GraphPtr c = two_cycle();
  const CoreEndo endo(c);
  const Path x = c->parse_path("x");
  CHECK(endo.covariance_check(StarElement::word(c, 1, x, x)).passed());
  const GraphPtr g = make_bouquet(2);
  const CoreEndo o2(g);
  SplitMix64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const StarElement a = random_core_element(g, 2, 3, rng);
    const StarElement b = random_core_element(g, 2, 3, rng);
    CHECK(o2.covariance_check(a).passed());
    CHECK(o2.homomorphism_check(a, b).passed());
    CHECK(o2.iterate_check(a).passed());
  }
}

TEST_CASE("beta raises levels by one") {
  const GraphPtr g = make_bouquet(3);
  const CoreEndo endo(g);
  for (const StarElement& x : core_matrix_units(g, 2)) {
    const StarElement b = endo.beta(x);
    for (const auto& [w, c] : b.terms()) {
      CHECK(w.mu.size() == x.terms().begin()->first.mu.size() + 1);
      CHECK(w.nu.size() == w.mu.size());
    }
  }
}

TEST_CASE("matrix unit images") {
  const GraphPtr g = make_bouquet(2);
  const auto family = CoreEndo(g).matrix_unit_images(1, 0);
  CHECK(family.paths.size() == 2);
  CHECK(family.units.size() == 4);
  CHECK(family.report.passed());
  CHECK(family.report.checks >= 16);

  const GraphPtr c = two_cycle();
  const auto single = CoreEndo(c).matrix_unit_images(1, *c->find_vertex("u"));
  CHECK(single.units.size() == 1);
  CHECK(single.report.passed());
  const StarElement& e = single.units.begin()->second;
  CHECK(equal(e * e, e));
}

TEST_CASE("sinks are rejected") {
  CHECK_THROWS_AS(CoreEndo(load_graph("V a; V b; E x a b")), InadmissibleGraphError);
}

TEST_CASE("tensor form of beta on bouquets") {
  const TensorElement e11 = TensorElement::unit(2, {0}, {0});
  const auto report = tensor_beta_compare(2, e11);
  CHECK(report.passed());
  const RadMatrix p = averaging_projection(2);
  CHECK(p * p == p);
  CHECK(p.trace() == Radical(1));
  RadMatrix u(2, 2);
  const Radical h = rad_inv_sqrt(2);
  u.set(0, 0, h);
  u.set(0, 1, h);
  u.set(1, 0, h);
  u.set(1, 1, -h);
  CHECK(completing_unitary(2) == u);
  CHECK(u * RadMatrix::unit(2, 0, 0) * u.transpose() == p);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (const TensorElement& x : TensorElement::basis(n, 1)) CHECK(tensor_beta_compare(n, x).passed());
  }
  SplitMix64 rng(2);
  CHECK(tensor_beta_compare(3, random_tensor(3, 2, 4, rng)).passed());
}
