#include <doctest.h>

#include "ckbench/core_endo.hpp"
#include "ckbench/errors.hpp"
#include "ckbench/hilbert_module.hpp"
#include "ckbench/uhf_cuntz.hpp"

using namespace ckb;

namespace {
using GraphModule = HilbertModule<GraphPathSystem>;

GraphPtr two_cycle() { return load_graph("V u; V v; E x v u; E y u v"); }

template <class Module>
typename Module::Operator identity_of(const Module& module, std::size_t degree, const std::vector<IndexWord>& words) {
  typename Module::Operator out{degree, degree, {}};
  for (const auto& w : words) out.entries.emplace(std::make_pair(w, w), module.system().one());
  return out;
}

std::vector<RadFunction> graph_basis(const GraphPathSystem& sys, std::size_t depth) {
  std::vector<RadFunction> out;
  for (std::size_t d = 0; d <= depth; ++d) {
    for (auto& c : sys.basis(d)) out.push_back(std::move(c));
  }
  return out;
}
}  // namespace

TEST_CASE("graph frame on O_2 is orthonormal") {
  const GraphModule module(GraphPathSystem(make_bouquet(2), 3));
  CHECK(module.system().frame_size() == 2);
  CHECK(module.system().frame_label(0) == "m_e1");
  CHECK(module.frame_check().passed());
  CHECK(module.same(module.gram(1), identity_of(module, 1, module.system().words(1))));
  CHECK(module.same(module.gram(2), identity_of(module, 2, module.system().words(2))));
}

TEST_CASE("graph frame on a two-vertex graph has vertex-projection Gram") {
  const GraphPtr g = load_graph("V u; V v; E a u u; E b u v; E c v u; E d v v");
  const GraphModule module(GraphPathSystem(g, 3));
  CHECK(module.frame_check().passed());
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const RadFunction ip = module.system().frame_scale(i) * module.system().frame_scale(j) *
                             module.inner_raw(module.system().frame_vector(i), module.system().frame_vector(j));
      CHECK(ip == module.system().expected_gram(i, j));
    }
  }
}

TEST_CASE("UHF frames") {
  const UhfModule m21(UhfExelSystem(UhfSystem(2, 1), 3));
  CHECK(m21.system().frame_size() == 2);
  CHECK(m21.system().frame_label(0) == "E_11");
  CHECK(m21.system().frame_label(1) == "E_21");
  CHECK(m21.frame_check().passed());
  const UhfModule m22(UhfExelSystem(UhfSystem(2, 2), 3));
  CHECK(m22.system().frame_size() == 4);
  CHECK(m22.frame_check().passed());
  CHECK(m22.same(m22.gram(1), identity_of(m22, 1, m22.system().words(1))));
}

TEST_CASE("reconstruction") {
  const GraphModule module(GraphPathSystem(two_cycle(), 3));
  const auto& sys = module.system();
  for (std::size_t i = 0; i < sys.frame_size(); ++i) CHECK(module.reconstruct_check(module.frame_element({static_cast<int>(i)})).passed());
  CHECK(module.reconstruct_check(GraphModule::Element{1, {}}).passed());
  SplitMix64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const RadFunction a = to_radical(random_depth_function(sys.graph_ptr(), 1, rng));
    CHECK(module.reconstruct_check_raw(a).passed());
    CHECK(module.reconstruct_check(module.coords_of(a)).passed());
  }
  const UhfModule uhf(UhfExelSystem(UhfSystem(3, 2), 3));
  for (const auto& a : uhf.system().basis(1)) CHECK(uhf.reconstruct_check_raw(a).passed());
}

TEST_CASE("U(1) in the UHF and graph systems") {
  const UhfModule uhf(UhfExelSystem(UhfSystem(2, 1), 3));
  CHECK(uhf.same(uhf.u_of(uhf.system().one()), uhf.frame_element({0})));

  const GraphModule o2(GraphPathSystem(make_bouquet(2), 3));
  GraphModule::Element expected{1, {}};
  const RadFunction h = rad_inv_sqrt(2) * o2.system().one();
  expected.coords.emplace(IndexWord{0}, h);
  expected.coords.emplace(IndexWord{1}, h);
  CHECK(o2.same(o2.u_of(o2.system().one()), expected));
}

TEST_CASE("U is an isometry intertwining q and L") {
  for (const GraphPtr& g : {make_bouquet(2), make_bouquet(3), two_cycle()}) {
    for (std::size_t depth = 1; depth <= 3; ++depth) {
      const GraphModule module(GraphPathSystem(g, depth));
      CHECK(module.u_check().passed());
    }
    const GraphModule module(GraphPathSystem(g, 3));
    CHECK(module.u_tensor_check(1).passed());
    CHECK(module.u_tensor_check(2).passed());
  }
  for (const UhfSystem& s : {UhfSystem(2, 1), UhfSystem(2, 2), UhfSystem(3, 2)}) {
    const UhfModule module(UhfExelSystem(s, 3));
    CHECK(module.u_check().passed());
    CHECK(module.u_tensor_check(1).passed());
  }
}

TEST_CASE("conjugation by U") {
  const GraphModule o2(GraphPathSystem(make_bouquet(2), 3));
  const GraphModule::Operator zero{1, 1, {}};
  CHECK(o2.conj_beta(zero).entries.empty());

  const auto m1 = o2.frame_element({0});
  const auto conj = o2.conj_beta(o2.theta(m1, m1));
  GraphModule::Operator expected{2, 2, {}};
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) expected.entries.emplace(std::make_pair(IndexWord{j, 0}, IndexWord{k, 0}), Radical(Rational(1, 2)) * o2.system().one());
  }
  CHECK(o2.same(conj, expected));
  const auto moved = o2.apply(o2.u_op(1), m1);
  CHECK(o2.same(conj, o2.theta(moved, moved)));

  const UhfModule uhf(UhfExelSystem(UhfSystem(2, 1), 3));
  const auto e11 = uhf.frame_element({0});
  const auto uhf_moved = uhf.apply(uhf.u_op(1), e11);
  CHECK(uhf.same(uhf.conj_beta(uhf.theta(e11, e11)), uhf.theta(uhf_moved, uhf_moved)));
  CHECK_THROWS(o2.conj_beta(GraphModule::Operator{2, 1, {}}));
}

TEST_CASE("two routes to beta agree") {
  const GraphPtr o2 = make_bouquet(2);
  CHECK(beta_crosscheck(o2, o2->parse_path("e1"), o2->parse_path("e1")).passed());
  const GraphPtr c = two_cycle();
  CHECK(beta_crosscheck(c, c->parse_path("x"), c->parse_path("x")).passed());
  const GraphPtr o3 = make_bouquet(3);
  for (const Path& mu : o3->paths(1)) {
    for (const Path& nu : o3->paths(1)) CHECK(beta_crosscheck(o3, mu, nu).passed());
  }
  CHECK(beta_crosscheck(o3, Graph::empty_path(0), Graph::empty_path(0)).passed());
  CHECK(beta_crosscheck(o2, o2->parse_path("e1.e2"), o2->parse_path("e2.e2")).passed());
  CHECK_THROWS(beta_crosscheck(o2, o2->parse_path("e1"), o2->parse_path("e1.e2")));
  // different sources: both sides vanish
  CHECK(beta_crosscheck(c, c->parse_path("x"), c->parse_path("y")).passed());
}

TEST_CASE("conjugation by U respects composition") {
  const GraphModule module(GraphPathSystem(two_cycle(), 3));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        const auto s = module.theta(module.frame_element({i}), module.frame_element({j}));
        const auto t = module.theta(module.frame_element({j}), module.frame_element({k}));
        CHECK(module.same(module.conj_beta(module.compose(s, t)), module.compose(module.conj_beta(s), module.conj_beta(t))));
      }
    }
  }
}

TEST_CASE("dictionary sends rank-one operators to words") {
  const GraphPtr g = two_cycle();
  const GraphModule module(GraphPathSystem(g, 3));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto t = module.theta(module.frame_element({i}), module.frame_element({j}));
      const StarElement got = operator_to_star(module, t);
      const StarElement want = StarElement::edge(g, i) * adjoint(StarElement::edge(g, j));
      CHECK(equal(got, want));
    }
  }
  const RadFunction chi = RadFunction::indicator(g, g->parse_path("x"));
  const Path x = g->parse_path("x");
  CHECK(equal(diagonal_to_star(g, chi), StarElement::word(g, 1, x, x)));
}

TEST_CASE("graph frame representation by the edge family") {
  for (const GraphPtr& g : {make_bouquet(2), two_cycle()}) {
    const GraphModule module(GraphPathSystem(g, 3));
    std::vector<StarElement> family;
    for (EdgeId e = 0; e < static_cast<EdgeId>(g->edge_count()); ++e) family.push_back(StarElement::edge(g, e));
    const FrameRepresentation<GraphPathSystem> rep(module, family, [g](const RadFunction& c) { return diagonal_to_star(g, c); });
    const auto basis = graph_basis(module.system(), 1);
    CHECK(rep.hypothesis_check(basis).passed());
    CHECK(rep.verify(basis, basis).passed());
  }
}

TEST_CASE("Gram matrices are positive semidefinite") {
  const GraphModule module(GraphPathSystem(make_bouquet(2), 3));
  SplitMix64 rng(12);
  std::vector<GraphModule::Element> elements;
  for (int t = 0; t < 6; ++t) elements.push_back(module.coords_of(to_radical(random_depth_function(module.system().graph_ptr(), 1, rng))));
  CHECK(module.gram_min_eigenvalue(elements) >= -1e-9);
}

TEST_CASE("depth limits are enforced") {
  const GraphModule module(GraphPathSystem(make_bouquet(2), 1));
  CHECK_NOTHROW(module.alpha(module.system().one()));
  CHECK_THROWS_AS(module.alpha(module.alpha(module.system().one())), DepthError);
}
