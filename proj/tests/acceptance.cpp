// Acceptance runner: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "ckbench/core_endo.hpp"
#include "ckbench/dilation.hpp"
#include "ckbench/errors.hpp"
#include "ckbench/exel_path.hpp"
#include "ckbench/hilbert_module.hpp"
#include "ckbench/ktheory.hpp"
#include "ckbench/star_algebra.hpp"
#include "ckbench/uhf_cuntz.hpp"
#include "oracles.hpp"

using namespace ckb;

namespace {

GraphPtr two_cycle() { return load_graph("V u; V v; E x v u; E y u v"); }
GraphPtr two_vertex() { return load_graph("V u; V v; E a u u; E b u v; E c v u; E d v v"); }

// Out-degrees 3 and 2, so coefficient mix-ups between r(mu) and r(nu) are visible.
GraphPtr uneven() { return load_graph("V u; V v; E a u u; E b u u; E c u v; E d v u; E e v v"); }

std::vector<GraphPtr> core_graphs() { return {make_bouquet(2), make_bouquet(3), two_cycle(), uneven()}; }

const std::vector<UhfSystem>& uhf_systems() {
  static const std::vector<UhfSystem> systems = {UhfSystem(2, 1), UhfSystem(2, 2), UhfSystem(3, 2)};
  return systems;
}

std::vector<StarElement> random_elements(const GraphPtr& g, std::size_t count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<StarElement> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_core_element(g, 2, 1 + rng.below(4), rng));
  return out;
}

std::string both(const StarElement& a, const StarElement& b) { return "-- lhs --\n" + a.str() + "-- rhs --\n" + b.str(); }

// 1. beta(xy) = beta(x) beta(y), beta(x*) = beta(x)* on unit pairs and random elements; beta against the matrix model.
CheckReport ac1() {
  CheckReport report("beta homomorphism suite");
  for (const GraphPtr& g : core_graphs()) {
    const CoreEndo endo(g);
    const oracle::CoreModel model(*g, 3);
    const auto units = core_matrix_units(g, 2);
    std::vector<StarElement> images;
    for (const auto& x : units) images.push_back(endo.beta(x));
    for (std::size_t i = 0; i < units.size(); ++i) {
      report.expect(model.of(images[i]) == oracle::beta_model(*g, units[i], model),
                    [&] { return "beta differs from the matrix model on\n" + units[i].str(); });
      const StarElement adj = endo.beta(adjoint(units[i]));
      report.expect(equal(adj, adjoint(images[i])), [&] { return "beta(x*) != beta(x)*\n" + both(adj, adjoint(images[i])); });
      for (std::size_t j = 0; j < units.size(); ++j) {
        const StarElement lhs = endo.beta(units[i] * units[j]);
        const StarElement rhs = images[i] * images[j];
        report.expect(equal(lhs, rhs), [&] { return "beta(xy) != beta(x)beta(y)\n" + units[i].str() + units[j].str() + both(lhs, rhs); });
      }
    }
    const auto xs = random_elements(g, 100, 101);
    const auto ys = random_elements(g, 100, 202);
    for (std::size_t t = 0; t < xs.size(); ++t) {
      const StarElement bx = endo.beta(xs[t]);
      report.expect(model.of(bx) == oracle::beta_model(*g, xs[t], model), [&] { return "beta differs from the matrix model on\n" + xs[t].str(); });
      const StarElement lhs = endo.beta(xs[t] * ys[t]);
      const StarElement rhs = bx * endo.beta(ys[t]);
      report.expect(equal(lhs, rhs), [&] { return "beta(xy) != beta(x)beta(y)\n" + both(lhs, rhs); });
      const StarElement adj = endo.beta(adjoint(xs[t]));
      report.expect(equal(adj, adjoint(bx)), [&] { return "beta(x*) != beta(x)*\n" + both(adj, adjoint(bx)); });
    }
  }
  return report;
}

// 2. beta(x) = W x W* on the same cases; W*W = 1.
CheckReport ac2() {
  CheckReport report("covariance");
  for (const GraphPtr& g : core_graphs()) {
    const CoreEndo endo(g);
    const StarElement w = endo.build_w();
    const StarElement wstar = adjoint(w);
    StarElement vertices(g);
    for (std::size_t v = 0; v < g->vertex_count(); ++v) vertices += StarElement::vertex(g, static_cast<VertexId>(v));
    report.expect(equal(wstar * w, vertices), [&] { return "W*W != sum p_v\n" + (wstar * w).str(); });
    auto cases = core_matrix_units(g, 2);
    for (auto& x : random_elements(g, 100, 101)) cases.push_back(std::move(x));
    for (auto& x : random_elements(g, 100, 202)) cases.push_back(std::move(x));
    for (const auto& x : cases) {
      const StarElement lhs = endo.beta(x);
      const StarElement rhs = w * x * wstar;
      report.expect(equal(lhs, rhs), [&] { return "beta(x) != W x W*\n" + x.str() + both(lhs, rhs); });
    }
  }
  return report;
}

// 3. Images of matrix units at levels 1 and 2 are matrix units, checked by the library and in the matrix model.
CheckReport ac3() {
  CheckReport report("matrix-unit images");
  for (const GraphPtr& g : core_graphs()) {
    const CoreEndo endo(g);
    const oracle::CoreModel model(*g, 3);
    for (std::size_t level = 1; level <= 2; ++level) {
      for (std::size_t v = 0; v < g->vertex_count(); ++v) {
        const auto family = endo.matrix_unit_images(level, static_cast<VertexId>(v));
        report.merge(family.report);
        std::map<std::pair<std::size_t, std::size_t>, oracle::Dense> dense;
        for (const auto& [ij, e] : family.units) dense.emplace(ij, model.of(e));
        const oracle::Dense zero = model.zero();
        for (const auto& [ij, a] : dense) {
          report.expect(a != zero, [&] { return "zero matrix unit"; });
          report.expect(oracle::transpose(a) == dense.at({ij.second, ij.first}), [&] { return "e_{mu nu}* != e_{nu mu}"; });
          for (const auto& [kl, b] : dense) {
            const oracle::Dense want = ij.second == kl.first ? dense.at({ij.first, kl.second}) : zero;
            report.expect(oracle::mul(a, b) == want, [&] { return "matrix-unit law fails in the matrix model"; });
          }
        }
      }
    }
  }
  return report;
}

// Every graph on at most two vertices with at most four edges meeting the crosscheck precondition.
std::vector<GraphPtr> small_graphs() {
  std::vector<GraphPtr> out;
  for (int loops = 1; loops <= 4; ++loops) out.push_back(make_bouquet(loops));
  const std::vector<std::pair<std::string, std::string>> kinds = {{"u", "u"}, {"u", "v"}, {"v", "u"}, {"v", "v"}};
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; a + b <= 4; ++b) {
      for (int c = 0; a + b + c <= 4; ++c) {
        for (int d = 0; a + b + c + d <= 4; ++d) {
          if (a + b + c + d == 0) continue;
          std::string text = "V u; V v";
          int id = 0;
          const int per_kind[4] = {a, b, c, d};
          for (std::size_t k = 0; k < 4; ++k) {
            for (int r = 0; r < per_kind[k]; ++r) text += "; E f" + std::to_string(id++) + " " + kinds[k].first + " " + kinds[k].second;
          }
          const GraphPtr g = load_graph(text);
          const VertexReport info = g->classify_vertices();
          if (info.beta_admissible && info.all_regular) out.push_back(g);
        }
      }
    }
  }
  return out;
}

// 4. Module beta against core beta for every level-1 pair.
CheckReport ac4() {
  CheckReport report("two-oracle beta");
  std::size_t graphs = 0;
  for (const GraphPtr& g : small_graphs()) {
    ++graphs;
    for (const Path& mu : g->paths(1)) {
      for (const Path& nu : g->paths(1)) {
        try {
          report.merge(beta_crosscheck(g, mu, nu));
        } catch (const std::exception& err) {
          report.expect(false, [&] { return g->str() + g->path_str(mu) + " " + g->path_str(nu) + ": " + err.what(); });
        }
      }
    }
  }
  report.expect(graphs == 33, [&] { return "expected 33 admissible small graphs, enumerated " + std::to_string(graphs); });
  return report;
}

std::vector<DepthFunction> indicators(const GraphPtr& g, std::size_t max_depth) {
  std::vector<DepthFunction> out;
  for (std::size_t d = 0; d <= max_depth; ++d) {
    for (const Path& p : g->paths(d)) out.push_back(DepthFunction::indicator(g, p));
  }
  return out;
}

// 5. Transfer identity, normalization and left inverse.
CheckReport ac5() {
  CheckReport report("transfer calculus");
  for (const GraphPtr& g : {make_bouquet(2), make_bouquet(3), two_cycle(), two_vertex()}) {
    const DepthFunction one = DepthFunction::constant(g, 1);
    report.expect(transfer_L(one) == one, [] { return "L(1) != 1"; });
    const auto basis = indicators(g, 2);
    for (const auto& a : basis) {
      report.expect(transfer_L(a) == oracle::transfer_model(a), [&] { return "L differs from the averaging model on\n" + a.str(); });
      for (const auto& b : basis) report.merge(transfer_identity_check(a, b));
    }
    for (const auto& f : indicators(g, 3)) report.expect(transfer_L(alpha_shift(f)) == f, [&] { return "L(alpha(f)) != f for\n" + f.str(); });
    SplitMix64 rng(55);
    for (int t = 0; t < 100; ++t) {
      const DepthFunction a = random_depth_function(g, rng.below(3), rng);
      const DepthFunction b = random_depth_function(g, rng.below(3), rng);
      report.merge(transfer_identity_check(a, b));
      const DepthFunction lhs = transfer_L(alpha_shift(a) * b);
      const DepthFunction rhs = oracle::transfer_model(alpha_shift(a) * b);
      report.expect(lhs == rhs && lhs == a * oracle::transfer_model(b), [&] { return "transfer identity fails in the model"; });
    }
  }
  return report;
}

// 6. U*U = 1 and U*(q(a)) = L(a) at truncation depths 1..3.
CheckReport ac6() {
  CheckReport report("U isometry");
  for (const GraphPtr& g : core_graphs()) {
    for (std::size_t depth = 1; depth <= 3; ++depth) report.merge(HilbertModule<GraphPathSystem>(GraphPathSystem(g, depth)).u_check());
  }
  for (const UhfSystem& sys : uhf_systems()) {
    for (std::size_t depth = 1; depth <= 3; ++depth) report.merge(UhfModule(UhfExelSystem(sys, depth)).u_check());
  }
  return report;
}

// 7. The UHF to Cuntz chain.
CheckReport ac7() {
  CheckReport report("UHF chain");
  for (const UhfSystem& sys : uhf_systems()) {
    report.merge(e_basis_check(sys));
    const CuntzRepresentation pi(sys, canonical_cuntz_family(sys));
    SplitMix64 rng(sys.n * 7 + sys.N);
    std::vector<std::pair<TensorElement, TensorElement>> pairs;
    for (const auto& a : TensorElement::basis(sys.n, 1)) {
      for (const auto& b : TensorElement::basis(sys.n, 1)) pairs.emplace_back(a, b);
    }
    for (int t = 0; t < 20; ++t) pairs.emplace_back(random_tensor(sys.n, 2, 4, rng), random_tensor(sys.n, 2, 4, rng));
    report.merge(pi_matrix_unit_check(pi, 2));
    report.merge(pi_multiplicative_check(pi, pairs));
    report.merge(pi_relation_check(pi, 2));
    report.merge(iso_generators_check(sys, 2));
  }
  return report;
}

std::vector<std::vector<int>> words_of(std::size_t n, std::size_t length) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < ipow(n, length); ++i) out.push_back(digits(i, n, length));
  return out;
}

// 8. Prefix identity for basis elements of depth <= 2 and every prefix pair of admissible length <= 4.
CheckReport ac8() {
  CheckReport report("prefix representation");
  for (const UhfSystem& sys : {UhfSystem(2, 1), UhfSystem(3, 2)}) {
    std::vector<TensorElement> elements;
    for (std::size_t d = 0; d <= 2; ++d) {
      for (auto& b : TensorElement::basis(sys.n, d)) elements.push_back(std::move(b));
    }
    SplitMix64 rng(31);
    for (int t = 0; t < 5; ++t) elements.push_back(random_tensor(sys.n, 2, 6, rng));
    for (const auto& a : elements) {
      const TensorElement la = uhf_L(sys, a);
      for (std::size_t length = a.depth() + 1; length <= 4; ++length) {
        const auto words = words_of(sys.n, length);
        for (const auto& x : words) {
          for (const auto& y : words) {
            // both sides of the identity, evaluated from the definitions of the prefix model
            const Radical lhs = prefix_matrix_element(la, x, y);
            Radical rhs;
            for (std::size_t i = 0; i < sys.N; ++i) {
              std::vector<int> ix{static_cast<int>(i)}, iy{static_cast<int>(i)};
              ix.insert(ix.end(), x.begin(), x.end());
              iy.insert(iy.end(), y.begin(), y.end());
              rhs += prefix_matrix_element(a, ix, iy);
            }
            rhs = Radical(Rational(1, static_cast<unsigned long>(sys.N))) * rhs;
            report.expect(lhs == rhs, [&] { return "prefix identity fails for " + a.str(); });
          }
        }
        report.merge(prefix_rep_check(sys, a, words.front(), words.back()));
      }
    }
  }
  return report;
}

// 9. Dilation relations, Sigma_i and transversals.
CheckReport ac9() {
  CheckReport report("dilation");
  const std::vector<IntRows> matrices = {{{2}}, {{2, 0}, {0, 2}}, {{1, 1}, {-1, 1}}, {{2, 0}, {0, 3}}};
  for (const IntRows& b : matrices) {
    const LatticeSystem sys = make_lattice_system(b);
    report.merge(lattice_rep_check(sys, 8));
    for (std::size_t i = 1; i <= 3; ++i) {
      report.merge(sigma_i_check(sys, i));
      const auto set = sigma_i(sys, i);
      const IntRows bi = matrix_power(b, i);
      long expected = 1;
      for (std::size_t k = 0; k < i; ++k) expected *= std::labs(sys.det);
      report.expect(static_cast<long>(set.size()) == expected, [&] { return "|Sigma_i| != |det B|^i"; });
      for (std::size_t p = 0; p < set.size(); ++p) {
        for (std::size_t q = p + 1; q < set.size(); ++q) {
          IntVec diff(sys.d);
          for (std::size_t k = 0; k < sys.d; ++k) diff[k] = set[p][k] - set[q][k];
          report.expect(!oracle::in_lattice(bi, diff), [&] { return vec_str(set[p]) + " and " + vec_str(set[q]) + " share a coset"; });
        }
      }
    }
    for (std::size_t i = 1; i <= 2; ++i) report.merge(sigma_matrix_unit_check(sys, i, 2));
    const IntVec zero(sys.d, 0);
    for (const IntVec& m : sys.sigma) {
      report.merge(dilation_beta_check(sys, DilationTerm{m, 1, zero}, 8));
      report.merge(dilation_product_check(sys, DilationTerm{m, 1, zero}, DilationTerm{zero, 1, m}, 8));
    }
    report.merge(dilation_beta_check(sys, DilationTerm{zero, 0, zero}, 8));
  }
  return report;
}

// 10. i-expansion: recombination, idempotence, component membership and uniqueness.
CheckReport ac10() {
  CheckReport report("i-expansion");
  for (const GraphPtr& g : {load_graph("V a; V b; E x a b"), make_bouquet(2)}) {
    const VertexReport info = g->classify_vertices();
    for (std::size_t i = 0; i <= 3; ++i) {
      std::vector<StarElement> cases = core_matrix_units(g, i);
      SplitMix64 rng(i + 1);
      for (int t = 0; t < 20; ++t) cases.push_back(random_core_element(g, i, 1 + rng.below(4), rng));
      for (const StarElement& x : cases) {
        const auto parts = i_expand(x, i);
        report.expect(parts.size() == i + 1, [] { return "wrong number of components"; });
        StarElement sum(g);
        for (std::size_t j = 0; j <= i; ++j) {
          sum += parts[j];
          for (const auto& [w, c] : parts[j].terms()) {
            const bool level_ok = w.mu.size() == j && w.nu.size() == j;
            const bool singular_ok = j == i || info.vertices[static_cast<std::size_t>(w.mu.source)].singular;
            report.expect(level_ok && singular_ok, [&] { return "component " + std::to_string(j) + " leaves its summand\n" + x.str(); });
          }
        }
        report.expect(equal(sum, x), [&] { return "components do not recombine\n" + x.str(); });
        // reapplying to each component returns it in the same slot
        for (std::size_t j = 0; j <= i; ++j) {
          const auto again = i_expand(parts[j], i);
          for (std::size_t k = 0; k <= i; ++k) {
            const bool ok = k == j ? again[k].terms() == parts[j].terms() : again[k].is_zero();
            report.expect(ok, [&] { return "i-expansion is not idempotent on component " + std::to_string(j); });
          }
        }
        // the same element written with every low regular term pushed one level up decomposes identically
        StarElement rewritten(g);
        for (const auto& [w, c] : x.terms()) {
          const auto& incoming = g->in_edges(w.mu.source);
          if (w.mu.size() >= i || incoming.empty()) {
            rewritten.add_term(c, w.mu, w.nu);
            continue;
          }
          for (EdgeId e : incoming) rewritten.add_term(c, *g->append(w.mu, e), *g->append(w.nu, e));
        }
        report.expect(equal(rewritten, x), [&] { return "one-step expansion changed the element\n" + x.str(); });
        const auto other = i_expand(rewritten, i);
        for (std::size_t j = 0; j <= i; ++j) {
          report.expect(other[j].terms() == parts[j].terms(), [&] { return "decomposition not unique for\n" + x.str(); });
        }
      }
    }
  }
  return report;
}

GroupPresentation cyclic(long order) {
  GroupPresentation g;
  if (order >= 2) g.torsion.emplace_back(order);
  if (order == 0) g.free_rank = 1;
  return g;
}

// 11. K-theory golden values and consistency.
CheckReport ac11() {
  CheckReport report("K-theory");
  for (int n = 2; n <= 6; ++n) {
    const GraphKTheory k = graph_k_theory(make_bouquet(n));
    report.merge(k.report);
    report.expect(k.k0 == cyclic(n - 1) && k.k1.trivial(), [&] { return "bouquet of " + std::to_string(n) + ": K_0 = " + k.k0.str() + ", K_1 = " + k.k1.str(); });
  }
  const GraphKTheory loop = graph_k_theory(make_bouquet(1));
  report.expect(loop.k0 == cyclic(0) && loop.k1 == cyclic(0), [&] { return "single loop: " + loop.k0.str() + ", " + loop.k1.str(); });
  for (const GraphPtr& g : {make_bouquet(1), make_bouquet(2), make_bouquet(3), make_bouquet(6), two_cycle(), two_vertex(),
                            uneven()}) {
    const GraphKTheory k = graph_k_theory(g);
    // classical answer from the vertex matrix built here from the edge list
    IntMatrix at(g->vertex_count(), g->vertex_count());
    for (EdgeId e = 0; e < static_cast<EdgeId>(g->edge_count()); ++e) at.at(g->edge(e).src, g->edge(e).rng) += 1;
    const CokerKer classical = coker_ker(at - IntMatrix::identity(g->vertex_count()));
    report.expect(k.k0 == classical.coker && k.k1.free_rank == classical.ker_rank && k.k1.torsion.empty(),
                  [&] { return "artifact K-theory differs from coker/ker(A^t - I) on\n" + g->str(); });
  }
  for (const UhfSystem& sys : uhf_systems()) {
    const long nN = static_cast<long>(sys.generators());
    const PaschkeResult p = paschke_sequence(IntMatrix::from_rows({{nN}}), true);
    const GraphKTheory k = graph_k_theory(make_bouquet(static_cast<int>(nN)));
    report.expect(p.k0 == cyclic(nN - 1) && p.k1.trivial() && p.k0 == k.k0 && p.k1 == k.k1,
                  [&] { return "Paschke for nN = " + std::to_string(nN) + " gives " + p.k0.str() + ", " + p.k1.str(); });
  }
  return report;
}

// 12. Numeric norms and Gram positivity.
CheckReport ac12() {
  CheckReport report("numeric norms");
  for (const GraphPtr& g : core_graphs()) {
    const NormResult w = op_norm(CoreEndo(g).build_w());
    report.expect(std::abs(w.value - 1.0) <= 1e-9, [&] { return "op_norm(W) = " + std::to_string(w.value); });
    for (std::size_t v = 0; v < g->vertex_count(); ++v) {
      const double pv = op_norm(StarElement::vertex(g, static_cast<VertexId>(v))).value;
      report.expect(pv == 1.0, [&] { return "op_norm(p_v) = " + std::to_string(pv); });
    }
    const HilbertModule<GraphPathSystem> module(GraphPathSystem(g, 3));
    SplitMix64 rng(77);
    std::vector<HilbertModule<GraphPathSystem>::Element> elements;
    for (int t = 0; t < 8; ++t) elements.push_back(module.coords_of(to_radical(random_depth_function(g, 1 + rng.below(2), rng))));
    for (std::size_t i = 0; i < module.system().frame_size(); ++i) elements.push_back(module.frame_element({static_cast<int>(i)}));
    const double lowest = module.gram_min_eigenvalue(elements);
    report.expect(lowest >= -1e-9, [&] { return "graph Gram matrix has eigenvalue " + std::to_string(lowest); });
  }
  for (const UhfSystem& sys : uhf_systems()) {
    const UhfModule module(UhfExelSystem(sys, 3));
    SplitMix64 rng(78);
    std::vector<UhfModule::Element> elements;
    std::vector<TensorElement> raw;
    for (int t = 0; t < 8; ++t) {
      raw.push_back(random_tensor(sys.n, 1 + rng.below(2), 5, rng));
      elements.push_back(module.coords_of(raw.back()));
    }
    const double lowest = module.gram_min_eigenvalue(elements);
    report.expect(lowest >= -1e-9, [&] { return "UHF Gram matrix has eigenvalue " + std::to_string(lowest); });
    const double positivity = transfer_positivity(sys, raw);
    report.expect(positivity >= -1e-9, [&] { return "L(a*a) has eigenvalue " + std::to_string(positivity); });
  }
  return report;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<CheckReport()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},  {"AC5", ac5},   {"AC6", ac6},
      {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11}, {"AC12", ac12}};
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    CheckReport report;
    try {
      report = run();
    } catch (const std::exception& err) {
      report.name = id;
      report.failures.push_back(std::string("exception: ") + err.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = report.passed() && report.checks > 0;
    if (!ok) ++failed;
    std::printf("[%s] %s %s: %zu checks, %zu failed, %.2f s\n", ok ? "PASS" : "FAIL", id.c_str(), report.name.c_str(), report.checks,
                report.failures.size(), seconds);
    for (std::size_t i = 0; i < report.failures.size() && i < 3; ++i) std::printf("  %s\n", report.failures[i].c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
