#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ckbench/errors.hpp"
#include "ckbench/exel_path.hpp"
#include "ckbench/report.hpp"
#include "ckbench/star_algebra.hpp"
#include "ckbench/tensor.hpp"

namespace ckb {

// A word of frame indices naming F_{w_1} (x) ... (x) F_{w_i}.
using IndexWord = std::vector<int>;

template <class Coeff>
struct ModuleElement {
  std::size_t degree = 1;
  std::map<IndexWord, Coeff> coords;  // <F_w, m>; absent means zero
};

template <class Coeff>
struct CompactOp {
  std::size_t out_degree = 0;
  std::size_t in_degree = 0;
  std::map<std::pair<IndexWord, IndexWord>, Coeff> entries;  // <F_w, T F_w'>
};

inline IndexWord concat_words(const IndexWord& a, const IndexWord& b) {
  IndexWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string word_label(const IndexWord& w);

// Locally constant functions on the path space with the frame m_e = |s^-1(s(e))|^{1/2} q(chi_Z(e)).
class GraphPathSystem {
 public:
  using Coeff = RadFunction;

  GraphPathSystem(GraphPtr graph, std::size_t max_depth);

  const GraphPtr& graph_ptr() const { return graph_; }
  std::string name() const { return "graph path system"; }
  std::size_t max_depth() const { return max_depth_; }
  std::size_t depth(const Coeff& c) const { return c.depth(); }
  Coeff one() const { return Coeff::constant(graph_, Radical(1)); }
  Coeff zero() const { return Coeff(graph_, 0); }
  Coeff adjoint(const Coeff& c) const { return c; }
  Coeff alpha(const Coeff& c) const { return alpha_shift(c); }
  Coeff transfer(const Coeff& c) const { return transfer_L(c); }

  std::size_t frame_size() const { return graph_->edge_count(); }
  Radical frame_scale(std::size_t i) const;
  Coeff frame_vector(std::size_t i) const;
  Coeff expected_gram(std::size_t i, std::size_t j) const;
  std::string frame_label(std::size_t i) const { return "m_" + graph_->edge(static_cast<EdgeId>(i)).name; }

  std::vector<IndexWord> words(std::size_t degree) const;
  std::vector<Coeff> basis(std::size_t depth) const;
  RadMatrix as_matrix(const Coeff& c, std::size_t depth) const;
  std::string str(const Coeff& c) const { return c.str(); }

 private:
  GraphPtr graph_;
  std::size_t max_depth_;
};

template <class System>
class HilbertModule {
 public:
  using Coeff = typename System::Coeff;
  using Element = ModuleElement<Coeff>;
  using Operator = CompactOp<Coeff>;

  explicit HilbertModule(System system) : sys_(std::move(system)), u_coords_(coords_of(alpha(sys_.one()))) {}

  const System& system() const { return sys_; }

  Coeff checked(Coeff c) const {
    if (sys_.depth(c) > sys_.max_depth())
      throw DepthError("coefficient of depth " + std::to_string(sys_.depth(c)) + " exceeds truncation depth " +
                       std::to_string(sys_.max_depth()));
    return c;
  }
  Coeff alpha(const Coeff& a) const { return checked(sys_.alpha(a)); }
  Coeff transfer(const Coeff& a) const { return sys_.transfer(checked(a)); }
  Coeff mul(const Coeff& a, const Coeff& b) const { return checked(a * b); }

  // <q(a), q(b)> = L(a^* b)
  Coeff inner_raw(const Coeff& a, const Coeff& b) const { return transfer(mul(sys_.adjoint(a), b)); }

  // Frame coordinates of q(a) in degree 1.
  Element coords_of(const Coeff& a) const {
    Element out{1, {}};
    for (std::size_t i = 0; i < sys_.frame_size(); ++i) {
      Coeff c = sys_.frame_scale(i) * inner_raw(sys_.frame_vector(i), a);
      if (!c.is_zero()) out.coords.emplace(IndexWord{static_cast<int>(i)}, std::move(c));
    }
    return out;
  }

  Element frame_element(const IndexWord& w) const {
    Element out{w.size(), {}};
    for (const auto& [key, c] : gram(w.size()).entries) {
      if (key.second == w) out.coords.emplace(key.first, c);
    }
    return out;
  }

  // Degree-0 element a of A_A.
  Element scalar_element(const Coeff& a) const {
    Element out{0, {}};
    if (!a.is_zero()) out.coords.emplace(IndexWord{}, a);
    return out;
  }

  Element right_act(const Element& x, const Coeff& b) const {
    Element out{x.degree, {}};
    for (const auto& [w, c] : x.coords) {
      Coeff v = mul(c, b);
      if (!v.is_zero()) out.coords.emplace(w, std::move(v));
    }
    return out;
  }

  Coeff inner(const Element& x, const Element& y) const {
    Coeff sum = sys_.zero();
    for (const auto& [w, c] : x.coords) {
      const auto it = y.coords.find(w);
      if (it != y.coords.end()) sum += mul(sys_.adjoint(c), it->second);
    }
    return sum;
  }

  // Coordinates of x (x) y for x of degree 1: <F_j (x) F_w, x (x) y> = <F_w, x_j . y>.
  Element tensor(const Element& x, const Element& y) const {
    Element out{x.degree + y.degree, {}};
    for (const auto& [j, c] : x.coords) {
      const Element part = apply(phi(c, y.degree), y);
      for (const auto& [w, v] : part.coords) out.coords.emplace(concat_words(j, w), v);
    }
    return out;
  }

  bool same(const Element& x, const Element& y) const {
    if (x.degree != y.degree) return false;
    return same_maps(x.coords, y.coords);
  }

  // Left action phi(a) on the degree-i tensor power; phi(1) is the Gram matrix.
  Operator phi(const Coeff& a, std::size_t degree) const {
    Operator out{degree, degree, {}};
    if (degree == 0) {
      if (!a.is_zero()) out.entries.emplace(std::make_pair(IndexWord{}, IndexWord{}), a);
      return out;
    }
    for (std::size_t i = 0; i < sys_.frame_size(); ++i) {
      const Coeff left = sys_.frame_scale(i) * mul(sys_.adjoint(sys_.frame_vector(i)), a);
      for (std::size_t j = 0; j < sys_.frame_size(); ++j) {
        Coeff c = sys_.frame_scale(j) * transfer(mul(left, sys_.frame_vector(j)));
        if (c.is_zero()) continue;
        const IndexWord wi{static_cast<int>(i)};
        const IndexWord wj{static_cast<int>(j)};
        if (degree == 1) {
          out.entries.emplace(std::make_pair(wi, wj), std::move(c));
          continue;
        }
        for (const auto& [key, v] : phi(c, degree - 1).entries)
          out.entries.emplace(std::make_pair(concat_words(wi, key.first), concat_words(wj, key.second)), v);
      }
    }
    return out;
  }

  Operator gram(std::size_t degree) const { return phi(sys_.one(), degree); }

  // U(a) = q(alpha(a)).
  Element u_of(const Coeff& a) const { return coords_of(alpha(a)); }

  // U_i = U (x) 1_i : degree i -> degree i + 1.
  Operator u_op(std::size_t degree) const {
    Operator out{degree + 1, degree, {}};
    for (const auto& [j, uj] : u_coords_.coords) {
      for (const auto& [key, v] : phi(uj, degree).entries)
        out.entries.emplace(std::make_pair(concat_words(j, key.first), key.second), v);
    }
    return out;
  }

  Operator compose(const Operator& a, const Operator& b) const {
    if (a.in_degree != b.out_degree) throw std::invalid_argument("operator degrees do not compose");
    Operator out{a.out_degree, b.in_degree, {}};
    std::map<IndexWord, std::vector<std::pair<const IndexWord*, const Coeff*>>> b_rows;
    for (const auto& [key, v] : b.entries) b_rows[key.first].emplace_back(&key.second, &v);
    for (const auto& [key, av] : a.entries) {
      const auto it = b_rows.find(key.second);
      if (it == b_rows.end()) continue;
      for (const auto& [col, bv] : it->second) accumulate(out.entries, std::make_pair(key.first, *col), mul(av, *bv));
    }
    return out;
  }

  Operator adjoint(const Operator& a) const {
    Operator out{a.in_degree, a.out_degree, {}};
    for (const auto& [key, v] : a.entries) out.entries.emplace(std::make_pair(key.second, key.first), sys_.adjoint(v));
    return out;
  }

  Element apply(const Operator& a, const Element& x) const {
    if (a.in_degree != x.degree) throw std::invalid_argument("operator and element degrees differ");
    Element out{a.out_degree, {}};
    for (const auto& [key, v] : a.entries) {
      const auto it = x.coords.find(key.second);
      if (it != x.coords.end()) accumulate(out.coords, key.first, mul(v, it->second));
    }
    return out;
  }

  Operator theta(const Element& x, const Element& y) const {
    Operator out{x.degree, y.degree, {}};
    for (const auto& [w, a] : x.coords) {
      for (const auto& [v, b] : y.coords) accumulate(out.entries, std::make_pair(w, v), mul(a, sys_.adjoint(b)));
    }
    return out;
  }

  // T (x) 1, splitting off the last tensor factor.
  Operator tensor_one(const Operator& t) const {
    Operator out{t.out_degree + 1, t.in_degree + 1, {}};
    for (const auto& [key, c] : t.entries) {
      for (const auto& [inner_key, v] : phi(c, 1).entries)
        out.entries.emplace(std::make_pair(concat_words(key.first, inner_key.first), concat_words(key.second, inner_key.second)), v);
    }
    return out;
  }

  Operator conj_beta(const Operator& t) const {
    if (t.in_degree != t.out_degree) throw std::invalid_argument("conj_beta needs an operator on one tensor power");
    const Operator u = u_op(t.in_degree);
    return compose(compose(u, t), adjoint(u));
  }

  bool same(const Operator& a, const Operator& b) const {
    return a.out_degree == b.out_degree && a.in_degree == b.in_degree && same_maps(a.entries, b.entries);
  }

  std::string str(const Element& x) const {
    if (x.coords.empty()) return "0\n";
    std::string out;
    for (const auto& [w, c] : x.coords) out += "[" + word_label(w) + "]\n" + sys_.str(c);
    return out;
  }

  std::string str(const Operator& a) const {
    if (a.entries.empty()) return "0\n";
    std::string out;
    for (const auto& [key, c] : a.entries) out += "[" + word_label(key.first) + " | " + word_label(key.second) + "]\n" + sys_.str(c);
    return out;
  }

  // The Gram identities of the canonical frame.
  CheckReport frame_check() const {
    CheckReport report{"frame Gram identities"};
    const Operator g = gram(1);
    for (std::size_t i = 0; i < sys_.frame_size(); ++i) {
      for (std::size_t j = 0; j < sys_.frame_size(); ++j) {
        const auto it = g.entries.find({IndexWord{static_cast<int>(i)}, IndexWord{static_cast<int>(j)}});
        const Coeff got = it == g.entries.end() ? sys_.zero() : it->second;
        const Coeff want = sys_.expected_gram(i, j);
        report.expect(got == want, [&] {
          return "<" + sys_.frame_label(i) + ", " + sys_.frame_label(j) + ">\n-- got --\n" + sys_.str(got) + "-- want --\n" + sys_.str(want);
        });
      }
    }
    return report;
  }

  // m = sum_i F_i <F_i, m> in frame coordinates: the Gram operator fixes m.
  CheckReport reconstruct_check(const Element& m) const {
    CheckReport report{"reconstruction"};
    const Element back = apply(gram(m.degree), m);
    report.expect(same(back, m), [&] { return "sum F_i <F_i, m> != m\n-- m --\n" + str(m) + "-- sum --\n" + str(back); });
    return report;
  }

  // q(a) = sum_i F_i <F_i, q(a)> in M_L, decided through the null space of the pairing.
  CheckReport reconstruct_check_raw(const Coeff& a) const {
    CheckReport report{"reconstruction of q(a)"};
    Coeff rebuilt = sys_.zero();
    for (const auto& [w, c] : coords_of(a).coords) {
      const std::size_t i = static_cast<std::size_t>(w.front());
      rebuilt += sys_.frame_scale(i) * mul(sys_.frame_vector(i), alpha(c));
    }
    const Coeff diff = a - rebuilt;
    const Coeff norm = inner_raw(diff, diff);
    report.expect(norm.is_zero(), [&] { return "q(a) not reconstructed\n-- a --\n" + sys_.str(a) + "-- <d,d> --\n" + sys_.str(norm); });
    return report;
  }

  // U*U = 1, isometry and linearity on the truncated basis, and U*(q(a)) = L(a).
  CheckReport u_check() const {
    CheckReport report{"U isometry"};
    Coeff uu = sys_.zero();
    for (const auto& [j, c] : u_coords_.coords) uu += mul(sys_.adjoint(c), c);
    report.expect(uu == sys_.one(), [&] { return "U*U != 1\n" + sys_.str(uu); });
    const std::size_t k = sys_.max_depth();
    std::vector<Coeff> inner_basis;
    std::vector<Coeff> full_basis;
    for (std::size_t d = 0; d <= k; ++d) {
      for (auto& b : sys_.basis(d)) {
        if (d < k) inner_basis.push_back(b);
        full_basis.push_back(std::move(b));
      }
    }
    std::vector<Element> images;
    for (const Coeff& a : inner_basis) {
      images.push_back(u_of(a));
      const Element linear = right_act(u_coords_, a);
      report.expect(same(images.back(), linear), [&] { return "U(a) != U(1) a\n-- a --\n" + sys_.str(a); });
    }
    for (std::size_t x = 0; x < inner_basis.size(); ++x) {
      for (std::size_t y = 0; y < inner_basis.size(); ++y) {
        const Coeff lhs = inner(images[x], images[y]);
        const Coeff rhs = mul(sys_.adjoint(inner_basis[x]), inner_basis[y]);
        report.expect(lhs == rhs, [&] {
          return "<U a, U b> != a* b\n-- a --\n" + sys_.str(inner_basis[x]) + "-- b --\n" + sys_.str(inner_basis[y]);
        });
      }
    }
    for (const Coeff& a : full_basis) {
      const Coeff lhs = inner(u_coords_, coords_of(a));
      const Coeff rhs = transfer(a);
      report.expect(lhs == rhs, [&] {
        return "U*(q(a)) != L(a)\n-- a --\n" + sys_.str(a) + "-- U*(q(a)) --\n" + sys_.str(lhs) + "-- L(a) --\n" + sys_.str(rhs);
      });
    }
    return report;
  }

  // U_i*U_i = 1, U_{i+1} = U_i (x) 1, and the module identities for U_i on basis elements.
  CheckReport u_tensor_check(std::size_t degree) const {
    CheckReport report{"U_" + std::to_string(degree)};
    const Operator u = u_op(degree);
    const Operator uu = compose(adjoint(u), u);
    report.expect(same(uu, gram(degree)), [&] { return "U_i* U_i != 1\n" + str(uu); });
    const Operator next = u_op(degree + 1);
    const Operator split = tensor_one(u);
    report.expect(same(next, split), [&] { return "U_{i+1} != U_i (x) 1\n-- U_{i+1} --\n" + str(next) + "-- U_i (x) 1 --\n" + str(split); });
    const std::size_t k = sys_.max_depth();
    for (std::size_t d = 0; d < k; ++d) {
      for (const Coeff& a : sys_.basis(d)) {
        const Operator left = phi(a, degree);
        const Coeff la = transfer(a);
        const Operator left_l = phi(la, degree);
        const Element qa = coords_of(a);
        const Element qalpha = coords_of(alpha(a));
        for (const IndexWord& w : sys_.words(degree)) {
          const Element fw = degree == 0 ? scalar_element(sys_.one()) : frame_element(w);
          const Element lhs_a = apply(u, apply(left, fw));
          const Element rhs_a = tensor(qalpha, fw);
          report.expect(same(lhs_a, rhs_a), [&] { return "U_i(a m) != q(alpha(a)) (x) m at " + word_label(w) + "\n-- a --\n" + sys_.str(a); });
          const Element lhs_b = apply(adjoint(u), tensor(qa, fw));
          const Element rhs_b = apply(left_l, fw);
          report.expect(same(lhs_b, rhs_b), [&] { return "U_i*(q(a) (x) m) != L(a) m at " + word_label(w) + "\n-- a --\n" + sys_.str(a); });
        }
      }
    }
    return report;
  }

  // Gram matrix of the given elements, assembled exactly, then eigenvalues in floating point.
  double gram_min_eigenvalue(const std::vector<Element>& elements) const {
    std::size_t depth = 0;
    std::vector<std::vector<Coeff>> g(elements.size());
    for (std::size_t a = 0; a < elements.size(); ++a) {
      for (std::size_t b = 0; b < elements.size(); ++b) {
        g[a].push_back(inner(elements[a], elements[b]));
        depth = std::max(depth, sys_.depth(g[a].back()));
      }
    }
    std::size_t block = 0;
    std::vector<std::vector<RadMatrix>> blocks(elements.size());
    for (std::size_t a = 0; a < elements.size(); ++a) {
      for (std::size_t b = 0; b < elements.size(); ++b) {
        blocks[a].push_back(sys_.as_matrix(g[a][b], depth));
        block = blocks[a].back().rows();
      }
    }
    RadMatrix big(block * elements.size(), block * elements.size());
    for (std::size_t a = 0; a < elements.size(); ++a) {
      for (std::size_t b = 0; b < elements.size(); ++b) {
        for (const auto& [ij, v] : blocks[a][b].entries()) big.set(a * block + ij.first, b * block + ij.second, v);
      }
    }
    return min_eigenvalue(big);
  }

 private:
  template <class Key>
  void accumulate(std::map<Key, Coeff>& m, const Key& key, Coeff value) const {
    if (value.is_zero()) return;
    auto [it, inserted] = m.try_emplace(key, value);
    if (!inserted) {
      it->second += value;
      if (it->second.is_zero()) m.erase(it);
    }
  }

  template <class Key>
  bool same_maps(const std::map<Key, Coeff>& a, const std::map<Key, Coeff>& b) const {
    for (const auto& [key, v] : a) {
      const auto it = b.find(key);
      if (it == b.end() ? !v.is_zero() : !(v == it->second)) return false;
    }
    for (const auto& [key, v] : b) {
      if (a.find(key) == a.end() && !v.is_zero()) return false;
    }
    return true;
  }

  System sys_;
  Element u_coords_;  // <F_j, U(1)>
};

// Frame-induced representation psi(m) = sum_i S_i pi(<F_i, m>) into a graph algebra.
template <class System>
class FrameRepresentation {
 public:
  using Coeff = typename System::Coeff;
  using Module = HilbertModule<System>;

  FrameRepresentation(const Module& module, std::vector<StarElement> family, std::function<StarElement(const Coeff&)> pi)
      : module_(module), family_(std::move(family)), pi_(std::move(pi)) {
    if (family_.size() != module_.system().frame_size()) throw std::invalid_argument("family size differs from frame size");
  }

  StarElement pi(const Coeff& a) const { return pi_(a); }

  StarElement psi(const typename Module::Element& m) const {
    if (m.degree != 1) throw std::invalid_argument("psi acts on the module itself");
    StarElement out(family_.front().graph_ptr());
    for (const auto& [w, c] : m.coords) out += family_.at(static_cast<std::size_t>(w.front())) * pi_(c);
    return out;
  }

  StarElement psi_raw(const Coeff& a) const { return psi(module_.coords_of(a)); }

  // Sum S_i S_i^* = 1 and S_i^* pi(b) S_j = pi(<F_i, b F_j>) on the generators.
  CheckReport hypothesis_check(const std::vector<Coeff>& generators) const {
    CheckReport report{"frame representation hypotheses"};
    const GraphPtr g = family_.front().graph_ptr();
    StarElement sum(g);
    for (const auto& s : family_) sum += s * adjoint(s);
    report.expect(equal(sum, StarElement::unit(g)), [&] { return "sum S_i S_i* != 1\n" + sum.str(); });
    const System& sys = module_.system();
    for (const Coeff& b : generators) {
      const StarElement pb = pi_(b);
      const auto left = module_.phi(b, 1);
      for (std::size_t i = 0; i < family_.size(); ++i) {
        const StarElement si_pb = adjoint(family_[i]) * pb;
        for (std::size_t j = 0; j < family_.size(); ++j) {
          const auto it = left.entries.find({IndexWord{static_cast<int>(i)}, IndexWord{static_cast<int>(j)}});
          const StarElement rhs = it == left.entries.end() ? StarElement(g) : pi_(it->second);
          const StarElement lhs = si_pb * family_[j];
          report.expect(equal(lhs, rhs), [&] {
            return "S_i* pi(b) S_j != pi(<F_i, b F_j>) for " + sys.frame_label(i) + ", " + sys.frame_label(j) + "\n-- b --\n" +
                   sys.str(b) + "-- lhs --\n" + lhs.str() + "-- rhs --\n" + rhs.str();
          });
        }
      }
    }
    return report;
  }

  // Toeplitz identities, Cuntz-Pimsner covariance and psi(F_i) = S_i.
  CheckReport verify(const std::vector<Coeff>& module_basis, const std::vector<Coeff>& coeff_basis) const {
    CheckReport report{"frame representation"};
    const System& sys = module_.system();
    const auto both = [](const StarElement& l, const StarElement& r) { return "-- lhs --\n" + l.str() + "-- rhs --\n" + r.str(); };
    for (std::size_t i = 0; i < family_.size(); ++i) {
      const StarElement got = psi(module_.frame_element(IndexWord{static_cast<int>(i)}));
      report.expect(equal(got, family_[i]), [&] { return "psi(F_i) != S_i for " + sys.frame_label(i) + "\n" + both(got, family_[i]); });
    }
    std::vector<StarElement> images;
    for (const Coeff& a : module_basis) images.push_back(psi_raw(a));
    for (std::size_t x = 0; x < module_basis.size(); ++x) {
      const Coeff& a = module_basis[x];
      for (const Coeff& b : coeff_basis) {
        const StarElement pb = pi_(b);
        const StarElement right_l = psi_raw(module_.mul(a, module_.alpha(b)));
        const StarElement right_r = images[x] * pb;
        report.expect(equal(right_l, right_r), [&] {
          return "psi(m b) != psi(m) pi(b)\n-- a --\n" + sys.str(a) + "-- b --\n" + sys.str(b) + both(right_l, right_r);
        });
        const StarElement left_l = psi_raw(module_.mul(b, a));
        const StarElement left_r = pb * images[x];
        report.expect(equal(left_l, left_r), [&] {
          return "psi(b m) != pi(b) psi(m)\n-- a --\n" + sys.str(a) + "-- b --\n" + sys.str(b) + both(left_l, left_r);
        });
      }
      for (std::size_t y = 0; y < module_basis.size(); ++y) {
        const StarElement lhs = adjoint(images[x]) * images[y];
        const StarElement rhs = pi_(module_.inner_raw(a, module_basis[y]));
        report.expect(equal(lhs, rhs), [&] {
          return "psi(m)* psi(n) != pi(<m, n>)\n-- a --\n" + sys.str(a) + "-- a' --\n" + sys.str(module_basis[y]) + both(lhs, rhs);
        });
      }
    }
    const GraphPtr g = family_.front().graph_ptr();
    for (const Coeff& b : coeff_basis) {
      StarElement lhs(g);
      for (std::size_t i = 0; i < family_.size(); ++i) {
        const StarElement bf = sys.frame_scale(i) * psi_raw(module_.mul(b, sys.frame_vector(i)));
        lhs += bf * adjoint(family_[i]);
      }
      const StarElement rhs = pi_(b);
      report.expect(equal(lhs, rhs), [&] { return "sum psi(b F_i) psi(F_i)* != pi(b)\n-- b --\n" + sys.str(b) + both(lhs, rhs); });
    }
    return report;
  }

 private:
  const Module& module_;
  std::vector<StarElement> family_;
  std::function<StarElement(const Coeff&)> pi_;
};

// c -> sum_lambda c(lambda) t_lambda t_lambda^*
StarElement diagonal_to_star(const GraphPtr& graph, const RadFunction& c);
// T -> sum_{w, w'} t_w D(T_{w w'}) t_w'^*
StarElement operator_to_star(const HilbertModule<GraphPathSystem>& module, const CompactOp<RadFunction>& t);
CheckReport beta_crosscheck(const GraphPtr& graph, const Path& mu, const Path& nu);

}  // namespace ckb
