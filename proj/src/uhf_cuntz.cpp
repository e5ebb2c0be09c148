#include "ckbench/uhf_cuntz.hpp"

#include <set>
#include <stdexcept>

namespace ckb {

namespace {

Radical fraction(long p, long q) {
  Rational r(p);
  r /= Rational(q);
  return Radical(r);
}

std::string letters_str(const std::vector<int>& w) {
  std::string out;
  for (int letter : w) out += std::to_string(letter + 1);
  return out.empty() ? "()" : out;
}

std::vector<TensorElement> basis_up_to(std::size_t n, std::size_t depth) {
  std::vector<TensorElement> out;
  for (std::size_t d = 0; d <= depth; ++d) {
    for (auto& b : TensorElement::basis(n, d)) out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

UhfSystem::UhfSystem(std::size_t n_, std::size_t big_n) : n(n_), N(big_n) {
  if (N < 1 || N > n) throw std::invalid_argument("UHF system needs 1 <= N <= n");
}

RadMatrix UhfSystem::projection() const {
  RadMatrix p(n, n);
  for (std::size_t i = 0; i < N; ++i) p.set(i, i, Radical(1));
  return p;
}

TensorElement uhf_alpha(const UhfSystem& sys, const TensorElement& a) {
  if (a.n() != sys.n) throw std::invalid_argument("tensor factor size differs from the system");
  return TensorElement(sys.n, a.depth() + 1, kron(sys.projection(), a.matrix()));
}

TensorElement uhf_L(const UhfSystem& sys, const TensorElement& a) {
  if (a.n() != sys.n) throw std::invalid_argument("tensor factor size differs from the system");
  if (a.depth() == 0) return uhf_L(sys, a.lift(1));
  const std::size_t block = ipow(sys.n, a.depth() - 1);
  const Radical weight = fraction(1, static_cast<long>(sys.N));
  RadMatrix out(block, block);
  for (const auto& [ij, v] : a.matrix().entries()) {
    const std::size_t i = ij.first / block;
    if (i != ij.second / block || i >= sys.N) continue;
    out.add(ij.first % block, ij.second % block, weight * v);
  }
  return TensorElement(sys.n, a.depth() - 1, std::move(out));
}

UhfExelSystem::UhfExelSystem(UhfSystem sys, std::size_t max_depth) : sys_(sys), max_depth_(max_depth) {
  if (max_depth_ < 1) throw std::invalid_argument("truncation depth must be at least 1");
}

TensorElement UhfExelSystem::frame_vector(std::size_t index) const {
  return TensorElement::unit(sys_.n, {static_cast<int>(index / sys_.N)}, {static_cast<int>(index % sys_.N)});
}

std::string UhfExelSystem::frame_label(std::size_t index) const {
  return "E_" + std::to_string(index / sys_.N + 1) + std::to_string(index % sys_.N + 1);
}

std::vector<IndexWord> UhfExelSystem::words(std::size_t degree) const {
  std::vector<IndexWord> out;
  const std::size_t count = ipow(frame_size(), degree);
  for (std::size_t i = 0; i < count; ++i) out.push_back(digits(i, frame_size(), degree));
  return out;
}

Radical prefix_matrix_element(const TensorElement& a, const std::vector<int>& x, const std::vector<int>& y) {
  const std::size_t d = a.depth();
  if (x.size() != y.size() || x.size() < d) throw std::invalid_argument("prefixes shorter than the element depth");
  if (!std::equal(x.begin() + static_cast<long>(d), x.end(), y.begin() + static_cast<long>(d))) return Radical();
  const std::vector<int> row(y.begin(), y.begin() + static_cast<long>(d));
  const std::vector<int> col(x.begin(), x.begin() + static_cast<long>(d));
  return a.matrix().at(from_digits(row, a.n()), from_digits(col, a.n()));
}

CheckReport prefix_rep_check(const UhfSystem& sys, const TensorElement& a, const std::vector<int>& x, const std::vector<int>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("prefixes of different length");
  if (x.size() < a.depth() + 1) throw std::invalid_argument("prefix length must be at least depth + 1");
  for (const auto* w : {&x, &y}) {
    for (int letter : *w) {
      if (letter < 0 || static_cast<std::size_t>(letter) >= sys.n) throw std::out_of_range("prefix letter out of range");
    }
  }
  CheckReport report{"prefix representation"};
  const Radical lhs = prefix_matrix_element(uhf_L(sys, a), x, y);
  Radical rhs;
  for (std::size_t i = 0; i < sys.N; ++i) {
    std::vector<int> ix{static_cast<int>(i)};
    std::vector<int> iy{static_cast<int>(i)};
    ix.insert(ix.end(), x.begin(), x.end());
    iy.insert(iy.end(), y.begin(), y.end());
    rhs = rhs + prefix_matrix_element(a, ix, iy);
  }
  rhs = fraction(1, static_cast<long>(sys.N)) * rhs;
  report.expect(lhs == rhs, [&] {
    return "a = " + a.str() + ", x = " + letters_str(x) + ", y = " + letters_str(y) + ": " + lhs.str() + " != " + rhs.str();
  });
  return report;
}

std::vector<StarElement> canonical_cuntz_family(const UhfSystem& sys) {
  const GraphPtr g = make_bouquet(static_cast<int>(sys.generators()));
  std::vector<StarElement> out;
  for (std::size_t e = 0; e < sys.generators(); ++e) out.push_back(StarElement::edge(g, static_cast<EdgeId>(e)));
  return out;
}

CheckReport cuntz_relations_check(const std::vector<StarElement>& family) {
  CheckReport report{"Cuntz relations"};
  if (family.empty()) throw std::invalid_argument("empty Cuntz family");
  const GraphPtr g = family.front().graph_ptr();
  const StarElement one = StarElement::unit(g);
  StarElement sum(g);
  for (std::size_t i = 0; i < family.size(); ++i) {
    sum += family[i] * adjoint(family[i]);
    for (std::size_t j = 0; j < family.size(); ++j) {
      const StarElement got = adjoint(family[i]) * family[j];
      const StarElement want = i == j ? one : StarElement(g);
      report.expect(equal(got, want), [&] {
        return "T_" + std::to_string(i) + "* T_" + std::to_string(j) + " = " + got.str();
      });
    }
  }
  report.expect(equal(sum, one), [&] { return "sum T T* != 1\n" + sum.str(); });
  return report;
}

CuntzRepresentation::CuntzRepresentation(UhfSystem sys, std::vector<StarElement> family) : sys_(sys), family_(std::move(family)) {
  if (family_.size() != sys_.generators()) throw std::invalid_argument("Cuntz family must have nN members");
  const CheckReport relations = cuntz_relations_check(family_);
  if (!relations.passed()) throw std::invalid_argument("Cuntz relations fail: " + relations.failures.front());
}

const StarElement& CuntzRepresentation::product(const std::vector<int>& letters) const {
  const auto it = products_.find(letters);
  if (it != products_.end()) return it->second;
  StarElement value = letters.empty()
                          ? StarElement::unit(family_.front().graph_ptr())
                          : product(std::vector<int>(letters.begin(), letters.end() - 1)) * family_.at(static_cast<std::size_t>(letters.back()));
  return products_.emplace(letters, std::move(value)).first->second;
}

StarElement CuntzRepresentation::operator()(const TensorElement& a) const {
  if (a.n() != sys_.n) throw std::invalid_argument("tensor factor size differs from the system");
  const GraphPtr g = family_.front().graph_ptr();
  StarElement out(g);
  const std::size_t k = a.depth();
  const std::size_t lambdas = ipow(sys_.N, k);
  for (const auto& [ij, v] : a.matrix().entries()) {
    const auto mu = digits(ij.first, sys_.n, k);
    const auto nu = digits(ij.second, sys_.n, k);
    for (std::size_t l = 0; l < lambdas; ++l) {
      const auto lambda = digits(l, sys_.N, k);
      std::vector<int> left;
      std::vector<int> right;
      for (std::size_t t = 0; t < k; ++t) {
        left.push_back(mu[t] * static_cast<int>(sys_.N) + lambda[t]);
        right.push_back(nu[t] * static_cast<int>(sys_.N) + lambda[t]);
      }
      out += v * (product(left) * adjoint(product(right)));
    }
  }
  return out;
}

CheckReport pi_matrix_unit_check(const CuntzRepresentation& pi, std::size_t depth) {
  CheckReport report{"pi_T matrix units"};
  const std::size_t n = pi.uhf().n;
  for (std::size_t d = 0; d <= depth; ++d) {
    const std::size_t dim = ipow(n, d);
    std::vector<StarElement> images;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) images.push_back(pi(TensorElement(n, d, RadMatrix::unit(dim, i, j))));
    }
    for (std::size_t a = 0; a < images.size(); ++a) {
      report.expect(!images[a].is_zero(), [&] { return "pi_T of a matrix unit vanishes at depth " + std::to_string(d); });
      for (std::size_t b = 0; b < images.size(); ++b) {
        const std::size_t mu = a / dim, nu = a % dim, sigma = b / dim, tau = b % dim;
        const StarElement got = images[a] * images[b];
        const StarElement want = nu == sigma ? images[mu * dim + tau] : StarElement(got.graph_ptr());
        report.expect(equal(got, want), [&] {
          return "F_{" + letters_str(digits(mu, n, d)) + "," + letters_str(digits(nu, n, d)) + "} F_{" +
                 letters_str(digits(sigma, n, d)) + "," + letters_str(digits(tau, n, d)) + "}\n" + got.str();
        });
      }
    }
  }
  return report;
}

CheckReport pi_multiplicative_check(const CuntzRepresentation& pi, const std::vector<std::pair<TensorElement, TensorElement>>& pairs) {
  CheckReport report{"pi_T multiplicativity"};
  const GraphPtr g = pi.family().front().graph_ptr();
  report.expect(equal(pi(TensorElement::identity(pi.uhf().n)), StarElement::unit(g)), [] { return "pi_T(1) != 1"; });
  for (const auto& [a, b] : pairs) {
    const StarElement lhs = pi(a * b);
    const StarElement rhs = pi(a) * pi(b);
    report.expect(equal(lhs, rhs), [&] {
      return "pi(ab) != pi(a) pi(b)\n-- a --\n" + a.str() + "\n-- b --\n" + b.str() + "\n-- pi(ab) --\n" + lhs.str() + "-- pi(a)pi(b) --\n" + rhs.str();
    });
  }
  return report;
}

CheckReport pi_relation_check(const CuntzRepresentation& pi, std::size_t depth) {
  const UhfModule module(UhfExelSystem(pi.uhf(), depth + 1));
  const FrameRepresentation<UhfExelSystem> rep(module, pi.family(), [&pi](const TensorElement& a) { return pi(a); });
  CheckReport report = rep.hypothesis_check(basis_up_to(pi.uhf().n, depth));
  report.name = "T_ij* pi_T(a) T_kl = pi_T(<E_ij, a E_kl>)";
  return report;
}

CheckReport e_basis_check(const UhfSystem& sys) {
  const UhfModule module(UhfExelSystem(sys, 2));
  CheckReport report = module.frame_check();
  report.name = "E-basis orthonormality";
  for (const auto& a : basis_up_to(sys.n, 2)) report.merge(module.reconstruct_check_raw(a));
  return report;
}

CheckReport iso_generators_check(const UhfSystem& sys, std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  CheckReport report{"psi x pi onto O_" + std::to_string(sys.generators())};
  const std::vector<StarElement> family = canonical_cuntz_family(sys);
  report.merge(cuntz_relations_check(family));
  const CuntzRepresentation pi(sys, family);
  const UhfModule module(UhfExelSystem(sys, depth + 1));
  const FrameRepresentation<UhfExelSystem> rep(module, family, [&pi](const TensorElement& a) { return pi(a); });
  const auto generators = TensorElement::basis(sys.n, 1);
  report.merge(rep.hypothesis_check(generators));
  const auto coeff_basis = basis_up_to(sys.n, depth - 1);
  report.merge(rep.verify(basis_up_to(sys.n, 1), coeff_basis));
  std::set<std::size_t> hit;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const StarElement image = rep.psi(module.frame_element(IndexWord{static_cast<int>(i)}));
    const auto parts = degree_decompose(image);
    report.expect(parts.size() == 1 && parts.begin()->first == 1, [&] { return "psi(E_ij) is not homogeneous of degree 1"; });
    for (std::size_t e = 0; e < family.size(); ++e) {
      if (equal(image, family[e])) hit.insert(e);
    }
  }
  report.expect(hit.size() == family.size(), [&] { return "only " + std::to_string(hit.size()) + " generators are images of the E-basis"; });
  for (const auto& b : basis_up_to(sys.n, depth)) {
    const auto parts = degree_decompose(pi(b));
    report.expect(parts.empty() || (parts.size() == 1 && parts.begin()->first == 0), [&] { return "pi(b) leaves the core for b = " + b.str(); });
  }
  return report;
}

CheckReport almost_faithful_probe(const UhfSystem& sys, std::size_t depth) {
  CheckReport report{"almost faithfulness of L"};
  for (std::size_t d = 1; d <= depth; ++d) {
    const auto candidates = TensorElement::basis(sys.n, d);
    for (const auto& a : candidates) {
      bool found = false;
      for (const auto& b : candidates) {
        const TensorElement ab = a * b;
        if (!uhf_L(sys, ab.adjoint() * ab).is_zero()) {
          found = true;
          break;
        }
      }
      report.expect(found, [&] { return "no b with L((ab)*ab) != 0 for a = " + a.str(); });
    }
  }
  return report;
}

double transfer_positivity(const UhfSystem& sys, const std::vector<TensorElement>& elements) {
  double lowest = 0.0;
  for (const auto& a : elements) lowest = std::min(lowest, min_eigenvalue(uhf_L(sys, a.adjoint() * a).matrix()));
  return lowest;
}

RankRescale rank_rescale(std::size_t m, std::size_t k, const RadMatrix& projection) {
  const std::size_t dim = ipow(m, k);
  if (projection.rows() != dim || projection.cols() != dim) throw std::invalid_argument("projection must be m^k x m^k");
  for (const auto& [ij, v] : projection.entries()) {
    if (!v.is_rational()) throw std::invalid_argument("projection entries must be rational");
  }
  if (!(projection * projection == projection)) throw std::invalid_argument("not a projection: p^2 != p");
  if (!(projection.transpose() == projection)) throw std::invalid_argument("not a projection: p* != p");
  const RadMatrix complement = RadMatrix::identity(dim) - projection;
  std::vector<std::vector<Rational>> range_cols;
  std::vector<std::vector<Rational>> all_cols;
  for (const RadMatrix* source : {&projection, &complement}) {
    for (std::size_t c = 0; c < dim; ++c) {
      std::vector<Rational> col(dim);
      for (std::size_t r = 0; r < dim; ++r) col[r] = source->at(r, c).rational_part();
      if (source == &projection) range_cols.push_back(col);
      all_cols.push_back(std::move(col));
    }
  }
  const std::size_t rank = orthonormal_columns(range_cols, dim).cols();
  if (rank == 0) throw std::invalid_argument("projection is zero");
  RankRescale out{UhfSystem(dim, rank), orthonormal_columns(all_cols, dim), CheckReport{"rank rescaling"}};
  out.report.expect(out.unitary.cols() == dim, [&] { return "change of basis is not square"; });
  const RadMatrix ut = out.unitary.transpose();
  out.report.expect(ut * out.unitary == RadMatrix::identity(dim), [&] { return "u is not orthogonal"; });
  const RadMatrix conj = ut * projection * out.unitary;
  out.report.expect(conj == out.system.projection(), [&] { return "u* p u != 1_N (+) 0\n" + conj.str(); });
  return out;
}

TensorElement random_tensor(std::size_t n, std::size_t depth, std::size_t terms, SplitMix64& rng) {
  const std::size_t dim = ipow(n, depth);
  RadMatrix m(dim, dim);
  for (std::size_t t = 0; t < terms; ++t) m.add(rng.below(dim), rng.below(dim), fraction(rng.between(-4, 4), rng.between(1, 3)));
  return TensorElement(n, depth, std::move(m));
}

}  // namespace ckb
