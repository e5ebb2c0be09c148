#include "ckbench/dilation.hpp"

#include <gmpxx.h>

#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ckb {

namespace {

long checked_mul(long a, long b) {
  long out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in lattice arithmetic");
  return out;
}

long checked_add(long a, long b) {
  long out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow in lattice arithmetic");
  return out;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// a x + b y = g >= 0
std::tuple<long, long, long> ext_gcd(long a, long b) {
  long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const long q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

void require_square(const IntRows& m) {
  if (m.empty()) throw std::invalid_argument("empty matrix");
  for (const auto& row : m) {
    if (row.size() != m.size()) throw std::invalid_argument("matrix must be square");
  }
}

// column c := a col_c + b col_o
void column_combine(IntRows& h, std::size_t c, long a, std::size_t o, long b) {
  for (auto& row : h) row[c] = checked_add(checked_mul(a, row[c]), checked_mul(b, row[o]));
}

}  // namespace

long determinant(const IntRows& m) {
  require_square(m);
  const std::size_t n = m.size();
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  const mpz_class det = sign * a[n - 1][n - 1];
  if (!det.fits_slong_p()) throw std::overflow_error("determinant too large");
  return det.get_si();
}

IntRows matmul(const IntRows& a, const IntRows& b) {
  IntRows out(a.size(), IntVec(b.front().size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t j = 0; j < b[k].size(); ++j) out[i][j] = checked_add(out[i][j], checked_mul(a[i][k], b[k][j]));
    }
  }
  return out;
}

IntVec apply(const IntRows& m, const IntVec& x) {
  IntVec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) out[i] = checked_add(out[i], checked_mul(m[i][j], x[j]));
  }
  return out;
}

IntRows matrix_power(const IntRows& m, std::size_t k) {
  require_square(m);
  IntRows out(m.size(), IntVec(m.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i) out[i][i] = 1;
  for (std::size_t t = 0; t < k; ++t) out = matmul(out, m);
  return out;
}

IntRows hermite_form(const IntRows& m) {
  require_square(m);
  if (determinant(m) == 0) throw std::invalid_argument("matrix is singular");
  IntRows h = m;
  const std::size_t d = h.size();
  for (std::size_t r = d; r-- > 0;) {
    for (std::size_t c = 0; c < r; ++c) {
      const long a = h[r][r];
      const long b = h[r][c];
      if (b == 0) continue;
      const auto [g, x, y] = ext_gcd(a, b);
      const IntRows before = h;
      column_combine(h, r, x, c, y);
      for (std::size_t i = 0; i < d; ++i)
        h[i][c] = checked_add(checked_mul(-b / g, before[i][r]), checked_mul(a / g, before[i][c]));
    }
    if (h[r][r] < 0) {
      for (auto& row : h) row[r] = -row[r];
    }
    for (std::size_t c = r + 1; c < d; ++c) {
      const long q = floor_div(h[r][c], h[r][r]);
      if (q != 0) column_combine(h, c, 1, r, -q);
    }
  }
  return h;
}

IntVec reduce_mod(const IntRows& hermite, IntVec x) {
  for (std::size_t r = hermite.size(); r-- > 0;) {
    const long q = floor_div(x[r], hermite[r][r]);
    if (q == 0) continue;
    for (std::size_t i = 0; i <= r; ++i) x[i] = checked_add(x[i], checked_mul(-q, hermite[i][r]));
  }
  return x;
}

IntRows parse_int_rows(const std::string& text) {
  IntRows out;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    IntVec entries;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      long value = 0;
      try {
        value = std::stol(cell, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad matrix entry '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("bad matrix entry '" + cell + "'");
      entries.push_back(value);
    }
    out.push_back(std::move(entries));
  }
  if (out.empty()) throw std::invalid_argument("empty matrix");
  for (const auto& r : out) {
    if (r.size() != out.front().size()) throw std::invalid_argument("ragged matrix");
  }
  return out;
}

std::string vec_str(const IntVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

bool LatticeSystem::in_lattice(const IntVec& x) const {
  const IntVec r = reduce_mod(hermite, x);
  for (long v : r) {
    if (v != 0) return false;
  }
  return true;
}

std::optional<IntVec> LatticeSystem::preimage(const IntVec& x) const {
  std::vector<std::vector<mpq_class>> a(d, std::vector<mpq_class>(d + 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) a[i][j] = B[i][j];
    a[i][d] = x[i];
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[c], a[p]);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c || a[i][c] == 0) continue;
      const mpq_class f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= d; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntVec out(d);
  for (std::size_t i = 0; i < d; ++i) {
    const mpq_class v = a[i][d] / a[i][i];
    if (v.get_den() != 1) return std::nullopt;
    out[i] = v.get_num().get_si();
  }
  return out;
}

std::vector<IntVec> coset_reps(const IntRows& B) {
  const IntRows h = hermite_form(B);
  std::vector<IntVec> out{IntVec(h.size(), 0)};
  for (std::size_t r = 0; r < h.size(); ++r) {
    std::vector<IntVec> next;
    for (const auto& base : out) {
      for (long v = 0; v < h[r][r]; ++v) {
        IntVec x = base;
        x[r] = v;
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LatticeSystem make_lattice_system(const IntRows& B, std::optional<std::vector<IntVec>> sigma) {
  require_square(B);
  LatticeSystem sys;
  sys.d = B.size();
  sys.B = B;
  sys.det = determinant(B);
  if (sys.det == 0) throw std::invalid_argument("B is singular");
  sys.hermite = hermite_form(B);
  if (!sigma) {
    sys.sigma = coset_reps(B);
    return sys;
  }
  const long count = sys.det < 0 ? -sys.det : sys.det;
  if (static_cast<long>(sigma->size()) != count)
    throw std::invalid_argument("transversal must have |det B| = " + std::to_string(count) + " elements");
  std::set<IntVec> classes;
  for (const auto& m : *sigma) {
    if (m.size() != sys.d) throw std::invalid_argument("transversal vector has wrong dimension");
    if (!classes.insert(reduce_mod(sys.hermite, m)).second)
      throw std::invalid_argument("transversal has two elements in one coset: " + vec_str(m));
  }
  sys.sigma = std::move(*sigma);
  return sys;
}

std::vector<IntVec> sigma_i(const LatticeSystem& sys, std::size_t i) {
  if (i < 1) throw std::invalid_argument("Sigma_i needs i >= 1");
  std::vector<IntVec> out = sys.sigma;
  for (std::size_t k = 1; k < i; ++k) {
    std::vector<IntVec> next;
    for (const auto& m : sys.sigma) {
      for (const auto& s : out) {
        IntVec x = apply(sys.B, s);
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = checked_add(x[j], m[j]);
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CheckReport sigma_i_check(const LatticeSystem& sys, std::size_t i) {
  CheckReport report{"Sigma_" + std::to_string(i)};
  const auto set = sigma_i(sys, i);
  long expected = 1;
  for (std::size_t k = 0; k < i; ++k) expected = checked_mul(expected, sys.det < 0 ? -sys.det : sys.det);
  const std::set<IntVec> distinct(set.begin(), set.end());
  report.expect(static_cast<long>(distinct.size()) == expected, [&] {
    return "|Sigma_i| = " + std::to_string(distinct.size()) + ", expected " + std::to_string(expected);
  });
  const IntRows h = hermite_form(matrix_power(sys.B, i));
  std::set<IntVec> classes;
  for (const auto& m : set) classes.insert(reduce_mod(h, m));
  report.expect(static_cast<long>(classes.size()) == expected, [&] { return "Sigma_i is not a transversal mod B^i"; });
  if (i > 1) {
    const auto prev = sigma_i(sys, i - 1);
    std::set<IntVec> rebuilt;
    for (const auto& m : sys.sigma) {
      for (const auto& s : prev) {
        IntVec x = apply(sys.B, s);
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += m[j];
        rebuilt.insert(x);
      }
    }
    report.expect(rebuilt == distinct, [] { return "Sigma_i != Sigma + B Sigma_{i-1}"; });
  }
  return report;
}

SparseVec delta(const IntVec& k) { return SparseVec{{k, 1}}; }

SparseVec translate(const SparseVec& x, const IntVec& m) {
  SparseVec out;
  for (const auto& [k, c] : x) {
    IntVec t = k;
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = checked_add(t[j], m[j]);
    out.emplace(std::move(t), c);
  }
  return out;
}

SparseVec apply_v(const LatticeSystem& sys, const SparseVec& x) {
  SparseVec out;
  for (const auto& [k, c] : x) out.emplace(apply(sys.B, k), c);
  return out;
}

SparseVec apply_v_star(const LatticeSystem& sys, const SparseVec& x) {
  SparseVec out;
  for (const auto& [k, c] : x) {
    if (!sys.in_lattice(k)) continue;
    out.emplace(*sys.preimage(k), c);
  }
  return out;
}

namespace {

IntVec negate(IntVec v) {
  for (auto& x : v) x = -x;
  return v;
}

void add_into(SparseVec& acc, const SparseVec& x) {
  for (const auto& [k, c] : x) {
    const long v = checked_add(acc[k], c);
    if (v == 0) {
      acc.erase(k);
    } else {
      acc[k] = v;
    }
  }
}

}  // namespace

SparseVec apply_term(const LatticeSystem& sys, const DilationTerm& t, const SparseVec& x) {
  SparseVec y = translate(x, negate(t.n));
  for (std::size_t k = 0; k < t.i; ++k) y = apply_v_star(sys, y);
  for (std::size_t k = 0; k < t.i; ++k) y = apply_v(sys, y);
  return translate(y, t.m);
}

DilationTerm dilation_beta(const LatticeSystem& sys, const DilationTerm& t) {
  return DilationTerm{apply(sys.B, t.m), t.i + 1, apply(sys.B, t.n)};
}

std::string term_str(const DilationTerm& t) {
  return "u_" + vec_str(t.m) + " v^" + std::to_string(t.i) + " v*^" + std::to_string(t.i) + " u_" + vec_str(t.n) + "*";
}

std::vector<IntVec> box_points(std::size_t d, long radius) {
  std::vector<IntVec> out{IntVec{}};
  for (std::size_t r = 0; r < d; ++r) {
    std::vector<IntVec> next;
    for (const auto& base : out) {
      for (long v = -radius; v <= radius; ++v) {
        IntVec x = base;
        x.push_back(v);
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

CheckReport lattice_rep_check(const LatticeSystem& sys, long radius) {
  CheckReport report{"lattice relations"};
  const auto shifts = box_points(sys.d, 2);
  for (const IntVec& k : box_points(sys.d, radius)) {
    const SparseVec dk = delta(k);
    const SparseVec vk = apply_v(sys, dk);
    report.expect(apply_v_star(sys, vk) == dk, [&] { return "v*v d_k != d_k at k = " + vec_str(k); });
    const SparseVec proj = apply_v(sys, apply_v_star(sys, dk));
    report.expect(proj == (sys.in_lattice(k) ? dk : SparseVec{}), [&] { return "vv* d_k != [k in BZ^d] d_k at k = " + vec_str(k); });
    for (const IntVec& m : shifts) {
      const SparseVec e1_lhs = apply_v(sys, translate(dk, m));
      const SparseVec e1_rhs = translate(vk, apply(sys.B, m));
      report.expect(e1_lhs == e1_rhs, [&] { return "v u_m = u_{Bm} v fails at k = " + vec_str(k) + ", m = " + vec_str(m); });
      const SparseVec e2_lhs = apply_v_star(sys, translate(vk, m));
      const auto pre = sys.in_lattice(m) ? sys.preimage(m) : std::nullopt;
      const SparseVec e2_rhs = pre ? translate(dk, *pre) : SparseVec{};
      report.expect(e2_lhs == e2_rhs, [&] { return "v* u_m v fails at k = " + vec_str(k) + ", m = " + vec_str(m); });
    }
    SparseVec e3;
    for (const IntVec& m : sys.sigma) add_into(e3, apply_term(sys, DilationTerm{m, 1, m}, dk));
    report.expect(e3 == dk, [&] { return "sum over Sigma of u_m v v* u_m* != 1 at k = " + vec_str(k); });
  }
  return report;
}

CheckReport sigma_matrix_unit_check(const LatticeSystem& sys, std::size_t i, long radius) {
  CheckReport report{"Sigma_" + std::to_string(i) + " matrix units"};
  const auto set = sigma_i(sys, i);
  for (const IntVec& k : box_points(sys.d, radius)) {
    const SparseVec dk = delta(k);
    // e(a, b) d_k is nonzero only when k - b lies in B^i Z^d, which singles out one b.
    std::map<std::pair<std::size_t, std::size_t>, SparseVec> first;
    std::size_t live_columns = 0;
    for (std::size_t b = 0; b < set.size(); ++b) {
      bool live = false;
      for (std::size_t a = 0; a < set.size(); ++a) {
        SparseVec y = apply_term(sys, DilationTerm{set[a], i, set[b]}, dk);
        live = live || !y.empty();
        if (!y.empty()) first.emplace(std::make_pair(a, b), std::move(y));
      }
      if (live) ++live_columns;
    }
    report.expect(live_columns == 1, [&] { return std::to_string(live_columns) + " units act on d_k for k = " + vec_str(k); });
    for (std::size_t m = 0; m < set.size(); ++m) {
      for (std::size_t n = 0; n < set.size(); ++n) {
        for (const auto& [key, y] : first) {
          const SparseVec lhs = apply_term(sys, DilationTerm{set[m], i, set[n]}, y);
          const auto it = first.find({m, key.second});
          const SparseVec rhs = n == key.first && it != first.end() ? it->second : SparseVec{};
          report.expect(lhs == rhs, [&] {
            return "e(" + vec_str(set[m]) + "," + vec_str(set[n]) + ") e(" + vec_str(set[key.first]) + "," + vec_str(set[key.second]) +
                   ") fails at k = " + vec_str(k);
          });
        }
      }
    }
  }
  return report;
}

CheckReport dilation_beta_check(const LatticeSystem& sys, const DilationTerm& t, long radius) {
  CheckReport report{"beta(" + term_str(t) + ")"};
  const DilationTerm image = dilation_beta(sys, t);
  for (const IntVec& k : box_points(sys.d, radius)) {
    const SparseVec dk = delta(k);
    const SparseVec lhs = apply_term(sys, image, dk);
    const SparseVec rhs = apply_v(sys, apply_term(sys, t, apply_v_star(sys, dk)));
    report.expect(lhs == rhs, [&] { return term_str(image) + " != v x v* at k = " + vec_str(k); });
  }
  return report;
}

CheckReport dilation_product_check(const LatticeSystem& sys, const DilationTerm& x, const DilationTerm& y, long radius) {
  CheckReport report{"beta(xy) = beta(x) beta(y)"};
  const DilationTerm bx = dilation_beta(sys, x);
  const DilationTerm by = dilation_beta(sys, y);
  for (const IntVec& k : box_points(sys.d, radius)) {
    const SparseVec dk = delta(k);
    const SparseVec lhs = apply_term(sys, bx, apply_term(sys, by, dk));
    const SparseVec rhs = apply_v(sys, apply_term(sys, x, apply_term(sys, y, apply_v_star(sys, dk))));
    report.expect(lhs == rhs, [&] { return term_str(x) + " . " + term_str(y) + " fails at k = " + vec_str(k); });
  }
  return report;
}

}  // namespace ckb
