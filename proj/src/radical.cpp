#include "ckbench/radical.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ckbench/errors.hpp"

namespace ckb {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("radicand product exceeds 64 bits");
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

void normalize(std::vector<Radical::Term>& terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Radical::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(std::move(t));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& t) { return sgn(t.second) == 0; }), out.end());
  terms = std::move(out);
}

std::uint64_t to_u64(const mpz_class& z) {
  if (sgn(z) < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64) throw std::overflow_error("radicand exceeds 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

mpz_class from_u64(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

// z = root^2 * free, free square-free; trial division is fine at desk scale.
std::pair<mpz_class, mpz_class> split_square_big(mpz_class z) {
  mpz_class root = 1;
  mpz_class free = 1;
  for (mpz_class p = 2; p * p <= z; ++p) {
    int exponent = 0;
    while (mpz_divisible_p(z.get_mpz_t(), p.get_mpz_t())) {
      z /= p;
      ++exponent;
    }
    for (int i = 0; i < exponent / 2; ++i) root *= p;
    if (exponent % 2 == 1) free *= p;
  }
  free *= z;
  return {root, free};
}

bool is_rational_literal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  const std::size_t num_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == num_start) return false;
  if (i == s.size()) return true;
  if (s[i] != '/') return false;
  ++i;
  const std::size_t den_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  return i == s.size() && i > den_start;
}

Rational parse_rational(std::string_view s) {
  if (!is_rational_literal(s)) throw ParseError(0, "malformed rational '" + std::string(s) + "'");
  Rational q;
  q.set_str(std::string(s), 10);
  if (q.get_den() == 0) throw ParseError(0, "zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n) {
  if (n == 0) return {0, 1};
  std::uint64_t root = 1;
  std::uint64_t free = 1;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    int exponent = 0;
    while (n % p == 0) {
      n /= p;
      ++exponent;
    }
    for (int i = 0; i < exponent / 2; ++i) root *= p;
    if (exponent % 2 == 1) free *= p;
  }
  return {root, free * n};
}

Radical::Radical(long value) {
  if (value != 0) terms_.emplace_back(1, Rational(value));
}

Radical::Radical(const Rational& value) {
  if (sgn(value) != 0) terms_.emplace_back(1, value);
}

Radical Radical::term(const Rational& coeff, std::uint64_t radicand) {
  if (radicand == 0) return {};
  const auto [root, free] = split_square(radicand);
  Radical out;
  Rational c = coeff * Rational(from_u64(root));
  if (sgn(c) != 0) out.terms_.emplace_back(free, std::move(c));
  return out;
}

Radical Radical::sqrt_of(std::uint64_t n) { return term(1, n); }

Rational Radical::rational_part() const {
  if (!terms_.empty() && terms_[0].first == 1) return terms_[0].second;
  return 0;
}

Radical& Radical::operator+=(const Radical& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize(terms_);
  return *this;
}

Radical& Radical::operator-=(const Radical& other) { return *this += -other; }

Radical Radical::operator-() const {
  Radical out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Radical& Radical::operator*=(const Radical& other) { return *this = *this * other; }

Radical operator*(const Radical& a, const Radical& b) {
  Radical out;
  if (a.is_zero() || b.is_zero()) return out;
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [j, cj] : a.terms_) {
    for (const auto& [k, ck] : b.terms_) {
      // j and k are square-free, so sqrt(j)sqrt(k) = g * sqrt((j/g)(k/g)).
      const std::uint64_t g = gcd_u64(j, k);
      const std::uint64_t radicand = checked_mul(j / g, k / g);
      out.terms_.emplace_back(radicand, cj * ck * Rational(from_u64(g)));
    }
  }
  normalize(out.terms_);
  return out;
}

double Radical::eval() const {
  double sum = 0.0;
  for (const auto& [k, c] : terms_) sum += c.get_d() * std::sqrt(static_cast<double>(k));
  return sum;
}

std::string Radical::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0) out += '+';
    out += terms_[i].second.get_str();
    if (terms_[i].first != 1) out += "*sqrt(" + std::to_string(terms_[i].first) + ")";
  }
  return out;
}

Radical Radical::parse(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  }
  if (compact.empty()) throw ParseError(0, "empty radical");
  Radical out;
  std::size_t start = 0;
  while (start <= compact.size()) {
    std::size_t end = compact.find('+', start);
    if (end == std::string::npos) end = compact.size();
    const std::string_view piece(compact.data() + start, end - start);
    if (piece.empty()) throw ParseError(0, "empty term in radical '" + compact + "'");
    const std::size_t root_at = piece.find("sqrt(");
    if (root_at == std::string_view::npos) {
      out += Radical(parse_rational(piece));
    } else {
      Rational coeff = 1;
      std::string_view head = piece.substr(0, root_at);
      if (head == "-") {
        coeff = -1;
      } else if (!head.empty()) {
        if (head.back() != '*') throw ParseError(0, "expected '*' before sqrt in '" + std::string(piece) + "'");
        coeff = parse_rational(head.substr(0, head.size() - 1));
      }
      std::string_view inner = piece.substr(root_at + 5);
      if (inner.empty() || inner.back() != ')') throw ParseError(0, "unterminated sqrt in '" + std::string(piece) + "'");
      inner.remove_suffix(1);
      if (inner.empty() || !std::all_of(inner.begin(), inner.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError(0, "malformed radicand in '" + std::string(piece) + "'");
      const mpz_class radicand(std::string(inner), 10);
      if (sgn(radicand) == 0) continue;
      out += Radical::term(coeff, to_u64(radicand));
    }
    start = end + 1;
  }
  return out;
}

Radical rad_mul(const Radical& a, const Radical& b) { return a * b; }

Radical rad_inv_sqrt(std::uint64_t n) {
  if (n == 0) throw std::domain_error("inverse square root of 0");
  // 1/sqrt(a^2 b) = sqrt(b) / (a b)
  const auto [root, free] = split_square(n);
  return Radical::term(Rational(1) / (Rational(from_u64(root)) * Rational(from_u64(free))), free);
}

Radical rad_sqrt(const Rational& q) {
  if (sgn(q) < 0) throw std::domain_error("square root of a negative rational");
  if (sgn(q) == 0) return {};
  // sqrt(a/b) = (ra/rb) sqrt(fa/fb) = ra/(rb fb) sqrt(fa fb); fa, fb coprime and square-free.
  const auto [ra, fa] = split_square_big(q.get_num());
  const auto [rb, fb] = split_square_big(q.get_den());
  const mpz_class radicand = fa * fb;
  Radical out = Radical::term(Rational(ra) / Rational(rb * fb), to_u64(radicand));
  return out;
}

Radical rad_inv_sqrt(const Rational& q) {
  if (sgn(q) <= 0) throw std::domain_error("inverse square root of a non-positive rational");
  return rad_sqrt(Rational(1) / q);
}

double rad_eval(const Radical& a) { return a.eval(); }

}  // namespace ckb
