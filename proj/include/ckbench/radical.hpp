#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ckb {

using Rational = mpq_class;

// Exact element of Q[sqrt(k) : k square-free]. Terms are kept sorted by
// radicand with nonzero coefficients, so equal ring elements compare equal.
class Radical {
 public:
  using Term = std::pair<std::uint64_t, Rational>;

  Radical() = default;
  Radical(long value);  // NOLINT: integers promote implicitly
  Radical(const Rational& value);  // NOLINT
  static Radical sqrt_of(std::uint64_t n);
  static Radical term(const Rational& coeff, std::uint64_t radicand);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1); }
  Rational rational_part() const;

  Radical& operator+=(const Radical& other);
  Radical& operator-=(const Radical& other);
  Radical& operator*=(const Radical& other);
  Radical operator-() const;
  friend Radical operator+(Radical a, const Radical& b) { return a += b; }
  friend Radical operator-(Radical a, const Radical& b) { return a -= b; }
  friend Radical operator*(const Radical& a, const Radical& b);
  friend bool operator==(const Radical& a, const Radical& b) { return a.terms_ == b.terms_; }

  double eval() const;
  std::string str() const;
  static Radical parse(std::string_view text);

 private:
  std::vector<Term> terms_;
};

// n = root^2 * free with free square-free.
std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n);

Radical rad_mul(const Radical& a, const Radical& b);
Radical rad_inv_sqrt(std::uint64_t n);
Radical rad_sqrt(const Rational& q);
Radical rad_inv_sqrt(const Rational& q);
double rad_eval(const Radical& a);

}  // namespace ckb
