#include <doctest.h>

#include <cmath>
#include <limits>

#include "ckbench/errors.hpp"
#include "ckbench/radical.hpp"

using ckb::Radical;
using ckb::Rational;

TEST_CASE("products of roots reduce to square-free radicands") {
  CHECK(ckb::rad_mul(Radical::sqrt_of(2), Radical::sqrt_of(2)) == Radical(2));
  CHECK(ckb::rad_mul(Radical::sqrt_of(2), Radical::sqrt_of(3)) == Radical::sqrt_of(6));
  const Radical a = Radical::term(Rational(1, 2), 2);
  const Radical b = Radical::term(Rational(1, 3), 6);
  CHECK(ckb::rad_mul(a, b) == Radical::term(Rational(1, 3), 3));
}

TEST_CASE("sqrt_of pulls out square factors") {
  CHECK(Radical::sqrt_of(12) == Radical::term(2, 3));
  CHECK(Radical::sqrt_of(49) == Radical(7));
  CHECK(Radical::sqrt_of(0).is_zero());
  const auto [root, free] = ckb::split_square(72);
  CHECK(root == 6);
  CHECK(free == 2);
}

TEST_CASE("inverse square roots") {
  CHECK(ckb::rad_inv_sqrt(1) == Radical(1));
  CHECK(ckb::rad_inv_sqrt(4) == Radical(Rational(1, 2)));
  CHECK(ckb::rad_inv_sqrt(2) == Radical::term(Rational(1, 2), 2));
  CHECK_THROWS(ckb::rad_inv_sqrt(std::uint64_t{0}));
  CHECK(ckb::rad_mul(ckb::rad_inv_sqrt(6), Radical::sqrt_of(6)) == Radical(1));
}

TEST_CASE("inverse square roots square back") {
  for (std::uint64_t n = 1; n <= 100; ++n) {
    CHECK(ckb::rad_inv_sqrt(n) * ckb::rad_inv_sqrt(n) * Radical(static_cast<long>(n)) == Radical(1));
  }
}

TEST_CASE("rad_sqrt of rationals") {
  CHECK(ckb::rad_sqrt(Rational(9, 4)) == Radical(Rational(3, 2)));
  CHECK(ckb::rad_sqrt(Rational(1, 2)) == Radical::term(Rational(1, 2), 2));
  CHECK(ckb::rad_mul(ckb::rad_sqrt(Rational(2, 3)), ckb::rad_sqrt(Rational(2, 3))) == Radical(Rational(2, 3)));
}

TEST_CASE("evaluation") {
  CHECK(ckb::rad_eval(Radical(Rational(1, 2))) == 0.5);
  CHECK(std::abs(ckb::rad_eval(Radical::term(Rational(1, 2), 2)) - 0.7071067811865476) < 1e-15);
  const Radical cancelled = Radical(1) + Radical::sqrt_of(2) - Radical::sqrt_of(2);
  CHECK(cancelled == Radical(1));
  CHECK(ckb::rad_eval(cancelled) == 1.0);
}

TEST_CASE("canonical form makes equal values compare equal") {
  const Radical x = Radical(1) + Radical::sqrt_of(2);
  const Radical y = Radical::sqrt_of(2) + Radical(1);
  CHECK(x == y);
  CHECK((x - y).is_zero());
  // (1 + sqrt2)(1 - sqrt2) = -1
  CHECK(x * (Radical(1) - Radical::sqrt_of(2)) == Radical(-1));
  CHECK(!x.is_rational());
  CHECK(Radical(Rational(5, 7)).is_rational());
}

TEST_CASE("ring axioms on a small sample") {
  const std::vector<Radical> sample = {Radical(0), Radical(Rational(-3, 2)), Radical::sqrt_of(2),
                                       Radical::term(Rational(2, 5), 3) + Radical(1), Radical::sqrt_of(6) - Radical::sqrt_of(5)};
  for (const auto& a : sample) {
    for (const auto& b : sample) {
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      for (const auto& c : sample) {
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
      }
    }
    CHECK(a - a == Radical(0));
  }
}

TEST_CASE("string round trip") {
  const Radical x = Radical(Rational(-1, 3)) + Radical::term(Rational(5, 2), 7);
  CHECK(Radical::parse(x.str()) == x);
  CHECK(Radical(4).str() == "4");
  CHECK(Radical(0).str() == "0");
  CHECK(Radical::parse("1/2*sqrt(8)") == Radical::sqrt_of(2));
  CHECK_THROWS_AS(Radical::parse(""), ckb::ParseError);
}

TEST_CASE("oversized radicands are rejected rather than wrapped") {
  const Radical big = Radical::sqrt_of(4294967311ULL);
  CHECK_THROWS(big * Radical::sqrt_of(4294967291ULL));
}
