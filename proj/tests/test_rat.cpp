#include "support.hpp"

#include <sstream>

using shadowlab::Rat;
using testing::R;

TEST_CASE("canonical form and serialization") {
  CHECK(R(2, 4).str() == "1/2");
  CHECK(R(-3, -9).str() == "1/3");
  CHECK(R(3, -9).str() == "-1/3");
  CHECK(R(0, 5).str() == "0/1");
  CHECK(R(7).str() == "7/1");
  CHECK(R(6, 3) == R(2));
  CHECK_THROWS_AS(R(1, 0), std::invalid_argument);
}

TEST_CASE("parse") {
  CHECK(Rat::parse("1/4") == R(1, 4));
  CHECK(Rat::parse(" 3 ") == R(3));
  CHECK(Rat::parse("-6/8") == R(-3, 4));
  CHECK(Rat::parse("+2/3") == R(2, 3));
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "1/-2", "a", "1.5", "1//2", "--1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rat::parse(bad), std::invalid_argument);
  }
  for (int n = -20; n <= 20; ++n) {
    for (int d = 1; d <= 12; ++d) {
      const Rat r(n, d);
      CHECK(Rat::parse(r.str()) == r);
    }
  }
}

TEST_CASE("pow2_neg") {
  CHECK(Rat::pow2_neg(0) == R(1));
  CHECK(Rat::pow2_neg(2) == R(1, 4));
  CHECK(Rat::pow2_neg(9) == R(1, 512));
  CHECK(Rat::pow2_neg(-3) == R(8));
  CHECK(Rat::pow2_neg(100) * Rat::pow2_neg(-100) == R(1));
}

TEST_CASE("arithmetic against cross-multiplied int128 oracle") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    const Rat x(a, b), y(c, d);
    const __int128 lhs = static_cast<__int128>(a) * d;
    const __int128 rhs = static_cast<__int128>(c) * b;
    CHECK((x < y) == (lhs < rhs));
    CHECK((x == y) == (lhs == rhs));
    CHECK(x + y == Rat(a * d + c * b, b * d));
    CHECK(x - y == Rat(a * d - c * b, b * d));
    CHECK(x * y == Rat(a * c, b * d));
    if (c != 0) {
      CHECK(x / y == Rat(a * d, b * c));
    } else {
      CHECK_THROWS_AS(x / y, std::domain_error);
    }
    CHECK(shadowlab::abs(x) == Rat(a < 0 ? -a : a, b));
    CHECK(shadowlab::max(x, y) >= shadowlab::min(x, y));
  }
}

TEST_CASE("stream output") {
  std::ostringstream os;
  os << R(-5, 10);
  CHECK(os.str() == "-1/2");
}
