#include "shadowlab/rat.hpp"

#include <ostream>
#include <stdexcept>

namespace shadowlab {
namespace {

mpz_class to_mpz(std::int64_t v) {
  // mpz_class has no int64_t constructor on every platform; go through the
  // decimal form to stay exact for the full range.
  return mpz_class(std::to_string(v));
}

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rat::Rat(std::int64_t n) : value_(to_mpz(n)) {}

Rat::Rat(std::int64_t num, std::int64_t den) : Rat(to_mpz(num), to_mpz(den)) {}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("Rat: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rat::Rat(mpq_class value) : value_(std::move(value)) {
  if (value_.get_den() == 0) throw std::invalid_argument("Rat: zero denominator");
  value_.canonicalize();
}

Rat Rat::pow2_neg(std::int64_t k) {
  mpz_class p = 1;
  const auto e = static_cast<mp_bitcnt_t>(k < 0 ? -k : k);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  return k >= 0 ? Rat(mpz_class(1), p) : Rat(p, mpz_class(1));
}

Rat Rat::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                             : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("Rat: cannot parse '" + std::string(text) + "'");
  }
  const auto strip = [](std::string_view s) { return s[0] == '+' ? s.substr(1) : s; };
  mpz_class n{std::string(strip(num))};
  mpz_class d{std::string(den)};
  return Rat(n, d);
}

std::string Rat::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rat Rat::operator-() const { return Rat(mpq_class(-value_)); }

Rat& Rat::operator+=(const Rat& o) {
  value_ += o.value_;
  return *this;
}

Rat& Rat::operator-=(const Rat& o) {
  value_ -= o.value_;
  return *this;
}

Rat& Rat::operator*=(const Rat& o) {
  value_ *= o.value_;
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  value_ /= o.value_;
  return *this;
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace shadowlab
