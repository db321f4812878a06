#include "ecmgal/rational.hpp"

#include <stdexcept>

#include "ecmgal/factor.hpp"

namespace ecmgal {

Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (num.empty() || !valid_int(num) || !valid_int(den) || den[0] == '-')
    throw std::invalid_argument("malformed rational literal: " + s);
  BigInt n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double rat_to_double(const Rat& q) { return q.get_d(); }

int rat_valuation(const Rat& q, u64 p) {
  if (q == 0) throw std::invalid_argument("valuation of zero");
  BigInt pp(static_cast<unsigned long>(p));
  BigInt n = q.get_num(), d = q.get_den();
  int v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
    n /= pp;
    ++v;
  }
  while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) {
    d /= pp;
    --v;
  }
  return v;
}

std::optional<u64> rat_mod(const Rat& q, u64 p) {
  const unsigned long pu = static_cast<unsigned long>(p);
  unsigned long den = mpz_fdiv_ui(q.get_den_mpz_t(), pu);
  if (den == 0) return std::nullopt;
  unsigned long num = mpz_fdiv_ui(q.get_num_mpz_t(), pu);
  return mulmod(num, invmod(den, p), p);
}

BigInt square_class(const Rat& q) {
  if (q == 0) throw std::invalid_argument("square_class of zero");
  BigInt prod = q.get_num() * q.get_den();
  BigInt s = sgn(prod) < 0 ? -1 : 1;
  for (auto& [prime, e] : factor_mpz(prod)) {
    if (e % 2 == 1) s *= prime;
  }
  return s;
}

bool is_rational_square(const Rat& q) {
  if (q == 0) return true;
  if (sgn(q) < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

std::optional<Rat> rat_sqrt(const Rat& q) {
  if (!is_rational_square(q)) return std::nullopt;
  BigInt n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  Rat r(n, d);
  r.canonicalize();
  return r;
}

Rat rat_pow(const Rat& q, int e) {
  if (e < 0) {
    if (q == 0) throw std::domain_error("negative power of zero");
    return rat_pow(Rat(1) / q, -e);
  }
  Rat r = 1;
  Rat b = q;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace ecmgal
