#include "biex/rational.hpp"

#include <algorithm>
#include <cmath>

namespace biex {

BigRational::BigRational(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (sgn(den) == 0) throw std::invalid_argument("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational BigRational::from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    return BigRational(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: \"" + s + "\"");
  }
}

BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw std::invalid_argument("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

double BigRational::log_abs() const {
  if (is_zero()) throw std::domain_error("log of zero");
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q_.get_num().get_mpz_t());
  double md = mpz_get_d_2exp(&ed, q_.get_den().get_mpz_t());
  return std::log(std::fabs(mn)) - std::log(md) + (double(en) - double(ed)) * M_LN2;
}

std::string BigRational::to_string() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

namespace {

// Miller-Rabin round for odd n > 2, witness a with 1 < a < n.
bool mr_round(const BigInt& n, const BigInt& a, const BigInt& d, unsigned long r) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < r; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

const long kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                             41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

BigInt pollard_rho(const BigInt& n, unsigned long seed) {
  // Brent's variant; n odd composite, not a prime power of a small prime.
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);
  while (true) {
    BigInt y = rng.get_z_range(n - 3) + 2;
    BigInt c = rng.get_z_range(n - 2) + 1;
    BigInt x = y, d = 1, q = 1, ys = y;
    unsigned long r = 1, m = 128;
    while (d == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      for (unsigned long k = 0; k < r && d == 1; k += m) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * (x > y ? x - y : y - x) % n;
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r *= 2;
    }
    if (d == n) {
      d = 1;
      while (d == 1) {
        ys = (ys * ys + c) % n;
        BigInt diff = x > ys ? x - ys : ys - x;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (d != n) return d;
  }
}

void factor_into(const BigInt& n, std::vector<PrimePower>& out, unsigned long seed);

void split_factor(const BigInt& n, std::vector<PrimePower>& out, unsigned long seed) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back({n, 1});
    return;
  }
  BigInt d = pollard_rho(n, seed);
  factor_into(d, out, seed + 1);
  factor_into(n / d, out, seed + 2);
}

void factor_into(const BigInt& n, std::vector<PrimePower>& out, unsigned long seed) {
  std::vector<PrimePower> part;
  split_factor(n, part, seed);
  out.insert(out.end(), part.begin(), part.end());
}

}  // namespace

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  for (long p : kSmallPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  BigInt d = n - 1;
  unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
  // Witnesses {2,...,37} decide primality for all n < 3.3e24, which covers
  // 64-bit inputs deterministically; beyond that the same set is probabilistic.
  for (long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!mr_round(n, BigInt(a), d, std::max<unsigned long>(r, 1))) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(const BigInt& n) {
  if (sgn(n) == 0) throw std::invalid_argument("factorize: n must be nonzero");
  BigInt m = ::abs(n);
  std::vector<PrimePower> out;
  for (long p : kSmallPrimes) {
    if (m == 1) break;
    unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), BigInt(p).get_mpz_t());
    if (e > 0) out.push_back({BigInt(p), long(e)});
  }
  if (m > 1) {
    std::vector<PrimePower> rest;
    factor_into(m, rest, 0x5eed);
    std::sort(rest.begin(), rest.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    for (auto& pp : rest) {
      if (!out.empty() && out.back().prime == pp.prime)
        out.back().exponent += pp.exponent;
      else
        out.push_back(pp);
    }
  }
  return out;
}

long valuation(const BigInt& n, const BigInt& p) {
  if (sgn(n) == 0) throw std::domain_error("valuation of zero");
  BigInt m;
  return long(mpz_remove(m.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const BigRational& r, const BigInt& p) {
  if (r.is_zero()) throw std::domain_error("valuation of zero");
  return valuation(r.num(), p) - valuation(r.den(), p);
}

double log_norm(const BigInt& p) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, p.get_mpz_t());
  return std::log(m) + double(e) * M_LN2;
}

std::vector<BigInt> prime_divisors(const BigInt& n) {
  std::vector<BigInt> out;
  for (auto& pp : factorize(n)) out.push_back(pp.prime);
  return out;
}

}  // namespace biex
