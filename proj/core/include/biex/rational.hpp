#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace biex {

using BigInt = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
class BigRational {
 public:
  BigRational() : q_(0) {}
  BigRational(long n) : q_(n) {}
  BigRational(const BigInt& n) : q_(n) {}
  BigRational(const BigInt& num, const BigInt& den);
  explicit BigRational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "num/den" or "num". Throws std::invalid_argument on malformed input.
  static BigRational from_string(const std::string& s);

  const mpz_class num() const { return q_.get_num(); }
  const mpz_class den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  double to_double() const { return q_.get_d(); }
  /// log|r| computed from mantissa/exponent splits, accurate to ~1e-15 relative.
  double log_abs() const;

  std::string to_string() const;  // "num/den", always with denominator

  BigRational operator-() const { return BigRational(mpq_class(-q_)); }
  BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
  BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
  BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const BigRational& a, const BigRational& b) { return a.q_ != b.q_; }
  friend bool operator<(const BigRational& a, const BigRational& b) { return a.q_ < b.q_; }
  friend bool operator>(const BigRational& a, const BigRational& b) { return a.q_ > b.q_; }
  friend bool operator<=(const BigRational& a, const BigRational& b) { return a.q_ <= b.q_; }
  friend bool operator>=(const BigRational& a, const BigRational& b) { return a.q_ >= b.q_; }

 private:
  mpq_class q_;
};

inline BigRational abs(const BigRational& r) { return r.sign() < 0 ? -r : r; }

/// A prime together with an exponent; the prime has passed a primality check.
struct PrimePower {
  BigInt prime;
  long exponent = 0;
};

/// Deterministic Miller-Rabin for 64-bit inputs, fixed witness set beyond.
bool is_prime(const BigInt& n);

/// Factors |n| into prime powers with strictly increasing primes. n = 0 is rejected.
std::vector<PrimePower> factorize(const BigInt& n);

/// Exponent of the prime p in n (n != 0).
long valuation(const BigInt& n, const BigInt& p);

/// Exponent of p in the nonzero rational r; negative when p divides the denominator.
long valuation(const BigRational& r, const BigInt& p);

/// Natural logarithm of a prime; the local norm factor log Nm(p) over Q.
double log_norm(const BigInt& p);

/// Primes dividing |n|, increasing. n = 0 is rejected.
std::vector<BigInt> prime_divisors(const BigInt& n);

}  // namespace biex
