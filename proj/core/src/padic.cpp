#include "biex/padic.hpp"

#include <array>

namespace biex {

ZmodP::ZmodP(const BigInt& prime, long precision) : p(prime), N(precision) {
  mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), N);
}

BigInt ZmodP::reduce(const BigInt& a) const {
  BigInt r = a % mod;
  if (sgn(r) < 0) r += mod;
  return r;
}

BigInt ZmodP::reduce(const BigRational& r) const {
  if (mpz_divisible_p(r.den().get_mpz_t(), p.get_mpz_t()))
    throw std::domain_error("reduce: rational not p-integral");
  return reduce(r.num() * inv(reduce(r.den())));
}

BigInt ZmodP::inv(const BigInt& a) const {
  BigInt r;
  if (!mpz_invert(r.get_mpz_t(), reduce(a).get_mpz_t(), mod.get_mpz_t()))
    throw std::domain_error("inv: not a unit mod p^N");
  return r;
}

long ZmodP::val(const BigInt& a) const {
  BigInt r = reduce(a);
  if (sgn(r) == 0) return N;
  BigInt tmp;
  long v = long(mpz_remove(tmp.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t()));
  return std::min(v, N);
}

BigInt sqrt_mod_prime(const BigInt& a0, const BigInt& p) {
  BigInt a = a0 % p;
  if (sgn(a) < 0) a += p;
  if (sgn(a) == 0) return 0;
  if (p == 2) return a;
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1)
    throw std::domain_error("sqrt_mod_prime: not a quadratic residue");
  auto powm = [&](BigInt b, BigInt e) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  };
  if (p % 4 == 3) return powm(a, (p + 1) / 4);
  // Tonelli-Shanks
  BigInt q = p - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
  BigInt z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) z += 1;
  BigInt m(long(s)), c = powm(z, q), t = powm(a, q), r = powm(a, (q + 1) / 2);
  while (t != 1) {
    BigInt tt = t;
    long i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    BigInt b = c;
    for (long j = 0; j < m.get_si() - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

BigInt hensel_lift_root(const std::vector<BigInt>& f, const BigInt& root0, const ZmodP& zp) {
  auto eval = [&](const std::vector<BigInt>& poly, const BigInt& x) {
    BigInt acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = zp.reduce(acc * x + *it);
    return acc;
  };
  std::vector<BigInt> df;
  for (size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * long(i));
  BigInt x = zp.reduce(root0);
  for (int iter = 0; iter < 64; ++iter) {
    BigInt fx = eval(f, x);
    if (sgn(fx) == 0) break;
    x = zp.reduce(x - fx * zp.inv(eval(df, x)));
  }
  if (sgn(eval(f, x)) != 0) throw std::runtime_error("hensel_lift_root: no convergence");
  return x;
}

CriticalPoint weierstrass_critical_point(const std::array<BigInt, 5>& a_inv,
                                         const BigInt& x_seed, const BigInt& y_seed,
                                         const ZmodP& zp) {
  const BigInt &a1 = a_inv[0], &a2 = a_inv[1], &a3 = a_inv[2], &a4 = a_inv[3], &a6 = a_inv[4];
  auto F = [&](const BigInt& x, const BigInt& y) {
    return zp.reduce(y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6);
  };
  auto Fx = [&](const BigInt& x, const BigInt& y) {
    return zp.reduce(a1 * y - 3 * x * x - 2 * a2 * x - a4);
  };
  auto Fy = [&](const BigInt& x, const BigInt& y) { return zp.reduce(2 * y + a1 * x + a3); };

  BigInt x = zp.reduce(x_seed), y = zp.reduce(y_seed);
  for (int iter = 0; iter < 64; ++iter) {
    BigInt gx = Fx(x, y), gy = Fy(x, y);
    if (sgn(gx) == 0 && sgn(gy) == 0) break;
    // Hessian of F: [[-6x-2a2, a1], [a1, 2]]
    BigInt hxx = zp.reduce(-6 * x - 2 * a2), hxy = zp.reduce(a1), hyy = BigInt(2);
    BigInt det = zp.reduce(hxx * hyy - hxy * hxy);
    BigInt dinv = zp.inv(det);  // throws unless the tangent cone is nodal
    BigInt dx = zp.reduce(dinv * (hyy * gx - hxy * gy));
    BigInt dy = zp.reduce(dinv * (hxx * gy - hxy * gx));
    x = zp.reduce(x - dx);
    y = zp.reduce(y - dy);
  }
  if (sgn(Fx(x, y)) != 0 || sgn(Fy(x, y)) != 0)
    throw std::runtime_error("weierstrass_critical_point: Newton did not converge");
  return {x, y, F(x, y)};
}

}  // namespace biex
