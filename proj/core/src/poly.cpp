#include "biex/poly.hpp"

#include <algorithm>

namespace biex {

namespace {
const BigRational kZero(0);
}

// ---------------- PolyQ ----------------

void PolyQ::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const BigRational& PolyQ::coeff(size_t i) const { return i < c_.size() ? c_[i] : kZero; }

BigRational PolyQ::eval(const BigRational& v) const {
  BigRational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
  return acc;
}

Complex PolyQ::eval(const Complex& v) const {
  Complex acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + Complex(it->to_double());
  return acc;
}

PolyQ PolyQ::derivative() const {
  std::vector<BigRational> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * BigRational(long(i)));
  return PolyQ(std::move(d));
}

PolyQ PolyQ::monic() const {
  if (is_zero()) return *this;
  std::vector<BigRational> d = c_;
  BigRational lead = c_.back();
  for (auto& v : d) v /= lead;
  return PolyQ(std::move(d));
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
  std::vector<BigRational> c(std::max(a.c_.size(), b.c_.size()), BigRational(0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return PolyQ(std::move(c));
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) {
  std::vector<BigRational> c(std::max(a.c_.size(), b.c_.size()), BigRational(0));
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return PolyQ(std::move(c));
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return PolyQ();
  std::vector<BigRational> c(a.c_.size() + b.c_.size() - 1, BigRational(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return PolyQ(std::move(c));
}

PolyQ PolyQ::operator-() const {
  std::vector<BigRational> c = c_;
  for (auto& v : c) v = -v;
  return PolyQ(std::move(c));
}

std::pair<PolyQ, PolyQ> PolyQ::divmod(const PolyQ& d) const {
  if (d.is_zero()) throw std::invalid_argument("PolyQ: division by zero polynomial");
  std::vector<BigRational> r = c_, q;
  long dd = d.degree();
  if (degree() >= dd) q.assign(degree() - dd + 1, BigRational(0));
  for (long i = degree(); i >= dd; --i) {
    BigRational f = r[i] / d.c_[dd];
    q[i - dd] = f;
    if (f.is_zero()) continue;
    for (long j = 0; j <= dd; ++j) r[i - dd + j] -= f * d.c_[j];
  }
  return {PolyQ(std::move(q)), PolyQ(std::move(r))};
}

PolyQ PolyQ::gcd(PolyQ a, PolyQ b) {
  while (!b.is_zero()) {
    PolyQ r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// ---------------- Poly2Q ----------------

void Poly2Q::trim() {
  for (auto& row : c_)
    while (!row.empty() && row.back().is_zero()) row.pop_back();
  while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

Poly2Q Poly2Q::constant(const BigRational& r) {
  Poly2Q p;
  p.set_coeff(0, 0, r);
  return p;
}

Poly2Q Poly2Q::x() {
  Poly2Q p;
  p.set_coeff(1, 0, BigRational(1));
  return p;
}

Poly2Q Poly2Q::y() {
  Poly2Q p;
  p.set_coeff(0, 1, BigRational(1));
  return p;
}

void Poly2Q::set_coeff(size_t i, size_t j, const BigRational& v) {
  if (c_.size() <= i) c_.resize(i + 1);
  if (c_[i].size() <= j) c_[i].resize(j + 1, BigRational(0));
  c_[i][j] = v;
  trim();
}

bool Poly2Q::is_zero() const {
  for (auto& row : c_)
    for (auto& v : row)
      if (!v.is_zero()) return false;
  return true;
}

BigRational Poly2Q::eval(const BigRational& x, const BigRational& y) const {
  BigRational acc(0), xp(1);
  for (auto& row : c_) {
    BigRational rowacc(0), yp(1);
    for (auto& v : row) {
      if (!v.is_zero()) rowacc += v * yp;
      yp *= y;
    }
    acc += rowacc * xp;
    xp *= x;
  }
  return acc;
}

Complex Poly2Q::eval(const Complex& x, const Complex& y) const {
  Complex acc(0), xp(1);
  for (auto& row : c_) {
    Complex rowacc(0), yp(1);
    for (auto& v : row) {
      if (!v.is_zero()) rowacc += v.to_double() * yp;
      yp *= y;
    }
    acc += rowacc * xp;
    xp *= x;
  }
  return acc;
}

Poly2Q Poly2Q::dx() const {
  Poly2Q p;
  for (size_t i = 1; i < c_.size(); ++i)
    for (size_t j = 0; j < c_[i].size(); ++j)
      if (!c_[i][j].is_zero()) p.set_coeff(i - 1, j, c_[i][j] * BigRational(long(i)));
  return p;
}

Poly2Q Poly2Q::dy() const {
  Poly2Q p;
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 1; j < c_[i].size(); ++j)
      if (!c_[i][j].is_zero()) p.set_coeff(i, j - 1, c_[i][j] * BigRational(long(j)));
  return p;
}

long Poly2Q::deg_x() const { return long(c_.size()) - 1; }

long Poly2Q::deg_y() const {
  long d = -1;
  for (auto& row : c_) d = std::max(d, long(row.size()) - 1);
  return d;
}

Poly2Q operator+(const Poly2Q& a, const Poly2Q& b) {
  Poly2Q p = a;
  for (size_t i = 0; i < b.c_.size(); ++i)
    for (size_t j = 0; j < b.c_[i].size(); ++j)
      if (!b.c_[i][j].is_zero()) {
        BigRational cur = (i < p.c_.size() && j < p.c_[i].size()) ? p.c_[i][j] : BigRational(0);
        p.set_coeff(i, j, cur + b.c_[i][j]);
      }
  p.trim();
  return p;
}

Poly2Q operator-(const Poly2Q& a, const Poly2Q& b) { return a + (-b); }

Poly2Q Poly2Q::operator-() const {
  Poly2Q p = *this;
  for (auto& row : p.c_)
    for (auto& v : row) v = -v;
  return p;
}

Poly2Q operator*(const Poly2Q& a, const Poly2Q& b) {
  Poly2Q p;
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < a.c_[i].size(); ++j) {
      if (a.c_[i][j].is_zero()) continue;
      for (size_t k = 0; k < b.c_.size(); ++k)
        for (size_t l = 0; l < b.c_[k].size(); ++l) {
          if (b.c_[k][l].is_zero()) continue;
          BigRational cur = (i + k < p.c_.size() && j + l < p.c_[i + k].size())
                                ? p.c_[i + k][j + l]
                                : BigRational(0);
          p.set_coeff(i + k, j + l, cur + a.c_[i][j] * b.c_[k][l]);
        }
    }
  p.trim();
  return p;
}

Poly2Q Poly2Q::pow(long e) const {
  Poly2Q r = Poly2Q::constant(BigRational(1));
  for (long i = 0; i < e; ++i) r = r * (*this);
  return r;
}

// ---------------- RatFn2 ----------------

RatFn2::RatFn2(Poly2Q n, Poly2Q d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw std::invalid_argument("RatFn2: zero denominator");
}

BigRational RatFn2::eval(const BigRational& x, const BigRational& y) const {
  BigRational d = den.eval(x, y);
  if (d.is_zero()) throw std::domain_error("RatFn2: denominator vanishes at point");
  return num.eval(x, y) / d;
}

Complex RatFn2::eval(const Complex& x, const Complex& y) const {
  return num.eval(x, y) / den.eval(x, y);
}

RatFn2 RatFn2::dx() const { return RatFn2(num.dx() * den - num * den.dx(), den * den); }
RatFn2 RatFn2::dy() const { return RatFn2(num.dy() * den - num * den.dy(), den * den); }

RatFn2 operator+(const RatFn2& a, const RatFn2& b) {
  return RatFn2(a.num * b.den + b.num * a.den, a.den * b.den);
}
RatFn2 operator-(const RatFn2& a, const RatFn2& b) {
  return RatFn2(a.num * b.den - b.num * a.den, a.den * b.den);
}
RatFn2 operator*(const RatFn2& a, const RatFn2& b) {
  return RatFn2(a.num * b.num, a.den * b.den);
}
RatFn2 operator/(const RatFn2& a, const RatFn2& b) {
  if (b.num.is_zero()) throw std::invalid_argument("RatFn2: division by zero function");
  return RatFn2(a.num * b.den, a.den * b.num);
}

RatFn2 RatFn2::pow(long e) const {
  if (e < 0) return RatFn2(Poly2Q::constant(BigRational(1)), Poly2Q::constant(BigRational(1))) /
                    pow(-e);
  RatFn2 r(Poly2Q::constant(BigRational(1)), Poly2Q::constant(BigRational(1)));
  for (long i = 0; i < e; ++i) r = r * (*this);
  return r;
}

// ---------------- LaurentQ ----------------

void LaurentQ::trim() {
  while (!c_.empty() && c_.front().is_zero()) {
    c_.erase(c_.begin());
    ++off_;
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

LaurentQ LaurentQ::constant(const BigRational& r, long prec) {
  if (r.is_zero()) return LaurentQ();
  std::vector<BigRational> c(size_t(std::max(1L, prec)), BigRational(0));
  c[0] = r;
  return LaurentQ(0, std::move(c));
}

LaurentQ LaurentQ::z(long prec) {
  std::vector<BigRational> c(size_t(std::max(1L, prec - 1)), BigRational(0));
  c[0] = BigRational(1);
  return LaurentQ(1, std::move(c));
}

long LaurentQ::order() const {
  if (c_.empty()) throw std::domain_error("LaurentQ: order of zero series");
  return off_;
}

BigRational LaurentQ::coeff(long k) const {
  if (k < off_ || k >= off_ + long(c_.size())) return BigRational(0);
  return c_[size_t(k - off_)];
}

BigRational LaurentQ::leading() const {
  if (c_.empty()) throw std::domain_error("LaurentQ: leading of zero series");
  return c_.front();
}

LaurentQ operator+(const LaurentQ& a, const LaurentQ& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long off = std::min(a.off_, b.off_);
  long hi = std::max(a.off_ + long(a.c_.size()), b.off_ + long(b.c_.size()));
  std::vector<BigRational> c(size_t(hi - off), BigRational(0));
  for (long k = off; k < hi; ++k) c[size_t(k - off)] = a.coeff(k) + b.coeff(k);
  return LaurentQ(off, std::move(c));
}

LaurentQ operator-(const LaurentQ& a, const LaurentQ& b) { return a + (-b); }

LaurentQ LaurentQ::operator-() const {
  std::vector<BigRational> c = c_;
  for (auto& v : c) v = -v;
  return LaurentQ(off_, std::move(c));
}

LaurentQ operator*(const LaurentQ& a, const LaurentQ& b) {
  if (a.is_zero() || b.is_zero()) return LaurentQ();
  std::vector<BigRational> c(a.c_.size() + b.c_.size() - 1, BigRational(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return LaurentQ(a.off_ + b.off_, std::move(c));
}

LaurentQ LaurentQ::inverse() const {
  if (is_zero()) throw std::domain_error("LaurentQ: inverse of zero");
  size_t n = c_.size();
  std::vector<BigRational> inv(n, BigRational(0));
  inv[0] = BigRational(1) / c_[0];
  for (size_t k = 1; k < n; ++k) {
    BigRational s(0);
    for (size_t j = 1; j <= k; ++j) s += c_[j] * inv[k - j];
    inv[k] = -s / c_[0];
  }
  return LaurentQ(-off_, std::move(inv));
}

LaurentQ LaurentQ::derivative() const {
  if (is_zero()) return LaurentQ();
  std::vector<BigRational> c(c_.size(), BigRational(0));
  for (size_t k = 0; k < c_.size(); ++k) c[k] = c_[k] * BigRational(off_ + long(k));
  return LaurentQ(off_ - 1, std::move(c));
}

}  // namespace biex
