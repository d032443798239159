#include "gapsets/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gapsets {

namespace {

int sign(const Rational& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

BigInt isqrt(const BigInt& x) { return boost::multiprecision::sqrt(x); }

std::vector<BigInt> divisors(BigInt x) {
  if (x < 0) x = -x;
  std::vector<BigInt> out;
  for (BigInt i = 1; i * i <= x; ++i)
    if (x % i == 0) {
      out.push_back(i);
      if (i * i != x) out.push_back(x / i);
    }
  return out;
}

void trim(std::vector<BigInt>& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Roots of x^2 + p x + q, nullopt unless real.
std::optional<std::pair<QuadraticIrrational, QuadraticIrrational>> quadratic_roots(const BigInt& p, const BigInt& q) {
  BigInt disc = p * p - 4 * q;
  if (disc < 0) return std::nullopt;
  BigInt s = 1, d = disc;
  for (BigInt f = 2; f * f <= d; ++f)
    while (d % (f * f) == 0) {
      d /= f * f;
      s *= f;
    }
  if (d == 1) return std::make_pair(QuadraticIrrational{-p - s, 0, 0}, QuadraticIrrational{-p + s, 0, 0});
  if (d == 0) return std::make_pair(QuadraticIrrational{-p, 0, 0}, QuadraticIrrational{-p, 0, 0});
  return std::make_pair(QuadraticIrrational{-p, -s, d}, QuadraticIrrational{-p, s, d});
}

std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Monic integer quadratic factors of a monic quartic, if any.
std::optional<std::pair<std::array<BigInt, 2>, std::array<BigInt, 2>>> split_quartic(const std::vector<BigInt>& p) {
  const BigInt& c0 = p[0];
  if (c0 == 0) return std::nullopt;
  for (const BigInt& pos : divisors(c0))
    for (BigInt b : {pos, BigInt(-pos)}) {
      if (c0 % b != 0) continue;
      BigInt d = c0 / b;
      // (x^2 + a x + b)(x^2 + c x + d): a + c = c3, ac + b + d = c2, ad + bc = c1.
      std::vector<BigInt> cand;
      if (d != b) {
        BigInt num = p[1] - b * p[3];
        if (num % (d - b) == 0) cand.push_back(num / (d - b));
      } else {
        BigInt ac = p[2] - b - d;
        BigInt disc = p[3] * p[3] - 4 * ac;
        if (disc >= 0) {
          BigInt s = isqrt(disc);
          if (s * s == disc && (p[3] + s) % 2 == 0) {
            cand.push_back((p[3] + s) / 2);
            cand.push_back((p[3] - s) / 2);
          }
        }
      }
      for (const BigInt& a : cand) {
        BigInt c = p[3] - a;
        if (poly_mul({b, a, 1}, {d, c, 1}) == p) return std::make_pair(std::array<BigInt, 2>{a, b}, std::array<BigInt, 2>{c, d});
      }
    }
  return std::nullopt;
}

}  // namespace

double QuadraticIrrational::to_double() const {
  return (a.convert_to<double>() + b.convert_to<double>() * std::sqrt(d.convert_to<double>())) / 2.0;
}

std::string QuadraticIrrational::to_string() const {
  std::ostringstream os;
  if (b == 0) {
    if (a % 2 == 0)
      os << a / 2;
    else
      os << a << "/2";
    return os.str();
  }
  os << "(" << a << (b < 0 ? "-" : "+");
  BigInt ab = b < 0 ? BigInt(-b) : b;
  if (ab != 1) os << ab << "*";
  os << "sqrt(" << d << "))/2";
  return os.str();
}

int compare(const QuadraticIrrational& x, const Rational& q) {
  Rational r = Rational(x.a) - 2 * q;
  if (x.b == 0 || x.d == 0) return sign(r);
  int sb = x.b > 0 ? 1 : -1;
  int sr = sign(r);
  if (sr == 0) return sb;
  if (sr == sb) return sr;
  Rational lhs = r * r, rhs = Rational(x.b * x.b * x.d);
  if (lhs == rhs) return 0;
  return lhs > rhs ? sr : sb;
}

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, IntVector(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

IntVector multiply(const IntMatrix& a, const IntVector& v) {
  IntVector out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

IntMatrix shifted(const IntMatrix& a, const BigInt& lambda) {
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (auto& x : m[i]) x = -x;
    m[i][i] += lambda;
  }
  return m;
}

std::vector<BigInt> char_poly(const IntMatrix& a) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  const int n = static_cast<int>(a.size());
  std::vector<BigInt> c(n + 1, 0);
  c[n] = 1;
  IntMatrix m(n, IntVector(n, 0));
  for (int k = 1; k <= n; ++k) {
    IntMatrix am = multiply(a, m);
    for (int i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
    m = std::move(am);
    IntMatrix prod = multiply(a, m);
    BigInt tr = 0;
    for (int i = 0; i < n; ++i) tr += prod[i][i];
    if (tr % k != 0) throw std::logic_error("non-integral Faddeev-LeVerrier step");
    c[n - k] = -tr / k;
  }
  return c;
}

std::vector<BigInt> poly_divide_linear(const std::vector<BigInt>& p, const BigInt& root) {
  const std::size_t n = p.size() - 1;
  std::vector<BigInt> q(n, 0);
  BigInt carry = 0;
  for (std::size_t i = n; i-- > 0;) {
    carry = p[i + 1] + carry * root;
    q[i] = carry;
  }
  if (p[0] + carry * root != 0) throw std::invalid_argument("not a root");
  return q;
}

BigInt poly_eval(const std::vector<BigInt>& p, const BigInt& x) {
  BigInt acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

namespace {

// Reduced row echelon form over the rationals; returns pivot columns.
std::vector<int> rref(std::vector<std::vector<Rational>>& m) {
  std::vector<int> pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Rational>> to_rational(const IntMatrix& a) {
  std::vector<std::vector<Rational>> m;
  for (const auto& row : a) m.emplace_back(row.begin(), row.end());
  return m;
}

}  // namespace

int rank(const IntMatrix& a) {
  auto m = to_rational(a);
  return static_cast<int>(rref(m).size());
}

std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  auto m = to_rational(a);
  const int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
  auto pivots = rref(m);
  std::vector<int> is_pivot(cols, -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) is_pivot[pivots[r]] = static_cast<int>(r);
  std::vector<IntVector> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free] >= 0) continue;
    std::vector<Rational> v(cols, 0);
    v[free] = 1;
    for (int c = 0; c < cols; ++c)
      if (is_pivot[c] >= 0) v[c] = -m[is_pivot[c]][free];
    BigInt l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    IntVector iv(cols);
    BigInt g = 0;
    for (int c = 0; c < cols; ++c) {
      Rational scaled = v[c] * l;
      iv[c] = boost::multiprecision::numerator(scaled);
      g = boost::multiprecision::gcd(g, iv[c]);
    }
    if (g > 1)
      for (auto& x : iv) x /= g;
    basis.push_back(std::move(iv));
  }
  return basis;
}

std::optional<std::vector<ExactRoot>> quadratic_split_roots(std::vector<BigInt> p) {
  trim(p);
  if (p.back() != 1) throw std::invalid_argument("polynomial must be monic");
  std::vector<ExactRoot> roots;
  auto add = [&](const QuadraticIrrational& q) {
    for (auto& r : roots)
      if (r.value == q) {
        ++r.multiplicity;
        return;
      }
    roots.push_back({q, 1});
  };
  bool progress = true;
  while (p.size() > 1 && progress) {
    progress = false;
    if (p[0] == 0) {
      p.erase(p.begin());
      add({0, 0, 0});
      progress = true;
      continue;
    }
    for (const BigInt& pos : divisors(p[0])) {
      for (BigInt r : {pos, BigInt(-pos)})
        if (poly_eval(p, r) == 0) {
          p = poly_divide_linear(p, r);
          add({2 * r, 0, 0});
          progress = true;
          break;
        }
      if (progress) break;
    }
  }
  auto add_quadratic = [&](const BigInt& lin, const BigInt& con) {
    auto q = quadratic_roots(lin, con);
    if (!q) return false;
    add(q->first);
    add(q->second);
    return true;
  };
  if (p.size() == 1) return roots;
  if (p.size() == 3) return add_quadratic(p[1], p[0]) ? std::optional(roots) : std::nullopt;
  if (p.size() == 5) {
    auto f = split_quartic(p);
    if (!f || !add_quadratic(f->first[0], f->first[1]) || !add_quadratic(f->second[0], f->second[1])) return std::nullopt;
    return roots;
  }
  return std::nullopt;
}

BigInt parse_bigint(const std::string& s) { return BigInt(s); }

std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace gapsets
