#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gapsets {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntMatrix = std::vector<std::vector<BigInt>>;
using IntVector = std::vector<BigInt>;

// (a + b sqrt(d)) / 2 with d >= 0 squarefree or b = 0.
struct QuadraticIrrational {
  BigInt a = 0;
  BigInt b = 0;
  BigInt d = 0;
  double to_double() const;
  std::string to_string() const;
  bool operator==(const QuadraticIrrational&) const = default;
};

// Exact sign of (a + b sqrt(d)) / 2 - q for rational q.
int compare(const QuadraticIrrational& x, const Rational& q);

IntMatrix identity_matrix(int n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVector multiply(const IntMatrix& a, const IntVector& v);
IntMatrix shifted(const IntMatrix& a, const BigInt& lambda);  // lambda I - a

// Coefficients c_0..c_n of det(x I - a), c_n = 1.
std::vector<BigInt> char_poly(const IntMatrix& a);
std::vector<BigInt> poly_divide_linear(const std::vector<BigInt>& p, const BigInt& root);
BigInt poly_eval(const std::vector<BigInt>& p, const BigInt& x);

int rank(const IntMatrix& a);
// Primitive integer basis of the kernel of a (columns combine to zero).
std::vector<IntVector> integer_kernel(const IntMatrix& a);

struct ExactRoot {
  QuadraticIrrational value;
  int multiplicity = 0;
};

// Roots of a monic integer polynomial that splits into linear and quadratic factors over Z.
std::optional<std::vector<ExactRoot>> quadratic_split_roots(std::vector<BigInt> p);

BigInt parse_bigint(const std::string& s);
std::string to_string(const BigInt& x);

}  // namespace gapsets
