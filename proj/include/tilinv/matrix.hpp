#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace tilinv {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Square integer matrix with exact entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int d) : d_(d), e_(static_cast<std::size_t>(d) * d, 0) {}

  static IntMatrix identity(int d) {
    IntMatrix m(d);
    for (int i = 0; i < d; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_counts(const std::vector<std::vector<long long>>& c);

  int dim() const { return d_; }

  BigInt& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * d_ + j]; }
  const BigInt& operator()(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * d_ + j];
  }

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix transpose() const;
  IntMatrix pow(int n) const;

  std::vector<BigInt> apply(const std::vector<BigInt>& v) const;

  bool operator==(const IntMatrix& o) const { return d_ == o.d_ && e_ == o.e_; }

  std::string str() const;

 private:
  int d_ = 0;
  std::vector<BigInt> e_;
};

// Monic characteristic polynomial, coefficients constant-term first
// (c[0] + c[1] x + ... + c[d] x^d with c[d] == 1). Faddeev-LeVerrier; all
// divisions are exact over the integers.
std::vector<BigInt> char_poly(const IntMatrix& a);

BigInt determinant(const IntMatrix& a);

// True iff a^k is strictly positive for some k <= (d-1)^2 + 1.
bool is_primitive(const IntMatrix& a);

// Exact test a^d v == 0.
bool in_generalized_null_space(const IntMatrix& a,
                               const std::vector<BigInt>& v);

struct EventualRangeData {
  int eventual_rank = 0;
  // Char poly of the restriction of a to the column space of a^d,
  // constant term first, monic, non-zero constant term.
  std::vector<BigInt> restricted_char_poly;
  BigInt det_on_range = 0;
};

EventualRangeData eventual_range_data(const IntMatrix& a);

std::string poly_str(const std::vector<BigInt>& coeffs);

}  // namespace tilinv
