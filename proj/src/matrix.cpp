#include "tilinv/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace tilinv {

IntMatrix IntMatrix::from_counts(const std::vector<std::vector<long long>>& c) {
  const int d = static_cast<int>(c.size());
  IntMatrix m(d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(c[static_cast<std::size_t>(i)].size()) != d)
      throw std::invalid_argument("count matrix not square");
    for (int j = 0; j < d; ++j)
      m(i, j) = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (d_ != o.d_) throw std::invalid_argument("dimension mismatch");
  IntMatrix r(d_);
  for (int i = 0; i < d_; ++i)
    for (int k = 0; k < d_; ++k) {
      const BigInt& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < d_; ++j) r(i, j) += aik * o(k, j);
    }
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

IntMatrix IntMatrix::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative matrix power");
  IntMatrix r = identity(d_);
  IntMatrix base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

std::vector<BigInt> IntMatrix::apply(const std::vector<BigInt>& v) const {
  if (static_cast<int>(v.size()) != d_)
    throw std::invalid_argument("dimension mismatch");
  std::vector<BigInt> r(static_cast<std::size_t>(d_), 0);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
  return r;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < d_; ++i) {
    os << (i ? ";[" : "[");
    for (int j = 0; j < d_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<BigInt> char_poly(const IntMatrix& a) {
  const int d = a.dim();
  // Faddeev-LeVerrier: M_1 = A, c_k = -tr(A M_k)/k ... using the standard
  // recurrence M_{k+1} = A(M_k + c_k I).
  std::vector<BigInt> c(static_cast<std::size_t>(d) + 1, 0);
  c[static_cast<std::size_t>(d)] = 1;
  IntMatrix m = IntMatrix::identity(d);
  for (int k = 1; k <= d; ++k) {
    m = a * m;
    BigInt tr = 0;
    for (int i = 0; i < d; ++i) tr += m(i, i);
    BigInt ck = -tr / k;  // exact
    c[static_cast<std::size_t>(d - k)] = ck;
    for (int i = 0; i < d; ++i) m(i, i) += ck;
  }
  return c;
}

BigInt determinant(const IntMatrix& a) {
  std::vector<BigInt> c = char_poly(a);
  BigInt det = c[0];
  if (a.dim() % 2 != 0) det = -det;
  return det;
}

bool is_primitive(const IntMatrix& a) {
  const int d = a.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (a(i, j) < 0) throw std::domain_error("matrix has a negative entry");
  const int bound = (d - 1) * (d - 1) + 1;  // Wielandt
  // Track positivity pattern only.
  std::vector<char> pat(static_cast<std::size_t>(d) * d), cur;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      pat[static_cast<std::size_t>(i) * d + j] = a(i, j) > 0;
  cur = pat;
  auto all_pos = [&](const std::vector<char>& p) {
    for (char x : p)
      if (!x) return false;
    return true;
  };
  for (int k = 1; k <= bound; ++k) {
    if (all_pos(cur)) return true;
    std::vector<char> next(static_cast<std::size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i)
      for (int l = 0; l < d; ++l)
        if (cur[static_cast<std::size_t>(i) * d + l])
          for (int j = 0; j < d; ++j)
            if (pat[static_cast<std::size_t>(l) * d + j])
              next[static_cast<std::size_t>(i) * d + j] = 1;
    cur = std::move(next);
  }
  return all_pos(cur);
}

bool in_generalized_null_space(const IntMatrix& a,
                               const std::vector<BigInt>& v) {
  if (static_cast<int>(v.size()) != a.dim())
    throw std::invalid_argument("dimension mismatch");
  std::vector<BigInt> w = a.pow(a.dim()).apply(v);
  for (const BigInt& x : w)
    if (x != 0) return false;
  return true;
}

namespace {

struct ReducedBasis {
  std::vector<std::vector<BigRat>> vecs;  // reduced against earlier vectors
  std::vector<int> pivots;                // first non-zero row of each vector
};

// Incremental column reduction; each stored vector is zero at the pivot rows
// of all earlier vectors.
ReducedBasis column_space_basis(const std::vector<std::vector<BigRat>>& cols,
                                int d) {
  ReducedBasis rb;
  for (const auto& col : cols) {
    std::vector<BigRat> v = col;
    for (std::size_t b = 0; b < rb.vecs.size(); ++b) {
      int pr = rb.pivots[b];
      BigRat f = v[static_cast<std::size_t>(pr)] /
                 rb.vecs[b][static_cast<std::size_t>(pr)];
      if (f != 0)
        for (int i = 0; i < d; ++i)
          v[static_cast<std::size_t>(i)] -= f * rb.vecs[b][static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < d; ++i)
      if (v[static_cast<std::size_t>(i)] != 0) {
        rb.vecs.push_back(std::move(v));
        rb.pivots.push_back(i);
        break;
      }
  }
  return rb;
}

// Forward solve against the reduced basis; throws if v is outside the span.
std::vector<BigRat> coords_in_basis(const ReducedBasis& rb,
                                    const std::vector<BigRat>& v, int d) {
  std::vector<BigRat> res = v;
  std::vector<BigRat> x(rb.vecs.size(), BigRat(0));
  for (std::size_t b = 0; b < rb.vecs.size(); ++b) {
    int pr = rb.pivots[b];
    BigRat f = res[static_cast<std::size_t>(pr)] /
               rb.vecs[b][static_cast<std::size_t>(pr)];
    x[b] = f;
    if (f != 0)
      for (int i = 0; i < d; ++i)
        res[static_cast<std::size_t>(i)] -= f * rb.vecs[b][static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < d; ++i)
    if (res[static_cast<std::size_t>(i)] != 0)
      throw std::logic_error("vector outside invariant subspace");
  return x;
}

std::vector<BigRat> rational_char_poly(const std::vector<std::vector<BigRat>>& m) {
  const int r = static_cast<int>(m.size());
  std::vector<BigRat> c(static_cast<std::size_t>(r) + 1, BigRat(0));
  c[static_cast<std::size_t>(r)] = 1;
  // Faddeev-LeVerrier over the rationals.
  std::vector<std::vector<BigRat>> acc(static_cast<std::size_t>(r),
                                       std::vector<BigRat>(static_cast<std::size_t>(r), BigRat(0)));
  for (int i = 0; i < r; ++i) acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  for (int k = 1; k <= r; ++k) {
    std::vector<std::vector<BigRat>> next(static_cast<std::size_t>(r),
                                          std::vector<BigRat>(static_cast<std::size_t>(r), BigRat(0)));
    for (int i = 0; i < r; ++i)
      for (int l = 0; l < r; ++l)
        if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] != 0)
          for (int j = 0; j < r; ++j)
            next[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
                acc[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
    acc = std::move(next);
    BigRat tr = 0;
    for (int i = 0; i < r; ++i) tr += acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    BigRat ck = -tr / k;
    c[static_cast<std::size_t>(r - k)] = ck;
    for (int i = 0; i < r; ++i) acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += ck;
  }
  return c;
}

}  // namespace

EventualRangeData eventual_range_data(const IntMatrix& a) {
  const int d = a.dim();
  IntMatrix ad = a.pow(d);
  // Columns of a^d over Q.
  std::vector<std::vector<BigRat>> cols;
  for (int j = 0; j < d; ++j) {
    std::vector<BigRat> c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = BigRat(ad(i, j));
    cols.push_back(std::move(c));
  }
  ReducedBasis basis = column_space_basis(cols, d);
  const int r = static_cast<int>(basis.vecs.size());
  EventualRangeData out;
  out.eventual_rank = r;
  if (r == 0) {
    out.restricted_char_poly = {BigInt(1)};  // empty restriction: poly 1
    out.det_on_range = 1;
    return out;
  }
  // Restriction matrix: express a * b_j in the basis.
  std::vector<std::vector<BigRat>> m(static_cast<std::size_t>(r),
                                     std::vector<BigRat>(static_cast<std::size_t>(r), BigRat(0)));
  for (int j = 0; j < r; ++j) {
    std::vector<BigRat> ab(static_cast<std::size_t>(d), BigRat(0));
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        ab[static_cast<std::size_t>(i)] += BigRat(a(i, k)) * basis.vecs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    std::vector<BigRat> x = coords_in_basis(basis, ab, d);
    for (int i = 0; i < r; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(i)];
  }
  std::vector<BigRat> pc = rational_char_poly(m);
  out.restricted_char_poly.reserve(pc.size());
  for (const BigRat& q : pc) {
    if (boost::multiprecision::denominator(q) != 1)
      throw std::logic_error("restricted char poly is not integral");
    out.restricted_char_poly.push_back(boost::multiprecision::numerator(q));
  }
  if (out.restricted_char_poly.front() == 0)
    throw std::logic_error("restriction to eventual range is singular");
  out.det_on_range = out.restricted_char_poly.front();
  if (r % 2 != 0) out.det_on_range = -out.det_on_range;
  return out;
}

std::string poly_str(const std::vector<BigInt>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    const BigInt& c = coeffs[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    BigInt ab = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (k == 0 || ab != 1) os << ab;
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace tilinv
