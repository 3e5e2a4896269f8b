#include "tilinv/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tilinv {

std::string to_string(PisotClass c) {
  switch (c) {
    case PisotClass::StrongPisot: return "StrongPisot";
    case PisotClass::WeakPisot: return "WeakPisot";
    case PisotClass::NotPisot: return "NotPisot";
    case PisotClass::Uncertain: return "Uncertain";
  }
  return "?";
}

std::vector<std::complex<double>> poly_roots(
    const std::vector<BigInt>& coeffs) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d <= 0) return {};
  if (coeffs.back() != 1) throw std::invalid_argument("polynomial not monic");
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i)
    comp(i, d - 1) = -static_cast<double>(coeffs[static_cast<std::size_t>(i)]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < d; ++i) roots.push_back(es.eigenvalues()[i]);
  std::sort(roots.begin(), roots.end(), [](auto x, auto y) {
    return std::abs(x) > std::abs(y);
  });
  return roots;
}

PisotClass pisot_class(const IntMatrix& a, double tol, std::string* reason) {
  auto note = [&](const std::string& s) {
    if (reason) *reason = s;
  };
  if (!is_primitive(a)) {
    note("matrix is not primitive");
    return PisotClass::NotPisot;
  }
  std::vector<BigInt> cp = char_poly(a);
  auto roots = poly_roots(cp);
  const bool nonsingular = cp[0] != 0;
  bool uncertain = false;
  bool weak = true;
  for (std::size_t i = 1; i < roots.size(); ++i) {
    double m = std::abs(roots[i]);
    if (std::abs(m - 1.0) <= tol) {
      uncertain = true;
    } else if (m > 1.0) {
      note("non-dominant eigenvalue of modulus " + std::to_string(m));
      return PisotClass::NotPisot;
    }
  }
  if (uncertain) {
    note("a non-dominant eigenvalue modulus lies within tol of 1");
    return PisotClass::Uncertain;
  }
  if (!weak) return PisotClass::NotPisot;
  if (nonsingular) {
    note("all non-dominant moduli in (0,1); det != 0 (exact)");
    return PisotClass::StrongPisot;
  }
  note("non-dominant moduli < 1 but matrix singular (exact)");
  return PisotClass::WeakPisot;
}

PFData pf_data(const IntMatrix& a, double tol) {
  if (!is_primitive(a))
    throw std::domain_error(
        "matrix not primitive; use eventual_range_data for spectral "
        "invariants");
  const int d = a.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m(i, j) = static_cast<double>(a(i, j));
  auto iterate = [&](const Eigen::MatrixXd& mat, Eigen::VectorXd& v) {
    double lam = 0.0;
    for (int it = 0; it < 100000; ++it) {
      Eigen::VectorXd w = mat * v;
      lam = w.lpNorm<Eigen::Infinity>();
      w /= w.sum();
      double res = (mat * w - lam * w).lpNorm<Eigen::Infinity>();
      // lam from Rayleigh-style quotient on the 1-normalized vector.
      lam = (mat * w).sum() / w.sum();
      res = (mat * w - lam * w).lpNorm<Eigen::Infinity>();
      v = w;
      if (res < tol) break;
    }
    return lam;
  };
  Eigen::VectorXd r = Eigen::VectorXd::Ones(d);
  double lam = iterate(m, r);
  Eigen::VectorXd l = Eigen::VectorXd::Ones(d);
  iterate(m.transpose(), l);

  PFData out;
  out.lambda = lam;
  r /= r.sum();  // unit 1-norm (frequencies sum to 1)
  l /= l.minCoeff();
  out.residual = (m * r - lam * r).lpNorm<Eigen::Infinity>();
  out.right.assign(r.data(), r.data() + d);
  out.left.assign(l.data(), l.data() + d);
  return out;
}

SpectralProfile spectral_profile(const IntMatrix& a, double tol) {
  SpectralProfile p;
  p.char_poly = char_poly(a);
  p.primitive = is_primitive(a);
  p.nonsingular = p.char_poly[0] != 0;
  p.pisot_class = pisot_class(a, tol, &p.class_reason);
  if (p.primitive) p.pf = pf_data(a, tol);
  if (p.pisot_class == PisotClass::StrongPisot) {
    p.aperiodicity_known = true;  // strong Pisot forces primitive + aperiodic
  } else {
    double rounded = std::round(p.pf.lambda);
    p.lambda_integer_hint = rounded;
    p.aperiodicity_known = std::abs(p.pf.lambda - rounded) > 1e-6;
  }
  return p;
}

}  // namespace tilinv
