#pragma once

#include <complex>
#include <string>
#include <vector>

#include "tilinv/matrix.hpp"

namespace tilinv {

enum class PisotClass { StrongPisot, WeakPisot, NotPisot, Uncertain };

std::string to_string(PisotClass c);

struct PFData {
  double lambda = 0.0;
  double residual = 0.0;
  std::vector<double> left;   // normalized so min entry = 1
  std::vector<double> right;  // normalized to unit 1-norm
};

struct SpectralProfile {
  std::vector<BigInt> char_poly;  // constant term first, monic
  bool primitive = false;
  bool nonsingular = false;       // exact, via determinant
  PisotClass pisot_class = PisotClass::Uncertain;
  std::string class_reason;
  PFData pf;                      // valid only when primitive
  double lambda_integer_hint = 0.0;
  // Aperiodicity is not decided here; strong Pisot implies it, integer
  // dominant eigenvalues leave it unknown.
  bool aperiodicity_known = false;
};

// Roots of the characteristic polynomial via a companion-matrix eigensolver.
std::vector<std::complex<double>> poly_roots(const std::vector<BigInt>& coeffs);

PisotClass pisot_class(const IntMatrix& a, double tol,
                       std::string* reason = nullptr);

// Power iteration to residual < tol; throws std::domain_error if a is not
// primitive.
PFData pf_data(const IntMatrix& a, double tol);

SpectralProfile spectral_profile(const IntMatrix& a, double tol = 1e-9);

}  // namespace tilinv
