#pragma once

#include <complex>

namespace kpgm {

using Complex = std::complex<double>;

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence; a, b > -1, any real x.
double jacobi(int n, double a, double b, double x);

double erf_real(double x);
double erfc_real(double x);

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz).
///
/// Region split: Maclaurin series for |z| <= 0.5, Weideman's 40-term rational
/// approximation for |z| <= 15 in the upper half plane, Laplace continued
/// fraction beyond. The lower half plane uses w(z) = 2 e^{-z^2} - w(-z) and
/// throws OverflowError when e^{-z^2} is not representable.
Complex faddeeva(Complex z);

Complex erf_complex(Complex z);
Complex erfc_complex(Complex z);

/// e^c erfc(z) evaluated without forming e^c or erfc(z) separately.
Complex exp_scaled_erfc(Complex c, Complex z);
/// Same, with c - z^2 supplied by the caller when it is known more accurately.
Complex exp_scaled_erfc(Complex c, Complex z, Complex c_minus_z2);

}  // namespace kpgm
