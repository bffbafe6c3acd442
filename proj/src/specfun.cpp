#include "kpgm/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "kpgm/errors.hpp"

namespace kpgm {

namespace {

using std::numbers::pi;
constexpr double kInvSqrtPi = 0.56418958354775628695;  // 1/sqrt(pi)
constexpr double kSeriesRadius = 0.5;
constexpr double kRationalRadius = 15.0;
constexpr double kMaxModulus = 1e8;
constexpr int kWeidemanTerms = 40;
constexpr int kContinuedFractionDepth = 20;

struct WeidemanTable {
    double L = 0.0;
    std::array<double, kWeidemanTerms> coeff{};  // coefficient of Z^n
};

// Coefficients of Weideman's rational approximation (SIAM J. Numer. Anal. 31, 1994),
// obtained from a cosine transform of (L^2 + t^2) e^{-t^2} sampled on t = L tan(theta/2).
WeidemanTable build_weideman() {
    constexpr int N = kWeidemanTerms;
    constexpr int M = 2 * N;
    WeidemanTable table;
    table.L = std::sqrt(N / std::numbers::sqrt2);
    std::array<double, 2 * M> samples{};
    for (int k = -M + 1; k <= M - 1; ++k) {
        const double t = table.L * std::tan(0.5 * k * pi / M);
        samples[k + M] = std::exp(-t * t) * (table.L * table.L + t * t);
    }
    for (int n = 0; n < N; ++n) {
        const int m = n + 1;
        double acc = 0.0;
        for (int k = -M + 1; k <= M - 1; ++k) {
            acc += samples[k + M] * std::cos(pi * k * m / M);
        }
        table.coeff[n] = acc / (2 * M);
    }
    return table;
}

const WeidemanTable& weideman() {
    static const WeidemanTable table = build_weideman();
    return table;
}

// sum_k (iz)^k / Gamma(k/2 + 1); entire, used only near the origin.
Complex faddeeva_series(Complex z) {
    const Complex iz{-z.imag(), z.real()};
    const Complex iz2 = iz * iz;
    Complex even = 1.0;
    Complex odd = iz * (2.0 * kInvSqrtPi);
    Complex sum = even + odd;
    for (int k = 0; k < 40; k += 2) {
        even *= iz2 / (0.5 * k + 1.0);
        odd *= iz2 / (0.5 * (k + 1) + 1.0);
        sum += even + odd;
        if (std::abs(even) + std::abs(odd) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

Complex faddeeva_rational(Complex z) {
    const auto& table = weideman();
    const Complex iz{-z.imag(), z.real()};
    const Complex denom = table.L - iz;
    const Complex Z = (table.L + iz) / denom;
    Complex p = 0.0;
    for (int n = kWeidemanTerms - 1; n >= 0; --n) p = p * Z + table.coeff[n];
    return 2.0 * p / (denom * denom) + kInvSqrtPi / denom;
}

Complex faddeeva_continued_fraction(Complex z) {
    Complex t = z;
    for (int k = kContinuedFractionDepth; k >= 1; --k) t = z - (0.5 * k) / t;
    return Complex{0.0, kInvSqrtPi} / t;
}

Complex faddeeva_upper(Complex z) {
    const double modulus = std::abs(z);
    if (modulus <= kSeriesRadius) return faddeeva_series(z);
    if (modulus <= kRationalRadius) return faddeeva_rational(z);
    return faddeeva_continued_fraction(z);
}

void require_finite(Complex value, const char* what) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw OverflowError(std::string(what) + ": result not representable");
    }
}

// 2/sqrt(pi) sum (-1)^k z^{2k+1} / (k! (2k+1)), for small |z|.
Complex erf_series(Complex z) {
    const Complex z2 = z * z;
    Complex power = z;
    Complex sum = z;
    for (int k = 1; k < 60; ++k) {
        power *= -z2 / static_cast<double>(k);
        const Complex term = power / static_cast<double>(2 * k + 1);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return 2.0 * kInvSqrtPi * sum;
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: x must be > 0");
#if defined(__GLIBC__) || defined(__APPLE__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double jacobi(int n, double a, double b, double x) {
    if (n < 0) throw DomainError("jacobi: n must be >= 0");
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("jacobi: parameters must be > -1");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double curr = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    const double ab = a + b;
    for (int k = 2; k <= n; ++k) {
        const double s = 2.0 * k + ab;
        const double lead = 2.0 * k * (k + ab) * (s - 2.0);
        const double mid = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        const double tail = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        const double next = (mid * curr - tail * prev) / lead;
        prev = curr;
        curr = next;
    }
    return curr;
}

double erf_real(double x) { return std::erf(x); }
double erfc_real(double x) { return std::erfc(x); }

Complex faddeeva(Complex z) {
    if (!(std::abs(z) <= kMaxModulus)) throw DomainError("faddeeva: |z| exceeds 1e8");
    if (z.imag() >= 0.0) return faddeeva_upper(z);
    if (std::abs(z) <= kSeriesRadius) return faddeeva_series(z);
    const Complex e = std::exp(-z * z);
    require_finite(e, "faddeeva");
    return 2.0 * e - faddeeva_upper(-z);
}

Complex erf_complex(Complex z) {
    if (z.real() < 0.0) return -erf_complex(-z);
    if (std::abs(z) < 1.0) return erf_series(z);
    const Complex iz{-z.imag(), z.real()};
    const Complex e = std::exp(-z * z);
    const Complex result = 1.0 - e * faddeeva_upper(iz);
    require_finite(result, "erf_complex");
    return result;
}

Complex erfc_complex(Complex z) {
    if (z.real() < 0.0) return 2.0 - erfc_complex(-z);
    if (std::abs(z) < 1.0) return 1.0 - erf_series(z);
    const Complex iz{-z.imag(), z.real()};
    const Complex result = std::exp(-z * z) * faddeeva_upper(iz);
    require_finite(result, "erfc_complex");
    return result;
}

Complex exp_scaled_erfc(Complex c, Complex z, Complex c_minus_z2) {
    Complex result;
    if (z.real() >= 0.0) {
        const Complex iz{-z.imag(), z.real()};
        result = std::exp(c_minus_z2) * faddeeva_upper(iz);
    } else {
        const Complex minus_iz{z.imag(), -z.real()};
        result = 2.0 * std::exp(c) - std::exp(c_minus_z2) * faddeeva_upper(minus_iz);
    }
    require_finite(result, "exp_scaled_erfc");
    return result;
}

Complex exp_scaled_erfc(Complex c, Complex z) { return exp_scaled_erfc(c, z, c - z * z); }

}  // namespace kpgm
