#include "kpgm/oracles.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "kpgm/errors.hpp"

namespace kpgm {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

struct SimpsonState {
    const RealFn& f;
    int evaluations = 0;
};

double simpson_step(SimpsonState& st, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    st.evaluations += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) throw QuadratureError("adaptive_simpson: recursion depth exhausted");
    return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Tridiagonal matrix with constant off-diagonal.
struct Tridiagonal {
    std::vector<double> diag;
    double off = 0.0;

    // number of eigenvalues strictly below x
    int count_below(double x) const {
        int count = 0;
        double q = 1.0;
        const double off2 = off * off;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            q = diag[i] - x - (i == 0 ? 0.0 : off2 / q);
            if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(x) + std::abs(off));
            if (q < 0.0) ++count;
        }
        return count;
    }
};

std::vector<double> lowest_eigenvalues(const Tridiagonal& t, int k) {
    double lo = *std::min_element(t.diag.begin(), t.diag.end()) - 2.0 * std::abs(t.off);
    double top = *std::max_element(t.diag.begin(), t.diag.end()) + 2.0 * std::abs(t.off);
    std::vector<double> out;
    out.reserve(k);
    for (int idx = 0; idx < k; ++idx) {
        double a = lo;
        double b = top;
        for (int it = 0; it < 400; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (t.count_below(mid) >= idx + 1) b = mid;
            else a = mid;
        }
        out.push_back(0.5 * (a + b));
        lo = out.back();
    }
    return out;
}

std::vector<double> fd_level(const RealFn& veff, double r_min, double r_max, int points,
                             double mu, double hbar, int k) {
    const double h = (r_max - r_min) / (points - 1);
    const double kinetic = hbar * hbar / (2.0 * mu * h * h);
    Tridiagonal t;
    t.off = -kinetic;
    t.diag.resize(points - 2);
    for (int i = 1; i <= points - 2; ++i) t.diag[i - 1] = 2.0 * kinetic + veff(r_min + i * h);
    if (static_cast<int>(t.diag.size()) < k) {
        throw ConvergenceError("fd_eigensolve: grid has fewer interior points than requested states");
    }
    return lowest_eigenvalues(t, k);
}

Big big(double x) { return Big(x); }

Big generalized_binomial(const Big& top, int m) {
    Big out = 1;
    for (int j = 1; j <= m; ++j) out *= (top - m + j) / j;
    return out;
}

}  // namespace

void GridSpec::validate() const {
    if (!(r_min >= 0.0)) throw DomainError("GridSpec: r_min must be >= 0");
    if (!(r_max > r_min)) throw DomainError("GridSpec: r_max must exceed r_min");
    if (count < 16) throw DomainError("GridSpec: count must be >= 16");
}

double quad_adaptive(const RealFn& f, double a, double b, double tol) {
    if (!(tol > 0.0)) throw DomainError("quad_adaptive: tol must be > 0");
    if (!(a < b)) throw DomainError("quad_adaptive: need a < b");
    double error = 0.0;
    double l1 = 0.0;
    const double result = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 20, 0.1 * tol, &error, &l1);
    if (!std::isfinite(result) || error > tol * std::max({std::abs(result), l1, 1.0})) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "quad_adaptive: error estimate %.3e exceeds tolerance (result %.6e)", error,
                      result);
        throw QuadratureError(buf);
    }
    return result;
}

double adaptive_simpson(const RealFn& f, double a, double b, double tol) {
    if (!(a < b)) throw DomainError("adaptive_simpson: need a < b");
    SimpsonState st{f};
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(st, a, b, fa, fm, fb, whole, tol, 50);
}

double gauss_legendre_composite(const RealFn& f, double a, double b, int panels) {
    if (panels < 1) throw DomainError("gauss_legendre_composite: panels must be >= 1");
    const double w = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        sum += boost::math::quadrature::gauss<double, 20>::integrate(f, a + p * w, a + (p + 1) * w);
    }
    return sum;
}

Estimate derivative(const RealFn& f, double x, int order, double h0) {
    if (order != 1 && order != 2) throw DomainError("derivative: order must be 1 or 2");
    if (!(h0 > 0.0)) throw DomainError("derivative: h0 must be > 0");
    constexpr int kTab = 10;
    constexpr double kShrink = 1.4;
    constexpr double kShrink2 = kShrink * kShrink;
    constexpr double kSafe = 2.0;
    auto central = [&](double h) {
        if (order == 1) return (f(x + h) - f(x - h)) / (2.0 * h);
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    };
    double table[kTab][kTab];
    double h = h0;
    table[0][0] = central(h);
    Estimate best{table[0][0], std::numeric_limits<double>::max()};
    for (int i = 1; i < kTab; ++i) {
        h /= kShrink;
        table[0][i] = central(h);
        double fac = kShrink2;
        for (int j = 1; j <= i; ++j) {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= kShrink2;
            const double err = std::max(std::abs(table[j][i] - table[j - 1][i]),
                                        std::abs(table[j][i] - table[j - 1][i - 1]));
            if (err <= best.error) {
                best.error = err;
                best.value = table[j][i];
            }
        }
        if (std::abs(table[i][i] - table[i - 1][i - 1]) >= kSafe * best.error) break;
    }
    return best;
}

FdSpectrum fd_eigensolve(const RealFn& veff, const GridSpec& grid, double mu, double hbar,
                         int count_states, double rel_tol) {
    grid.validate();
    if (!(mu > 0.0) || !(hbar > 0.0)) throw DomainError("fd_eigensolve: mu and hbar must be > 0");
    if (count_states < 1) throw DomainError("fd_eigensolve: count_states must be >= 1");
    FdSpectrum out;
    int points = grid.count;
    for (int level = 0; level < 3; ++level) {
        out.raw.push_back(fd_level(veff, grid.r_min, grid.r_max, points, mu, hbar, count_states));
        points = 2 * (points - 1) + 1;
    }
    const auto& coarse = out.raw[0];
    const auto& mid = out.raw[1];
    const auto& fine = out.raw[2];
    for (int k = 0; k < count_states; ++k) {
        const double ext_cm = (4.0 * mid[k] - coarse[k]) / 3.0;
        const double ext_mf = (4.0 * fine[k] - mid[k]) / 3.0;
        const double d1 = coarse[k] - mid[k];
        const double d2 = mid[k] - fine[k];
        out.energies.push_back(ext_mf);
        out.errors.push_back(std::abs(ext_mf - ext_cm));
        out.orders.push_back(d2 != 0.0 ? std::log2(std::abs(d1 / d2))
                                       : std::numeric_limits<double>::infinity());
        const double scale = std::max(std::abs(ext_mf), std::numeric_limits<double>::min());
        if (out.errors.back() > rel_tol * scale) {
            throw ConvergenceError("fd_eigensolve: state " + std::to_string(k) +
                                   " not converged, extrapolation spread " +
                                   std::to_string(out.errors.back()));
        }
    }
    return out;
}

GridSpec default_fd_grid(const DimensionlessSet& dimless, int count) {
    GridSpec g;
    g.r_min = 1e-3 / dimless.alpha;
    g.count = count;
    const double asymptote = dimless.energy_scale() * dimless.C;
    double r = 1.0 / dimless.alpha;
    while (std::abs(effective_potential_approx(r, dimless) - asymptote) > 1e-8 && r < 1e4 / dimless.alpha) {
        r *= 1.25;
    }
    g.r_max = std::max(r, 60.0 / dimless.alpha);
    return g;
}

double jacobi_sum_oracle(int n, double a, double b, double x) {
    if (n < 0 || n > 15) throw DomainError("jacobi_sum_oracle: n must be in [0, 15]");
    const Big X = big(x);
    const Big lower = (X - 1) / 2;
    const Big upper = (X + 1) / 2;
    Big sum = 0;
    for (int k = 0; k <= n; ++k) {
        sum += generalized_binomial(big(n) + big(a), n - k) * generalized_binomial(big(n) + big(b), k) *
               pow(lower, k) * pow(upper, n - k);
    }
    return static_cast<double>(sum);
}

namespace {

struct BigComplex {
    Big re, im;
};

// 2/sqrt(pi) sum (-1)^k z^{2k+1} / (k! (2k+1))
BigComplex erf_series_big(const Big& zr, const Big& zi) {
    const Big wr = -(zr * zr - zi * zi);
    const Big wi = -(2 * zr * zi);
    Big pr = zr, pi_ = zi;
    Big sr = zr, si = zi;
    const Big cutoff("1e-45");
    for (int k = 1; k < 400; ++k) {
        const Big nr = (pr * wr - pi_ * wi) / k;
        const Big ni = (pr * wi + pi_ * wr) / k;
        pr = nr;
        pi_ = ni;
        const Big tr = pr / (2 * k + 1);
        const Big ti = pi_ / (2 * k + 1);
        sr += tr;
        si += ti;
        if (abs(tr) + abs(ti) < cutoff) break;
    }
    const Big scale = 2 / sqrt(boost::math::constants::pi<Big>());
    return {sr * scale, si * scale};
}

}  // namespace

Complex erf_series_oracle(Complex z) {
    if (std::abs(z) > 4.0) throw DomainError("erf_series_oracle: |z| must be <= 4");
    const BigComplex e = erf_series_big(big(z.real()), big(z.imag()));
    return {static_cast<double>(e.re), static_cast<double>(e.im)};
}

Complex faddeeva_series_oracle(Complex z) {
    if (std::abs(z) > 4.0) throw DomainError("faddeeva_series_oracle: |z| must be <= 4");
    const Big x = big(z.real());
    const Big y = big(z.imag());
    // -iz = y - ix
    const BigComplex e = erf_series_big(y, -x);
    const Big cr = 1 - e.re;
    const Big ci = -e.im;
    // e^{-z^2} = e^{y^2 - x^2} (cos 2xy - i sin 2xy)
    const Big mag = exp(y * y - x * x);
    const Big er = mag * cos(2 * x * y);
    const Big ei = -mag * sin(2 * x * y);
    return {static_cast<double>(er * cr - ei * ci), static_cast<double>(er * ci + ei * cr)};
}

double ln_gamma_oracle(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma_oracle: x must be > 0");
    static const char* bernoulli[] = {"1/6",        "-1/30",        "1/42",       "-1/30",
                                      "5/66",       "-691/2730",    "7/6",        "-3617/510",
                                      "43867/798",  "-174611/330",  "854513/138", "-236364091/2730"};
    Big y = big(x);
    Big shift = 0;
    while (y < 40) {
        shift += log(y);
        y += 1;
    }
    Big series = (y - Big(0.5)) * log(y) - y + log(2 * boost::math::constants::pi<Big>()) / 2;
    Big ypow = y;
    const Big y2 = y * y;
    for (int k = 1; k <= 12; ++k) {
        const std::string frac = bernoulli[k - 1];
        const auto slash = frac.find('/');
        const Big bk = Big(frac.substr(0, slash)) / Big(frac.substr(slash + 1));
        series += bk / (Big(2 * k) * Big(2 * k - 1) * ypow);
        ypow *= y2;
    }
    return static_cast<double>(series - shift);
}

double potential_oracle(double r, const MoleculeSpec& spec) {
    if (!(r > 0.0)) throw DomainError("potential_oracle: r must be > 0");
    const Big R = big(r);
    const Big s = exp(-big(spec.alpha) * R);
    const Big x = big(spec.re) / R;
    const Big kratzer = -2 * big(spec.De) * (x - x * x / 2);
    const Big bracket = 1 - big(spec.b) * s / (1 - s);
    return static_cast<double>(kratzer + big(spec.D) * bracket * bracket);
}

double partition_direct_oracle(double beta, const ThermoCoeffs& c) {
    const int top = static_cast<int>(std::floor(c.n_max));
    Big sum = 0;
    for (int n = 0; n <= top; ++n) {
        const Big rho = Big(n) + big(c.Delta);
        const Big bracket = rho + big(c.Q3) / rho;
        const Big e = big(c.Q1) - big(c.Q2) * bracket * bracket;
        sum += exp(-big(beta) * e);
    }
    return static_cast<double>(sum);
}

}  // namespace kpgm
