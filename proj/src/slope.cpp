#include "incr/slope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "incr/error.hpp"

namespace incr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_window(const Fn1D& f, double a, double h0) {
    if (!(h0 > 0.0)) throw Error(Errc::BadParam, "h0 must be > 0");
    if (!(f.domain.lo <= a - h0 && a + h0 <= f.domain.hi))
        throw Error(Errc::DomainViolation, "probe window [a-h0, a+h0] leaves the domain");
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic jitter in [-1, 1].
double jitter_unit(std::uint64_t seed, std::uint64_t level, std::uint64_t index) {
    std::uint64_t state = seed ^ (level * 0x100000001b3ULL) ^ (index * 0xc2b2ae3d27d4eb4fULL);
    return static_cast<double>(splitmix64(state) >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

} // namespace

double slope(const Fn1D& f, double x, double y) {
    if (x == y) throw Error(Errc::EqualPoints, "slope needs two distinct points");
    return (eval_at(f, y) - eval_at(f, x)) / (y - x);
}

Rat slope_exact(const Fn1D& f, const Rat& x, const Rat& y) {
    if (x == y) throw Error(Errc::EqualPoints, "slope needs two distinct points");
    return Rat((eval_at_exact(f, y) - eval_at_exact(f, x)) / (y - x));
}

double barycentric_residual(const Fn1D& f, double x, double a, double y) {
    if (!(x < a && a < y))
        throw Error(Errc::OrderingViolated, "barycentric identity needs x < a < y");
    double lhs = slope(f, x, y);
    double rhs = ((a - x) / (y - x)) * slope(f, a, x) + ((y - a) / (y - x)) * slope(f, a, y);
    return lhs - rhs;
}

Rat barycentric_residual_exact(const Fn1D& f, const Rat& x, const Rat& a, const Rat& y) {
    if (!(x < a && a < y))
        throw Error(Errc::OrderingViolated, "barycentric identity needs x < a < y");
    Rat lhs = slope_exact(f, x, y);
    Rat rhs = Rat((a - x) / (y - x)) * slope_exact(f, a, x) +
              Rat((y - a) / (y - x)) * slope_exact(f, a, y);
    return Rat(lhs - rhs);
}

// --- two-sided straddling limit ---------------------------------------------

SlopeProbeReport two_sided_slope_limit(const Fn1D& f, double a, double h0, int levels) {
    if (levels < 2) throw Error(Errc::BadParam, "levels must be >= 2");
    require_window(f, a, h0);

    const double rho[] = {1.0, 0.5, 0.25, 0.125};
    const double fa_deriv = f.has_deriv() ? f.deriv_fn(a) : 0.0;

    SlopeProbeReport report;
    double best_adv = -1.0;

    for (int level = 0; level < levels; ++level) {
        const double w = std::ldexp(h0, -level);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        const bool last = level == levels - 1;

        auto consider = [&](double h, double k) {
            // Straddling pair (a-h, a+k); skip degenerate offsets.
            if (!(h > 0.0) || !(k > 0.0)) return;
            double x = a - h, y = a + k;
            if (x == a || y == a || x == y) return;
            double p = (f.eval_fn(y) - f.eval_fn(x)) / (y - x);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
            if (last && f.has_deriv()) {
                double dev = std::abs(p - fa_deriv);
                if (dev > best_adv) {
                    best_adv = dev;
                    report.adversarial = AdversarialPair{x, y, p};
                }
            }
        };

        for (double ri : rho)
            for (double rj : rho) consider(w * ri, w * rj);
        // Asymmetric schedule k ~ h^2: the device that separates straddling
        // convergence from genuine strict differentiability.
        for (double ri : rho) {
            double h = w * ri;
            consider(h, h * h / h0);
            consider(h * h / h0, h);
        }

        report.level_dispersion.push_back(hi - lo);
        if (last) {
            report.dispersion = hi - lo;
            double hf = w;
            report.estimate = (f.eval_fn(a + hf) - f.eval_fn(a - hf)) / (2.0 * hf);
        }
    }
    report.verdict = ProbeVerdict::Inconclusive;
    return report;
}

// --- strict differentiability probe ------------------------------------------

SlopeProbeReport strict_deriv_probe(const Fn1D& f, double a, double h0, int levels,
                                    int samples_per_level, const ProbeOptions& opts) {
    if (levels < 2) throw Error(Errc::BadParam, "levels must be >= 2");
    if (samples_per_level < 4) throw Error(Errc::BadParam, "samples_per_level must be >= 4");
    require_window(f, a, h0);
    const double l = deriv_at(f, a);

    SlopeProbeReport report;
    double best_adv = -1.0;
    std::vector<double> final_slopes;

    for (int level = 0; level < levels; ++level) {
        const double w = h0 * std::pow(opts.shrink, level);
        const int m = samples_per_level;
        const bool last = level == levels - 1;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;

        auto consider = [&](double x, double y) {
            if (x == y) return;
            if (x < a - w || y > a + w || y < a - w || x > a + w) return;
            double p = (f.eval_fn(y) - f.eval_fn(x)) / (y - x);
            lo = std::min(lo, p);
            hi = std::max(hi, p);
            if (last) {
                final_slopes.push_back(p);
                double dev = std::abs(p - l);
                if (dev > best_adv) {
                    best_adv = dev;
                    report.adversarial = AdversarialPair{x, y, p};
                }
            }
        };

        const double spacing = 2.0 * w / (m - 1);
        for (int i = 0; i < m; ++i) {
            double t = a + (-w + spacing * i) +
                       0.25 * spacing * jitter_unit(opts.seed, level, static_cast<std::uint64_t>(i));
            t = std::clamp(t, a - w, a + w);
            // Gap ladder: from the window width down to where float
            // cancellation in f(t+d)-f(t) would dominate the slope.
            const double fmag = std::abs(f.eval_fn(t));
            const double floor_gap =
                std::max({(std::abs(t) + w) * kEps * 64.0, fmag * kEps * 2.0 / 1e-7, 1e-300});
            for (int j = 0; j <= 48; ++j) {
                const double gap = std::ldexp(w, -j);
                if (gap < floor_gap) break;
                if (t + gap <= a + w)
                    consider(t, t + gap);
                else if (t - gap >= a - w)
                    consider(t - gap, t);
            }
        }
        // Symmetric and square-schedule straddles around a.
        for (double r : {1.0, 0.5, 0.25, 0.125}) {
            consider(a - w * r, a + w * r);
            consider(a - w * r, a + (w * r) * (w * r) / h0);
            consider(a - (w * r) * (w * r) / h0, a + w * r);
        }

        report.level_dispersion.push_back(hi - lo);
        if (last) report.dispersion = hi - lo;
    }

    std::sort(final_slopes.begin(), final_slopes.end());
    if (!final_slopes.empty()) {
        std::size_t mid = final_slopes.size() / 2;
        report.estimate = final_slopes.size() % 2 == 1
                              ? final_slopes[mid]
                              : 0.5 * (final_slopes[mid - 1] + final_slopes[mid]);
    }

    const double scale = 1.0 + std::abs(l);
    const double coarse = opts.coarse_tol * scale;
    const double fine = opts.fine_tol * scale;
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < report.level_dispersion.size(); ++i)
        if (report.level_dispersion[i + 1] > report.level_dispersion[i] * 1.05 + 0.01 * fine)
            monotone = false;

    if (report.dispersion > coarse && report.adversarial && best_adv > coarse)
        report.verdict = ProbeVerdict::NotStrict;
    else if (monotone && report.dispersion <= fine)
        report.verdict = ProbeVerdict::ConsistentWithStrict;
    else
        report.verdict = ProbeVerdict::Inconclusive;
    return report;
}

CounterexamplePair counterexample_slopes(int n) {
    if (n < 0) throw Error(Errc::BadParam, "n must be >= 0");
    // Straddle a trough and the next peak of sin(1/x): at these points the
    // sine is exactly -1 / +1 and the slope tends to 2/pi.
    const double u = M_PI / 2 + 2.0 * n * M_PI; // y_n = 1/u, sin(1/y_n) = +1
    const double v = u + M_PI;                  // x_n = 1/v, sin(1/x_n) = -1
    const double x = 1.0 / v;
    const double y = 1.0 / u;
    auto f = [](double t) { return t * t * std::sin(1.0 / t); };
    return {x, y, (f(y) - f(x)) / (y - x)};
}

} // namespace incr
