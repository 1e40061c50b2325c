#ifndef MORIN_ROOTS_HPP
#define MORIN_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <morin/error.hpp>
#include <morin/field.hpp>

namespace morin
{

struct RootOptions {
    // Relative correction size at which a root counts as converged.
    double tol = 1e-12;
    int max_sweeps = 200;
    int newton_steps = 4;
};

// Thrown when the iteration stalls; carries the best approximations found.
class root_convergence_error : public computation_error
{
public:
    root_convergence_error(const std::string &what, std::vector<Complex> partial)
        : computation_error(what), partial_(std::move(partial))
    {
    }

    const std::vector<Complex> &partial_roots() const { return partial_; }

private:
    std::vector<Complex> partial_;
};

// Horner evaluation of sum c_i t^i together with the derivative and the running bound
// sum |c_i| |t|^i used for backward-error tests.
struct HornerValue {
    Complex value;
    Complex derivative;
    double magnitude_bound;
};

inline HornerValue horner(std::span<const Complex> coeffs, Complex t)
{
    Complex v = 0, dv = 0;
    double bound = 0;
    const double at = std::abs(t);
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        dv = dv * t + v;
        v = v * t + coeffs[i];
        bound = bound * at + std::abs(coeffs[i]);
    }
    return {v, dv, bound};
}

// All complex roots of sum coeffs[i] t^i by Durand-Kerner (Weierstrass) simultaneous
// iteration, followed by a few guarded Newton steps per root.
//
// A root is converged when its correction is below tol relative to max(1, |z|) or when its
// residual is within rounding of backward-stable (|p(z)| <= 16 eps * sum |c_i||z|^i); the
// second test lets multiple roots finish at their attainable accuracy.
inline std::vector<Complex> durand_kerner(std::span<const Complex> coeffs, const RootOptions &opt = {})
{
    std::size_t deg = coeffs.size();
    while (deg > 0 && coeffs[deg - 1] == Complex(0)) {
        --deg;
    }
    if (deg < 2) {
        throw usage_error("durand_kerner: polynomial must have degree >= 1");
    }
    const std::size_t n = deg - 1;
    double max_coeff = 0;
    for (std::size_t i = 0; i < deg; ++i) {
        max_coeff = std::max(max_coeff, std::abs(coeffs[i]));
    }
    const Complex lead = coeffs[n];
    if (std::abs(lead) <= 1e-14 * max_coeff) {
        throw usage_error("durand_kerner: leading coefficient is numerically zero");
    }
    std::vector<Complex> monic(deg);
    for (std::size_t i = 0; i < deg; ++i) {
        monic[i] = coeffs[i] / lead;
    }

    // Initial guesses on a circle whose radius is the geometric mean of the root moduli.
    double radius = std::pow(std::abs(monic[0]), 1.0 / double(n));
    if (!(radius > 0) || !std::isfinite(radius)) {
        radius = 1.0;
    }
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * double(k) / double(n) + 0.4;
        z[k] = std::polar(radius, angle);
    }

    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<bool> done(n, false);
    bool converged = false;
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        bool all = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) {
                continue;
            }
            const auto h = horner(monic, z[i]);
            if (std::abs(h.value) <= 16 * eps * h.magnitude_bound) {
                done[i] = true;
                continue;
            }
            Complex denom = 1;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    denom *= z[i] - z[j];
                }
            }
            if (denom == Complex(0)) {
                denom = Complex(eps, eps);
            }
            const Complex step = h.value / denom;
            z[i] -= step;
            if (std::abs(step) <= opt.tol * std::max(1.0, std::abs(z[i]))) {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if (all && std::all_of(done.begin(), done.end(), [](bool b) { return b; })) {
            converged = true;
            break;
        }
    }

    for (auto &root : z) {
        for (int s = 0; s < opt.newton_steps; ++s) {
            const auto h = horner(monic, root);
            if (h.derivative == Complex(0)) {
                break;
            }
            const Complex candidate = root - h.value / h.derivative;
            if (std::abs(horner(monic, candidate).value) < std::abs(h.value)) {
                root = candidate;
            } else {
                break;
            }
        }
    }
    if (!converged) {
        throw root_convergence_error("durand_kerner: no convergence after " + std::to_string(opt.max_sweeps)
                                         + " sweeps",
                                     z);
    }
    return z;
}

inline std::vector<Complex> durand_kerner(const std::vector<Complex> &coeffs, const RootOptions &opt = {})
{
    return durand_kerner(std::span<const Complex>(coeffs), opt);
}

} // namespace morin

#endif
