#include "ombell/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ombell {

namespace {

void require(bool ok, const char* msg, double got) {
    if (!ok) {
        std::ostringstream os;
        os << msg << " (got " << got << ")";
        throw std::invalid_argument(os.str());
    }
}

// Re(a*b) written once so every code path shares the same rounding.
double re_prod(Amplitude a, Amplitude b) {
    return a.real() * b.real() - a.imag() * b.imag();
}

}  // namespace

void ModelParams::validate() const {
    require(std::isfinite(p) && p >= 0.0 && p < 1.0, "ModelParams: p must satisfy 0 <= p < 1", p);
    require(std::isfinite(T) && T >= 0.0 && T <= 1.0, "ModelParams: T must satisfy 0 <= T <= 1", T);
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0, "ModelParams: eta must satisfy 0 <= eta <= 1", eta);
    require(std::isfinite(n0) && n0 >= 0.0, "ModelParams: n0 must satisfy n0 >= 0", n0);
}

void Setting::validate(double bound) const {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw std::invalid_argument("Setting: alpha must be finite");
    }
    require(std::abs(alpha) <= bound, "Setting: |alpha| exceeds the configured bound", std::abs(alpha));
}

void SettingsQuad::validate(double bound) const {
    a1.validate(bound);
    a1p.validate(bound);
    a2.validate(bound);
    a2p.validate(bound);
}

// Thermal expressions. The shared denominator is computed once and each
// probability is a single exponential of one real argument, so nothing
// overflows for |alpha| <= 10.
//
// The ground-state functions below mirror these lines term by term with the
// n0 contributions dropped; the matching operation order makes the n0 = 0
// reduction exact in floating point, which the acceptance suite checks.

namespace detail {

double marginal_one_nocheck(const ModelParams& mp, Amplitude a1) {
    const double p = mp.p, eta = mp.eta, n0 = mp.n0;
    const double m1 = std::norm(a1);
    const double A = eta + eta * n0 - 1.0;
    const double den = p * A + 1.0;
    return (1.0 - p) / den * std::exp(-eta * (1.0 - p) * m1 / den);
}

double marginal_two_nocheck(const ModelParams& mp, Amplitude a2) {
    const double p = mp.p, T = mp.T, n0 = mp.n0;
    const double ep = mp.eta_prime();
    const double m2 = std::norm(a2);
    const double den = ep * n0 + (ep - 1.0) * p + 1.0;
    return (1.0 - p) / den * std::exp(-ep * (1.0 - p) * m2 * T / den);
}

double joint_nocheck(const ModelParams& mp, Amplitude a1, Amplitude a2) {
    const double p = mp.p, T = mp.T, eta = mp.eta, n0 = mp.n0;
    const double ep = mp.eta_prime();
    const double m1 = std::norm(a1);
    const double m2 = std::norm(a2);

    const double A = eta + eta * n0 - 1.0;
    const double B = (ep - 1.0) * p;
    const double den = ep * n0 - B * A + 1.0;
    const double num1 = ep * n0 + B + 1.0;
    const double num2 = p * A + 1.0;

    const double arg1 = (eta * m1 * num1 + ep * T * m2 * num2) / den;
    const double arg2 = std::sqrt(p) * eta * ep * (n0 + 1.0) * std::sqrt(T) *
                        (2.0 * re_prod(a1, a2)) / den;
    return (1.0 - p) / den * std::exp(-arg1 - arg2);
}

double correlator_nocheck(const ModelParams& mp, Amplitude a1, Amplitude a2) {
    return 1.0 - 2.0 * (marginal_one_nocheck(mp, a1) + marginal_two_nocheck(mp, a2)) +
           4.0 * joint_nocheck(mp, a1, a2);
}

double chsh_nocheck(const ModelParams& mp, const SettingsQuad& quad) {
    const Amplitude a1 = quad.a1.alpha, a1p = quad.a1p.alpha;
    const Amplitude a2 = quad.a2.alpha, a2p = quad.a2p.alpha;
    return correlator_nocheck(mp, a1, a2) + correlator_nocheck(mp, a1p, a2) +
           correlator_nocheck(mp, a1, a2p) - correlator_nocheck(mp, a1p, a2p);
}

}  // namespace detail

double marginal_one(const ModelParams& mp, Setting a1) {
    mp.validate();
    return detail::marginal_one_nocheck(mp, a1.alpha);
}

double marginal_two(const ModelParams& mp, Setting a2) {
    mp.validate();
    return detail::marginal_two_nocheck(mp, a2.alpha);
}

double joint(const ModelParams& mp, Setting a1, Setting a2) {
    mp.validate();
    return detail::joint_nocheck(mp, a1.alpha, a2.alpha);
}

ProbabilityTriple probabilities(const ModelParams& mp, Setting a1, Setting a2) {
    mp.validate();
    return ProbabilityTriple{detail::joint_nocheck(mp, a1.alpha, a2.alpha),
                             detail::marginal_one_nocheck(mp, a1.alpha),
                             detail::marginal_two_nocheck(mp, a2.alpha)};
}

double correlator(const ModelParams& mp, Setting a1, Setting a2) {
    mp.validate();
    return detail::correlator_nocheck(mp, a1.alpha, a2.alpha);
}

double chsh(const ModelParams& mp, const SettingsQuad& quad) {
    mp.validate();
    return detail::chsh_nocheck(mp, quad);
}

namespace ground {

double marginal_one(const ModelParams& mp, Setting a1) {
    mp.validate();
    const double p = mp.p, eta = mp.eta;
    const double m1 = std::norm(a1.alpha);
    const double A = eta - 1.0;
    const double den = p * A + 1.0;
    return (1.0 - p) / den * std::exp(-eta * (1.0 - p) * m1 / den);
}

double marginal_two(const ModelParams& mp, Setting a2) {
    mp.validate();
    const double p = mp.p, T = mp.T;
    const double ep = mp.eta_prime();
    const double m2 = std::norm(a2.alpha);
    const double den = (ep - 1.0) * p + 1.0;
    return (1.0 - p) / den * std::exp(-ep * (1.0 - p) * m2 * T / den);
}

double joint(const ModelParams& mp, Setting a1, Setting a2) {
    mp.validate();
    const double p = mp.p, T = mp.T, eta = mp.eta;
    const double ep = mp.eta_prime();
    const double m1 = std::norm(a1.alpha);
    const double m2 = std::norm(a2.alpha);

    const double A = eta - 1.0;
    const double B = (ep - 1.0) * p;
    const double den = -(B * A) + 1.0;
    const double num1 = B + 1.0;
    const double num2 = p * A + 1.0;

    const double arg1 = (eta * m1 * num1 + ep * T * m2 * num2) / den;
    const double arg2 = std::sqrt(p) * eta * ep * std::sqrt(T) *
                        (2.0 * re_prod(a1.alpha, a2.alpha)) / den;
    return (1.0 - p) / den * std::exp(-arg1 - arg2);
}

}  // namespace ground

}  // namespace ombell
