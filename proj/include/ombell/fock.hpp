#ifndef OMBELL_FOCK_HPP
#define OMBELL_FOCK_HPP

#include <Eigen/Dense>
#include <complex>

#include "ombell/model.hpp"

// Brute-force verification engine. Builds the lossy two-mode squeezed thermal
// state as a truncated Fock-basis density matrix and evaluates the displaced
// no-click POVMs numerically. Deliberately shares no code with the closed
// forms in model.hpp.

namespace ombell::fock {

struct TruncationPolicy {
    int n_start = 12;   // initial per-mode cutoff N (levels 0..N)
    int n_max = 64;     // hard cap on the cutoff
    int guard = 8;      // extra levels used while building displacement operators
    double tol = 1e-9;  // convergence tolerance on probabilities

    void validate() const;
};

// Density operator on the product basis |n1, n2>, n1, n2 <= cutoff.
// Linear index I = n1 * dim + n2 with dim = cutoff + 1.
struct TwoModeDensityMatrix {
    int dim = 0;  // per-mode dimension (cutoff + 1)
    Eigen::MatrixXcd rho;

    double trace() const;
    double hermiticity_error() const;  // max |rho - rho^dagger|
    double min_eigenvalue() const;     // dense eigenvalue check; O(dim^6)
    double mean_photons(int mode) const;  // mode is 1 or 2

    // Hermiticity to 1e-12, trace within 1e-9 of 1, eigenvalue floor >= -1e-10.
    void check_sanity() const;
};

// D(alpha) = exp(alpha a^dag - alpha^* a), built by exponentiating the
// truncated generator on a basis extended by `guard` levels, then projected
// back to `dim` levels.
Eigen::MatrixXcd displacement_operator(std::complex<double> alpha, int dim, int guard);

// Displaced no-click POVM element D^dag(alpha) (1-eta)^n D(alpha).
Eigen::MatrixXcd no_click_operator(double eta, std::complex<double> alpha, int dim, int guard);
Eigen::MatrixXcd no_click_operator(double eta, std::complex<double> alpha,
                                   const TruncationPolicy& policy);

// State preparation: mode 2 seeded thermally with mean n0, two-mode squeezing
// with tanh^2 r = p (ladder amplitude -sqrt(p)), then a transmission-T loss
// channel on mode 2 applied through Kraus operators. `cutoff` overrides
// policy.n_start when >= 0.
TwoModeDensityMatrix build_state(double p, double n0, double T, const TruncationPolicy& policy,
                                 int cutoff = -1);

// Tr(rho O1 x O2), Tr(rho O1 x 1), Tr(rho 1 x O2), with the cutoff doubled
// until successive values differ by less than policy.tol. alpha2_physical is
// the displacement actually applied to the lossy mode. Throws on
// non-convergence at policy.n_max.
ProbabilityTriple oracle_probabilities(double p, double n0, double T, double eta,
                                       std::complex<double> alpha1,
                                       std::complex<double> alpha2_physical,
                                       const TruncationPolicy& policy);

// Which rescaling maps the closed-form alpha2 coordinate to the physical
// displacement: beta = c(T) * alpha2.
enum class Alpha2Rule { kTimesT, kTimesSqrtT, kIdentity, kTimesInvSqrtT };

const char* alpha2_rule_name(Alpha2Rule rule);
double alpha2_rule_value(Alpha2Rule rule, double T);

// Tests every candidate rule on a fixed grid of settings and returns the
// single one that reproduces the closed form to < 1e-6. Throws if no or
// several distinct candidates pass.
Alpha2Rule calibrate_alpha2_rule(double p, double T, double eta, const TruncationPolicy& policy);

// Convenience form returning c(T) for the calibrated rule.
double calibrate_alpha2_convention(double p, double T, double eta, const TruncationPolicy& policy);

}  // namespace ombell::fock

#endif  // OMBELL_FOCK_HPP
