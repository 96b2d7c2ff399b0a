#ifndef OMBELL_MODEL_HPP
#define OMBELL_MODEL_HPP

#include <complex>

// Closed-form click statistics of a two-mode squeezed thermal state measured
// by displaced non-number-resolving photon counters.
//
// Mode 1 is detected directly with efficiency eta. Mode 2 passes a loss
// channel of transmission T before an identical detector; commuting the loss
// through the measurement turns it into an effective efficiency
// eta' = eta*T together with a rescaling of the displacement coordinate.
// The alpha2 used throughout this module is that rescaled coordinate; the
// physically applied displacement is T*alpha2 (see fock::calibrate_alpha2_convention,
// which pins the factor against the brute-force oracle).
//
// Outcome convention: +1 = no click, -1 = at least one click.

namespace ombell {

using Amplitude = std::complex<double>;

// Abstract state/measurement parameters of the Bell test.
struct ModelParams {
    double p = 0.0;    // pair-emission parameter, 0 <= p < 1
    double T = 1.0;    // phonon-photon mapping efficiency, [0, 1]
    double eta = 1.0;  // detector efficiency, both arms, [0, 1]
    double n0 = 0.0;   // initial mean mechanical occupation, >= 0

    double eta_prime() const { return eta * T; }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// One displacement setting.
struct Setting {
    Amplitude alpha{0.0, 0.0};

    static constexpr double kDefaultBound = 3.0;

    // Throws std::invalid_argument if non-finite or |alpha| > bound.
    void validate(double bound = kDefaultBound) const;
};

// The four settings of a CHSH run: (a1, a1p) on arm 1, (a2, a2p) on arm 2.
struct SettingsQuad {
    Setting a1, a1p, a2, a2p;

    void validate(double bound = Setting::kDefaultBound) const;
};

struct ProbabilityTriple {
    double joint = 0.0;  // P(+1,+1)
    double marg1 = 0.0;  // P(+1 | arm 1)
    double marg2 = 0.0;  // P(+1 | arm 2)
};

// P(+1 | alpha1): no-click marginal on the directly detected arm.
double marginal_one(const ModelParams& mp, Setting a1);

// P(+1 | alpha2): no-click marginal on the lossy arm (eta' = eta*T).
double marginal_two(const ModelParams& mp, Setting a2);

// P(+1,+1 | alpha1, alpha2): joint no-click probability.
double joint(const ModelParams& mp, Setting a1, Setting a2);

// All three probabilities at once.
ProbabilityTriple probabilities(const ModelParams& mp, Setting a1, Setting a2);

// E = 1 - 2*(P1 + P2) + 4*P12, the +1/-1 outcome correlator. |E| <= 1.
double correlator(const ModelParams& mp, Setting a1, Setting a2);

// Signed CHSH combination S = E(a1,a2) + E(a1p,a2) + E(a1,a2p) - E(a1p,a2p).
// Callers interested in violation take |S|; |S| <= 2*sqrt(2) always.
double chsh(const ModelParams& mp, const SettingsQuad& quad);

// Ground-state (n0 = 0) expressions, kept as an independent code path so the
// thermal formulas can be checked to reduce to them exactly. They ignore
// mp.n0.
namespace ground {
double marginal_one(const ModelParams& mp, Setting a1);
double marginal_two(const ModelParams& mp, Setting a2);
double joint(const ModelParams& mp, Setting a1, Setting a2);
}  // namespace ground

// Validation-free variants for hot loops (optimizer, property sweeps). The
// caller is responsible for validating the parameters once up front. Results
// are bit-identical to the checked functions.
namespace detail {
double marginal_one_nocheck(const ModelParams& mp, Amplitude a1);
double marginal_two_nocheck(const ModelParams& mp, Amplitude a2);
double joint_nocheck(const ModelParams& mp, Amplitude a1, Amplitude a2);
double correlator_nocheck(const ModelParams& mp, Amplitude a1, Amplitude a2);
double chsh_nocheck(const ModelParams& mp, const SettingsQuad& quad);
}  // namespace detail

}  // namespace ombell

#endif  // OMBELL_MODEL_HPP
