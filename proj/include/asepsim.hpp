#ifndef ASEPSIM_HPP
#define ASEPSIM_HPP

// Continuous-time Monte Carlo for the asymmetric simple exclusion process on
// a finite window of Z with closed boundaries, plus a small exact oracle on a
// periodic ring for cross-checking the sampler.
//
// Conventions: each particle jumps one site right at rate p and one site left
// at rate q = 1 - p, subject to exclusion.  The height at the origin is twice
// the net particle current through the bond between sites 0 and 1, counting a
// jump 1 -> 0 as +1 and 0 -> 1 as -1.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace asepsim {

using cplx = std::complex<double>;

enum class Init {
    flat,              // sites shift + 2Z occupied (shift 0: the even sites)
    halfflat,          // sites 2, 4, 6, ... occupied
    halfflat_shifted,  // sites shift+2, shift+4, ... occupied
};

struct SimConfig {
    double p = 1.0 / 3.0;  // right-jump rate
    double t = 1.0;        // time horizon
    int window = 24;       // simulate sites -window .. window
    Init init = Init::flat;

    // Lattice offset of the initial profile.  For flat this selects the
    // occupied parity; particle-hole duality sends the shift-0 process at
    // (p, q) to the shift-1 process at (q, p) with the current negated, and
    // the symmetry tests rely on exactly that pairing.
    int shift = 0;
    std::uint64_t seed = 0;

    double q_rate() const { return 1.0 - p; }

    // tau = p/q, the moment deformation parameter.  Only meaningful for
    // p < 1/2; callers that consume tau must check that themselves.
    double tau() const { return p / (1.0 - p); }

    // Throws std::domain_error unless p is a rate in [0, 1), t >= 0 and the
    // window clears the light cone margin.  p >= 1/2 is deliberately legal
    // here: the raw sampler is used with swapped rates when testing the
    // left-right symmetry.  Everything tau-based additionally needs p < 1/2.
    void validate() const;
};

// Smallest admissible window for horizon t: ceil(4t) + 20.  Jump speed is
// below 2, so this keeps boundary effects at the origin negligible.
int min_window(double t);

struct Observable {
    enum class Kind { tau_pow_m_halfheight, tau_pow_m_N, exp_tau_gen };

    Kind kind = Kind::tau_pow_m_halfheight;
    int m = 1;       // moment order
    int x = 0;       // site argument of N_x
    cplx zeta{0.0};  // generating-function argument

    static Observable tau_pow_m_halfheight(int m);
    static Observable tau_pow_m_N(int m, int x);
    static Observable exp_tau_gen(cplx zeta);

    std::string tag() const;
};

struct SimEnsemble {
    long long samples = 0;
    cplx mean{0.0};
    double std_error = 0.0;  // sample std dev / sqrt(samples)
    std::string observable;
    SimConfig config;
};

// One exact-in-law trajectory; returns h(t, 0) = 2 * (net current through the
// (0,1) bond).  Uses the RNG stream derived from (cfg.seed, trajectory 0).
int simulate_height(const SimConfig& cfg);

// One trajectory; returns N_x(t), the number of particles at sites <= x.
// Requires |x| <= cfg.window.
int simulate_halfflat_N(const SimConfig& cfg, int x);

// Sample mean and standard error of an observable over independent
// trajectories.  Trajectory i always uses the stream derived from
// (cfg.seed, i), and partial sums are combined in a fixed chunk order, so the
// result is bit-identical for any worker count.  Requires p < 1/2; the
// exp_tau_gen observable additionally requires |zeta| < tau^{1/4}.
SimEnsemble mc_expectation(const Observable& obs, const SimConfig& cfg,
                           long long samples, int workers = 1);

// Exact distribution of the net current through one marked bond for the
// process on a periodic ring (even size, at most 14 sites) started from the
// alternating configuration, computed by uniformization of the full generator
// on {0,1}^ring augmented with the cumulative current truncated at
// +-ring_size.  Index k of the result is current k - ring_size.  Requires
// t <= ring_size / 8 so the marked bond cannot feel the wrap-around.
std::vector<double> exact_ring_flux_distribution(double p, double t,
                                                 int ring_size);

// Expectation of an observable in the ring model above.  Supports
// tau_pow_m_halfheight for p in [0, 1/2) and exp_tau_gen for p in (0, 1/2);
// N_x observables have no ring analogue and are rejected.
double exact_ring_oracle(double p, double t, int ring_size,
                         const Observable& obs);

}  // namespace asepsim

#endif
