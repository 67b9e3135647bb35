#include "asepsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <thread>

#include "qcalc.hpp"

namespace asepsim {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    return z ^ (z >> 33);
}

// Counter-style stream: a splitmix64 walk whose starting point is a hash of
// (seed, trajectory index).  Trajectory i therefore sees the same numbers no
// matter which worker runs it, which is what makes ensembles reproducible
// across worker counts.
struct Stream {
    std::uint64_t state;

    Stream(std::uint64_t seed, std::uint64_t traj)
        : state(mix64(seed ^ mix64(2 * traj + 1))) {}

    std::uint64_t next() {
        std::uint64_t z = (state += kGamma);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Set of currently allowed oriented jumps for one direction, with O(1)
// insert, erase and uniform sampling.  Entries are bond indices; bond b sits
// between array sites b and b+1.
struct MoveSet {
    std::vector<int> list;
    std::vector<int> pos;  // pos[b] = index in list, or -1

    void reset(int nbonds) {
        list.clear();
        pos.assign(static_cast<std::size_t>(nbonds), -1);
    }
    void set(int b, bool allowed) {
        if (allowed) {
            if (pos[b] >= 0) return;
            pos[b] = static_cast<int>(list.size());
            list.push_back(b);
        } else {
            int i = pos[b];
            if (i < 0) return;
            int last = list.back();
            list[static_cast<std::size_t>(i)] = last;
            pos[last] = i;
            list.pop_back();
            pos[b] = -1;
        }
    }
    int size() const { return static_cast<int>(list.size()); }
};

struct Trajectory {
    std::vector<std::uint8_t> occ;  // occ[s] is lattice site s - window
    int flux = 0;                   // net 1 -> 0 current through bond (0, 1)
};

void fill_initial(const SimConfig& cfg, std::vector<std::uint8_t>& occ) {
    const int L = cfg.window;
    occ.assign(static_cast<std::size_t>(2 * L + 1), 0);
    for (int s = 0; s <= 2 * L; ++s) {
        const int y = s - L;
        bool on = false;
        const int r = ((y - cfg.shift) % 2 + 2) % 2;
        switch (cfg.init) {
            case Init::flat: on = (r == 0); break;
            case Init::halfflat: on = (y > 0 && y % 2 == 0); break;
            case Init::halfflat_shifted:
                on = (y > cfg.shift && r == 0);
                break;
        }
        occ[static_cast<std::size_t>(s)] = on ? 1 : 0;
    }
}

// Gillespie direct method.  The two allowed-move sets are maintained
// incrementally: a jump at bond b changes sites b and b+1, so only the three
// bonds b-1, b, b+1 need their status refreshed.
Trajectory run_trajectory(const SimConfig& cfg, Stream& rng) {
    const int L = cfg.window;
    const int nsites = 2 * L + 1;
    const int nbonds = nsites - 1;
    const int origin_bond = L;  // between lattice sites 0 and 1
    const double p = cfg.p;
    const double q = cfg.q_rate();

    Trajectory tr;
    fill_initial(cfg, tr.occ);

    MoveSet right, left;  // right: b -> b+1 jumps, left: b+1 -> b jumps
    right.reset(nbonds);
    left.reset(nbonds);
    auto refresh = [&](int b) {
        if (b < 0 || b >= nbonds) return;
        const bool lo = tr.occ[static_cast<std::size_t>(b)] != 0;
        const bool hi = tr.occ[static_cast<std::size_t>(b + 1)] != 0;
        right.set(b, lo && !hi);
        left.set(b, hi && !lo);
    };
    for (int b = 0; b < nbonds; ++b) refresh(b);

    double now = 0.0;
    for (;;) {
        const double rate_r = p * right.size();
        const double rate_l = q * left.size();
        const double lambda = rate_r + rate_l;
        if (lambda <= 0.0) break;  // jammed, nothing can move any more
        now += -std::log(1.0 - rng.u01()) / lambda;
        if (now > cfg.t) break;

        const bool go_right = rng.u01() * lambda < rate_r;
        MoveSet& ms = go_right ? right : left;
        int k = static_cast<int>(rng.u01() * ms.size());
        if (k >= ms.size()) k = ms.size() - 1;
        const int b = ms.list[static_cast<std::size_t>(k)];

        std::swap(tr.occ[static_cast<std::size_t>(b)],
                  tr.occ[static_cast<std::size_t>(b + 1)]);
        if (b == origin_bond) tr.flux += go_right ? -1 : +1;
        refresh(b - 1);
        refresh(b);
        refresh(b + 1);
    }
    return tr;
}

double pow_int(double base, long long e) {
    if (e == 0) return 1.0;
    return std::pow(base, static_cast<double>(e));
}

// Per-trajectory observable value.  tau powers of the current can be large
// for rare negative-current samples; that is genuine, not an error.
cplx observe(const Observable& obs, const SimConfig& cfg, const Trajectory& tr,
             const qcalc::QContext* ctx) {
    const double tau = cfg.tau();
    switch (obs.kind) {
        case Observable::Kind::tau_pow_m_halfheight:
            return pow_int(tau, static_cast<long long>(obs.m) * tr.flux);
        case Observable::Kind::tau_pow_m_N: {
            long long n = 0;
            const int L = cfg.window;
            for (int y = -L; y <= obs.x; ++y)
                n += tr.occ[static_cast<std::size_t>(y + L)];
            return pow_int(tau, static_cast<long long>(obs.m) * n);
        }
        case Observable::Kind::exp_tau_gen: {
            const cplx arg = obs.zeta * pow_int(tau, tr.flux);
            return qcalc::qexp(arg, tau, std::pow(tau, 0.25), *ctx);
        }
    }
    return 0.0;  // unreachable
}

void require_tau_regime(const SimConfig& cfg) {
    if (!(cfg.p < 0.5))
        throw std::domain_error(
            "asepsim: tau-based observables need p < 1/2 so that tau < 1");
}

void check_observable(const Observable& obs, const SimConfig& cfg) {
    if (obs.m < 0) throw std::domain_error("asepsim: moment order m < 0");
    if (obs.kind == Observable::Kind::tau_pow_m_N &&
        std::abs(obs.x) > cfg.window)
        throw std::domain_error("asepsim: N_x site outside the window");
    if (obs.kind == Observable::Kind::exp_tau_gen &&
        !(std::abs(obs.zeta) < std::pow(cfg.tau(), 0.25)))
        throw std::domain_error(
            "asepsim: exp_tau_gen needs |zeta| < tau^{1/4}");
}

}  // namespace

void SimConfig::validate() const {
    if (!(p >= 0.0 && p < 1.0))
        throw std::domain_error("SimConfig: p must lie in [0, 1)");
    if (!(t >= 0.0)) throw std::domain_error("SimConfig: t must be >= 0");
    if (window < min_window(t))
        throw std::domain_error("SimConfig: window below ceil(4t) + 20");
}

int min_window(double t) { return static_cast<int>(std::ceil(4.0 * t)) + 20; }

Observable Observable::tau_pow_m_halfheight(int m) {
    Observable o;
    o.kind = Kind::tau_pow_m_halfheight;
    o.m = m;
    return o;
}

Observable Observable::tau_pow_m_N(int m, int x) {
    Observable o;
    o.kind = Kind::tau_pow_m_N;
    o.m = m;
    o.x = x;
    return o;
}

Observable Observable::exp_tau_gen(cplx zeta) {
    Observable o;
    o.kind = Kind::exp_tau_gen;
    o.zeta = zeta;
    return o;
}

std::string Observable::tag() const {
    switch (kind) {
        case Kind::tau_pow_m_halfheight:
            return "tau_pow_m_halfheight(m=" + std::to_string(m) + ")";
        case Kind::tau_pow_m_N:
            return "tau_pow_m_N(m=" + std::to_string(m) +
                   ",x=" + std::to_string(x) + ")";
        case Kind::exp_tau_gen:
            return "exp_tau_gen(zeta=" + std::to_string(zeta.real()) +
                   (zeta.imag() < 0 ? "-" : "+") +
                   std::to_string(std::abs(zeta.imag())) + "i)";
    }
    return "unknown";
}

int simulate_height(const SimConfig& cfg) {
    cfg.validate();
    Stream rng(cfg.seed, 0);
    return 2 * run_trajectory(cfg, rng).flux;
}

int simulate_halfflat_N(const SimConfig& cfg, int x) {
    cfg.validate();
    if (std::abs(x) > cfg.window)
        throw std::domain_error("simulate_halfflat_N: x outside the window");
    Stream rng(cfg.seed, 0);
    Trajectory tr = run_trajectory(cfg, rng);
    int n = 0;
    for (int y = -cfg.window; y <= x; ++y)
        n += tr.occ[static_cast<std::size_t>(y + cfg.window)];
    return n;
}

SimEnsemble mc_expectation(const Observable& obs, const SimConfig& cfg,
                           long long samples, int workers) {
    cfg.validate();
    require_tau_regime(cfg);
    check_observable(obs, cfg);
    if (samples < 1) throw std::domain_error("mc_expectation: samples < 1");
    if (workers < 1) workers = 1;
    if (workers > 64) workers = 64;

    // Only the q-exponential observable needs a series context; building it
    // unconditionally would reject tau = 0 (the p = 0 process), where plain
    // tau powers are still perfectly well defined.
    std::optional<qcalc::QContext> ctx;
    if (obs.kind == Observable::Kind::exp_tau_gen)
        ctx.emplace(cfg.tau(), 1e-12, 1e-12, 512);

    // Fixed-size chunks, each filled in index order and reduced in chunk
    // order afterwards.  The split does not depend on the worker count, so
    // the floating-point result cannot either.
    const long long chunk = 4096;
    const long long nchunks = (samples + chunk - 1) / chunk;
    std::vector<cplx> sum(static_cast<std::size_t>(nchunks), cplx(0.0));
    std::vector<double> sumsq(static_cast<std::size_t>(nchunks), 0.0);

    std::atomic<long long> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&]() {
        try {
            for (;;) {
                const long long c = next.fetch_add(1);
                if (c >= nchunks || failed.load()) break;
                cplx s(0.0);
                double s2 = 0.0;
                const long long lo = c * chunk;
                const long long hi = std::min(samples, lo + chunk);
                for (long long i = lo; i < hi; ++i) {
                    Stream rng(cfg.seed, static_cast<std::uint64_t>(i));
                    Trajectory tr = run_trajectory(cfg, rng);
                    const cplx v =
                        observe(obs, cfg, tr, ctx ? &*ctx : nullptr);
                    s += v;
                    s2 += std::norm(v);
                }
                sum[static_cast<std::size_t>(c)] = s;
                sumsq[static_cast<std::size_t>(c)] = s2;
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) std::rethrow_exception(failure);

    cplx total(0.0);
    double total2 = 0.0;
    for (long long c = 0; c < nchunks; ++c) {
        total += sum[static_cast<std::size_t>(c)];
        total2 += sumsq[static_cast<std::size_t>(c)];
    }
    const double n = static_cast<double>(samples);
    const cplx mean = total / n;
    double var = total2 / n - std::norm(mean);
    if (var < 0.0) var = 0.0;  // roundoff for constant observables

    SimEnsemble e;
    e.samples = samples;
    e.mean = mean;
    e.std_error = std::sqrt(var / n);
    e.observable = obs.tag();
    e.config = cfg;
    return e;
}

namespace {

void check_ring_args(double p, double t, int ring) {
    if (!(p >= 0.0 && p < 0.5))
        throw std::domain_error("exact_ring: p must lie in [0, 1/2)");
    if (ring < 4 || ring > 14 || ring % 2 != 0)
        throw std::domain_error("exact_ring: ring size must be even, 4..14");
    if (!(t >= 0.0 && t <= ring / 8.0))
        throw std::domain_error("exact_ring: need 0 <= t <= ring/8");
}

}  // namespace

std::vector<double> exact_ring_flux_distribution(double p, double t,
                                                 int ring) {
    check_ring_args(p, t, ring);
    const double q = 1.0 - p;
    const std::size_t nconf = std::size_t{1} << ring;
    const int fmax = ring;            // current truncated at +-ring
    const int nflux = 2 * fmax + 1;   // offsets -fmax .. fmax
    const std::size_t dim = nconf * static_cast<std::size_t>(nflux);

    auto at = [&](int f, std::uint32_t s) {
        return static_cast<std::size_t>(f + fmax) * nconf + s;
    };

    // Alternating start, zero accumulated current.
    std::vector<double> v(dim, 0.0), w(dim), acc(dim, 0.0);
    std::uint32_t s0 = 0;
    for (int i = 0; i < ring; i += 2) s0 |= std::uint32_t{1} << i;
    v[at(0, s0)] = 1.0;

    // Uniformization: exp(Gt) = e^{-Lt} sum_k (Lt)^k/k! P^k with
    // P = I + G/L.  Exit rates are at most ring * max(p, q), and the
    // coefficients sum to 1, so the truncation error is the leftover tail.
    const double big = ring * std::max(p, q);
    const double a = big * t;
    double coeff = std::exp(-a);  // a <= 14 * 7/4, no underflow
    double tail = 1.0 - coeff;
    for (std::size_t i = 0; i < dim; ++i) acc[i] += coeff * v[i];

    const int kcap = 2048;
    for (int k = 1; k <= kcap && tail > 1e-14; ++k) {
        std::fill(w.begin(), w.end(), 0.0);
        for (int f = -fmax; f <= fmax; ++f) {
            for (std::uint32_t s = 0; s < nconf; ++s) {
                const double mass = v[at(f, s)];
                if (mass == 0.0) continue;
                double exit = 0.0;
                for (int b = 0; b < ring; ++b) {
                    const int bn = (b + 1) % ring;
                    const bool lo = (s >> b) & 1u;
                    const bool hi = (s >> bn) & 1u;
                    if (lo == hi) continue;
                    const double rate = lo ? p : q;  // lo: jump right
                    exit += rate;
                    const std::uint32_t s2 =
                        s ^ (std::uint32_t{1} << b) ^ (std::uint32_t{1} << bn);
                    int f2 = f;
                    if (b == 0) f2 += lo ? -1 : +1;  // marked bond (0, 1)
                    if (f2 > fmax) f2 = fmax;
                    if (f2 < -fmax) f2 = -fmax;
                    w[at(f2, s2)] += (rate / big) * mass;
                }
                w[at(f, s)] += (1.0 - exit / big) * mass;
            }
        }
        std::swap(v, w);
        coeff *= a / k;
        tail -= coeff;
        for (std::size_t i = 0; i < dim; ++i) acc[i] += coeff * v[i];
    }
    if (tail > 1e-12)
        throw std::runtime_error("exact_ring: uniformization did not settle");

    std::vector<double> marg(static_cast<std::size_t>(nflux), 0.0);
    for (int f = -fmax; f <= fmax; ++f) {
        double s = 0.0;
        for (std::uint32_t c = 0; c < nconf; ++c) s += acc[at(f, c)];
        marg[static_cast<std::size_t>(f + fmax)] = s;
    }
    return marg;
}

double exact_ring_oracle(double p, double t, int ring, const Observable& obs) {
    const std::vector<double> marg = exact_ring_flux_distribution(p, t, ring);
    const double tau = p / (1.0 - p);
    const int fmax = ring;

    if (obs.kind == Observable::Kind::tau_pow_m_N)
        throw std::domain_error("exact_ring: N_x has no ring analogue");
    if (obs.m < 0) throw std::domain_error("exact_ring: moment order m < 0");

    double total = 0.0;
    if (obs.kind == Observable::Kind::tau_pow_m_halfheight) {
        for (int f = -fmax; f <= fmax; ++f) {
            const double pr = marg[static_cast<std::size_t>(f + fmax)];
            if (pr <= 0.0) continue;  // keeps tau = 0 with f < 0 out
            total += pr * pow_int(tau, static_cast<long long>(obs.m) * f);
        }
        return total;
    }

    // exp_tau_gen: needs tau in (0,1) for the q-exponential context.
    qcalc::QContext ctx(tau, 1e-12, 1e-12, 512);
    if (!(std::abs(obs.zeta) < std::pow(tau, 0.25)))
        throw std::domain_error("exact_ring: exp_tau_gen needs |zeta| < tau^{1/4}");
    for (int f = -fmax; f <= fmax; ++f) {
        const double pr = marg[static_cast<std::size_t>(f + fmax)];
        if (pr <= 0.0) continue;
        const cplx arg = obs.zeta * pow_int(tau, f);
        total += pr * qcalc::qexp(arg, tau, std::pow(tau, 0.25), ctx).real();
    }
    return total;
}

}  // namespace asepsim
