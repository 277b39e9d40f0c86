#pragma once

#include "faultpaths.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace adft {

struct degenerate_state : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct out_of_range_crossing : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// single-qubit pure state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
struct bloch {
    double theta = 0.0, phi = 0.0;
};

inline cvec bloch_ket(const bloch& b) {
    cvec v(2);
    v << std::cos(b.theta / 2), std::polar(std::sin(b.theta / 2), b.phi);
    return v;
}

// IF = p s^4 + c^2 s^2 (2 - 2 sqrt(1-p) - p), c = cos(theta/2), s = sin(theta/2)
inline double unencoded_infidelity_closed(double p, const bloch& b) {
    const double c2 = std::pow(std::cos(b.theta / 2), 2), s2 = std::pow(std::sin(b.theta / 2), 2);
    return p * s2 * s2 + c2 * s2 * (2 - 2 * std::sqrt(1 - p) - p);
}

// one AD application through the engine
inline double unencoded_infidelity(double p, const bloch& b) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("unencoded_infidelity: p outside [0,1]");
    const cvec v = bloch_ket(b);
    operator_state rho = pure_state({0}, v);
    apply_kraus(rho, ad_kraus(p), {0});
    return std::max(0.0, 1.0 - (v.adjoint() * rho.matrix * v)(0, 0).real());
}

struct threshold_query {
    double C = 0.0;
    double B = 0.0;
    bloch state;
};

// root of C p^2 + B p^3 = IF_p(state) on [1e-12, 1e-1]
inline double solve_bound(const threshold_query& q) {
    if (!(q.C > 0.0) || !(q.B > 0.0)) throw std::invalid_argument("solve_bound: C and B must be positive");
    auto f = [&](double p) { return q.C * p * p + q.B * p * p * p - unencoded_infidelity_closed(p, q.state); };
    double lo = 1e-12, hi = 1e-1;
    if (unencoded_infidelity_closed(1e-3, q.state) < 1e-15)
        throw degenerate_state("solve_bound: state has no unencoded infidelity");
    if (f(lo) >= 0.0 || f(hi) <= 0.0) throw out_of_range_crossing("solve_bound: no root in [1e-12, 1e-1]");
    // bisection in log p
    while (hi / lo - 1.0 > 1e-9) {
        const double mid = std::sqrt(lo * hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
}

// Haar-random pure state from a normalised complex Gaussian pair
template <class Rng>
bloch haar_state(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const cplx a(n(rng), n(rng)), b(n(rng), n(rng));
    const double r = std::sqrt(std::norm(a) + std::norm(b));
    const double theta = 2.0 * std::acos(std::min(1.0, std::abs(a) / r));
    const double phi = std::arg(b) - std::arg(a);
    return {theta, phi};
}

struct mean_stderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    long n = 0;
};

template <class F>
mean_stderr haar_average(F&& f, long n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("haar_average: n must be >= 1");
    std::mt19937_64 rng(seed);
    double s = 0.0, s2 = 0.0;
    for (long i = 0; i < n; ++i) {
        const double v = f(haar_state(rng));
        s += v;
        s2 += v * v;
    }
    mean_stderr r;
    r.n = n;
    r.mean = s / double(n);
    const double var = n > 1 ? std::max(0.0, (s2 - s * s / double(n)) / double(n - 1)) : 0.0;
    r.stderr_ = std::sqrt(var / double(n));
    return r;
}

// Haar mean of solve_bound; states without a root in range are skipped
inline mean_stderr haar_bound(double C, double B, long n, std::uint64_t seed, long* skipped = nullptr) {
    std::mt19937_64 rng(seed);
    double s = 0.0, s2 = 0.0;
    long used = 0, skip = 0;
    for (long i = 0; i < n; ++i) {
        const bloch b = haar_state(rng);
        try {
            const double v = solve_bound({C, B, b});
            s += v;
            s2 += v * v;
            ++used;
        } catch (const std::runtime_error&) {
            ++skip;
        }
    }
    if (skipped) *skipped = skip;
    mean_stderr r;
    r.n = used;
    r.mean = used ? s / double(used) : 0.0;
    const double var = used > 1 ? std::max(0.0, (s2 - s * s / double(used)) / double(used - 1)) : 0.0;
    r.stderr_ = std::sqrt(var / double(std::max(1L, used)));
    return r;
}

// Mean of solve_bound over a midpoint grid in theta, uniform in the polar
// angle rather than in cos(theta). Not the Haar measure; reported as a
// diagnostic next to haar_bound.
inline double uniform_theta_bound(double C, double B, int n = 20000) {
    double s = 0.0;
    int used = 0;
    for (int i = 0; i < n; ++i) {
        try {
            s += solve_bound({C, B, {M_PI * (i + 0.5) / n, 0.0}});
            ++used;
        } catch (const std::runtime_error&) {
        }
    }
    return used ? s / used : 0.0;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo) || n < 2) throw std::invalid_argument("log_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
    return g;
}

// noise hook applying the full AD channel at every location
template <class State>
noise_hook<State> full_ad_hook(double p) {
    return [p](const location& l, State& st) { apply_fault(st, l.qubit, fault_kind::full_ad, p); };
}

// Decoded logical process of the noisy memory gadget: the Choi operator
// (reference qubit first) of input -> ideal_decode(output), trace lost to
// leakage included as failure.
inline cmat memory_process(double p, const schedule_options& so = {}) {
    const auto c = extended_circuit<dense_state>(extended_kind::memory, so);
    auto [brs, out] = execute(c, full_ad_hook<dense_state>(p), true);
    cmat j = cmat::Zero(4, 4);
    for (auto& b : brs) {
        auto r = ideal_decode_block(b.st, out[0], out_base);
        if (r.has_logical) j += r.logical.to_dense({ref_base, out_base});
    }
    return j;
}

// E(rho) = 2 sum_ab rho_ab J_ab, J_ab the output block at reference indices (a, b)
inline cmat apply_process(const cmat& j, const cmat& rho) {
    cmat out = cmat::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out += 2.0 * rho(a, b) * j.block(2 * a, 2 * b, 2, 2);
    return out;
}

inline double encoded_infidelity(const cmat& j, const bloch& b) {
    const cvec v = bloch_ket(b);
    const cmat out = apply_process(j, v * v.adjoint());
    return std::max(0.0, 1.0 - (v.adjoint() * out * v)(0, 0).real());
}

// the same quantity by running the gadget on the encoded state itself
inline double encoded_infidelity_direct(double p, const bloch& b, const schedule_options& so = {}) {
    const auto base = extended_circuit<dense_state>(extended_kind::memory, so);
    test_circuit<dense_state> c = base;
    c.n_in = 0;
    const cvec v = bloch_ket(b);
    c.body = [&](runner<dense_state>& R, const std::vector<block>&) {
        block d{R.fresh(), R.fresh(), R.fresh(), R.fresh()};
        R.br[0].st.st = pure_state(vec(d), encode_ket({v(0), v(1)}));
        return base.body(R, {d});
    };
    auto [brs, out] = execute(c, full_ad_hook<dense_state>(p), true);
    double fid = 0.0;
    for (auto& br : brs) {
        auto r = ideal_decode_block(br.st, out[0], out_base);
        if (r.has_logical) fid += (v.adjoint() * r.logical.to_dense({out_base}) * v)(0, 0).real();
    }
    return 1.0 - fid;
}

struct crossing {
    double p_th = 0.0;
    std::vector<double> encoded, unencoded;
};

// first grid interval where the encoded curve rises to the unencoded one,
// interpolated log-linearly in p
inline double find_crossing(const std::vector<double>& grid, const std::vector<double>& enc,
                            const std::vector<double>& unenc) {
    const std::size_t n = grid.size();
    auto d = [&](std::size_t i) { return std::log(std::max(enc[i], 1e-300)) - std::log(std::max(unenc[i], 1e-300)); };
    if (enc[0] >= unenc[0]) {
        std::ostringstream m;
        m << "no crossing: encoded " << enc[0] << " >= unencoded " << unenc[0] << " at p = " << grid[0];
        throw out_of_range_crossing(m.str());
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (enc[i] < unenc[i]) continue;
        const double d0 = d(i - 1), d1 = d(i);
        const double t = d0 / (d0 - d1);
        return std::exp(std::log(grid[i - 1]) + t * (std::log(grid[i]) - std::log(grid[i - 1])));
    }
    std::ostringstream m;
    m << "no crossing: encoded " << enc[n - 1] << " < unencoded " << unenc[n - 1] << " at p = " << grid[n - 1];
    throw out_of_range_crossing(m.str());
}

// memory processes on a grid, computed once and shared by all states
struct process_table {
    std::vector<double> grid;
    std::vector<cmat> j;
};

inline process_table memory_processes(const std::vector<double>& grid, const schedule_options& so = {}) {
    if (grid.size() < 2) throw std::invalid_argument("memory_processes: grid too small");
    process_table t;
    t.grid = grid;
    t.j.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { t.j[i] = memory_process(grid[i], so); });
    return t;
}

inline bool degenerate(const bloch& b) { return unencoded_infidelity_closed(1e-3, b) < 1e-12; }

inline crossing simulate_memory_threshold(const bloch& b, const process_table& t) {
    if (degenerate(b)) throw degenerate_state("simulate_memory_threshold: degenerate state");
    crossing c;
    for (std::size_t i = 0; i < t.grid.size(); ++i) {
        c.encoded.push_back(encoded_infidelity(t.j[i], b));
        c.unencoded.push_back(unencoded_infidelity_closed(t.grid[i], b));
    }
    c.p_th = find_crossing(t.grid, c.encoded, c.unencoded);
    return c;
}

struct state_sample {
    bloch state;
    double p_th = 0.0;
    std::string status;  // ok, degenerate, out_of_range
};

struct histogram {
    std::vector<double> edges;
    std::vector<long> counts;
    long n_samples = 0;
    long n_degenerate = 0;
    long n_out_of_range = 0;
    double mean = 0.0;
    double median = 0.0;
    std::vector<state_sample> samples;
};

inline histogram threshold_histogram(long n_states, const process_table& t, std::uint64_t seed, int bins = 40) {
    if (n_states < 1) throw std::invalid_argument("threshold_histogram: n_states must be positive");
    std::mt19937_64 rng(seed);
    histogram h;
    std::vector<double> vals;
    for (long i = 0; i < n_states; ++i) {
        state_sample s;
        s.state = haar_state(rng);
        try {
            s.p_th = simulate_memory_threshold(s.state, t).p_th;
            s.status = "ok";
            vals.push_back(s.p_th);
        } catch (const degenerate_state&) {
            s.status = "degenerate";
            ++h.n_degenerate;
        } catch (const out_of_range_crossing&) {
            s.status = "out_of_range";
            ++h.n_out_of_range;
        }
        h.samples.push_back(s);
    }
    h.n_samples = long(vals.size());
    h.edges = log_grid(t.grid.front(), t.grid.back(), bins + 1);
    h.counts.assign(bins, 0);
    for (double v : vals) {
        auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
        const long k = std::clamp<long>(long(it - h.edges.begin()) - 1, 0, bins - 1);
        h.counts[k]++;
    }
    if (!vals.empty()) {
        double s = 0.0;
        for (double v : vals) s += v;
        h.mean = s / double(vals.size());
        std::vector<double> sorted = vals;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t m = sorted.size();
        h.median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    }
    return h;
}

inline std::string fmt(double v) {
    std::ostringstream o;
    o.precision(17);
    o << std::scientific << v;
    return o.str();
}

inline constexpr const char* code_version = "adft 1.0.0";

inline std::string histogram_csv(const histogram& h, std::uint64_t seed, const std::vector<double>& grid) {
    std::ostringstream o;
    o << "# seed=" << seed << " N=" << h.samples.size() << " grid=" << fmt(grid.front()) << "," << fmt(grid.back())
      << "," << grid.size() << " version=" << code_version << "\n";
    o << "bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        o << fmt(h.edges[i]) << "," << fmt(h.edges[i + 1]) << "," << h.counts[i] << "\n";
    return o.str();
}

inline std::string samples_csv(const histogram& h, std::uint64_t seed, const std::vector<double>& grid) {
    std::ostringstream o;
    o << "# seed=" << seed << " N=" << h.samples.size() << " grid=" << fmt(grid.front()) << "," << fmt(grid.back())
      << "," << grid.size() << " version=" << code_version << "\n";
    o << "theta,phi,p_th,status\n";
    for (auto& s : h.samples)
        o << fmt(s.state.theta) << "," << fmt(s.state.phi) << "," << (s.status == "ok" ? fmt(s.p_th) : "nan") << ","
          << s.status << "\n";
    return o.str();
}

// encoded and unencoded curves of one state, for the crossing plot
inline std::string crossing_csv(const bloch& b, const process_table& t) {
    std::ostringstream o;
    o << "# theta=" << fmt(b.theta) << " phi=" << fmt(b.phi) << " version=" << code_version << "\n";
    double pth = std::nan("");
    crossing c;
    try {
        c = simulate_memory_threshold(b, t);
        pth = c.p_th;
    } catch (const std::runtime_error&) {
        for (std::size_t i = 0; i < t.grid.size(); ++i) {
            c.encoded.push_back(encoded_infidelity(t.j[i], b));
            c.unencoded.push_back(unencoded_infidelity_closed(t.grid[i], b));
        }
    }
    o << "p,encoded,unencoded,p_th\n";
    for (std::size_t i = 0; i < t.grid.size(); ++i)
        o << fmt(t.grid[i]) << "," << fmt(c.encoded[i]) << "," << fmt(c.unencoded[i]) << "," << fmt(pth) << "\n";
    return o.str();
}

} // namespace adft
