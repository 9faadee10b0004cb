#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "latmax/errors.hpp"
#include "latmax/rng.hpp"

namespace latmax {

using cplx = std::complex<double>;

// A finite sampled path (a_t : t in Z), Z a strictly increasing set of reals.
struct ScalarPath {
    std::vector<double> times;
    std::vector<cplx> values;
};

inline void validate(const ScalarPath& path) {
    if (path.times.empty()) throw std::invalid_argument("path must hold at least one sample");
    if (path.times.size() != path.values.size())
        throw std::invalid_argument("path times and values must have equal length");
    for (std::size_t i = 1; i < path.times.size(); ++i)
        if (!(path.times[i - 1] < path.times[i]))
            throw std::invalid_argument("path times must be strictly increasing");
}

inline ScalarPath integer_path(const std::vector<double>& values, double t0 = 1.0) {
    ScalarPath p;
    p.times.resize(values.size());
    p.values.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        p.times[i] = t0 + static_cast<double>(i);
        p.values[i] = values[i];
    }
    return p;
}

struct VariationResult {
    double r = 1.0;
    double value = 0.0;
    // Maximizing increasing subsequence (indices into the path). Never empty;
    // a single index means the optimum is the empty increment sum.
    std::vector<std::size_t> argmax_subsequence;
};

// r-variation seminorm: sup over increasing subsequences of
// (sum |a_{t_{j+1}} - a_{t_j}|^r)^{1/r}, computed exactly by an O(n^2) DP.
// Ties pick the earliest index so the subsequence is deterministic.
inline VariationResult v_r(const ScalarPath& path, double r) {
    validate(path);
    if (!(r >= 1.0)) throw std::domain_error("variation exponent must satisfy r >= 1");
    const std::size_t n = path.times.size();
    std::vector<double> best(n, 0.0);
    std::vector<std::size_t> pred(n, n); // n = chain start sentinel
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double cand = best[i] + std::pow(std::abs(path.values[j] - path.values[i]), r);
            if (cand > best[j]) {
                best[j] = cand;
                pred[j] = i;
            }
        }
    }
    std::size_t arg = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (best[j] > best[arg]) arg = j;

    VariationResult out;
    out.r = r;
    out.value = best[arg] > 0.0 ? std::pow(best[arg], 1.0 / r) : 0.0;
    for (std::size_t j = arg; j != n; j = pred[j]) out.argmax_subsequence.push_back(j);
    std::reverse(out.argmax_subsequence.begin(), out.argmax_subsequence.end());
    return out;
}

// Re-evaluates the increment sum along a subsequence; used by the
// VariationResult invariant (must reproduce value^r).
inline double increment_sum(const ScalarPath& path, const std::vector<std::size_t>& subsequence,
                            double r) {
    double sum = 0.0;
    for (std::size_t j = 1; j < subsequence.size(); ++j)
        sum += std::pow(std::abs(path.values[subsequence[j]] - path.values[subsequence[j - 1]]), r);
    return sum;
}

// Exhaustive oracle over all 2^n increasing subsequences.
inline double v_r_bruteforce(const ScalarPath& path, double r) {
    validate(path);
    if (!(r >= 1.0)) throw std::domain_error("variation exponent must satisfy r >= 1");
    const std::size_t n = path.times.size();
    if (n > 18) throw capacity_error("brute-force variation is limited to 18 samples");
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double sum = 0.0;
        std::size_t prev = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            if (prev != n) sum += std::pow(std::abs(path.values[j] - path.values[prev]), r);
            prev = j;
        }
        best = std::max(best, sum);
    }
    return best > 0.0 ? std::pow(best, 1.0 / r) : 0.0;
}

// sup over pairs of |a_s - a_t|; the r -> infinity limit of v_r.
inline double v_inf(const ScalarPath& path) {
    validate(path);
    double best = 0.0;
    for (std::size_t j = 0; j < path.values.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            best = std::max(best, std::abs(path.values[j] - path.values[i]));
    return best;
}

namespace detail {

// t = 2^e exactly, for integer e.
inline bool is_dyadic_power(double t) {
    if (!(t > 0.0)) return false;
    int e = 0;
    return std::frexp(t, &e) == 0.5;
}

// Index n of the block [2^n, 2^{n+1}) containing t > 0; exact via frexp.
inline int dyadic_block_index(double t) {
    int e = 0;
    std::frexp(t, &e);
    return e - 1;
}

inline ScalarPath subpath(const ScalarPath& path, const std::vector<std::size_t>& keep) {
    ScalarPath out;
    for (std::size_t i : keep) {
        out.times.push_back(path.times[i]);
        out.values.push_back(path.values[i]);
    }
    return out;
}

} // namespace detail

// Reference constant for the long/short decomposition check. Valid for paths
// that include every dyadic time spanning their range (integer paths do);
// sparser paths can exceed any constant because the glue points are missing.
inline constexpr double kLongShortReferenceConstant = 3.0;

struct LongShortSplit {
    double full = 0.0;
    double long_variation = 0.0;  // over times that are exact powers of two
    double short_variation = 0.0; // l^r sum of per-block variations
    double empirical_constant = 0.0;
    bool bound_ok = true;
};

// Splits V_r into the long part (dyadic times) and short part (within dyadic
// blocks [2^n, 2^{n+1})). Subtracting a(2^n) inside a block does not change a
// seminorm, so the block variation is taken directly.
inline LongShortSplit long_short_split(const ScalarPath& path, double r) {
    validate(path);
    if (!(r >= 1.0)) throw std::domain_error("variation exponent must satisfy r >= 1");
    if (!(path.times.front() > 0.0))
        throw std::invalid_argument("long/short split needs strictly positive times");

    LongShortSplit out;
    out.full = v_r(path, r).value;

    std::vector<std::size_t> dyadic;
    std::map<int, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        if (detail::is_dyadic_power(path.times[i])) dyadic.push_back(i);
        blocks[detail::dyadic_block_index(path.times[i])].push_back(i);
    }
    if (dyadic.size() >= 2) out.long_variation = v_r(detail::subpath(path, dyadic), r).value;
    double short_r = 0.0;
    for (const auto& [n, idx] : blocks) {
        if (idx.size() < 2) continue;
        short_r += std::pow(v_r(detail::subpath(path, idx), r).value, r);
    }
    out.short_variation = short_r > 0.0 ? std::pow(short_r, 1.0 / r) : 0.0;

    const double rhs = out.long_variation + out.short_variation;
    if (out.full > 0.0)
        out.empirical_constant =
            rhs > 0.0 ? out.full / rhs : std::numeric_limits<double>::infinity();
    out.bound_ok = out.full <= kLongShortReferenceConstant * rhs + 1e-12;
    return out;
}

// Right side of the dyadic-block variation bound on [2^n, 2^{n+1}]:
// 2^{1-1/r} sum_{l=0}^{n} (sum_{k<2^l} |a(2^n+2^{n-l}(k+1)) - a(2^n+2^{n-l}k)|^r)^{1/r}.
inline double rademacher_menshov_rhs(const ScalarPath& path, double r) {
    validate(path);
    if (!(r >= 1.0)) throw std::domain_error("variation exponent must satisfy r >= 1");
    const std::size_t len = path.times.size();
    if (len < 2 || (len - 1) & (len - 2))
        throw std::invalid_argument("block must sample 2^n + 1 consecutive integers");
    const std::size_t width = len - 1; // 2^n
    int n = 0;
    while ((std::size_t{1} << n) < width) ++n;
    if (path.times.front() != static_cast<double>(width))
        throw std::invalid_argument("block must start at time 2^n");
    for (std::size_t i = 0; i < len; ++i)
        if (path.times[i] != static_cast<double>(width + i))
            throw std::invalid_argument("block times must be consecutive integers");

    double total = 0.0;
    for (int l = 0; l <= n; ++l) {
        const std::size_t stride = width >> l;
        double level = 0.0;
        for (std::size_t k = 0; k < (std::size_t{1} << l); ++k)
            level += std::pow(std::abs(path.values[(k + 1) * stride] - path.values[k * stride]), r);
        total += level > 0.0 ? std::pow(level, 1.0 / r) : 0.0;
    }
    return std::pow(2.0, 1.0 - 1.0 / r) * total;
}

// ---- batch property runs (shared by the CLI and the acceptance suite) ----

struct PropertyRunReport {
    std::string property;
    int trials = 0;
    int violations = 0;
    double worst_slack = std::numeric_limits<double>::infinity(); // min of RHS - LHS
    bool pass() const { return violations == 0; }
};

namespace detail {

inline ScalarPath random_path(Rng& rng, std::size_t min_len, std::size_t max_len) {
    const std::size_t n = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(min_len), static_cast<std::int64_t>(max_len)));
    ScalarPath p;
    double t = rng.uniform(0.1, 2.0);
    for (std::size_t i = 0; i < n; ++i) {
        p.times.push_back(t);
        t += rng.uniform(0.05, 3.0);
        p.values.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    return p;
}

inline void record(PropertyRunReport& rep, double lhs, double rhs, double tol) {
    ++rep.trials;
    const double slack = rhs - lhs;
    rep.worst_slack = std::min(rep.worst_slack, slack);
    if (slack < -tol) ++rep.violations;
}

} // namespace detail

// Checks the five V_r calculus facts on random complex paths:
// monotonicity in r, set monotonicity, two-piece splitting, the sup bound,
// and the l^r bound. Tolerance absorbs pow() roundoff only.
inline std::vector<PropertyRunReport> check_variation_calculus(int trials, std::uint64_t seed) {
    const double tol = 1e-12;
    std::vector<PropertyRunReport> reports(5);
    reports[0].property = "monotone_in_r";
    reports[1].property = "monotone_in_time_set";
    reports[2].property = "two_piece_split";
    reports[3].property = "sup_bound";
    reports[4].property = "lr_bound";
    Rng rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const ScalarPath path = detail::random_path(rng, 2, 12);
        const std::size_t n = path.times.size();
        const double r1 = rng.uniform(1.0, 2.5);
        const double r2 = r1 + rng.uniform(0.1, 2.0);
        detail::record(reports[0], v_r(path, r2).value, v_r(path, r1).value, tol);

        const double r = rng.uniform(1.0, 3.0);
        const double full = v_r(path, r).value;

        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i)
            if (rng.uniform() < 0.6) keep.push_back(i);
        if (keep.empty()) keep.push_back(0);
        detail::record(reports[1], v_r(detail::subpath(path, keep), r).value, full, tol);

        double sup = 0.0;
        for (const cplx& v : path.values) sup = std::max(sup, std::abs(v));
        const std::size_t cut =
            static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(n - 1)));
        std::vector<std::size_t> head, tail;
        for (std::size_t i = 0; i < cut; ++i) head.push_back(i);
        for (std::size_t i = cut; i < n; ++i) tail.push_back(i);
        const double split_rhs = v_r(detail::subpath(path, head), r).value +
                                 v_r(detail::subpath(path, tail), r).value + 2.0 * sup;
        detail::record(reports[2], full, split_rhs, tol);

        const std::size_t t0 =
            static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n - 1)));
        detail::record(reports[3], sup, std::abs(path.values[t0]) + 2.0 * full, tol);

        double lr = 0.0;
        for (const cplx& v : path.values) lr += std::pow(std::abs(v), r);
        detail::record(reports[4], full, 2.0 * std::pow(lr, 1.0 / r), tol);
    }
    return reports;
}

struct DpOracleReport {
    int trials = 0;
    double max_abs_diff = 0.0;
    int invariant_violations = 0; // argmax subsequence failing to reproduce value^r
    bool pass(double tol = 1e-12) const { return max_abs_diff <= tol && invariant_violations == 0; }
};

inline DpOracleReport check_dp_against_bruteforce(int trials, std::uint64_t seed,
                                                  std::size_t max_len = 12) {
    DpOracleReport rep;
    rep.trials = trials;
    Rng rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const ScalarPath path = detail::random_path(rng, 2, max_len);
        const double r = rng.uniform(1.0, 4.0);
        const VariationResult res = v_r(path, r);
        rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(res.value - v_r_bruteforce(path, r)));
        const double sum = increment_sum(path, res.argmax_subsequence, r);
        if (std::abs(sum - std::pow(res.value, r)) > 1e-12 * (1.0 + sum))
            ++rep.invariant_violations;
    }
    return rep;
}

// Random dyadic blocks a on [2^n, 2^{n+1}], checking V_r(block) <= RHS.
inline PropertyRunReport check_rademacher_menshov(int trials, std::uint64_t seed, int max_n = 6) {
    PropertyRunReport rep;
    rep.property = "dyadic_block_variation_bound";
    Rng rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(0, max_n));
        const double r = static_cast<double>(rng.uniform_int(1, 3));
        std::vector<double> values;
        for (std::size_t i = 0; i <= (std::size_t{1} << n); ++i)
            values.push_back(rng.uniform(-1.0, 1.0));
        const ScalarPath block = integer_path(values, static_cast<double>(std::size_t{1} << n));
        detail::record(rep, v_r(block, r).value, rademacher_menshov_rhs(block, r), 1e-12);
    }
    return rep;
}

} // namespace latmax
