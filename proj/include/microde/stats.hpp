#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace microde {

/// Outcome of a two-sample comparison. '+' means the reference side (the
/// first sample) has significantly lower errors, '-' the opposite, '='
/// no significance at the configured level.
enum class Sign { Plus, Equal, Minus };

inline char to_char(Sign s) {
    switch (s) {
        case Sign::Plus:  return '+';
        case Sign::Equal: return '=';
        case Sign::Minus: return '-';
    }
    return '?';
}

struct ComparisonVerdict {
    Sign sign = Sign::Equal;
    double p_value = 1.0;
};

namespace detail {

/// Midranks kept as doubled integers (a group spanning ranks s+1..s+t
/// gets doubled midrank 2s+t+1), so every rank statistic is exact
/// integer arithmetic: tie handling, the symmetry of swapping samples,
/// and the exact-path p-values all come out bit-identical.
struct RankTable {
    std::vector<std::int64_t> doubled;   // per pooled observation, sorted order
    std::vector<bool> from_a;            // aligned with doubled
    std::int64_t w2_a = 0;               // doubled rank sum of sample a
    std::int64_t tie_term = 0;           // sum of t^3 - t over tie groups
    std::size_t n_a = 0;
    std::size_t n_b = 0;
};

inline RankTable rank_table(std::span<const double> a, std::span<const double> b) {
    struct Obs {
        double value;
        bool from_a;
    };
    std::vector<Obs> pooled;
    pooled.reserve(a.size() + b.size());
    for (double v : a) pooled.push_back({v, true});
    for (double v : b) pooled.push_back({v, false});
    std::sort(pooled.begin(), pooled.end(),
              [](const Obs& x, const Obs& y) { return x.value < y.value; });

    RankTable table;
    table.n_a = a.size();
    table.n_b = b.size();
    const std::size_t n = pooled.size();
    table.doubled.resize(n);
    table.from_a.resize(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && pooled[j].value == pooled[i].value) ++j;
        const std::int64_t dm = static_cast<std::int64_t>(i + j + 1); // 2s + t + 1
        const std::int64_t t = static_cast<std::int64_t>(j - i);
        table.tie_term += t * t * t - t;
        for (std::size_t k = i; k < j; ++k) {
            table.doubled[k] = dm;
            table.from_a[k] = pooled[k].from_a;
            if (pooled[k].from_a) table.w2_a += dm;
        }
        i = j;
    }
    return table;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

/// Exact two-sided p: the share of the C(n+m, n) equally likely rank
/// assignments whose rank sum is at least as far from its mean as the
/// observed one, conditioning on the observed tie pattern.
inline double exact_p(const RankTable& table) {
    const std::size_t n_total = table.doubled.size();
    const std::size_t n_a = table.n_a;
    const std::int64_t mu2 = static_cast<std::int64_t>(n_a) * static_cast<std::int64_t>(n_total + 1);
    const std::int64_t observed = std::abs(table.w2_a - mu2);

    std::uint64_t hits = 0;
    const std::uint32_t limit = 1u << n_total;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (std::popcount(mask) != static_cast<int>(n_a)) continue;
        std::int64_t sum = 0;
        std::uint32_t bits = mask;
        while (bits) {
            sum += table.doubled[std::countr_zero(bits)];
            bits &= bits - 1;
        }
        if (std::abs(sum - mu2) >= observed) ++hits;
    }
    return static_cast<double>(hits) /
           static_cast<double>(binomial(n_total, n_a));
}

/// Normal approximation with tie-corrected variance and a continuity
/// correction of 1/2.
inline double normal_p(const RankTable& table) {
    const double n = static_cast<double>(table.n_a);
    const double m = static_cast<double>(table.n_b);
    const double total = n + m;
    const double w = static_cast<double>(table.w2_a) / 2.0;
    const double mu = n * (total + 1.0) / 2.0;
    const double variance =
        n * m / 12.0 *
        ((total + 1.0) - static_cast<double>(table.tie_term) / (total * (total - 1.0)));
    if (variance <= 0.0) return 1.0; // every observation tied
    const double z = std::max(0.0, std::abs(w - mu) - 0.5) / std::sqrt(variance);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

} // namespace detail

inline constexpr std::size_t wilcoxon_exact_limit = 16;

/// Exact-path p-value (enumeration); intended for small pooled sizes.
inline double wilcoxon_exact_p(std::span<const double> a, std::span<const double> b) {
    if (a.size() + b.size() > 25)
        throw std::domain_error("wilcoxon_exact_p: pooled sample too large to enumerate");
    return detail::exact_p(detail::rank_table(a, b));
}

/// Approximate-path p-value (tie-corrected normal).
inline double wilcoxon_normal_p(std::span<const double> a, std::span<const double> b) {
    return detail::normal_p(detail::rank_table(a, b));
}

/// Two-sided rank-sum test. Exact enumeration when the pooled size is at
/// most wilcoxon_exact_limit, the normal approximation otherwise. The
/// sign is assigned from the rank sums when p <= alpha: '+' when sample
/// a sits on lower ranks (lower errors).
inline ComparisonVerdict wilcoxon_rank_sum(std::span<const double> a,
                                           std::span<const double> b, double alpha) {
    if (a.size() < 2 || b.size() < 2)
        throw std::domain_error("wilcoxon_rank_sum: each sample needs at least 2 observations");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("wilcoxon_rank_sum: alpha must be in (0, 1)");

    const auto table = detail::rank_table(a, b);
    const double p = (a.size() + b.size() <= wilcoxon_exact_limit) ? detail::exact_p(table)
                                                                   : detail::normal_p(table);
    ComparisonVerdict verdict;
    verdict.p_value = p;
    if (p <= alpha) {
        const std::int64_t mu2 =
            static_cast<std::int64_t>(table.n_a) * static_cast<std::int64_t>(a.size() + b.size() + 1);
        if (table.w2_a < mu2)
            verdict.sign = Sign::Plus;
        else if (table.w2_a > mu2)
            verdict.sign = Sign::Minus;
        else
            verdict.sign = Sign::Equal;
    }
    return verdict;
}

struct RunSummary {
    double mean_error = 0.0;
    double std_error = 0.0; // population convention (divide by n)
    std::size_t n_runs = 0;
};

inline RunSummary summarize(std::span<const double> errors) {
    if (errors.empty()) throw std::domain_error("summarize: empty sample");
    RunSummary s;
    s.n_runs = errors.size();
    for (double e : errors) s.mean_error += e;
    s.mean_error /= static_cast<double>(errors.size());
    double var = 0.0;
    for (double e : errors) var += (e - s.mean_error) * (e - s.mean_error);
    s.std_error = std::sqrt(var / static_cast<double>(errors.size()));
    return s;
}

/// "6.00e+02" style: lowercase scientific, 2 mantissa decimals.
inline std::string format_error(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", value);
    return buf;
}

/// Table cell style: "6.00e+02±1.48e+03".
inline std::string format_summary(const RunSummary& s) {
    return format_error(s.mean_error) + "±" + format_error(s.std_error);
}

struct VerdictTally {
    std::size_t plus = 0;
    std::size_t equal = 0;
    std::size_t minus = 0;
};

inline VerdictTally tally_verdicts(std::span<const ComparisonVerdict> verdicts) {
    VerdictTally tally;
    for (const auto& v : verdicts) {
        switch (v.sign) {
            case Sign::Plus:  ++tally.plus; break;
            case Sign::Equal: ++tally.equal; break;
            case Sign::Minus: ++tally.minus; break;
        }
    }
    return tally;
}

/// Sample median: middle value, or the mean of the two middle values.
inline double median(std::span<const double> values) {
    if (values.empty()) throw std::domain_error("median: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

} // namespace microde
