#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "microde/core.hpp"
#include "microde/errors.hpp"
#include "microde/rng.hpp"

namespace microde {

/// Function classes of the bundled suite.
enum class FunctionClass {
    Separable,
    LowModerateConditioning,
    HighConditioningUnimodal,
    MultimodalAdequateStructure,
    MultimodalWeakStructure,
};

inline std::string_view to_string(FunctionClass c) {
    switch (c) {
        case FunctionClass::Separable:                   return "separable";
        case FunctionClass::LowModerateConditioning:     return "low_moderate_conditioning";
        case FunctionClass::HighConditioningUnimodal:    return "high_conditioning_unimodal";
        case FunctionClass::MultimodalAdequateStructure: return "multimodal_adequate_structure";
        case FunctionClass::MultimodalWeakStructure:     return "multimodal_weak_structure";
    }
    return "?";
}

/// All bundled functions share the [-5, 5]^D box; the unshifted optimum
/// sits at the origin with value exactly 0.
inline constexpr double benchmark_box_lower = -5.0;
inline constexpr double benchmark_box_upper = 5.0;

struct BenchmarkSpec {
    std::string function_id;
    std::size_t dimension = 0;
    std::uint64_t shift_seed = 1;
};

struct BenchmarkInfo {
    std::string id;
    FunctionClass fclass;
    std::string summary;
    Objective base; // unshifted; minimum 0 at the origin
};

namespace bench {

// The base functions are written so that evaluating the exact origin
// yields exactly 0.0 in floating point, keeping the value-to-reach sharp.

inline double sphere(PositionView u) {
    double s = 0.0;
    for (double v : u) s += v * v;
    return s;
}

inline double rastrigin(PositionView u) {
    double s = 0.0;
    for (double v : u) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v) + 10.0;
    return s;
}

inline double rosenbrock(PositionView u) {
    // optimum moved to the origin via y = u + 1; degenerates to u^2 at D=1
    if (u.size() == 1) return u[0] * u[0];
    double s = 0.0;
    for (std::size_t d = 0; d + 1 < u.size(); ++d) {
        const double a = u[d + 1] + 1.0 - (u[d] + 1.0) * (u[d] + 1.0);
        s += 100.0 * a * a + u[d] * u[d];
    }
    return s;
}

inline double ellipsoid(PositionView u) {
    // condition number 1e6 across the diagonal
    const std::size_t n = u.size();
    if (n == 1) return u[0] * u[0];
    double s = 0.0;
    for (std::size_t d = 0; d < n; ++d)
        s += std::pow(10.0, 6.0 * static_cast<double>(d) / static_cast<double>(n - 1)) * u[d] * u[d];
    return s;
}

inline double diff_powers(PositionView u) {
    const std::size_t n = u.size();
    double s = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
        const double exponent =
            n == 1 ? 2.0 : 2.0 + 4.0 * static_cast<double>(d) / static_cast<double>(n - 1);
        s += std::pow(std::abs(u[d]), exponent);
    }
    return s;
}

inline double rastrigin_cond(PositionView u) {
    // diagonally conditioned variant (condition 10 in the quadratic part)
    const std::size_t n = u.size();
    double s = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
        const double lambda =
            n == 1 ? 1.0
                   : std::pow(10.0, 0.5 * static_cast<double>(d) / static_cast<double>(n - 1));
        const double z = lambda * u[d];
        s += z * z - 10.0 * std::cos(2.0 * std::numbers::pi * z) + 10.0;
    }
    return s;
}

inline double griewank(PositionView u) {
    double s = 0.0;
    double p = 1.0;
    for (std::size_t d = 0; d < u.size(); ++d) {
        s += u[d] * u[d];
        p *= std::cos(u[d] / std::sqrt(static_cast<double>(d + 1)));
    }
    return s / 4000.0 + (1.0 - p);
}

inline double ackley(PositionView u) {
    // grouped so both terms vanish exactly at the origin
    const double n = static_cast<double>(u.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : u) {
        sq += v * v;
        cs += std::cos(2.0 * std::numbers::pi * v);
    }
    return 20.0 * (1.0 - std::exp(-0.2 * std::sqrt(sq / n))) +
           (std::exp(1.0) - std::exp(cs / n));
}

inline double schwefel12(PositionView u) {
    // double-sum ridge: sum over d of (prefix sum up to d)^2
    double prefix = 0.0;
    double s = 0.0;
    for (double v : u) {
        prefix += v;
        s += prefix * prefix;
    }
    return s;
}

} // namespace bench

inline const std::vector<BenchmarkInfo>& benchmark_registry() {
    static const std::vector<BenchmarkInfo> registry = {
        {"sphere", FunctionClass::Separable, "sum of squares", bench::sphere},
        {"rastrigin", FunctionClass::Separable, "separable multimodal cosine grid", bench::rastrigin},
        {"rosenbrock", FunctionClass::LowModerateConditioning, "banana valley, optimum at origin",
         bench::rosenbrock},
        {"ellipsoid", FunctionClass::HighConditioningUnimodal, "axis-aligned quadratic, condition 1e6",
         bench::ellipsoid},
        {"diff_powers", FunctionClass::HighConditioningUnimodal, "sum of different powers",
         bench::diff_powers},
        {"rastrigin_cond", FunctionClass::MultimodalAdequateStructure,
         "diagonally conditioned rastrigin", bench::rastrigin_cond},
        {"griewank", FunctionClass::MultimodalAdequateStructure, "quadratic bowl with cosine ripple",
         bench::griewank},
        {"ackley", FunctionClass::MultimodalWeakStructure, "exponential well with cosine noise floor",
         bench::ackley},
        {"schwefel12", FunctionClass::MultimodalWeakStructure, "cumulative double-sum ridge",
         bench::schwefel12},
    };
    return registry;
}

inline const BenchmarkInfo& find_benchmark(std::string_view id) {
    for (const auto& info : benchmark_registry())
        if (info.id == id) return info;
    throw ConfigError("unknown benchmark function '" + std::string(id) + "'");
}

/// Deterministic optimum shift: uniform in the central 80% of the box,
/// derived from (function_id, dimension, shift_seed).
inline std::vector<double> benchmark_shift(std::string_view id, std::size_t dimension,
                                           std::uint64_t shift_seed) {
    std::uint64_t h = splitmix64(shift_seed);
    h = splitmix64(h ^ fnv1a64(id));
    h = splitmix64(h ^ static_cast<std::uint64_t>(dimension));
    RngStream rng(h);
    const double margin = 0.8;
    std::vector<double> shift(dimension);
    for (auto& s : shift)
        s = rng.uniform(margin * benchmark_box_lower, margin * benchmark_box_upper);
    return shift;
}

namespace detail {

inline Objective shifted_objective(Objective base, std::vector<double> shift) {
    return [base = std::move(base), shift = std::move(shift)](PositionView x) {
        thread_local std::vector<double> scratch; // fully rewritten every call
        scratch.resize(x.size());
        for (std::size_t d = 0; d < x.size(); ++d) scratch[d] = x[d] - shift[d];
        return base(scratch);
    };
}

} // namespace detail

/// Problem over [-5, 5]^D with the optimum moved to the shift point and
/// value-to-reach 0.
inline Problem make_problem(const BenchmarkSpec& spec) {
    if (spec.dimension == 0) throw ConfigError("make_problem: dimension must be at least 1");
    const BenchmarkInfo& info = find_benchmark(spec.function_id);
    auto shift = benchmark_shift(info.id, spec.dimension, spec.shift_seed);
    return Problem(info.id, spec.dimension,
                   SearchBounds::uniform_box(spec.dimension, benchmark_box_lower, benchmark_box_upper),
                   detail::shifted_objective(info.base, std::move(shift)), 0.0);
}

inline FunctionClass function_class(std::string_view id) { return find_benchmark(id).fclass; }

} // namespace microde
