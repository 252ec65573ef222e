#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "microde/errors.hpp"
#include "microde/operators.hpp"
#include "microde/opposition.hpp"

namespace microde {

/// How the mutation scale factor is produced: one constant for the whole
/// run, or a fresh uniform draw per dimension, per individual, per
/// generation.
struct ScaleFactorMode {
    enum class Kind { Fixed, VectorizedRandom };

    Kind kind = Kind::VectorizedRandom;
    double fixed_value = 0.5;

    static ScaleFactorMode fixed(double f) { return {Kind::Fixed, f}; }
    static ScaleFactorMode vectorized_random() { return {Kind::VectorizedRandom, 0.0}; }

    friend bool operator==(const ScaleFactorMode&, const ScaleFactorMode&) = default;
};

inline std::string describe(const ScaleFactorMode& mode) {
    if (mode.kind == ScaleFactorMode::Kind::VectorizedRandom) return "vectorized_random";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "fixed(%g)", mode.fixed_value);
    return buf;
}

/// Everything that defines an algorithm variant.
struct StrategyConfig {
    std::size_t np = 6;
    double cr = 0.9;
    ScaleFactorMode scale_factor_mode = ScaleFactorMode::vectorized_random();
    std::vector<MutationScheme> scheme_pool = full_scheme_pool();
    OppositionMode opposition = OppositionMode::every_generation();
    std::uint64_t nfc_max = 0;
    double evtr = 1e-8;
};

inline void validate(const StrategyConfig& config) {
    if (config.scheme_pool.empty())
        throw ConfigError("StrategyConfig: mutation scheme pool is empty");
    std::size_t max_parents = 0;
    for (auto scheme : config.scheme_pool)
        max_parents = std::max(max_parents, parent_count(scheme));
    if (config.np < max_parents + 1)
        throw ConfigError("StrategyConfig: np=" + std::to_string(config.np) +
                          " too small; the pool needs at least " + std::to_string(max_parents + 1));
    if (config.cr < 0.0 || config.cr > 1.0)
        throw ConfigError("StrategyConfig: cr must be in [0, 1]");
    if (!(config.evtr > 0.0))
        throw ConfigError("StrategyConfig: evtr must be positive");
    if (config.nfc_max < config.np)
        throw ConfigError("StrategyConfig: nfc_max must cover at least one population evaluation");
    if (config.opposition.kind == OppositionMode::Kind::Probabilistic &&
        (config.opposition.jumping_rate < 0.0 || config.opposition.jumping_rate > 1.0))
        throw ConfigError("StrategyConfig: jumping rate must be in [0, 1]");
}

/// Named algorithm variants, from plain micro-DE up to the full
/// opposition-based ensemble.
enum class VariantPreset { DE, MDE, MDEVM, EMDE, OIEMDE, OEMDE, ODE };

/// Shared experimental settings.
inline constexpr std::size_t preset_np = 6;
inline constexpr double preset_cr = 0.9;
inline constexpr std::uint64_t budget_per_dimension = 5000;
inline constexpr double preset_evtr = 1e-8;
/// Baselines with a static scale factor use 0.5; the opposition baseline
/// jumps with rate 0.3.
inline constexpr double preset_fixed_f = 0.5;
inline constexpr double preset_jumping_rate = 0.3;

inline const std::vector<VariantPreset>& all_variants() {
    static const std::vector<VariantPreset> v = {
        VariantPreset::DE,    VariantPreset::MDE,    VariantPreset::MDEVM,
        VariantPreset::EMDE,  VariantPreset::OIEMDE, VariantPreset::OEMDE,
        VariantPreset::ODE};
    return v;
}

inline std::string_view to_string(VariantPreset preset) {
    switch (preset) {
        case VariantPreset::DE:     return "DE";
        case VariantPreset::MDE:    return "MDE";
        case VariantPreset::MDEVM:  return "MDEVM";
        case VariantPreset::EMDE:   return "EMDE";
        case VariantPreset::OIEMDE: return "OIEMDE";
        case VariantPreset::OEMDE:  return "OEMDE";
        case VariantPreset::ODE:    return "ODE";
    }
    return "?";
}

inline VariantPreset variant_from_string(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (auto v : all_variants())
        if (upper == to_string(v)) return v;
    throw ConfigError("unknown variant '" + std::string(name) + "'");
}

/// Strategy flags for each variant at the shared settings
/// (np=6, cr=0.9, budget 5000*D, error-to-reach 1e-8).
inline StrategyConfig expand_preset(VariantPreset preset, std::size_t dimension) {
    if (dimension == 0) throw ConfigError("expand_preset: dimension must be at least 1");
    StrategyConfig config;
    config.np = preset_np;
    config.cr = preset_cr;
    config.nfc_max = budget_per_dimension * static_cast<std::uint64_t>(dimension);
    config.evtr = preset_evtr;
    switch (preset) {
        case VariantPreset::DE:
        case VariantPreset::MDE:
            config.scale_factor_mode = ScaleFactorMode::fixed(preset_fixed_f);
            config.scheme_pool = {MutationScheme::Rand1};
            config.opposition = OppositionMode::never();
            break;
        case VariantPreset::MDEVM:
            config.scale_factor_mode = ScaleFactorMode::vectorized_random();
            config.scheme_pool = {MutationScheme::Rand1};
            config.opposition = OppositionMode::never();
            break;
        case VariantPreset::EMDE:
            config.scale_factor_mode = ScaleFactorMode::vectorized_random();
            config.scheme_pool = full_scheme_pool();
            config.opposition = OppositionMode::never();
            break;
        case VariantPreset::OIEMDE:
            config.scale_factor_mode = ScaleFactorMode::vectorized_random();
            config.scheme_pool = full_scheme_pool();
            config.opposition = OppositionMode::init_only();
            break;
        case VariantPreset::OEMDE:
            config.scale_factor_mode = ScaleFactorMode::vectorized_random();
            config.scheme_pool = full_scheme_pool();
            config.opposition = OppositionMode::every_generation();
            break;
        case VariantPreset::ODE:
            config.scale_factor_mode = ScaleFactorMode::fixed(preset_fixed_f);
            config.scheme_pool = {MutationScheme::Rand1};
            config.opposition = OppositionMode::probabilistic(preset_jumping_rate);
            break;
    }
    return config;
}

} // namespace microde
