#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "mig/experiments.hpp"

namespace mig {

/// Invalid or malformed experiment configuration; the message carries a
/// field path and, when available, a line number into the config text.
struct ConfigError : UsageError {
    using UsageError::UsageError;
};

/// A parsed experiment configuration with every default expanded. The
/// engaged alternative matches `experiment`.
struct ResolvedConfig {
    std::string experiment;
    std::string basename; ///< output file stem
    std::variant<OffsetErrorParams, SampleCountParams, ProfileParams, AdParams, PdCurveParams,
                 CalibrateParams>
        params;

    std::uint64_t seed() const;
    int threads() const;
};

/// Parses and validates JSON config text. A `seed` field is required unless
/// `seed_override` is given (the override also wins over a config seed).
/// Accepts a result sidecar too (an object whose `config` member holds the
/// resolved config). Throws ConfigError with a line-numbered diagnostic.
ResolvedConfig parse_config(const std::string& text,
                            std::optional<std::uint64_t> seed_override = std::nullopt);

/// Canonical JSON of the resolved config; parse_config(resolved_json_text(c))
/// reproduces c exactly.
std::string resolved_json_text(const ResolvedConfig& config);

/// Structural equality via the canonical serialization.
bool operator==(const ResolvedConfig& a, const ResolvedConfig& b);

} // namespace mig
