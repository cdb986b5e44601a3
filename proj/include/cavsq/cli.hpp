#ifndef CAVSQ_CLI_HPP
#define CAVSQ_CLI_HPP

#include "cavsq/core.hpp"

#include <string>

namespace cavsq::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_infeasible = 3;
inline constexpr int exit_numerical = 4;

/// Full command-line front end; returns the process exit code.
int run(int argc, const char* const* argv);

/// Human-readable fixed-point table for a configuration.
std::string steady_table(const CavityConfig& cfg);

/// Spectrum CSV for one selected fixed point. mode is 'a' (fundamental) or
/// 'b' (harmonic); normalization "raw" or "hat"; grid_spec is "default",
/// "lin:LO:HI:N" or "log:LO:HI:N"; root_index -1 auto-selects a unique root
/// and throws when several exist.
std::string spectrum_csv(const CavityConfig& cfg, char mode,
                         const std::string& normalization,
                         const std::string& grid_spec, int root_index,
                         bool allow_unstable);

} // namespace cavsq::cli

#endif
