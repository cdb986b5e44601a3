#ifndef CAVSQ_CONFIG_IO_HPP
#define CAVSQ_CONFIG_IO_HPP

#include "cavsq/core.hpp"

#include <filesystem>
#include <string>

namespace cavsq::config_io {

/// Parse a flat key=value cavity description ('#' comments, blank lines
/// allowed; keys are the CavityConfig field names). Unknown keys or
/// malformed numbers throw std::runtime_error; the result is phase-wrapped
/// and validated.
CavityConfig parse(const std::string& text);

CavityConfig load(const std::filesystem::path& path);

} // namespace cavsq::config_io

#endif
