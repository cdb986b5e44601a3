#include "cavsq/config_io.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace cavsq::config_io {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

CavityConfig parse(const std::string& text)
{
    CavityConfig cfg;
    const std::map<std::string, double CavityConfig::*> fields = {
        {"gamma_c", &CavityConfig::gamma_c},
        {"gamma_s", &CavityConfig::gamma_s},
        {"delta", &CavityConfig::delta},
        {"nu", &CavityConfig::nu},
        {"dkl", &CavityConfig::dkl},
        {"alpha_in_mod", &CavityConfig::alpha_in_mod},
        {"alpha_in_phase", &CavityConfig::alpha_in_phase},
        {"beta_in_mod", &CavityConfig::beta_in_mod},
        {"beta_in_phase", &CavityConfig::beta_in_phase},
    };

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = fields.find(key);
        if (it == fields.end())
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
        char* end = nullptr;
        const double v = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0')
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": bad number '" + value + "'");
        cfg.*(it->second) = v;
    }
    cfg = cfg.normalized();
    cfg.validate();
    return cfg;
}

CavityConfig load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

} // namespace cavsq::config_io
