#include "cavsq/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cavsq::csv {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Writer::Writer(std::vector<std::string> header) : columns_(header.size())
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i)
            text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

void Writer::row(std::span<const double> values)
{
    if (values.size() != columns_)
        throw std::invalid_argument("csv row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            text_ += ',';
        text_ += format_number(values[i]);
    }
    text_ += '\n';
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

} // namespace cavsq::csv
