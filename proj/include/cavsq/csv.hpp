#ifndef CAVSQ_CSV_HPP
#define CAVSQ_CSV_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace cavsq::csv {

/// 17-significant-digit decimal rendering (round-trip exact for doubles);
/// infinities and NaN print as inf/-inf/nan.
std::string format_number(double v);

/// Comma-separated table with a header line, LF endings, '.' decimal point.
class Writer {
public:
    explicit Writer(std::vector<std::string> header);
    void row(std::span<const double> values);
    const std::string& text() const { return text_; }

private:
    std::size_t columns_;
    std::string text_;
};

void write_file(const std::filesystem::path& path, const std::string& text);

} // namespace cavsq::csv

#endif
