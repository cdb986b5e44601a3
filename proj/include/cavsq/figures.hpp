#ifndef CAVSQ_FIGURES_HPP
#define CAVSQ_FIGURES_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace cavsq::figures {

/// In-memory figure data: CSV files plus the scalar summary checks that
/// guard them. Data is only written out once every check has passed.
struct FigureOutput {
    int number = 0;
    std::vector<std::pair<std::string, std::string>> files; // name -> csv text
    std::vector<std::string> summary;                       // one line per check
};

/// Generate the tabular data behind one figure (1..10) and run its scalar
/// checks. Throws solve_error when a check fails, std::invalid_argument for
/// an out-of-range figure number.
FigureOutput make_figure(int number);

/// Write every file of a generated figure into out_dir (created if needed).
void write_figure(const FigureOutput& fig, const std::filesystem::path& out_dir);

/// CSV over a mismatch range: dkl, k_r, k_i, k_i^2 - 3 k_r^2.
std::string coupling_csv(double dkl_min, double dkl_max, int samples);

} // namespace cavsq::figures

#endif
