#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lncv/estimator.hpp"
#include "lncv/montecarlo.hpp"

namespace lncv::io {

/// Shortest-safe round-trip form: 17 significant digits, '.' decimal point.
std::string format_real(double value);

/// Reads one positive real per line. Blank lines and lines whose first
/// non-blank character is '#' are skipped. Throws ParseError for text that is
/// not a number and DomainError for non-positive or non-finite values; both
/// messages carry the 1-based line number.
std::vector<double> read_sample(std::istream& in);

void write_sample(std::ostream& out, std::span<const double> xs);

inline constexpr const char* kCellCsvHeader =
    "n,cv,runs,seed,mean_khat,sd_khat,pred_mean,pred_sd,se_mean";

void write_cells_csv(std::ostream& out, std::span<const SimulationCell> cells);

void write_efficiency_csv(std::ostream& out,
                          std::span<const std::pair<double, double>> curve);

void write_report_csv(std::ostream& out, const EstimateReport& report);
void write_report_text(std::ostream& out, const EstimateReport& report);

}  // namespace lncv::io
