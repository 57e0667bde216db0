#include "lncv/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "lncv/error.hpp"

namespace lncv::io {

std::string format_real(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::vector<double> read_sample(std::istream& in) {
  std::vector<double> xs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);

    const char* begin = token.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
      throw ParseError(line_no, "line " + std::to_string(line_no) +
                                    ": not a number: '" + token + "'");
    }
    if (!std::isfinite(x)) {
      throw DomainError("line " + std::to_string(line_no) +
                        ": value is not a finite double: '" + token + "'");
    }
    if (!(x > 0.0)) {
      throw DomainError("line " + std::to_string(line_no) +
                        ": lognormal support is positive reals, got '" +
                        token + "'");
    }
    xs.push_back(x);
  }
  return xs;
}

void write_sample(std::ostream& out, std::span<const double> xs) {
  for (double x : xs) out << format_real(x) << '\n';
}

void write_cells_csv(std::ostream& out, std::span<const SimulationCell> cells) {
  out << kCellCsvHeader << '\n';
  for (const auto& c : cells) {
    out << c.n << ',' << format_real(c.cv) << ',' << c.runs << ',' << c.seed
        << ',' << format_real(c.mean_khat) << ',' << format_real(c.sd_khat)
        << ',' << format_real(c.pred_mean) << ',' << format_real(c.pred_sd)
        << ',' << format_real(c.se_mean) << '\n';
  }
}

void write_efficiency_csv(std::ostream& out,
                          std::span<const std::pair<double, double>> curve) {
  out << "sigma2,efficiency\n";
  for (const auto& [s2, eff] : curve) {
    out << format_real(s2) << ',' << format_real(eff) << '\n';
  }
}

void write_report_csv(std::ostream& out, const EstimateReport& r) {
  out << "n,a_n,h_n,k_n,k_hat,g_hat,cv2_conventional,predicted_sd_k_hat,"
         "cost_collective,cost_conventional\n";
  out << r.n << ',' << format_real(r.a_n) << ',' << format_real(r.h_n) << ','
      << format_real(r.k_n) << ',' << format_real(r.k_hat) << ','
      << format_real(r.g_hat) << ',' << format_real(r.cv2_conventional) << ','
      << format_real(r.predicted_sd_k_hat) << ',' << r.cost_collective << ','
      << r.cost_conventional << '\n';
}

void write_report_text(std::ostream& out, const EstimateReport& r) {
  const auto row = [&out](const char* label, const std::string& value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%-30s", label);
    out << buffer << value << '\n';
  };
  row("n", std::to_string(r.n));
  row("a_n (arithmetic mean)", format_real(r.a_n));
  row("h_n (harmonic mean)", format_real(r.h_n));
  row("k_n (relative ratio)", format_real(r.k_n));
  row("k_hat (unbiased cv^2)", format_real(r.k_hat));
  row("g_hat (geometric mean)", format_real(r.g_hat));
  row("cv2_conventional", format_real(r.cv2_conventional));
  row("predicted_sd_k_hat (plug-in)", format_real(r.predicted_sd_k_hat));
  row("cost_collective", std::to_string(r.cost_collective));
  row("cost_conventional", std::to_string(r.cost_conventional));
}

}  // namespace lncv::io
