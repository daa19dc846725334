#pragma once

#include <string>

#include "json.hpp"
#include "pufguess/metrics.hpp"
#include "pufguess/puf_model.hpp"

namespace pufguess {

using Json = nlohmann::ordered_json;

/// Thrown for malformed population or report documents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json spec_to_json(const PufSpec& spec);
PufSpec spec_from_json(const Json& j);

/// {"spec": {...}, "seed": n, "devices": [{"truth": hex, "reads": [hex...]}]}
/// with MSB-first hex. Extra top-level fields are ignored on read.
Json population_to_json(const Population& population);
Population population_from_json(const Json& j);

Json summary_to_json(const DistributionSummary& summary);
Json report_to_json(const SecurityReport& report);

/// Flat CSV: one header line and one row per report. Absent values are empty.
std::string report_csv_header();
std::string report_csv_row(const std::string& label, const SecurityReport& report);

/// Two-column "bin_center,count" CSV of a histogram.
std::string histogram_csv(const Histogram& histogram);

}  // namespace pufguess
