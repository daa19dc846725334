#include "pufguess/io.hpp"

#include <iomanip>
#include <sstream>

namespace pufguess {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

BitVector hex_field(const std::string& hex, std::size_t length) {
  try {
    return BitVector::from_hex(hex, length);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

template <typename T>
std::string optional_number(const std::optional<T>& v) {
  return v ? number(static_cast<double>(*v)) : std::string();
}

}  // namespace

Json spec_to_json(const PufSpec& spec) {
  return Json{{"m", spec.length}, {"p", spec.bias}, {"D", spec.noise}, {"e", spec.cross_flip}};
}

PufSpec spec_from_json(const Json& j) {
  PufSpec spec{field<std::size_t>(j, "m"), field<double>(j, "p"), field<double>(j, "D"), field<double>(j, "e")};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return spec;
}

Json population_to_json(const Population& population) {
  Json devices = Json::array();
  for (const auto& d : population.devices) {
    Json reads = Json::array();
    for (const auto& r : d.reads) reads.push_back(r.to_hex());
    devices.push_back(Json{{"truth", d.truth.to_hex()}, {"reads", std::move(reads)}});
  }
  return Json{{"spec", spec_to_json(population.spec)}, {"seed", population.seed.value}, {"devices", std::move(devices)}};
}

Population population_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("population document must be a JSON object");
  Population pop{spec_from_json(field<Json>(j, "spec")), Seed{field<std::uint64_t>(j, "seed")}, {}};
  const Json devices = field<Json>(j, "devices");
  if (!devices.is_array() || devices.empty()) throw FormatError("'devices' must be a nonempty array");
  for (const auto& d : devices) {
    DeviceMeasurements dm{hex_field(field<std::string>(d, "truth"), pop.spec.length), {}};
    const Json reads = field<Json>(d, "reads");
    if (!reads.is_array()) throw FormatError("'reads' must be an array");
    for (const auto& r : reads) {
      if (!r.is_string()) throw FormatError("reads must be hex strings");
      dm.reads.push_back(hex_field(r.get<std::string>(), pop.spec.length));
    }
    pop.devices.push_back(std::move(dm));
  }
  return pop;
}

Json summary_to_json(const DistributionSummary& summary) {
  Json j{{"mean", summary.mean}, {"std_dev", summary.std_dev}, {"count", summary.count}};
  if (summary.histogram) {
    j["histogram"] = Json{{"lower", summary.histogram->lower},
                          {"upper", summary.histogram->upper},
                          {"counts", summary.histogram->counts}};
  }
  return j;
}

Json report_to_json(const SecurityReport& r) {
  return Json{
      {"devices", r.devices},
      {"bits", r.bits},
      {"reads_per_device", r.reads_per_device},
      {"bias", Json{{"ones", r.bias.ones}, {"zeros", r.bias.zeros}}},
      {"intra_fhd", r.intra ? summary_to_json(*r.intra) : Json(nullptr)},
      {"inter_fhd", r.inter ? summary_to_json(*r.inter) : Json(nullptr)},
      {"stability", optional_json(r.stability)},
      {"rho", r.rho},
      {"stable", r.stable},
      {"growth_rate", optional_json(r.growth_rate)},
      {"growth_rate_biased", optional_json(r.growth_rate_biased)},
      {"min_entropy_rate", optional_json(r.min_entropy_rate)},
      {"pipeline", growth_rate_pipeline_note()},
  };
}

std::string report_csv_header() {
  return "label,devices,bits,reads_per_device,bias_ones,bias_zeros,intra_fhd_mean,intra_fhd_std,inter_fhd_mean,"
         "inter_fhd_std,stability,rho,stable,growth_rate,growth_rate_biased,min_entropy_rate";
}

std::string report_csv_row(const std::string& label, const SecurityReport& r) {
  std::ostringstream os;
  os << label << ',' << r.devices << ',' << r.bits << ',' << r.reads_per_device << ',' << number(r.bias.ones) << ','
     << number(r.bias.zeros) << ',' << (r.intra ? number(r.intra->mean) : "") << ','
     << (r.intra ? number(r.intra->std_dev) : "") << ',' << (r.inter ? number(r.inter->mean) : "") << ','
     << (r.inter ? number(r.inter->std_dev) : "") << ',' << optional_number(r.stability) << ',' << number(r.rho)
     << ',' << (r.stable ? "true" : "false") << ',' << optional_number(r.growth_rate) << ','
     << optional_number(r.growth_rate_biased) << ',' << optional_number(r.min_entropy_rate);
  return os.str();
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream os;
  os << "bin_center,count\n";
  const double width = (h.upper - h.lower) / static_cast<double>(h.counts.size());
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    os << number(h.lower + (static_cast<double>(i) + 0.5) * width) << ',' << h.counts[i] << '\n';
  }
  return os.str();
}

}  // namespace pufguess
