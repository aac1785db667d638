#include "qproxy/report/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "qproxy/error.hpp"

namespace qproxy::report {

namespace {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

// Diagnostics are free-form; non-finite numbers anywhere inside become strings.
Json sanitize(const Json& j) {
  if (j.is_number_float()) return number(j.get<double>());
  if (j.is_structured()) {
    Json out = j;
    for (auto& v : out) v = sanitize(v);
    return out;
  }
  return j;
}

double read_number(const Json& entry, const std::string& key) {
  if (!entry.contains(key)) throw FormatError("report entry is missing '" + key + "'");
  const Json& v = entry[key];
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw FormatError("report field '" + key + "' is not a number");
}

template <class T>
T read_field(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw FormatError("report is missing '" + key + "'");
  try {
    return j[key].get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError("report field '" + key + "' has the wrong type");
  }
}

Json entry_to_json(const ReportEntry& e) {
  const Verdict& v = e.verdict;
  Json j{{"state_id", e.state_id},
         {"criterion", e.criterion},
         {"mean_value", number(v.mean_value)},
         {"witness_value", number(v.witness_value)},
         {"threshold", number(v.threshold)},
         {"direction", std::string(to_string(v.direction))},
         {"detected", v.detected},
         {"margin", number(v.margin)},
         {"undecided", v.undecided},
         {"convention_dependent", v.convention_dependent}};
  if (v.mean_imag) j["mean_imag"] = number(*v.mean_imag);
  if (v.threshold_imag) j["threshold_imag"] = number(*v.threshold_imag);
  j["provenance"] = v.provenance;
  j["diagnostics"] = sanitize(e.diagnostics);
  return j;
}

ReportEntry entry_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("report entry must be an object");
  ReportEntry e;
  e.state_id = read_field<std::string>(j, "state_id");
  e.criterion = read_field<std::string>(j, "criterion");
  Verdict& v = e.verdict;
  v.mean_value = read_number(j, "mean_value");
  v.witness_value = read_number(j, "witness_value");
  v.threshold = read_number(j, "threshold");
  const auto dir = read_field<std::string>(j, "direction");
  if (dir == to_string(Direction::below_detects)) {
    v.direction = Direction::below_detects;
  } else if (dir == to_string(Direction::above_detects)) {
    v.direction = Direction::above_detects;
  } else {
    throw FormatError("unknown direction '" + dir + "'");
  }
  v.detected = read_field<bool>(j, "detected");
  v.margin = read_number(j, "margin");
  v.undecided = read_field<bool>(j, "undecided");
  v.convention_dependent = read_field<bool>(j, "convention_dependent");
  if (j.contains("mean_imag")) v.mean_imag = read_number(j, "mean_imag");
  if (j.contains("threshold_imag")) v.threshold_imag = read_number(j, "threshold_imag");
  v.provenance = read_field<std::string>(j, "provenance");
  if (j.contains("diagnostics")) e.diagnostics = j["diagnostics"];
  return e;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

Json report_to_json(const WitnessReport& report) {
  std::size_t detected = 0;
  std::size_t undecided = 0;
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    detected += e.verdict.detected;
    undecided += e.verdict.undecided;
    entries.push_back(entry_to_json(e));
  }
  return Json{{"schema", report.schema},
              {"toolkit_version", report.toolkit_version},
              {"seed", report.seed},
              {"config", report.config},
              {"summary", {{"entries", report.entries.size()}, {"detected", detected}, {"undecided", undecided}}},
              {"entries", std::move(entries)}};
}

WitnessReport report_from_json(const Json& doc) {
  if (!doc.is_object()) throw FormatError("report must be a JSON object");
  WitnessReport r;
  r.schema = read_field<std::string>(doc, "schema");
  if (r.schema != kSchema) throw FormatError("unsupported report schema '" + r.schema + "'");
  r.toolkit_version = read_field<std::string>(doc, "toolkit_version");
  r.seed = read_field<std::uint64_t>(doc, "seed");
  r.config = doc.contains("config") ? doc["config"] : Json::object();
  const Json& entries = doc.contains("entries") ? doc["entries"] : throw FormatError("report is missing 'entries'");
  if (!entries.is_array()) throw FormatError("'entries' must be an array");
  for (const auto& e : entries) r.entries.push_back(entry_from_json(e));
  return r;
}

std::string report_to_csv(const WitnessReport& report) {
  std::string out = "state_id,criterion,value,threshold,detected,margin\n";
  for (const auto& e : report.entries) {
    out += csv_field(e.state_id) + ',' + csv_field(e.criterion) + ',' + csv_number(e.verdict.mean_value) + ',' +
           csv_number(e.verdict.threshold) + ',' + (e.verdict.detected ? "true" : "false") + ',' +
           csv_number(e.verdict.margin) + '\n';
  }
  return out;
}

void emit_report(const WitnessReport& report, std::string_view format, const std::filesystem::path& path,
                 std::ostream& out) {
  std::string text;
  if (format == "json") {
    text = report_to_json(report).dump(2) + "\n";
  } else if (format == "csv") {
    text = report_to_csv(report);
  } else {
    throw FormatError("unknown report format '" + std::string(format) + "' (json or csv)");
  }
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace qproxy::report
