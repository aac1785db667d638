#pragma once

#include <string>
#include <vector>

#include "qproxy/error.hpp"
#include "qproxy/report/config.hpp"
#include "qproxy/witnesses.hpp"

namespace qproxy::report {

inline constexpr const char* kSchema = "qproxy-report/1";
const char* toolkit_version();

struct ReportEntry {
  std::string state_id;
  std::string criterion;
  Verdict verdict;
  Json diagnostics = Json::object();
};

struct WitnessReport {
  std::string schema = kSchema;
  std::string toolkit_version;
  std::uint64_t seed = 0;
  Json config = Json::object();
  std::vector<ReportEntry> entries;

  bool any_undecided() const noexcept;
};

/// A module error raised while evaluating one (state, criterion) pair.
class DetectionError : public Error {
 public:
  DetectionError(std::string state_id, std::string criterion, const std::string& message)
      : Error("state '" + state_id + "', criterion '" + criterion + "': " + message),
        state_id_(std::move(state_id)),
        criterion_(std::move(criterion)) {}

  const std::string& state_id() const noexcept { return state_id_; }
  const std::string& criterion() const noexcept { return criterion_; }

 private:
  std::string state_id_;
  std::string criterion_;
};

struct RunOptions {
  std::size_t jobs = 1;
};

/// Evaluates every (state, criterion) pair. Entries follow config order
/// (states outer, criteria inner) regardless of `jobs`.
WitnessReport run_detection(const DetectionConfig& config, const RunOptions& options = {});

/// Evaluates one criterion on an already built state.
ReportEntry evaluate_criterion(const CriterionSpec& criterion, const std::string& state_id, const DensityMatrix& rho,
                               const DetectionConfig& config);

}  // namespace qproxy::report
