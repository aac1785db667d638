#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qproxy/report/config.hpp"
#include "qproxy/witnesses.hpp"

namespace qproxy::report {

/// Checks a criterion's own parameters; throws a qproxy error on the first problem.
void validate_criterion_params(const CriterionSpec& spec, const std::filesystem::path& base_dir);

/// Reason the criterion cannot be applied to a state with these dimensions, if any.
std::optional<std::string> criterion_state_mismatch(const CriterionSpec& spec, const Dims& state_dims,
                                                    const std::filesystem::path& base_dir,
                                                    const SolverOptions& solver);

struct Evaluation {
  Verdict verdict;
  Json diagnostics = Json::object();
};

Evaluation evaluate(const CriterionSpec& spec, const DensityMatrix& rho, const DetectionConfig& config);

}  // namespace qproxy::report
