#include "qproxy/report/detection.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <thread>

#include "criteria.hpp"
#include "qproxy/error.hpp"

#ifndef QPROXY_VERSION
#define QPROXY_VERSION "0.0.0"
#endif

namespace qproxy::report {

const char* toolkit_version() { return QPROXY_VERSION; }

bool WitnessReport::any_undecided() const noexcept {
  for (const auto& e : entries) {
    if (e.verdict.undecided) return true;
  }
  return false;
}

namespace {

// Runs task(i) for i in [0, n) on up to `jobs` threads; results go into
// caller-owned slots so ordering never depends on scheduling.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& task) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) task(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

ReportEntry evaluate_criterion(const CriterionSpec& criterion, const std::string& state_id, const DensityMatrix& rho,
                               const DetectionConfig& config) {
  try {
    Evaluation ev = evaluate(criterion, rho, config);
    return {state_id, criterion.id, std::move(ev.verdict), std::move(ev.diagnostics)};
  } catch (const DetectionError&) {
    throw;
  } catch (const std::exception& e) {
    throw DetectionError(state_id, criterion.id, e.what());
  }
}

WitnessReport run_detection(const DetectionConfig& config, const RunOptions& options) {
  const auto instances = expand_states(config);
  const std::size_t n_crit = config.criteria.size();

  std::vector<std::optional<DensityMatrix>> states(instances.size());
  std::vector<std::exception_ptr> state_errors(instances.size());
  parallel_for(instances.size(), options.jobs, [&](std::size_t i) {
    try {
      states[i].emplace(build_state(instances[i], config, i));
    } catch (...) {
      state_errors[i] = std::current_exception();
    }
  });
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!state_errors[i]) continue;
    try {
      std::rethrow_exception(state_errors[i]);
    } catch (const std::exception& e) {
      throw DetectionError(instances[i].id, "(state construction)", e.what());
    }
  }

  const std::size_t pairs = instances.size() * n_crit;
  std::vector<std::optional<ReportEntry>> slots(pairs);
  std::vector<std::exception_ptr> errors(pairs);
  parallel_for(pairs, options.jobs, [&](std::size_t idx) {
    const std::size_t s = idx / n_crit;
    const std::size_t c = idx % n_crit;
    try {
      slots[idx].emplace(evaluate_criterion(config.criteria[c], instances[s].id, *states[s], config));
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  });
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  WitnessReport report;
  report.toolkit_version = toolkit_version();
  report.seed = config.seed;
  report.config = config.echo;
  report.entries.reserve(pairs);
  for (auto& slot : slots) report.entries.push_back(std::move(*slot));
  return report;
}

}  // namespace qproxy::report
