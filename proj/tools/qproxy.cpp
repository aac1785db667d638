// qproxy: batch driver for the proxy-witness battery.
//
//   qproxy detect --config run.json [--out report.json] [--format json|csv] [--jobs N]
//   qproxy model xxx --sites 12 --coupling 1 --k 3 --criteria entanglement.model,steering.model,unext.model.xxx
//
// Exit codes: 0 ran, 1 other error, 2 config error, 3 a solver came back undecided.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qproxy/error.hpp"
#include "qproxy/report/config.hpp"
#include "qproxy/report/detection.hpp"
#include "qproxy/report/report.hpp"

namespace {

using qproxy::report::Json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitUndecided = 3;

struct Overrides {
  std::string out;
  std::string format;
  std::size_t jobs = 1;
  std::optional<double> ext_tol;
  std::optional<std::size_t> ext_iters;
  std::optional<std::uint64_t> seed;
};

void apply_overrides(Json& doc, const Overrides& o) {
  if (o.ext_tol) doc["solver"]["ext_tol"] = *o.ext_tol;
  if (o.ext_iters) doc["solver"]["ext_iters"] = *o.ext_iters;
  if (o.seed) doc["seed"] = *o.seed;
  if (!o.format.empty()) doc["output"]["format"] = o.format;
  if (!o.out.empty()) doc["output"]["path"] = o.out;
}

int run(const qproxy::report::DetectionConfig& config, std::size_t jobs) {
  const auto report = qproxy::report::run_detection(config, {jobs});
  qproxy::report::emit_report(report, config.output.format, config.output.path, std::cout);
  if (report.any_undecided()) {
    std::cerr << "qproxy: at least one solver result is undecided\n";
    return kExitUndecided;
  }
  return kExitOk;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct ModelArgs {
  std::string model;
  std::size_t sites = 12;
  double coupling = 1.0;
  double j2 = 0.0;
  double field = 0.0;
  std::size_t k = 2;
  double s_min = 0.0;
  std::string criteria = "entanglement.model,steering.model";
};

// Builds the config a `detect` run would need for the model's ground state.
Json model_config(const ModelArgs& m) {
  Json spec;
  if (m.model == "xxx") {
    spec = {{"family", "heisenberg"}, {"sites", m.sites}, {"couplings", {m.coupling, m.coupling, m.coupling}}};
  } else if (m.model == "xy") {
    spec = {{"family", "xy_field"}, {"sites", m.sites}, {"couplings", {m.coupling, m.coupling}}, {"field", m.field}};
  } else if (m.model == "ising") {
    spec = {{"family", "xy_field"}, {"sites", m.sites}, {"couplings", {m.coupling, 0.0}}, {"field", m.field}};
  } else {
    spec = {{"family", "j1j2"}, {"sites", m.sites}, {"couplings", {m.coupling, m.j2}}};
  }
  const bool j1j2 = m.model == "j1j2";
  const Json hamiltonian{{"type", "model"}, {"model", spec}};

  Json criteria = Json::array();
  for (const auto& id : split_list(m.criteria)) {
    Json params = Json::object();
    if (id == "unext.model.xxx") {
      params = {{"J", m.coupling}, {"k", m.k}};
    } else if (id == "unext.model.j1j2") {
      params = {{"J1", m.coupling}, {"J2", m.j2}, {"k", m.k}};
    } else if (id == "steering.model") {
      params = j1j2 ? Json{{"model", "j1j2"}, {"J1", m.coupling}, {"J2", m.j2}}
                    : Json{{"model", "xxx"}, {"J", m.coupling}};
    } else if (id == "entanglement.model") {
      params = {{"J", m.coupling}};
    } else if (id == "coherence.basis") {
      params = {{"observable", hamiltonian}};
    } else if (id == "coherence.entropy") {
      params = {{"observable", hamiltonian}, {"s_min", m.s_min}};
    } else if (id == "activation") {
      params = {{"hamiltonian", hamiltonian}};
    }
    Json entry{{"id", id}};
    entry.update(params);
    criteria.push_back(std::move(entry));
  }
  return {{"states", {{{"id", m.model + "-ground"}, {"family", "ground_state"}, {"model", spec}}}},
          {"criteria", criteria}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proxy witnesses for quantum resources"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qproxy::report::toolkit_version());

  Overrides detect_opts;
  std::string config_path;
  auto* detect = app.add_subcommand("detect", "Run the witness battery described by a config file");
  detect->add_option("--config", config_path, "Detection config (JSON)")->required()->check(CLI::ExistingFile);

  Overrides model_opts;
  ModelArgs margs;
  auto* model = app.add_subcommand("model", "Witness checks on a spin-chain ground state, no config file");
  model->add_option("model", margs.model, "Chain model")
      ->required()
      ->check(CLI::IsMember({"xxx", "xy", "ising", "j1j2"}));
  model->add_option("--sites", margs.sites, "Number of spins")->capture_default_str();
  model->add_option("--coupling", margs.coupling, "J (J1 for j1j2)")->capture_default_str();
  model->add_option("--j2", margs.j2, "Next-nearest coupling for j1j2")->capture_default_str();
  model->add_option("--field", margs.field, "Transverse field for xy/ising")->capture_default_str();
  model->add_option("--k", margs.k, "Extension order for unext.* criteria")->capture_default_str();
  model->add_option("--s-min", margs.s_min, "Entropy bound for coherence.entropy (bits)")->capture_default_str();
  model->add_option("--criteria", margs.criteria, "Comma-separated criterion ids")->capture_default_str();

  for (auto [cmd, o] : {std::pair{detect, &detect_opts}, std::pair{model, &model_opts}}) {
    cmd->add_option("--out", o->out, "Report path (default stdout)");
    cmd->add_option("--format", o->format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--jobs", o->jobs, "Concurrent (state, criterion) evaluations")->check(CLI::PositiveNumber);
    cmd->add_option("--ext-tol", o->ext_tol, "Extension solver tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--ext-iters", o->ext_iters, "Extension solver iteration cap")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o->seed, "Seed for random states");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*detect) {
      const auto loaded = qproxy::report::load_config(config_path);
      Json doc = loaded.echo;
      apply_overrides(doc, detect_opts);
      return run(qproxy::report::parse_config(doc, loaded.base_dir), detect_opts.jobs);
    }
    Json doc = model_config(margs);
    apply_overrides(doc, model_opts);
    return run(qproxy::report::parse_config(doc, "."), model_opts.jobs);
  } catch (const qproxy::ConfigError& e) {
    std::cerr << "qproxy: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "qproxy: " << e.what() << '\n';
    return kExitError;
  }
}
