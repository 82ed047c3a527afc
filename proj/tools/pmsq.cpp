// pmsq: checks on the Peres-Mermin square, its three physical realizations and
// their hidden-variable models.
//
// Exit codes: 0 success, 1 pass=false under --strict, 2 usage error,
// 3 model construction infeasible for the given state.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmsq/commands.hpp"

namespace {

struct Options {
  bool json = false;
  bool strict = false;
  bool normalize = false;
  std::string state;
  std::vector<std::string> constraints;
  int index = 1;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

int emit(const pmsq::Report& report, const Options& opt) {
  std::cout << (opt.json ? pmsq::to_json_text(report) : pmsq::to_human_text(report));
  if (report.exit_code != pmsq::kExitOk) return report.exit_code;
  if (opt.strict && !report.pass) return pmsq::kExitFail;
  return pmsq::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Peres-Mermin square: structure, contradiction, realizations and hidden-variable models"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Emit the machine-readable report");
  app.add_flag("--strict", opt.strict, "Exit with 1 when the report has pass=false");
  app.fallthrough();

  const auto add_state = [&](CLI::App* sub) {
    sub->add_option("--state", opt.state, "State name (psi1, psiPP3, phiPP4, chsh-max, ...) or state file")
        ->required();
    sub->add_flag("--normalize", opt.normalize, "Renormalize explicit amplitudes instead of rejecting them");
  };
  const auto add_index = [&](CLI::App* sub) {
    sub->add_option("index", opt.index, "Realization index")->required()->check(CLI::Range(1, 3));
  };

  auto* verify = app.add_subcommand("verify", "Commutation structure, eigentables and context products");
  auto* contradiction = app.add_subcommand("contradiction", "Exhaustive search over the 512 +-1 assignments");
  contradiction->add_option("--constraints", opt.constraints, "Active contexts (r0..r2, c0..c2)")
      ->delimiter(',');
  auto* realization = app.add_subcommand("realization", "Requirement checks for a realization");
  add_index(realization);
  auto* model = app.add_subcommand("model", "Build and audit a hidden-variable model");
  add_index(model);
  add_state(model);
  auto* sample = app.add_subcommand("sample", "Sample hidden states and measurement outcomes");
  add_index(sample);
  add_state(sample);
  sample->add_option("--shots", opt.shots, "Number of shots")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", opt.seed, "RNG seed")->required();
  auto* ch = app.add_subcommand("ch", "CHSH correlators for the z/x settings");
  add_state(ch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pmsq::kExitUsage;
  }

  try {
    if (verify->parsed()) return emit(pmsq::cmd_verify(), opt);
    if (contradiction->parsed()) {
      std::optional<std::vector<std::string>> active;
      if (contradiction->count("--constraints") > 0) active = opt.constraints;
      return emit(pmsq::cmd_contradiction(active), opt);
    }
    if (realization->parsed()) return emit(pmsq::cmd_realization(opt.index), opt);

    const pmsq::StateSpec state = pmsq::resolve_state(opt.state, opt.normalize);
    if (model->parsed()) return emit(pmsq::cmd_model(opt.index, state), opt);
    if (sample->parsed()) return emit(pmsq::cmd_sample(opt.index, state, opt.shots, opt.seed), opt);
    if (ch->parsed()) return emit(pmsq::cmd_ch(state), opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return pmsq::kExitUsage;
  }
  return pmsq::kExitUsage;
}
