#include <CLI11.hpp>

#include <cstdlib>
#include <map>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dcc/econ.hpp"
#include "dcc/reports.hpp"
#include "dcc/simulation.hpp"

namespace {

// exit codes: 0 success, 1 validation error, 2 audit violation
constexpr int kOk = 0;
constexpr int kValidationError = 1;
constexpr int kAuditViolation = 2;

// DCC_VERBOSE=1 adds per-epoch event counts on stderr.
bool verbose() {
  const char* v = std::getenv("DCC_VERBOSE");
  return v != nullptr && v[0] != '\0' && v[0] != '0';
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  dcc::ScenarioConfig config = dcc::ScenarioConfig::from_file(config_path);
  dcc::RunResult result = dcc::run_simulation(config);
  dcc::write_run(result, out_dir);
  if (verbose()) {
    std::map<dcc::Epoch, std::size_t> per_epoch;
    for (const dcc::Event& ev : result.events) per_epoch[ev.epoch]++;
    for (const auto& [epoch, count] : per_epoch) {
      std::cerr << "epoch " << epoch << ": " << count << " events\n";
    }
  }
  std::cout << "events: " << result.events.size() << "\n"
            << "final_state_hash: " << result.final_state_hash << "\n"
            << "log: " << out_dir << "/events.ndjson\n";
  return kOk;
}

int cmd_replay(const std::string& log_path) {
  auto events = dcc::read_event_log(log_path);
  std::string hash = dcc::replay_log(events);
  std::cout << "replayed " << events.size() << " events\n"
            << "final_state_hash: " << hash << "\n";
  return kOk;
}

int cmd_verify(const std::string& log_path) {
  auto events = dcc::read_event_log(log_path);
  auto violations = dcc::verify_log(events);
  if (violations.empty()) {
    std::cout << "verified " << events.size() << " events: 0 violations\n";
    return kOk;
  }
  for (const auto& v : violations) {
    std::cout << "violation seq=" << v.seq << " kind=" << v.kind << " " << v.detail
              << "\n";
  }
  return kAuditViolation;
}

int cmd_nash(const std::string& matrix_path) {
  std::ifstream in(matrix_path);
  if (!in.good()) {
    throw dcc::DccError(dcc::Errc::IoFailure, "cannot open " + matrix_path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  dcc::PayoffMatrix3 matrix = dcc::PayoffMatrix3::parse(buffer.str());

  std::cout << "nash:";
  for (const auto& profile : dcc::find_pure_nash(matrix)) {
    std::cout << " " << profile.label();
  }
  std::cout << "\npareto:";
  for (const auto& profile : dcc::pareto_set(matrix)) {
    std::cout << " " << profile.label();
  }
  std::cout << "\n";
  for (const auto& witness : dcc::deviation_witnesses(matrix)) {
    const char* player = witness.player == 0 ? "L" : witness.player == 1 ? "C" : "G";
    std::cout << "deviation: " << witness.profile.label() << " player " << player
              << " -> " << witness.deviation.label() << " gains "
              << witness.gain.str() << "\n";
  }
  return kOk;
}

int cmd_report(const std::string& log_path, const std::string& kind) {
  auto events = dcc::read_event_log(log_path);
  std::cout << dcc::report_csv(events, kind);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic simulator for a three-token co-governance "
               "crowdfunding protocol"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", log_path, matrix_path, kind;

  auto* run = app.add_subcommand("run", "Run a scenario and write the event log");
  run->add_option("config", config_path, "scenario JSON file")->required();
  run->add_option("--out", out_dir, "output directory (default: out)");

  auto* replay = app.add_subcommand("replay", "Re-apply a log and check state hashes");
  replay->add_option("log", log_path, "events.ndjson path")->required();

  auto* verify = app.add_subcommand("verify", "Audit a log: conservation, rosters, arithmetic");
  verify->add_option("log", log_path, "events.ndjson path")->required();

  auto* nash = app.add_subcommand("nash", "Equilibria and Pareto set of an 8-profile matrix");
  nash->add_option("matrix", matrix_path, "matrix file")->required();

  auto* report = app.add_subcommand("report", "Emit CSV from an event log");
  report->add_option("log", log_path, "events.ndjson path")->required();
  report->add_option("--kind", kind, "metrics|credit|settlements|assembly")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (replay->parsed()) return cmd_replay(log_path);
    if (verify->parsed()) return cmd_verify(log_path);
    if (nash->parsed()) return cmd_nash(matrix_path);
    if (report->parsed()) return cmd_report(log_path, kind);
  } catch (const dcc::DccError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == dcc::Errc::CorruptLog ? kAuditViolation : kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kValidationError;
}
