#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "dcc/econ.hpp"
#include "dcc/reports.hpp"
#include "dcc/simulation.hpp"

namespace py = pybind11;

namespace {

dcc::Json json_from_str(const std::string& text) {
  dcc::Json j = dcc::Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw dcc::DccError(dcc::Errc::ParseError, "invalid JSON");
  }
  return j;
}

py::dict run_scenario(const std::string& config_json, const std::string& out_dir) {
  dcc::ScenarioConfig config = dcc::ScenarioConfig::from_json(json_from_str(config_json));
  dcc::RunResult result = dcc::run_simulation(config);
  if (!out_dir.empty()) dcc::write_run(result, out_dir);
  py::dict out;
  out["final_state_hash"] = result.final_state_hash;
  out["events"] = result.events.size();
  out["report"] = result.report.dump();
  return out;
}

std::string replay_file(const std::string& log_path) {
  return dcc::replay_log(dcc::read_event_log(log_path));
}

py::list verify_file(const std::string& log_path) {
  py::list out;
  for (const auto& v : dcc::verify_log(dcc::read_event_log(log_path))) {
    py::dict row;
    row["seq"] = v.seq;
    row["kind"] = v.kind;
    row["detail"] = v.detail;
    out.append(row);
  }
  return out;
}

py::dict nash_analysis(const std::string& matrix_text) {
  dcc::PayoffMatrix3 matrix = dcc::PayoffMatrix3::parse(matrix_text);
  py::list nash;
  for (const auto& p : dcc::find_pure_nash(matrix)) nash.append(p.label());
  py::list pareto;
  for (const auto& p : dcc::pareto_set(matrix)) pareto.append(p.label());
  py::dict out;
  out["nash"] = nash;
  out["pareto"] = pareto;
  return out;
}

std::string report_file(const std::string& log_path, const std::string& kind) {
  return dcc::report_csv(dcc::read_event_log(log_path), kind);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deterministic three-token co-governance crowdfunding simulator";

  py::register_exception<dcc::DccError>(m, "DccError");

  py::enum_<dcc::TokenKind>(m, "TokenKind")
      .value("Capital", dcc::TokenKind::Capital)
      .value("Labor", dcc::TokenKind::Labor)
      .value("Governance", dcc::TokenKind::Governance);

  py::class_<dcc::Event>(m, "Event")
      .def_readonly("seq", &dcc::Event::seq)
      .def_readonly("epoch", &dcc::Event::epoch)
      .def_readonly("op", &dcc::Event::op)
      .def_readonly("state_hash", &dcc::Event::state_hash)
      .def_property_readonly("payload",
                             [](const dcc::Event& ev) { return ev.payload.dump(); })
      .def("to_line", &dcc::Event::to_line);

  py::class_<dcc::World>(m, "World")
      .def(py::init<>())
      .def("genesis",
           [](dcc::World& w, const std::string& config_json) {
             w.genesis(json_from_str(config_json));
           },
           py::arg("config_json") = std::string("{}"))
      .def("apply",
           [](dcc::World& w, const std::string& op, const std::string& inputs_json) {
             return w.apply(op, json_from_str(inputs_json)).to_line();
           })
      .def("open_account", [](dcc::World& w, const std::string& id) { w.open_account(id); })
      .def("mint_labor",
           [](dcc::World& w, const std::string& account, dcc::Amount amount) {
             w.mint_labor(account, amount, dcc::MintReason::ContentReward);
           })
      .def("convert_labor_to_capital",
           [](dcc::World& w, const std::string& account, dcc::Amount labor) {
             w.convert_labor_to_capital(account, labor);
           })
      .def("start_governance_conversion",
           [](dcc::World& w, const std::string& account, dcc::Amount labor, int phases) {
             w.start_governance_conversion(account, labor, phases);
           })
      .def("transfer",
           [](dcc::World& w, const std::string& from, const std::string& to,
              dcc::TokenKind kind, dcc::Amount amount) { w.transfer(from, to, kind, amount); })
      .def("pay_gas",
           [](dcc::World& w, const std::string& account, dcc::Amount capital) {
             w.pay_gas(account, capital);
           })
      .def("advance_epoch", [](dcc::World& w) { w.advance_epoch(); })
      .def("balance", [](const dcc::World& w, const std::string& account,
                         dcc::TokenKind kind) { return w.ledger().balance(account, kind); })
      .def("epoch", &dcc::World::epoch)
      .def("state_hash", [](const dcc::World& w) { return w.state_hash(); })
      .def("event_count", [](const dcc::World& w) { return w.events().size(); })
      .def("conservation_violation",
           [](const dcc::World& w) { return w.ledger().conservation_violation(); });

  m.def("run", &run_scenario, py::arg("config_json"), py::arg("out_dir") = std::string(),
        "Run a scenario from a JSON string; optionally write events.ndjson + report.json");
  m.def("replay", &replay_file, py::arg("log_path"),
        "Replay an event log, returning the final state hash");
  m.def("verify", &verify_file, py::arg("log_path"),
        "Audit an event log; returns a list of violations (empty when clean)");
  m.def("nash", &nash_analysis, py::arg("matrix_text"),
        "Pure Nash and Pareto sets of an 8-profile payoff matrix");
  m.def("report", &report_file, py::arg("log_path"), py::arg("kind"),
        "CSV report (metrics|credit|settlements|assembly) from an event log");
  m.def("op_names", &dcc::World::op_names, "Registered operation names");
}
