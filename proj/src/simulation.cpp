#include "dcc/simulation.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "dcc/agents.hpp"
#include "dcc/metrics.hpp"

namespace dcc {

namespace {

// Sim-side bookkeeping the protocol must not see: ground truth about
// content and reports, used only to drive agent decisions.
struct SimTruth {
  std::map<std::string, bool> content_genuine;   // content id -> genuine
  std::set<std::string> reported_contents;       // already tipped off
};

struct Sim {
  const ScenarioConfig& cfg;
  World world;
  std::vector<Agent> agents;
  SimTruth truth;
  std::uint64_t next_template{0};

  explicit Sim(const ScenarioConfig& config) : cfg(config) {}

  AgentStream stream(const AccountId& agent) {
    return AgentStream(cfg.seed, agent, world.epoch());
  }

  bool is_investor(const Agent& agent) const {
    return agent.policy == "diligent-investor" || agent.policy == "fickle-investor" ||
           agent.policy == "passive-holder";
  }

  void bootstrap() {
    world.genesis(cfg.raw);
    for (const Agent& agent : agents) {
      world.open_account(agent.id);
      Amount labor = cfg.endow_labor;
      Amount capital_labor = 0;
      if (is_investor(agent) && cfg.endow_capital > 0) {
        // Capital is obtained by converting Labor at the opening rate; mint
        // enough Labor so the conversion yields at least the endowment.
        const Rational& rate = cfg.world.rate.labor_per_capital;
        capital_labor =
            (cfg.endow_capital * rate.num() + rate.den() - 1) / rate.den();
      }
      if (labor + capital_labor > 0) {
        world.mint_labor(agent.id, labor + capital_labor, MintReason::ContentReward);
      }
      if (capital_labor > 0) {
        world.convert_labor_to_capital(agent.id, capital_labor);
      }
    }
  }

  // ---- phase 1: elections ---------------------------------------------------
  void phase_elections() {
    if (world.params().platform_supervision_share > Rational(0)) {
      world.phase_down_platform();
    }
    if (world.election_possible()) {
      world.elect_assembly();
    }
  }

  // ---- phase 2: content, supervision actions, arbitral votes ---------------
  void phase_content_and_audits() {
    const Epoch e = world.epoch();
    // submissions
    for (const Agent& agent : agents) {
      if (agent.policy == "honest-creator") {
        AgentStream s = stream(agent.id);
        if (s.chance(cfg.policies.creator_submit_prob)) {
          std::string digest =
              digest_fields({"content", agent.id, std::to_string(e)}).hex();
          const Event& ev = world.submit_content(agent.id, digest);
          truth.content_genuine[ev.payload.at("o").at("content")] = true;
        }
      } else if (agent.policy == "plagiarist") {
        AgentStream s = stream(agent.id);
        // Activity follows the reward quota and shies away from supervision
        // incentives: quota * base / incentive.
        Rational p = cfg.policies.plagiarist_base_prob * world.regulator().quota /
                     world.regulator().incentive;
        if (s.chance(clamp(p, Rational(0), Rational(1)))) {
          std::string digest =
              digest_fields({"plagiarism", agent.id, std::to_string(e)}).hex();
          const Event& ev = world.submit_content(agent.id, digest);
          truth.content_genuine[ev.payload.at("o").at("content")] = false;
        }
      }
    }
    // tip-offs against accepted content
    for (const Agent& agent : agents) {
      if (agent.policy != "honest-reporter" && agent.policy != "false-reporter") continue;
      const bool honest = agent.policy == "honest-reporter";
      AgentStream s = stream(agent.id);
      int credit = world.supervision().score_of(credit_key_account(agent.id),
                                                cfg.world.supervision);
      if (credit < cfg.world.supervision.tipoff_credit_floor) continue;
      for (const auto& [content_id, record] : world.supervision().contents) {
        if (record.status != ContentStatus::Accepted) continue;
        if (truth.reported_contents.count(content_id)) continue;
        auto genuine = truth.content_genuine.find(content_id);
        if (genuine == truth.content_genuine.end()) continue;
        const bool target_is_genuine = genuine->second;
        if (honest == target_is_genuine) continue;  // honest targets junk only
        Rational p = honest ? cfg.policies.reporter_detect_prob
                            : cfg.policies.false_report_prob;
        if (!s.chance(p)) continue;
        if (world.ledger().balance(agent.id, TokenKind::Labor) <
            cfg.policies.report_deposit) {
          break;
        }
        world.submit_tipoff(agent.id, false, content_id,
                            honest ? TipOffCategory::Plagiarism : TipOffCategory::Fake,
                            cfg.policies.report_deposit);
        truth.reported_contents.insert(content_id);
      }
    }
    // rebuttals for tip-offs awaiting them
    std::vector<std::string> awaiting;
    for (const auto& [id, tipoff] : world.supervision().tipoffs) {
      if (tipoff.state == TipOffState::AwaitingRebuttal && !tipoff.rebuttal_submitted &&
          world.epoch() <= tipoff.rebuttal_deadline && !tipoff.targets_project) {
        awaiting.push_back(id);
      }
    }
    for (const std::string& id : awaiting) {
      const TipOff& tipoff = world.supervision().tipoffs.at(id);
      auto content_it = world.supervision().contents.find(tipoff.target_id);
      if (content_it == world.supervision().contents.end()) continue;
      const AccountId& creator = content_it->second.creator;
      bool genuine = truth.content_genuine.count(tipoff.target_id)
                         ? truth.content_genuine.at(tipoff.target_id)
                         : true;
      AgentStream s = stream(creator);
      bool rebut = genuine || s.chance(cfg.policies.plagiarist_rebut_prob);
      if (rebut) {
        world.submit_rebuttal(
            id, digest_fields({"evidence", creator, id}).hex());
      }
    }
    // arbitral votes on intervals closing this epoch
    std::vector<std::pair<std::string, std::string>> due;  // (case, interval)
    for (const auto& [id, interval] : world.supervision().intervals) {
      if (interval.close_epoch == e) due.push_back({interval.case_id, id});
    }
    std::sort(due.begin(), due.end());
    std::set<AccountId> bench = world.governance().assembly.holders_with(Role::Arbitral);
    for (const auto& [case_id, interval_id] : due) {
      const EvaluationInterval& interval = world.supervision().intervals.at(interval_id);
      for (const AccountId& voter : bench) {
        AgentStream s = stream(voter);
        bool approve = arbitral_verdict(s, interval);
        world.cast_vote(interval_id, voter, approve);
      }
    }
  }

  bool arbitral_verdict(AgentStream& s, const EvaluationInterval& interval) {
    const PolicySet& p = cfg.policies;
    switch (interval.kind) {
      case IntervalKind::ContentAudit: {
        bool genuine = truth.content_genuine.count(interval.case_id)
                           ? truth.content_genuine.at(interval.case_id)
                           : true;
        return s.chance(genuine ? p.audit_approve_genuine : p.audit_approve_plagiarized);
      }
      case IntervalKind::TipOffAudit: {
        const TipOff& tipoff = world.supervision().tipoffs.at(interval.case_id);
        bool true_report = false;
        if (!tipoff.targets_project && truth.content_genuine.count(tipoff.target_id)) {
          true_report = !truth.content_genuine.at(tipoff.target_id);
        }
        return s.chance(true_report ? p.publish_true_report : p.publish_false_report);
      }
      case IntervalKind::Arbitration: {
        const TipOff& tipoff = world.supervision().tipoffs.at(interval.case_id);
        bool genuine = true;
        if (!tipoff.targets_project && truth.content_genuine.count(tipoff.target_id)) {
          genuine = truth.content_genuine.at(tipoff.target_id);
        }
        return s.chance(genuine ? p.rebuttal_accept_genuine
                                : p.rebuttal_accept_plagiarized);
      }
    }
    return false;
  }

  // ---- phase 3: crowdfunding and economic actions ---------------------------
  void phase_crowdfunding() {
    const Epoch e = world.epoch();
    launch_projects();
    // investments
    for (const Agent& agent : agents) {
      if (agent.policy != "diligent-investor" && agent.policy != "fickle-investor") {
        continue;
      }
      AgentStream s = stream(agent.id);
      for (const auto& [project_id, project] : world.crowdfunding().projects) {
        if (project.state != ProjectState::Funding || e >= project.deadline_epoch) {
          continue;
        }
        Amount room = project.target - project.raised;
        if (room <= 0) continue;
        Amount balance = world.ledger().balance(agent.id, TokenKind::Capital);
        Amount amount = 0;
        if (agent.policy == "diligent-investor") {
          amount = std::min(room, floor_mul(balance, cfg.policies.investor_fraction));
        } else if (s.chance(cfg.policies.fickle_invest_prob)) {
          amount = std::min(room, balance / 4);
        }
        if (amount > 0) {
          world.invest(project_id, agent.id, amount);
          if (world.ledger().balance(agent.id, TokenKind::Capital) >=
              cfg.world.crowdfunding.gas_fee && cfg.world.crowdfunding.gas_fee > 0) {
            world.pay_gas(agent.id, cfg.world.crowdfunding.gas_fee);
          }
        }
      }
    }
    // pledges from labor holders
    for (const Agent& agent : agents) {
      if (agent.policy != "honest-creator" && agent.policy != "honest-reporter") continue;
      AgentStream s = stream(agent.id);
      for (const auto& [project_id, project] : world.crowdfunding().projects) {
        if (project.state != ProjectState::Funding || project.creator == agent.id) {
          continue;
        }
        if (!s.chance(cfg.policies.creator_pledge_prob)) continue;
        Amount amount = floor_mul(world.ledger().balance(agent.id, TokenKind::Labor),
                                  cfg.policies.creator_pledge_fraction);
        if (amount > 0) world.pledge(project_id, agent.id, amount);
      }
    }
    // acceptance votes
    for (const Agent& agent : agents) {
      if (agent.policy != "diligent-investor" && agent.policy != "fickle-investor") {
        continue;
      }
      AgentStream s = stream(agent.id);
      for (const auto& [project_id, project] : world.crowdfunding().projects) {
        if (project.state != ProjectState::AwaitingAcceptance) continue;
        if (!project.investments.count(agent.id)) continue;
        if (project.acceptance_votes.count(agent.id)) continue;
        bool vote = agent.policy == "diligent-investor"
                        ? true
                        : s.chance(cfg.policies.fickle_accept_prob);
        world.accept_vote(project_id, agent.id, vote);
      }
    }
    // satisfaction feedback on active projects
    for (const Agent& agent : agents) {
      if (agent.policy != "diligent-investor" && agent.policy != "fickle-investor") {
        continue;
      }
      AgentStream s = stream(agent.id);
      for (const auto& [project_id, project] : world.crowdfunding().projects) {
        if (project.state != ProjectState::Active) continue;
        if (!project.investments.count(agent.id)) continue;
        auto gate = project.satisfaction_next_period.find(agent.id);
        if (gate != project.satisfaction_next_period.end() &&
            gate->second > project.next_tranche) {
          continue;
        }
        int score = world.supervision().score_of(credit_key_project(project_id),
                                                 cfg.world.supervision);
        int rating;
        if (agent.policy == "diligent-investor") {
          rating = score >= cfg.policies.satisfaction_threshold ? 1 : -1;
        } else {
          rating = static_cast<int>(s.pick(3)) - 1;
        }
        world.record_satisfaction(project_id, agent.id, rating);
      }
    }
    governance_actions();
    // passive holders circulate capital
    for (const Agent& agent : agents) {
      if (agent.policy != "passive-holder") continue;
      AgentStream s = stream(agent.id);
      if (!s.chance(cfg.policies.holder_transfer_prob)) continue;
      Amount balance = world.ledger().balance(agent.id, TokenKind::Capital);
      Amount gas = cfg.world.crowdfunding.gas_fee;
      if (balance <= gas + 1) continue;
      Amount amount = 1 + static_cast<Amount>(s.pick(
                              static_cast<std::uint64_t>(std::min<Amount>(5, balance - gas - 1))));
      const Agent& to = agents[s.pick(agents.size())];
      if (to.id == agent.id) continue;
      world.transfer(agent.id, to.id, TokenKind::Capital, amount);
      if (gas > 0) world.pay_gas(agent.id, gas);
    }
  }

  void launch_projects() {
    const Epoch e = world.epoch();
    int live = 0;
    for (const auto& [id, project] : world.crowdfunding().projects) {
      if (project.state != ProjectState::Completed && project.state != ProjectState::Failed) {
        live++;
      }
    }
    for (const Agent& agent : agents) {
      if (agent.policy != "honest-creator") continue;
      if (live >= cfg.world.crowdfunding.max_active_projects) break;
      int credit = world.supervision().score_of(credit_key_account(agent.id),
                                                cfg.world.supervision);
      if (credit < cfg.world.crowdfunding.creator_credit_floor) continue;
      AgentStream s = stream(agent.id);
      if (!s.chance(cfg.policies.creator_launch_prob)) continue;
      const ProjectTemplate& tmpl =
          cfg.projects[next_template % cfg.projects.size()];
      next_template++;
      std::vector<std::pair<Rational, Rational>> tranches;
      for (const Rational& fraction : tmpl.tranche_fractions) {
        tranches.push_back({fraction, tmpl.labor_conversion});
      }
      const Event& ev = world.create_project(agent.id, tmpl.target, e + tmpl.duration,
                                             tmpl.marketing, tmpl.acceptance_threshold,
                                             tranches);
      const std::string project_id = ev.payload.at("o").at("project");
      world.publish_contracts(
          project_id, digest_fields({"plan", project_id}).hex(),
          digest_fields({"reward", project_id}).hex());
      live++;
    }
  }

  void governance_actions() {
    const PolicySet& p = cfg.policies;
    for (const Agent& agent : agents) {
      if (agent.policy != "active-governor") continue;
      AgentStream s = stream(agent.id);
      // phased Labor -> Governance conversions
      Amount labor = world.ledger().balance(agent.id, TokenKind::Labor);
      if (labor >= 2 && s.chance(p.governor_convert_prob)) {
        Amount amount = floor_mul(labor, p.governor_convert_fraction);
        if (amount > 0) {
          world.start_governance_conversion(agent.id, amount, p.governor_phases);
        }
      }
      // party membership
      Amount governance = world.ledger().balance(agent.id, TokenKind::Governance);
      bool in_party = world.governance().membership.count(agent.id) > 0 ||
                      world.governance().pending_membership.count(agent.id) > 0;
      if (!in_party && governance > 0) {
        if (governance >= world.params().party_min_governance &&
            static_cast<int>(world.governance().parties.size()) < p.max_parties) {
          world.form_party(agent.id,
                           digest_fields({"charter", agent.id}).hex());
        } else if (!world.governance().parties.empty()) {
          auto it = world.governance().parties.begin();
          std::advance(it, static_cast<long>(s.pick(world.governance().parties.size())));
          world.join_party(agent.id, it->first);
        }
      }
      // chief prerogatives
      const Assembly& assembly = world.governance().assembly;
      if (assembly.valid() && assembly.holds_role(agent.id, Role::Chief)) {
        if (s.chance(p.chief_adjust_prob)) {
          Rational split = world.params().incentive_pool_split == Rational(7, 10)
                               ? Rational(3, 5)
                               : Rational(7, 10);
          split = clamp(split, world.params().split_min, world.params().split_max);
          world.adjust_incentive_pool(agent.id, split);
        }
        if (s.chance(p.chief_nominate_prob)) {
          world.nominate_arbitral(agent.id, {agent.id}, p.nomination_boost);
        }
      }
    }
  }

  // ---- phase 4: settlements and tranche releases -----------------------------
  void phase_settlements() {
    const Epoch e = world.epoch();
    std::vector<std::string> to_settle;
    for (const auto& [id, project] : world.crowdfunding().projects) {
      if (project.state == ProjectState::Funding && e >= project.deadline_epoch) {
        to_settle.push_back(id);
      }
    }
    for (const std::string& id : to_settle) world.settle_project(id);

    std::vector<std::string> active;
    for (const auto& [id, project] : world.crowdfunding().projects) {
      if (project.state == ProjectState::Active ||
          project.state == ProjectState::Suspended) {
        active.push_back(id);
      }
    }
    for (const std::string& id : active) {
      const Project& project = world.crowdfunding().projects.at(id);
      int score =
          world.supervision().score_of(credit_key_project(id), cfg.world.supervision);
      std::vector<AccountId> yes;
      for (const auto& [member, weight] : project.council.members) {
        if (score > cfg.world.supervision.warning_line) yes.push_back(member);
      }
      if (project.state == ProjectState::Suspended) {
        std::set<AccountId> yes_set(yes.begin(), yes.end());
        if (council_approves(project, yes_set)) world.reinstate(id, yes);
        continue;
      }
      if (project.next_tranche >= static_cast<int>(project.tranches.size())) continue;
      Epoch due = project.activated_epoch +
                  static_cast<Epoch>(project.next_tranche + 1) *
                      cfg.world.crowdfunding.tranche_period;
      if (e < due) continue;
      std::set<AccountId> yes_set(yes.begin(), yes.end());
      if (council_approves(project, yes_set)) {
        world.release_tranche(id, project.next_tranche, yes);
      }
    }
  }

  // ---- phase 5: supervision closings -----------------------------------------
  void phase_supervision_closings() {
    const Epoch e = world.epoch();
    std::vector<std::pair<std::string, std::string>> due;  // (case, interval)
    for (const auto& [id, interval] : world.supervision().intervals) {
      if (interval.close_epoch <= e) due.push_back({interval.case_id, id});
    }
    std::sort(due.begin(), due.end());
    for (const auto& [case_id, interval_id] : due) {
      world.close_interval(interval_id);
    }
    std::vector<std::string> defaulted;
    for (const auto& [id, tipoff] : world.supervision().tipoffs) {
      if (tipoff.state == TipOffState::AwaitingRebuttal && !tipoff.rebuttal_submitted &&
          e > tipoff.rebuttal_deadline) {
        defaulted.push_back(id);
      }
    }
    for (const std::string& id : defaulted) world.tipoff_default_judgment(id);

    // warning-line sweep
    std::vector<std::string> projects;
    for (const auto& [id, project] : world.crowdfunding().projects) projects.push_back(id);
    for (const std::string& id : projects) {
      if (world.peek_warning_line(id) == EscalationAction::None) continue;
      const Event& ev = world.credit_escalation(id);
      if (ev.payload.at("o").at("action") == "suspension") {
        world.suspend_project(id, SuspendCause::CreditWarningLine);
      }
    }
  }

  // ---- phases 6-8 -------------------------------------------------------------
  void phase_regulation() {
    world.regulate_epoch();
    world.distribute_pools();
  }

  void phase_rate_update() {
    const Epoch e = world.epoch();
    Amount supply = 0;
    Amount demand = 0;
    const std::vector<Event>& events = world.events();
    for (auto it = events.rbegin(); it != events.rend() && it->epoch == e; ++it) {
      for (const Json& fx : it->payload.at("o").at("effects")) {
        const std::string bucket = fx.at(0).get<std::string>();
        const Amount delta = fx.at(1).get<Amount>();
        if (delta <= 0) continue;
        if (bucket.starts_with("minted/") && bucket.back() == 'L') {
          supply += delta;
        } else if ((bucket.starts_with("esc/") || bucket.starts_with("lock/")) &&
                   bucket.back() == 'L') {
          demand += delta;
        }
      }
    }
    Json in;
    in["supply"] = Rational(1 + supply).str();
    in["demand"] = Rational(1 + demand).str();
    if (!cfg.peg_series.empty()) {
      in["peg_index"] =
          cfg.peg_series[static_cast<size_t>(e) % cfg.peg_series.size()].str();
    }
    world.apply("update_rate", in);
  }

  RunResult run() {
    agents = expand_agents(cfg.agents);
    bootstrap();
    for (int e = 0; e < cfg.epochs; ++e) {
      phase_elections();
      phase_content_and_audits();
      phase_crowdfunding();
      phase_settlements();
      phase_supervision_closings();
      phase_regulation();
      phase_rate_update();
      world.advance_epoch();
    }
    RunResult result;
    result.final_state_hash = world.state_hash().empty()
                                  ? sha256_hex(world.canonical_snapshot())
                                  : world.state_hash();
    result.report = build_report(world.events(), result.final_state_hash);
    result.events = world.events();
    return result;
  }
};

}  // namespace

RunResult run_simulation(const ScenarioConfig& config) {
  Sim sim(config);
  return sim.run();
}

void write_run(const RunResult& result, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  require(!ec, Errc::IoFailure, "cannot create " + out_dir.string());
  std::ofstream log(out_dir / "events.ndjson", std::ios::trunc);
  require(log.good(), Errc::IoFailure, "cannot write event log");
  for (const Event& ev : result.events) log << ev.to_line() << '\n';
  log.close();
  require(log.good(), Errc::IoFailure, "event log write failed");
  std::ofstream report(out_dir / "report.json", std::ios::trunc);
  require(report.good(), Errc::IoFailure, "cannot write report");
  report << result.report.dump(2) << '\n';
  report.close();
  require(report.good(), Errc::IoFailure, "report write failed");
}

std::vector<Event> read_event_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), Errc::IoFailure, "cannot open log " + path.string());
  std::vector<Event> events;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    events.push_back(Event::from_line(line));
  }
  return events;
}

std::string replay_log(const std::vector<Event>& events) {
  World world;
  if (events.empty()) return sha256_hex(world.canonical_snapshot());
  for (const Event& recorded : events) {
    Event applied;
    try {
      applied = world.apply(recorded.op, recorded.payload.at("i"));
    } catch (const DccError& e) {
      fail(Errc::CorruptLog,
           "seq " + std::to_string(recorded.seq) + ": " + e.what());
    } catch (const Json::exception& e) {
      fail(Errc::CorruptLog,
           "seq " + std::to_string(recorded.seq) + ": " + e.what());
    }
    if (applied.state_hash != recorded.state_hash) {
      fail(Errc::CorruptLog, "seq " + std::to_string(recorded.seq) +
                                 ": state hash mismatch");
    }
  }
  return world.state_hash();
}

std::vector<Violation> verify_log(const std::vector<Event>& events) {
  std::vector<Violation> violations;
  World world;
  std::uint64_t expected_seq = 0;
  for (const Event& recorded : events) {
    if (recorded.seq != expected_seq) {
      violations.push_back({recorded.seq, "seq-gap",
                            "expected seq " + std::to_string(expected_seq)});
      return violations;
    }
    expected_seq++;

    // Per-event delta conservation on the recorded effects.
    Effects recorded_fx;
    try {
      for (const Json& fx : recorded.payload.at("o").at("effects")) {
        recorded_fx.push_back({fx.at(0).get<std::string>(), fx.at(1).get<Amount>()});
      }
    } catch (const Json::exception& e) {
      violations.push_back({recorded.seq, "apply-error",
                            std::string("bad effects: ") + e.what()});
      return violations;
    }
    std::string imbalance = effects_imbalance(recorded_fx);
    if (!imbalance.empty()) {
      violations.push_back({recorded.seq, "conservation", imbalance});
    }

    Event applied;
    try {
      applied = world.apply(recorded.op, recorded.payload.at("i"));
    } catch (const DccError& e) {
      violations.push_back({recorded.seq, "apply-error", e.what()});
      return violations;
    } catch (const Json::exception& e) {
      violations.push_back({recorded.seq, "apply-error", e.what()});
      return violations;
    }
    if (applied.payload.at("o") != recorded.payload.at("o")) {
      violations.push_back({recorded.seq, "output-mismatch",
                            "recomputed outputs differ (op " + recorded.op + ")"});
    }
    std::string conservation = world.ledger().conservation_violation();
    if (!conservation.empty()) {
      violations.push_back({recorded.seq, "conservation", conservation});
    }
    if (applied.state_hash != recorded.state_hash) {
      violations.push_back({recorded.seq, "state-hash", "post-state hash mismatch"});
      return violations;  // state diverged; later checks are meaningless
    }
    for (const auto& [subject, record] : world.supervision().credit) {
      if (record.score < 0 || record.score > 100) {
        violations.push_back({recorded.seq, "credit-clamp",
                              subject + " score " + std::to_string(record.score)});
      }
    }
  }
  return violations;
}

Json build_report(const std::vector<Event>& events, const std::string& final_hash) {
  Json report;
  report["final_state_hash"] = final_hash;
  report["events"] = events.size();
  Epoch last_epoch = events.empty() ? 0 : events.back().epoch;
  report["epochs"] = last_epoch;

  Json metrics = Json::array();
  for (Epoch e = 0; e <= last_epoch; ++e) {
    CirculationMetrics m = compute_metrics(events, e, e);
    Json row;
    row["epoch"] = e;
    row["token_supply"] = m.token_supply;
    row["total_information"] = m.total_information;
    row["invalid_information"] = m.invalid_information;
    row["valid_ratio"] = m.valid_ratio.str();
    row["absorbed_tokens"] = m.absorbed_tokens;
    row["circulation_ratio"] = m.circulation_ratio.str();
    row["inflation_ratio"] = m.inflation_ratio.str();
    metrics.push_back(std::move(row));
  }
  report["metrics"] = std::move(metrics);

  Json settlements = Json::array();
  Json rosters = Json::array();
  for (const Event& ev : events) {
    if (ev.op == "settle_project") {
      Json row = ev.payload.at("o");
      row.erase("effects");
      row["epoch"] = ev.epoch;
      row["project"] = ev.payload.at("i").at("project");
      settlements.push_back(std::move(row));
    } else if (ev.op == "elect_assembly") {
      Json row;
      row["epoch"] = ev.epoch;
      row["seats"] = ev.payload.at("o").at("seats");
      rosters.push_back(std::move(row));
    }
  }
  report["settlements"] = std::move(settlements);
  report["assemblies"] = std::move(rosters);
  return report;
}

}  // namespace dcc
