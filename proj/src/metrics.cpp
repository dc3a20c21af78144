#include "dcc/metrics.hpp"

#include <map>
#include <set>

namespace dcc {

CirculationMetrics compute_metrics(const std::vector<Event>& events,
                                   Epoch window_start, Epoch window_end) {
  require(window_end >= window_start, Errc::EmptyWindow, "window end before start");
  CirculationMetrics m;
  m.window_start = window_start;
  m.window_end = window_end;

  Amount minted[3] = {0, 0, 0};
  Amount burned[3] = {0, 0, 0};
  std::map<std::string, Amount> escrow_balance;
  std::set<std::string> funding_escrows;
  Amount moved_in_window = 0;
  Amount minted_in_window = 0;

  for (const Event& ev : events) {
    if (ev.epoch > window_end) break;
    const bool in_window = ev.epoch >= window_start;
    const Json& out = ev.payload.at("o");
    for (const Json& fx : out.at("effects")) {
      const std::string bucket = fx.at(0).get<std::string>();
      const Amount delta = fx.at(1).get<Amount>();
      char tag = bucket.back();
      int k = tag == 'C' ? 0 : tag == 'L' ? 1 : 2;
      if (bucket.starts_with("minted/")) {
        minted[k] += delta;
        if (in_window) minted_in_window += delta;
      } else if (bucket.starts_with("burned/")) {
        burned[k] += delta;
      } else if (bucket.starts_with("esc/")) {
        auto second = bucket.find('/', 4);
        escrow_balance[bucket.substr(4, second - 4)] += delta;
      }
    }
    if (ev.op == "invest") {
      // funding escrows are the investment targets named by invest effects
      for (const Json& fx : out.at("effects")) {
        const std::string bucket = fx.at(0).get<std::string>();
        if (bucket.starts_with("esc/")) {
          auto second = bucket.find('/', 4);
          funding_escrows.insert(bucket.substr(4, second - 4));
        }
      }
    }
    if (in_window) {
      if (ev.op == "transfer") {
        moved_in_window += ev.payload.at("i").at("amount").get<Amount>();
      } else if (ev.op == "convert_labor_to_capital" ||
                 ev.op == "start_governance_conversion") {
        moved_in_window += ev.payload.at("i").at("labor").get<Amount>();
      } else if (ev.op == "convert_governance_to_labor") {
        moved_in_window += ev.payload.at("i").at("governance").get<Amount>();
      } else if (ev.op == "pay_gas") {
        moved_in_window += ev.payload.at("i").at("capital").get<Amount>();
      } else if (ev.op == "close_interval") {
        if (out.at("kind") == "ContentAudit") {
          if (out.at("passed").get<bool>()) m.total_information++;
        }
        if (out.contains("judgment") && out.at("judgment") == "Upheld" &&
            out.contains("reward_destroyed")) {
          m.invalid_information++;
        }
      } else if (ev.op == "tipoff_default") {
        if (out.contains("reward_destroyed")) m.invalid_information++;
      }
    }
  }

  for (int k = 0; k < 3; ++k) m.token_supply += minted[k] - burned[k];
  for (const std::string& id : funding_escrows) {
    auto it = escrow_balance.find(id);
    if (it != escrow_balance.end() && it->second > 0) m.absorbed_tokens += it->second;
  }
  if (m.total_information > 0) {
    m.valid_ratio = clamp(
        Rational(m.total_information - m.invalid_information, m.total_information),
        Rational(0), Rational(1));
  } else {
    m.valid_ratio = Rational(1);
  }
  const Amount epochs = window_end - window_start + 1;
  if (m.token_supply > 0) {
    m.circulation_ratio = Rational(moved_in_window, epochs * m.token_supply);
    m.inflation_ratio = Rational(minted_in_window, epochs * m.token_supply);
  }
  return m;
}

}  // namespace dcc
