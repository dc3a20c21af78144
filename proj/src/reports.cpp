#include "dcc/reports.hpp"

#include "dcc/metrics.hpp"

namespace dcc {

std::string rational_fixed(const Rational& value, int places) {
  __int128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  __int128 scaled = static_cast<__int128>(value.num()) * scale;
  __int128 q = scaled / value.den();
  if (scaled % value.den() != 0 && scaled < 0) q -= 1;
  bool negative = q < 0;
  if (negative) q = -q;
  __int128 whole = q / scale;
  __int128 frac = q % scale;
  std::string frac_str(static_cast<size_t>(places), '0');
  for (int i = places - 1; i >= 0; --i) {
    frac_str[static_cast<size_t>(i)] = static_cast<char>('0' + static_cast<int>(frac % 10));
    frac /= 10;
  }
  std::string whole_str;
  if (whole == 0) {
    whole_str = "0";
  } else {
    while (whole > 0) {
      whole_str.insert(whole_str.begin(), static_cast<char>('0' + static_cast<int>(whole % 10)));
      whole /= 10;
    }
  }
  return (negative ? "-" : "") + whole_str + "." + frac_str;
}

namespace {

std::string metrics_csv(const std::vector<Event>& events) {
  std::string out =
      "epoch,token_supply,total_information,invalid_information,valid_ratio,"
      "absorbed_tokens,circulation_ratio,inflation_ratio\n";
  if (events.empty()) return out;
  Epoch last = events.back().epoch;
  for (Epoch e = 0; e <= last; ++e) {
    CirculationMetrics m = compute_metrics(events, e, e);
    out += std::to_string(e) + "," + std::to_string(m.token_supply) + "," +
           std::to_string(m.total_information) + "," +
           std::to_string(m.invalid_information) + "," +
           rational_fixed(m.valid_ratio, 6) + "," + std::to_string(m.absorbed_tokens) +
           "," + rational_fixed(m.circulation_ratio, 6) + "," +
           rational_fixed(m.inflation_ratio, 6) + "\n";
  }
  return out;
}

void append_credit_rows(std::string& out, const Event& ev) {
  const Json& o = ev.payload.at("o");
  if (o.contains("credit")) {
    for (const Json& row : o.at("credit")) {
      out += std::to_string(ev.epoch) + "," + row.at(0).get<std::string>() + "," +
             std::to_string(row.at(2).get<int>()) + "," +
             row.at(3).get<std::string>() + "\n";
    }
  }
}

std::string credit_csv(const std::vector<Event>& events) {
  std::string out = "epoch,subject,score,cause\n";
  for (const Event& ev : events) append_credit_rows(out, ev);
  return out;
}

std::string settlements_csv(const std::vector<Event>& events) {
  std::string out =
      "epoch,project,success,raised,target,funded_rate,marketing_pool,"
      "production_fund,capital_returned,labor_refunded,labor_burned\n";
  for (const Event& ev : events) {
    if (ev.op != "settle_project") continue;
    const Json& o = ev.payload.at("o");
    out += std::to_string(ev.epoch) + "," +
           ev.payload.at("i").at("project").get<std::string>() + "," +
           (o.at("success").get<bool>() ? "1" : "0") + "," +
           std::to_string(o.at("raised").get<Amount>()) + "," +
           std::to_string(o.at("target").get<Amount>()) + "," +
           rational_fixed(Rational::parse(o.at("funded_rate").get<std::string>()), 6) +
           "," + std::to_string(o.at("marketing_pool").get<Amount>()) + "," +
           std::to_string(o.at("production_fund").get<Amount>()) + "," +
           std::to_string(o.at("capital_returned").get<Amount>()) + "," +
           std::to_string(o.at("labor_refunded").get<Amount>()) + "," +
           std::to_string(o.at("labor_burned").get<Amount>()) + "\n";
  }
  return out;
}

std::string assembly_csv(const std::vector<Event>& events) {
  std::string out = "epoch,seat,role,holder,party\n";
  for (const Event& ev : events) {
    if (ev.op != "elect_assembly") continue;
    for (const Json& seat : ev.payload.at("o").at("seats")) {
      out += std::to_string(ev.epoch) + "," +
             std::to_string(seat.at("index").get<int>()) + "," +
             seat.at("role").get<std::string>() + "," +
             seat.at("holder").get<std::string>() + "," +
             seat.at("party").get<std::string>() + "\n";
    }
  }
  return out;
}

}  // namespace

std::string report_csv(const std::vector<Event>& events, const std::string& kind) {
  if (kind == "metrics") return metrics_csv(events);
  if (kind == "credit") return credit_csv(events);
  if (kind == "settlements") return settlements_csv(events);
  if (kind == "assembly") return assembly_csv(events);
  fail(Errc::UnknownKind, "report kind '" + kind +
                              "' (expected metrics|credit|settlements|assembly)");
}

}  // namespace dcc
