// Copyright 2026 The dualstat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dualstat/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "dualstat/errors.hpp"

namespace dualstat {

using nlohmann::json;

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[32];
  // Adding +0.0 folds -0.0 into 0 so printed zeros carry no sign.
  std::snprintf(buf, sizeof(buf), "%.12g", v + 0.0);
  return buf;
}

double round_real(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_real(v).c_str(), nullptr);
}

json real_to_json(double v) {
  if (std::isfinite(v)) return round_real(v);
  return format_real(v);
}

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw DomainError("expected a number or an infinity token, got " + j.dump());
}

json to_json(const ConfidenceInterval& ci) {
  return json{{"lower", real_to_json(ci.lower)},
              {"upper", real_to_json(ci.upper)},
              {"level", real_to_json(ci.level)},
              {"policy", std::string(policy_name(ci.policy))},
              {"achieved", real_to_json(ci.achieved)}};
}

ConfidenceInterval interval_from_json(const json& j) {
  ConfidenceInterval ci;
  ci.lower = real_from_json(j.at("lower"));
  ci.upper = real_from_json(j.at("upper"));
  ci.level = real_from_json(j.at("level"));
  const auto policy = policy_from_name(j.at("policy").get<std::string>());
  if (!policy) throw DomainError("unknown interval policy");
  ci.policy = *policy;
  ci.achieved = real_from_json(j.at("achieved"));
  return ci;
}

std::string interval_csv_header() { return "lower,upper,level,policy,achieved"; }

std::string to_csv_line(const ConfidenceInterval& ci) {
  std::ostringstream out;
  out << format_real(ci.lower) << ',' << format_real(ci.upper) << ',' << format_real(ci.level)
      << ',' << policy_name(ci.policy) << ',' << format_real(ci.achieved);
  return out.str();
}

json to_json(const IdentityReport& report) {
  json inputs = json::object();
  for (const auto& in : report.inputs) {
    if (in.integral) {
      inputs[in.name] = static_cast<std::int64_t>(in.value);
    } else {
      inputs[in.name] = real_to_json(in.value);
    }
  }
  json terms = json::array();
  for (const auto& term : report.terms) {
    terms.push_back({{"name", term.name}, {"value", real_to_json(term.value)}});
  }
  return json{{"identity_id", std::string(identity_tag(report.id))},
              {"inputs", inputs},
              {"terms", terms},
              {"rhs", real_to_json(report.rhs)},
              {"residual", real_to_json(report.residual)}};
}

IdentityReport report_from_json(const json& j) {
  IdentityReport report;
  const auto id = identity_from_tag(j.at("identity_id").get<std::string>());
  if (!id) throw DomainError("unknown identity id");
  report.id = *id;
  for (const auto& [name, value] : j.at("inputs").items()) {
    report.inputs.push_back({name, real_from_json(value), value.is_number_integer()});
  }
  for (const auto& term : j.at("terms")) {
    report.terms.push_back({term.at("name").get<std::string>(), real_from_json(term.at("value"))});
  }
  report.rhs = real_from_json(j.at("rhs"));
  report.residual = real_from_json(j.at("residual"));
  return report;
}

json to_json(const ReconstructionResult& result) {
  json edges = json::array();
  for (double e : result.histogram.edges) edges.push_back(real_to_json(e));
  json mass = json::array();
  for (double m : result.model_mass) mass.push_back(real_to_json(m));
  return json{{"accepted", result.accepted},
              {"trials", result.trials},
              {"acceptance_rate", real_to_json(result.acceptance_rate)},
              {"ks_statistic", real_to_json(result.ks_statistic)},
              {"ks_threshold", real_to_json(result.ks_threshold)},
              {"pass", result.pass},
              {"chi2", real_to_json(result.chi2)},
              {"chi2_dof", result.chi2_dof},
              {"histogram",
               {{"edges", edges}, {"counts", result.histogram.counts}, {"model_mass", mass}}}};
}

ReconstructionResult result_from_json(const json& j) {
  ReconstructionResult result;
  result.accepted = j.at("accepted").get<std::uint64_t>();
  result.trials = j.at("trials").get<std::uint64_t>();
  result.acceptance_rate = real_from_json(j.at("acceptance_rate"));
  result.ks_statistic = real_from_json(j.at("ks_statistic"));
  result.ks_threshold = real_from_json(j.at("ks_threshold"));
  result.pass = j.at("pass").get<bool>();
  result.chi2 = real_from_json(j.at("chi2"));
  result.chi2_dof = j.at("chi2_dof").get<int>();
  const auto& h = j.at("histogram");
  for (const auto& e : h.at("edges")) result.histogram.edges.push_back(real_from_json(e));
  result.histogram.counts = h.at("counts").get<std::vector<std::uint64_t>>();
  for (const auto& m : h.at("model_mass")) result.model_mass.push_back(real_from_json(m));
  return result;
}

std::string histogram_csv(const ReconstructionResult& result) {
  std::ostringstream out;
  out << "edge_low,edge_high,count,model_mass\n";
  const auto& h = result.histogram;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << format_real(h.edges[i]) << ',' << format_real(h.edges[i + 1]) << ',' << h.counts[i]
        << ',' << format_real(i < result.model_mass.size() ? result.model_mass[i] : 0.0) << '\n';
  }
  return out.str();
}

}  // namespace dualstat
