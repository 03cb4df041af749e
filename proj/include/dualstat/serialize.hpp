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

///
/// \file serialize.hpp
///
/// JSON and CSV encodings of intervals, identity reports and reconstruction
/// results.
///
/// Reals are written with 12 significant digits (printf rounding, which is
/// round-half-even on exact ties). Infinities become the strings "inf" and
/// "-inf" in JSON and the same bare tokens in CSV.
///
#ifndef DUALSTAT_SERIALIZE_HPP_
#define DUALSTAT_SERIALIZE_HPP_

#include <string>

#include "dualstat/identities.hpp"
#include "dualstat/intervals.hpp"
#include "dualstat/reconstruct.hpp"
#include "json.hpp"

namespace dualstat {

/// "%.12g", or "inf" / "-inf" / "nan".
std::string format_real(double v);

/// v rounded to 12 significant digits.
double round_real(double v);

/// Rounded JSON number, or the "inf" / "-inf" string token.
nlohmann::json real_to_json(double v);
double real_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConfidenceInterval& ci);
ConfidenceInterval interval_from_json(const nlohmann::json& j);

/// "lower,upper,level,policy,achieved".
std::string interval_csv_header();
std::string to_csv_line(const ConfidenceInterval& ci);

nlohmann::json to_json(const IdentityReport& report);
IdentityReport report_from_json(const nlohmann::json& j);

/// Summary fields plus the histogram (edges, counts, model_mass). The
/// sample list is not serialized.
nlohmann::json to_json(const ReconstructionResult& result);
ReconstructionResult result_from_json(const nlohmann::json& j);

/// One row per bin under the header "edge_low,edge_high,count,model_mass".
std::string histogram_csv(const ReconstructionResult& result);

}  // namespace dualstat

#endif  // DUALSTAT_SERIALIZE_HPP_
