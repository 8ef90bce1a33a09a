// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ssw/evolve.hpp"
#include "ssw/linop.hpp"
#include "ssw/spectrum.hpp"
#include "ssw/verify.hpp"

namespace ssw {

using Json = nlohmann::ordered_json;

/// Columns tau,full_norm,stable_norm,unstable_coeff; LF endings, dot decimal.
void write_trace_csv(std::ostream& out, const EvolutionTrace& trace);
void write_trace_csv_file(const std::string& path, const EvolutionTrace& trace);

Json trace_meta_json(const EvolutionTrace& trace);
Json spectrum_json(const SpectrumReport& report);
Json rate_report_json(const RateReport& report);
Json check_results_json(const std::vector<CheckResult>& results);

void write_json_file(const std::string& path, const Json& j);

/// FNV-1a hash of a configuration string, hex-encoded; used to name run
/// outputs so concurrent sweeps do not contend.
std::string run_hash(const std::string& text);

}  // namespace ssw
