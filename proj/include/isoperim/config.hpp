#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isoperim/grid_measure.hpp"
#include "isoperim/inequality_tests.hpp"
#include "isoperim/line_measure.hpp"
#include "isoperim/rates.hpp"

namespace isoperim {

/// Parses a JSON document, rethrowing parse errors as invalid_argument with
/// the source name attached.
json parse_json_text(const std::string& text, const std::string& source);
json load_json_file(const std::string& path);

/// Required "measure" object: a potential recipe with optional
/// truncation_scale and table_size fields alongside it.
LineMeasure measure_from_config(const json& cfg);

/// Rate configs: constant {value}, power-family {p}, from-measure,
/// from-potential {potential}. from-measure needs the run potential.
RateFunction rate_from_config(const json& rate_cfg, const Potential* measure_potential);

/// Beta configs: constant {value}, from-rate {rate}, from-measure,
/// reciprocal-one-plus-fplus {f, scale}.
BetaFunction beta_from_config(const json& beta_cfg, const Potential* measure_potential);

/// F configs: log {c_f}, shifted-power-log {q, c_f}.
FSpec fspec_from_config(const json& fspec_cfg);

/// Optional "grid" object {points, window}; window defaults to the
/// truncation window of the measure.
GridMeasure grid_from_config(const LineMeasure& m, const json& cfg);

/// Optional "family" object {seed, bumps, ramps, polynomials, adversarial};
/// the seed override, when present, wins over the config value.
TrialFamily family_from_config(const json& cfg, std::optional<std::uint64_t> seed_override);

/// Reads a numeric array field into a vector, with a field-naming error.
std::vector<double> number_list(const json& j, const std::string& field);

/// Optional scalar fields with field-naming type errors.
double config_number(const json& j, const std::string& field, double fallback);
int config_int(const json& j, const std::string& field, int fallback);

/// Interval sets: arrays of [lo, hi] pairs; endpoints may be numbers or the
/// strings "inf" / "-inf".
std::vector<IntervalSet> interval_sets_from_config(const json& cfg, const LineMeasure& m);

}  // namespace isoperim
