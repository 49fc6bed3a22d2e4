#pragma once

#include <string>

#include <json.hpp>

#include "ksep/dataset.hpp"
#include "ksep/enumeration.hpp"
#include "ksep/learner.hpp"
#include "ksep/profile.hpp"

namespace ksep {

// All reports use insertion-ordered JSON and carry no timestamps, so equal
// inputs produce byte-identical output.
using json = nlohmann::ordered_json;

json profile_json(const ProjectionProfile& p);
json point_profile_json(const PointProfile& p);
json census_json(const SeparabilityCensus& c);
json direction_json(const Direction& d);
json table1_json(const PerDirectionReport& rep);
json model_json(const IntervalModel& m, const FitReport& rep, const TrainConfig& cfg);
json cv_json(const CVResult& r);

std::string census_csv(const SeparabilityCensus& c);
std::string table1_csv(const PerDirectionReport& rep);

// Human-oriented run pattern, e.g. "++|-|++|---" (vertex counts).
std::string run_pattern_str(const std::vector<RunEntry>& runs);

}  // namespace ksep
