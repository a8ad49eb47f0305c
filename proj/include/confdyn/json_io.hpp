#pragma once

// JSON/CSV wire formats. Every JSON artifact carries "schema": "1"; Fourier
// series travel as (n, re, im) triples sorted by frequency and traces as CSV
// with header "k,S_k". Writers emit key order and float formatting
// deterministically so identical inputs give byte-identical files.

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "confdyn/constraint.hpp"
#include "confdyn/flows.hpp"
#include "confdyn/fourier.hpp"
#include "confdyn/obstruction.hpp"
#include "confdyn/rotation.hpp"

namespace confdyn {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

Json series_to_json(const FourierSeries& s);
FourierSeries series_from_json(const Json& j);

Json regularity_to_json(const RegularityReport& r);
Json trace_to_json(const BirkhoffTrace& t);
void trace_to_csv(const BirkhoffTrace& t, std::ostream& out);
Json gh_report_to_json(const GHReport& r);
Json ladder_to_json(const FrequencyLadder& ladder, const RotationNumber& theta);
Json rotation_number_to_json(const RotationNumber& theta);
Json pullback_report_to_json(const PullbackReport& r);
Json obstruction_verdict_to_json(const ObstructionVerdict& v);
Json fixed_point_search_to_json(const FixedPointSearch& s);
Json constraint_report_to_json(const AverageReport& a, const JensenReport& j);

// Serializes with two-space indentation and a trailing newline.
void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

}  // namespace confdyn
