#pragma once

/**
 * JSON and CSV wire formats.
 *
 * Integer values that may exceed 2^53 are emitted as decimal strings so that
 * JSON consumers with double-backed numbers cannot corrupt them; both number
 * and string forms are accepted on input.
 */

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ramlocus/density.hpp"
#include "ramlocus/locus.hpp"
#include "ramlocus/tame.hpp"

namespace ramlocus {

using json = nlohmann::json;

// key/value pairs echoed as "# key: value" lines ahead of CSV data
using CsvComments = std::vector<std::pair<std::string, std::string>>;

json nat_to_json(const Nat& v);
Nat nat_from_json(const json& j);

std::string format_double(double v);  // shortest round-trip-safe, locale-free

// {"p": .., "n": .., "m": .., "entries": [row-major]}
json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const json& j);

// {"p": .., "n": .., "q": .., "sigma": [[..],[..]], "tau": [[..],[..]]}
json tame_pair_to_json(const TamePair& pair);
TamePair tame_pair_from_json(const json& j);

json locus_record_to_json(const LocusRecord& rec);
json locus_report_to_json(const LocusReport& report);
std::string locus_report_to_csv(const LocusReport& report, const CsvComments& comments);

json density_trace_to_json(const SimConfig& config, const DensityTrace& trace);
std::string density_trace_to_csv(const DensityTrace& trace, const CsvComments& comments);

}  // namespace ramlocus
