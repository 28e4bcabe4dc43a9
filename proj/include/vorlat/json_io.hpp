#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "vorlat/lattice.hpp"
#include "vorlat/lm_family.hpp"
#include "vorlat/planar.hpp"
#include "vorlat/relevant.hpp"

namespace vorlat {

// ordered_json keeps insertion order, so dumps are stable across runs.
using json = nlohmann::ordered_json;

json to_json(const Basis& basis);
// Accepts {"columns": [[...], ...]} with an optional consistency-checked
// "dim"; throws InputError on malformed content.
Basis basis_from_json(const json& j);

json to_json(const LatticeVector& v);
json to_json(const RelevantReport& report);
json to_json(const TheoremReport& report);
json to_json(const Cell2D& cell, const std::vector<Facet2D>& facets);
json to_json(const L1FamilyReport& report);

// Throws IoError if the file cannot be read, InputError if it is not JSON.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
void write_json_file(const std::string& path, const json& j);  // 2-space indent

}  // namespace vorlat
