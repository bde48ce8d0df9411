// JSON persistence for diagrams and small auxiliary values.
//
// The diagram format, version 1:
//   {
//     "version": 1,
//     "crossings": [{"id": 0, "over_axis": 1, "label": ""}, ...],
//     "edges": [[dart, dart], ...],          // partner pairs, smaller first
//     "outer_face": <dart>,                  // minimal outer-orbit dart, -1
//                                            //   for crossingless diagrams
//     "outer_marks": [<dart>, ...],          // present when >1 piece
//     "circles": [{"label": "", "anchor": -1}, ...],  // present when any
//     "component_labels": ["...", ...]
//   }
// Unlike the pd text form, this carries the choice of unbounded region and
// circle placement, so load(save(d)) reproduces d exactly.
//
// Assignments are objects keyed by the variable index in decimal text:
// {"1": true, "2": false}.  Matrices are arrays of integer rows.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "linkred/diagram.hpp"

namespace linkred {

nlohmann::ordered_json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);  // throws on bad input

nlohmann::ordered_json assignment_to_json(const std::map<int, bool>& a);
std::map<int, bool> assignment_from_json(const nlohmann::json& j);

using IntMatrix = std::vector<std::vector<long long>>;
nlohmann::ordered_json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const nlohmann::json& j);

// Fixed rendering (two-space indent, trailing newline) so identical values
// produce identical bytes.
std::string dump_json(const nlohmann::ordered_json& j);
void write_json_file(const std::string& path, const nlohmann::ordered_json& j);
nlohmann::json read_json_file(const std::string& path);  // throws

}  // namespace linkred
