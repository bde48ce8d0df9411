#include "linkred/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace linkred {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json diagram_to_json(const Diagram& d) {
  ordered_json j;
  j["version"] = 1;
  j["crossings"] = ordered_json::array();
  for (int c = 0; c < d.num_crossings(); ++c) {
    ordered_json jc;
    jc["id"] = c;
    jc["over_axis"] = d.crossings[c].over_axis;
    jc["label"] = d.crossings[c].label;
    j["crossings"].push_back(std::move(jc));
  }
  j["edges"] = ordered_json::array();
  for (Dart a = 0; a < d.num_darts(); ++a) {
    Dart b = d.partner[a];
    if (a < b) j["edges"].push_back(ordered_json::array({a, b}));
  }
  Dart outer = kNoDart;
  for (Dart m : d.outer_marks)
    outer = (outer == kNoDart) ? m : std::min(outer, m);
  j["outer_face"] = outer;
  if (d.outer_marks.size() > 1) j["outer_marks"] = d.outer_marks;
  if (!d.circles.empty()) {
    j["circles"] = ordered_json::array();
    for (const auto& c : d.circles) {
      ordered_json jc;
      jc["label"] = c.label;
      jc["anchor"] = c.anchor;
      j["circles"].push_back(std::move(jc));
    }
  }
  j["component_labels"] = d.component_labels;
  return j;
}

Diagram diagram_from_json(const json& j) {
  if (!j.is_object() || j.value("version", 0) != 1)
    throw std::runtime_error("diagram json: unsupported version");
  Diagram d;
  for (const auto& jc : j.at("crossings")) {
    if (jc.at("id").get<int>() != (int)d.crossings.size())
      throw std::runtime_error("diagram json: crossing ids must be 0..n-1");
    Crossing c;
    c.over_axis = jc.at("over_axis").get<uint8_t>();
    c.label = jc.value("label", std::string{});
    d.crossings.push_back(std::move(c));
  }
  d.partner.assign(4 * d.crossings.size(), kNoDart);
  for (const auto& je : j.at("edges")) {
    Dart a = je.at(0).get<Dart>(), b = je.at(1).get<Dart>();
    if (a < 0 || b < 0 || a >= d.num_darts() || b >= d.num_darts() ||
        d.partner[a] != kNoDart || d.partner[b] != kNoDart || a == b)
      throw std::runtime_error("diagram json: bad edge list");
    d.partner[a] = b;
    d.partner[b] = a;
  }
  if (j.contains("outer_marks")) {
    d.outer_marks = j.at("outer_marks").get<std::vector<Dart>>();
  } else if (d.num_crossings() > 0) {
    Dart outer = j.at("outer_face").get<Dart>();
    if (outer < 0 || outer >= d.num_darts())
      throw std::runtime_error("diagram json: bad outer_face");
    d.outer_marks = {outer};
  }
  if (j.contains("circles")) {
    for (const auto& jc : j.at("circles")) {
      Circle c;
      c.label = jc.value("label", std::string{});
      c.anchor = jc.at("anchor").get<Dart>();
      d.circles.push_back(std::move(c));
    }
  }
  if (j.contains("component_labels"))
    d.component_labels = j.at("component_labels").get<std::vector<std::string>>();
  std::string err = validate_error(d);
  if (!err.empty()) throw std::runtime_error("diagram json: invalid: " + err);
  normalize_marks(d);
  return d;
}

ordered_json assignment_to_json(const std::map<int, bool>& a) {
  ordered_json j = ordered_json::object();
  for (const auto& [var, val] : a) j[std::to_string(var)] = val;
  return j;
}

std::map<int, bool> assignment_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("assignment json: not an object");
  std::map<int, bool> a;
  for (auto it = j.begin(); it != j.end(); ++it) {
    size_t pos = 0;
    int var = std::stoi(it.key(), &pos);
    if (pos != it.key().size() || var <= 0)
      throw std::runtime_error("assignment json: bad variable '" + it.key() + "'");
    a[var] = it.value().get<bool>();
  }
  return a;
}

ordered_json matrix_to_json(const IntMatrix& m) {
  ordered_json j = ordered_json::array();
  for (const auto& row : m) j.push_back(row);
  return j;
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw std::runtime_error("matrix json: not an array");
  IntMatrix m;
  for (const auto& row : j) m.push_back(row.get<std::vector<long long>>());
  for (const auto& row : m)
    if (row.size() != m.size())
      throw std::runtime_error("matrix json: not square");
  return m;
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << dump_json(j);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return json::parse(in);
}

}  // namespace linkred
