#include "linkred/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace linkred {

namespace {

// Appends a value as two bytes (diagram dart counts stay far below 2^16).
void put16(std::string& out, int v) {
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

}  // namespace

// ---- traversal -----------------------------------------------------------

std::vector<Dart> face_orbit(const Diagram& d, Dart dart) {
  std::vector<Dart> orbit;
  Dart cur = dart;
  do {
    orbit.push_back(cur);
    cur = rot_ccw(d.partner[cur]);
  } while (cur != dart);
  // Start the cycle at its minimal dart so callers see a stable ordering.
  auto minpos = std::min_element(orbit.begin(), orbit.end());
  std::rotate(orbit.begin(), minpos, orbit.end());
  return orbit;
}

Dart face_id_of(const Diagram& d, Dart dart) {
  Dart best = dart;
  Dart cur = rot_ccw(d.partner[dart]);
  while (cur != dart) {
    best = std::min(best, cur);
    cur = rot_ccw(d.partner[cur]);
  }
  return best;
}

bool face_is_outer(const Diagram& d, Dart dart) {
  Dart id = face_id_of(d, dart);
  for (Dart m : d.outer_marks)
    if (face_id_of(d, m) == id) return true;
  return false;
}

std::vector<FaceWalk> faces(const Diagram& d) {
  std::vector<FaceWalk> result;
  std::vector<char> seen(d.num_darts(), 0);
  for (Dart start = 0; start < d.num_darts(); ++start) {
    if (seen[start]) continue;
    FaceWalk f;
    f.corners = face_orbit(d, start);
    f.id = f.corners.front();
    for (Dart c : f.corners) seen[c] = 1;
    result.push_back(std::move(f));
  }
  std::set<Dart> outer_ids;
  for (Dart m : d.outer_marks) outer_ids.insert(face_id_of(d, m));
  for (auto& f : result) f.outer = outer_ids.count(f.id) > 0;
  std::sort(result.begin(), result.end(),
            [](const FaceWalk& a, const FaceWalk& b) { return a.id < b.id; });
  return result;
}

std::vector<std::vector<Dart>> components(const Diagram& d) {
  std::vector<std::vector<Dart>> comps;
  std::vector<char> seen(d.num_darts(), 0);
  for (Dart start = 0; start < d.num_darts(); ++start) {
    if (seen[start]) continue;
    // Walk the strand in the orientation whose entry darts include `start`.
    std::vector<Dart> cycle;
    Dart cur = start;
    do {
      cycle.push_back(cur);
      seen[cur] = 1;
      seen[strand_exit(cur)] = 1;  // reverse-orientation entry dart
      cur = d.partner[strand_exit(cur)];
    } while (cur != start);
    comps.push_back(std::move(cycle));
  }
  return comps;
}

int component_count(const Diagram& d) {
  return static_cast<int>(components(d).size() + d.circles.size());
}

int component_index_of(const Diagram& d, Dart dart) {
  auto comps = components(d);
  for (size_t i = 0; i < comps.size(); ++i) {
    for (Dart e : comps[i])
      if (e == dart || strand_exit(e) == dart) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::vector<int>> pieces(const Diagram& d) {
  int n = d.num_crossings();
  std::vector<int> group(n, -1);
  std::vector<std::vector<int>> out;
  for (int c = 0; c < n; ++c) {
    if (group[c] >= 0) continue;
    int g = static_cast<int>(out.size());
    std::vector<int> stack{c}, members;
    group[c] = g;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      members.push_back(cur);
      for (int s = 0; s < 4; ++s) {
        int nb = crossing_of(d.partner[dart_of(cur, s)]);
        if (group[nb] < 0) {
          group[nb] = g;
          stack.push_back(nb);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

int piece_index_of(const Diagram& d, int crossing) {
  auto ps = pieces(d);
  for (size_t i = 0; i < ps.size(); ++i)
    if (std::binary_search(ps[i].begin(), ps[i].end(), crossing))
      return static_cast<int>(i);
  return -1;
}

// ---- validation ----------------------------------------------------------

std::string validate_error(const Diagram& d) {
  int nd = d.num_darts();
  if (nd != 4 * d.num_crossings()) return "dart-count";
  for (Dart x = 0; x < nd; ++x) {
    Dart p = d.partner[x];
    if (p < 0 || p >= nd) return "partner-range";
    if (p == x) return "partner-fixed-point";
    if (d.partner[p] != x) return "partner-involution";
  }
  std::set<std::string> labels;
  for (const auto& c : d.crossings) {
    if (c.over_axis > 1) return "over-axis";
    if (!c.label.empty() && !labels.insert(c.label).second)
      return "duplicate-crossing-label";
  }

  auto ps = pieces(d);
  // Per-piece planarity: V - E + F = 2 with E = 2V forces F = V + 2.
  std::vector<int> piece_of(d.num_crossings());
  for (size_t i = 0; i < ps.size(); ++i)
    for (int c : ps[i]) piece_of[c] = static_cast<int>(i);
  std::vector<int> face_count(ps.size(), 0);
  {
    std::vector<char> seen(nd, 0);
    for (Dart s = 0; s < nd; ++s) {
      if (seen[s]) continue;
      for (Dart c : face_orbit(d, s)) seen[c] = 1;
      face_count[piece_of[crossing_of(s)]]++;
    }
  }
  for (size_t i = 0; i < ps.size(); ++i)
    if (face_count[i] != static_cast<int>(ps[i].size()) + 2)
      return "non-planar-piece";

  if (d.outer_marks.size() != ps.size()) return "outer-mark-count";
  std::set<int> marked;
  for (Dart m : d.outer_marks) {
    if (m < 0 || m >= nd) return "outer-mark-range";
    if (!marked.insert(piece_of[crossing_of(m)]).second)
      return "outer-mark-duplicate-piece";
  }

  std::set<Dart> outer_ids;
  for (Dart m : d.outer_marks) outer_ids.insert(face_id_of(d, m));
  std::set<std::string> comp_labels;
  for (const auto& circ : d.circles) {
    if (circ.anchor != kNoDart) {
      if (circ.anchor < 0 || circ.anchor >= nd) return "circle-anchor-range";
      if (outer_ids.count(face_id_of(d, circ.anchor)))
        return "circle-anchor-on-outer-face";
    }
    if (!circ.label.empty() && !comp_labels.insert(circ.label).second)
      return "duplicate-component-label";
  }
  if (!d.component_labels.empty()) {
    if (d.component_labels.size() != components(d).size())
      return "component-label-count";
    for (const auto& l : d.component_labels)
      if (!l.empty() && !comp_labels.insert(l).second)
        return "duplicate-component-label";
  }
  return "";
}

// ---- PD code -------------------------------------------------------------

Diagram from_pd_code(const std::string& text, int extra_circles) {
  Diagram d;
  int header_circles = 0;
  std::istringstream in(text);
  std::string tok;
  std::vector<std::array<long, 4>> tuples;
  while (in >> tok) {
    if (tok == "circles") {
      if (!(in >> header_circles) || header_circles < 0)
        throw std::runtime_error("pd: bad circles header");
      continue;
    }
    if (tok.size() < 10 || tok.substr(0, 2) != "X[" || tok.back() != ']')
      throw std::runtime_error("pd: malformed token '" + tok + "'");
    std::array<long, 4> t{};
    std::string body = tok.substr(2, tok.size() - 3);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream bs(body);
    for (int i = 0; i < 4; ++i)
      if (!(bs >> t[i]) || t[i] <= 0)
        throw std::runtime_error("pd: malformed token '" + tok + "'");
    std::string rest;
    if (bs >> rest) throw std::runtime_error("pd: malformed token '" + tok + "'");
    tuples.push_back(t);
  }

  int n = static_cast<int>(tuples.size());
  d.crossings.assign(n, Crossing{});  // slot 0 incoming under => over axis 1
  d.partner.assign(4 * n, kNoDart);
  std::map<long, std::vector<Dart>> edge_ends;
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s) edge_ends[tuples[c][s]].push_back(dart_of(c, s));
  for (const auto& [label, ends] : edge_ends) {
    if (ends.size() != 2)
      throw std::runtime_error("pd: edge label " + std::to_string(label) +
                               " appears " + std::to_string(ends.size()) +
                               " times");
    d.partner[ends[0]] = ends[1];
    d.partner[ends[1]] = ends[0];
  }

  // Planarity and outer-face selection need the face orbits.
  if (n > 0) {
    auto ps = pieces(d);
    std::vector<int> piece_of(n);
    for (size_t i = 0; i < ps.size(); ++i)
      for (int c : ps[i]) piece_of[c] = static_cast<int>(i);
    std::vector<int> face_count(ps.size(), 0);
    // Pick per piece the orbit with the most corners (ties: smallest dart) as
    // the face bounding the unbounded region; PD codes carry no outer info.
    std::vector<std::pair<int, Dart>> best(ps.size(), {-1, kNoDart});
    std::vector<char> seen(4 * n, 0);
    for (Dart s = 0; s < 4 * n; ++s) {
      if (seen[s]) continue;
      auto orbit = face_orbit(d, s);
      for (Dart c : orbit) seen[c] = 1;
      int p = piece_of[crossing_of(s)];
      face_count[p]++;
      int sz = static_cast<int>(orbit.size());
      if (sz > best[p].first) best[p] = {sz, orbit.front()};
    }
    for (size_t i = 0; i < ps.size(); ++i)
      if (face_count[i] != static_cast<int>(ps[i].size()) + 2)
        throw std::runtime_error("pd: non-planar rotation system");
    for (auto& [sz, id] : best) d.outer_marks.push_back(id);
    std::sort(d.outer_marks.begin(), d.outer_marks.end());
  }

  for (int i = 0; i < header_circles + extra_circles; ++i)
    d.circles.push_back(Circle{});

  std::string err = validate_error(d);
  if (!err.empty()) throw std::runtime_error("pd: invalid diagram: " + err);
  return d;
}

std::string to_pd_code(const Diagram& d) {
  // Edge numbers, consecutive along each component in default orientation;
  // edge k is the arc leaving the k-th pass of the walk.
  std::vector<long> edge_num(d.num_darts(), 0);
  long next = 1;
  for (const auto& comp : components(d)) {
    for (Dart entry : comp) {
      Dart exit = strand_exit(entry);
      edge_num[exit] = next;
      edge_num[d.partner[exit]] = next;
      ++next;
    }
  }
  // One tuple per crossing, anchored at the under-strand entry dart, emitted
  // in order of that dart's incoming edge number.
  std::vector<char> is_entry(d.num_darts(), 0);
  for (const auto& comp : components(d))
    for (Dart e : comp) is_entry[e] = 1;
  std::vector<std::pair<long, std::string>> items;
  for (int c = 0; c < d.num_crossings(); ++c) {
    int under = d.crossings[c].over_axis ^ 1;
    Dart du = dart_of(c, under);
    if (!is_entry[du]) du = dart_of(c, under + 2);
    std::ostringstream t;
    t << "X[";
    for (int i = 0; i < 4; ++i) {
      if (i) t << ',';
      t << edge_num[(du & ~3) | ((du + i) & 3)];
    }
    t << ']';
    items.emplace_back(edge_num[du], t.str());
  }
  std::sort(items.begin(), items.end());
  std::ostringstream out;
  bool first = true;
  if (!d.circles.empty()) {
    out << "circles " << d.circles.size();
    first = false;
  }
  for (const auto& [key, tok] : items) {
    if (!first) out << ' ';
    out << tok;
    first = false;
  }
  return out.str();
}

// ---- canonical form ------------------------------------------------------

namespace {

// Breadth-first relabeling of one piece anchored at `start`: crossings are
// numbered in discovery order, darts within a crossing by rotation from the
// discovery dart, and the trace records the relabeled partner involution,
// the over-strand bit of each anchor, and the relabeled outer-face id.
std::string piece_trace(const Diagram& d, const std::vector<int>& piece,
                        Dart start, Dart outer_id) {
  int v = static_cast<int>(piece.size());
  std::vector<int> order(d.num_crossings(), -1);
  std::vector<int> anchor(d.num_crossings(), -1);
  std::vector<int> disc;  // crossing index per new number
  disc.reserve(v);
  auto discover = [&](Dart via) {
    int c = crossing_of(via);
    order[c] = static_cast<int>(disc.size());
    anchor[c] = slot_of(via);
    disc.push_back(c);
  };
  auto new_id = [&](Dart od) {
    int c = crossing_of(od);
    return 4 * order[c] + ((slot_of(od) - anchor[c]) & 3);
  };
  discover(start);
  for (int nd = 0; nd < 4 * v; ++nd) {
    int c = disc[nd / 4];
    Dart od = dart_of(c, (anchor[c] + nd % 4) & 3);
    Dart pd = d.partner[od];
    if (order[crossing_of(pd)] < 0) discover(pd);
  }
  std::string tr;
  tr.reserve(8 * v + v + 2);
  for (int nd = 0; nd < 4 * v; ++nd) {
    int c = disc[nd / 4];
    Dart od = dart_of(c, (anchor[c] + nd % 4) & 3);
    put16(tr, new_id(d.partner[od]));
  }
  for (int i = 0; i < v; ++i) {
    int c = disc[i];
    tr.push_back(
        static_cast<char>('0' + ((anchor[c] - d.crossings[c].over_axis) & 1)));
  }
  int outer_new = 1 << 30;
  for (Dart od : face_orbit(d, outer_id)) outer_new = std::min(outer_new, new_id(od));
  put16(tr, outer_new);
  return tr;
}

}  // namespace

std::string canonical_code(const Diagram& d) {
  auto ps = pieces(d);
  std::vector<int> piece_of(d.num_crossings());
  for (size_t i = 0; i < ps.size(); ++i)
    for (int c : ps[i]) piece_of[c] = static_cast<int>(i);

  // Outer-orbit representative per piece.
  std::vector<Dart> outer_rep(ps.size(), kNoDart);
  for (Dart m : d.outer_marks) outer_rep[piece_of[crossing_of(m)]] = m;

  // Bounded-face circle counts per piece, keyed by face id.
  std::vector<std::map<Dart, int>> circ(ps.size());
  int outer_circles = 0;
  for (const auto& c : d.circles) {
    if (c.anchor == kNoDart)
      ++outer_circles;
    else
      circ[piece_of[crossing_of(c.anchor)]][face_id_of(d, c.anchor)]++;
  }

  std::vector<std::string> entries;
  for (size_t i = 0; i < ps.size(); ++i) {
    std::string best;
    // The minimal trace also fixes the relabeling used to name circle faces.
    std::vector<int> best_order, best_anchor;
    for (int c : ps[i]) {
      for (int s = 0; s < 4; ++s) {
        std::string tr = piece_trace(d, ps[i], dart_of(c, s), outer_rep[i]);
        if (best.empty() || tr < best) best = std::move(tr);
      }
    }
    if (!circ[i].empty()) {
      // Re-derive the winning relabeling to express circle-hosting faces in
      // canonical dart numbers.
      std::string chosen;
      for (int c : ps[i]) {
        for (int s = 0; s < 4; ++s) {
          Dart start = dart_of(c, s);
          if (piece_trace(d, ps[i], start, outer_rep[i]) != best) continue;
          std::vector<int> order(d.num_crossings(), -1),
              anchor(d.num_crossings(), -1);
          std::vector<int> disc;
          auto discover = [&](Dart via) {
            order[crossing_of(via)] = static_cast<int>(disc.size());
            anchor[crossing_of(via)] = slot_of(via);
            disc.push_back(crossing_of(via));
          };
          discover(start);
          for (int nd = 0; nd < 4 * static_cast<int>(ps[i].size()); ++nd) {
            int cc = disc[nd / 4];
            Dart od = dart_of(cc, (anchor[cc] + nd % 4) & 3);
            if (order[crossing_of(d.partner[od])] < 0) discover(d.partner[od]);
          }
          auto new_id = [&](Dart od) {
            return 4 * order[crossing_of(od)] +
                   ((slot_of(od) - anchor[crossing_of(od)]) & 3);
          };
          std::vector<std::pair<int, int>> placed;
          for (const auto& [fid, count] : circ[i]) {
            int nid = 1 << 30;
            for (Dart od : face_orbit(d, fid)) nid = std::min(nid, new_id(od));
            placed.emplace_back(nid, count);
          }
          std::sort(placed.begin(), placed.end());
          for (auto& [nid, count] : placed) {
            put16(chosen, nid);
            put16(chosen, count);
          }
          break;
        }
        if (!chosen.empty()) break;
      }
      best += "|c";
      best += chosen;
    }
    entries.push_back(std::move(best));
  }
  std::sort(entries.begin(), entries.end());
  std::string code;
  for (const auto& e : entries) {
    code += "P";
    code += e;
  }
  code += "|o";
  put16(code, outer_circles);
  return code;
}

// ---- misc ----------------------------------------------------------------

void normalize_marks(Diagram& d) {
  for (Dart& m : d.outer_marks) m = face_id_of(d, m);
  std::sort(d.outer_marks.begin(), d.outer_marks.end());
  for (Circle& c : d.circles)
    if (c.anchor != kNoDart) c.anchor = face_id_of(d, c.anchor);
}

Diagram crossing_change(const Diagram& d, int crossing) {
  if (crossing < 0 || crossing >= d.num_crossings())
    throw std::runtime_error("crossing_change: unknown crossing");
  Diagram out = d;
  out.crossings[crossing].over_axis ^= 1;
  return out;
}

int find_crossing_by_label(const Diagram& d, const std::string& label) {
  for (int c = 0; c < d.num_crossings(); ++c)
    if (d.crossings[c].label == label) return c;
  return -1;
}

}  // namespace linkred
