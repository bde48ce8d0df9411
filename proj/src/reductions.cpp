#include "linkred/reductions.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "gadget_data.hpp"
#include "linkred/invariants.hpp"
#include "linkred/json_io.hpp"

namespace linkred {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Open-diagram plumbing.  While a diagram is under construction its partner
// table may hold kNoDart holes ("stubs"); the helpers below keep the pairing
// symmetric and loudly reject double welds.
// ---------------------------------------------------------------------------

int add_crossing(Diagram& d, uint8_t over_axis, std::string label = {}) {
  d.crossings.push_back(Crossing{over_axis, std::move(label)});
  d.partner.resize(d.partner.size() + 4, kNoDart);
  return d.num_crossings() - 1;
}

void weld(Diagram& d, Dart a, Dart b) {
  if (d.partner[a] != kNoDart || d.partner[b] != kNoDart)
    throw std::logic_error("weld: dart already paired");
  d.partner[a] = b;
  d.partner[b] = a;
}

// Severs the edge through `a`, leaving both ends as stubs.
void cut_edge(Diagram& d, Dart a) {
  Dart b = d.partner[a];
  if (b == kNoDart) throw std::logic_error("cut_edge: dart not paired");
  d.partner[a] = kNoDart;
  d.partner[b] = kNoDart;
}

void require_edge(const Diagram& d, Dart u, Dart v, const char* what) {
  if (u < 0 || u >= d.num_darts() || d.partner[u] != v)
    throw std::logic_error(std::string(what) + ": expected edge is absent");
}

// ---------------------------------------------------------------------------
// Closed-strand passage builder.  A strand is a cyclic list of crossing
// passes; the first pass through a crossing runs slot 2 -> slot 0 and fixes
// the over-axis, the second runs slot 1 -> 3 or 3 -> 1 according to the
// crossing's bit in `bits`.  Used to search small alternating tangles.
// ---------------------------------------------------------------------------

struct Pass {
  int crossing = 0;
  bool over = false;
};

std::optional<Diagram> from_passages(const std::vector<std::vector<Pass>>& strands,
                                     int num_crossings, unsigned bits) {
  Diagram d;
  for (int c = 0; c < num_crossings; ++c) add_crossing(d, 0);
  std::vector<int> seen(num_crossings, 0);
  for (const auto& strand : strands) {
    std::vector<Dart> entries, exits;
    for (const Pass& p : strand) {
      int c = p.crossing;
      if (seen[c] == 0) {
        d.crossings[c].over_axis = p.over ? 0 : 1;
        entries.push_back(dart_of(c, 2));
        exits.push_back(dart_of(c, 0));
      } else if (seen[c] == 1) {
        // The second pass runs the other axis, so its over/under status is
        // already forced; reject inconsistent passage lists.
        if (p.over != (d.crossings[c].over_axis == 1)) return std::nullopt;
        int s_in = (bits >> c) & 1u ? 3 : 1;
        entries.push_back(dart_of(c, s_in));
        exits.push_back(strand_exit(entries.back()));
      } else {
        return std::nullopt;
      }
      ++seen[c];
    }
    for (size_t i = 0; i < entries.size(); ++i)
      weld(d, exits[i], entries[(i + 1) % entries.size()]);
  }
  for (int c = 0; c < num_crossings; ++c)
    if (seen[c] != 2) return std::nullopt;
  d.outer_marks = {0};  // provisional; callers re-mark
  if (!validate(d)) return std::nullopt;
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Frozen gadget access
// ---------------------------------------------------------------------------

const std::string& variable_gadget_source() { return variable_gadget_source_raw(); }

static GadgetTranscription load_transcription(const std::string& source) {
  const json j = json::parse(source);
  GadgetTranscription g;
  g.closed = diagram_from_json(j.at("diagram"));
  for (const auto& [name, ends] : j.at("cut_edges").items())
    g.cut_edges[name] = {ends.at(0).get<Dart>(), ends.at(1).get<Dart>()};
  for (const auto& entry : j.at("outer_cut_order"))
    g.boundary_order.push_back(entry.at("edge").get<std::string>());
  for (const auto& [name, ends] : g.cut_edges)
    require_edge(g.closed, ends.first, ends.second, "gadget cut edge");
  return g;
}

const GadgetTranscription& variable_gadget() {
  static const GadgetTranscription g = load_transcription(variable_gadget_source());
  return g;
}

const std::string& clause_gadget_source() { return clause_gadget_source_raw(); }

const ClauseGadget& clause_gadget() {
  static const ClauseGadget g = [] {
    const json j = json::parse(clause_gadget_source());
    ClauseGadget g;
    g.closed = diagram_from_json(j.at("diagram"));
    for (int i = 0; i < 3; ++i) {
      const json& r = j.at("rings").at(i);
      g.rings[i].outer_edge = {r.at("outer_edge").at(0).get<Dart>(),
                               r.at("outer_edge").at(1).get<Dart>()};
      g.rings[i].inner_edge = {r.at("inner_edge").at(0).get<Dart>(),
                               r.at("inner_edge").at(1).get<Dart>()};
      require_edge(g.closed, g.rings[i].outer_edge.first,
                   g.rings[i].outer_edge.second, "clause gadget outer edge");
      require_edge(g.closed, g.rings[i].inner_edge.first,
                   g.rings[i].inner_edge.second, "clause gadget inner edge");
    }
    return g;
  }();
  return g;
}

// ---------------------------------------------------------------------------
// Ring triple
// ---------------------------------------------------------------------------

static Diagram build_ring_triple() {
  // Crossings 0..5 = c12a, c12b, c23a, c23b, c31a, c31b where cNMx is shared
  // by strands N and M.  Each strand alternates over/under and meets its two
  // partners in interleaved order; dominance is cyclic (1 over 2 over 3
  // over 1).
  const std::vector<std::vector<Pass>> strands = {
      {{0, true}, {4, false}, {1, true}, {5, false}},
      {{2, true}, {0, false}, {3, true}, {1, false}},
      {{4, true}, {2, false}, {5, true}, {3, false}},
  };
  std::optional<Diagram> best;
  std::string best_code;
  for (unsigned bits = 0; bits < 64; ++bits) {
    auto cand = from_passages(strands, 6, bits);
    if (!cand) continue;
    Diagram& d = *cand;
    if (components(d).size() != 3) continue;
    if (linking_number(d, 0, 1) != 0 || linking_number(d, 1, 2) != 0 ||
        linking_number(d, 0, 2) != 0)
      continue;
    // Outer face: a three-cornered face touching all three strands, smallest
    // orbit id.  (On the sphere the center and outer such faces are the two
    // symmetric choices; the id rule makes the pick deterministic.)
    Dart outer = kNoDart;
    for (const FaceWalk& f : faces(d)) {
      if (f.corners.size() != 3) continue;
      std::set<int> comps;
      for (Dart c : f.corners) comps.insert(component_index_of(d, c));
      if (comps.size() == 3) {
        outer = f.id;
        break;
      }
    }
    if (outer == kNoDart) continue;
    d.outer_marks = {outer};
    normalize_marks(d);
    if (!enumerate_moves(d, {MoveKind::IMinus, MoveKind::IIMinus}).empty()) continue;
    std::string code = canonical_code(d);
    if (!best || code < best_code) {
      best = d;
      best_code = std::move(code);
    }
  }
  if (!best) throw std::logic_error("ring_triple: search found no valid diagram");
  static const char* names[6] = {"c12a", "c12b", "c23a", "c23b", "c31a", "c31b"};
  for (int c = 0; c < 6; ++c) best->crossings[c].label = names[c];
  return *best;
}

Diagram ring_triple() {
  static const Diagram d = build_ring_triple();
  return d;
}

// ---------------------------------------------------------------------------
// Parallel doubling
// ---------------------------------------------------------------------------

namespace {

// Output block of input crossing c: crossings 4c+0 (NW), 4c+1 (NE),
// 4c+2 (SW), 4c+3 (SE), wired into a 2x2 grid.  For an input dart t the two
// parallel copies of its half-edge end at two stub darts of the block, one
// clockwise and one counterclockwise of t's sector.
Dart cw_stub(Dart t) {
  static constexpr int block[4] = {3, 1, 0, 2};  // slot -> block member
  return dart_of(4 * crossing_of(t) + block[slot_of(t)], slot_of(t));
}

Dart ccw_stub(Dart t) {
  static constexpr int block[4] = {1, 0, 2, 3};
  return dart_of(4 * crossing_of(t) + block[slot_of(t)], slot_of(t));
}

}  // namespace

ParallelDouble parallel_double(const Diagram& in) {
  if (std::string err = validate_error(in); !err.empty())
    throw std::invalid_argument("parallel_double: " + err);
  const int nc = in.num_crossings();
  ParallelDouble out;
  Diagram& d = out.d;
  out.blocks.resize(nc);
  out.left_of.assign(4 * nc, kNoDart);
  out.right_of.assign(4 * nc, kNoDart);
  for (int c = 0; c < nc; ++c) {
    const Crossing& src = in.crossings[c];
    for (int k = 0; k < 4; ++k) {
      std::string label =
          src.label.empty() ? std::string{} : src.label + ":" + std::to_string(k);
      out.blocks[c][k] = add_crossing(d, src.over_axis, std::move(label));
    }
    weld(d, dart_of(4 * c + 0, 0), dart_of(4 * c + 1, 2));  // north row
    weld(d, dart_of(4 * c + 2, 0), dart_of(4 * c + 3, 2));  // south row
    weld(d, dart_of(4 * c + 0, 3), dart_of(4 * c + 2, 1));  // west column
    weld(d, dart_of(4 * c + 1, 3), dart_of(4 * c + 3, 1));  // east column
  }
  for (const auto& comp : components(in)) {
    for (Dart t : comp) {
      Dart u = strand_exit(t);       // exit dart of this pass
      Dart v = in.partner[u];        // entry dart of the next pass
      weld(d, ccw_stub(u), cw_stub(v));  // copy on the left of the flow
      weld(d, cw_stub(u), ccw_stub(v));  // copy on the right
      out.left_of[t] = cw_stub(t);
      out.right_of[t] = ccw_stub(t);
      out.left_of[u] = ccw_stub(u);
      out.right_of[u] = cw_stub(u);
    }
  }
  for (Dart m : in.outer_marks) d.outer_marks.push_back(cw_stub(m));
  for (const Circle& c : in.circles) {
    Dart anchor = c.anchor == kNoDart ? kNoDart : cw_stub(c.anchor);
    for (int k = 0; k < 2; ++k) {
      std::string label =
          c.label.empty() ? std::string{} : c.label + ":" + std::to_string(k);
      d.circles.push_back(Circle{std::move(label), anchor});
    }
  }
  if (!in.component_labels.empty()) {
    auto comps_in = components(in);
    std::vector<std::string> labels(components(d).size());
    for (size_t k = 0; k < comps_in.size(); ++k) {
      const std::string& base = in.component_labels[k];
      if (base.empty()) continue;
      Dart t = comps_in[k].front();
      labels[component_index_of(d, out.left_of[t])] = base + ":l";
      labels[component_index_of(d, out.right_of[t])] = base + ":r";
    }
    d.component_labels = std::move(labels);
  }
  normalize_marks(d);
  if (std::string err = validate_error(d); !err.empty())
    throw std::logic_error("parallel_double: output invalid: " + err);
  return out;
}

// ---------------------------------------------------------------------------
// Twists and clasps
// ---------------------------------------------------------------------------

namespace {

// A pair of parallel edges under construction, in flow direction: the left
// copy runs lu -> lv, the right copy ru -> rv.
struct EdgePair {
  Dart lu, lv, ru, rv;
};

// Replaces the parallel edge pair with one full twist (two crossings) and
// returns the new parallel pair downstream of it.  `left_over` picks the
// twist chirality: whether the left strand crosses over at the first of the
// two crossings.
EdgePair insert_full_twist(Diagram& d, const EdgePair& e, bool left_over,
                           const std::string& label_prefix) {
  require_edge(d, e.lu, e.lv, "insert_full_twist(left)");
  require_edge(d, e.ru, e.rv, "insert_full_twist(right)");
  cut_edge(d, e.lu);
  cut_edge(d, e.ru);
  // Both crossings carry the same over-axis: each strand passes over exactly
  // once, which is what makes this a full twist (linking change +-1) rather
  // than a poke (linking change 0).
  int t1 = add_crossing(d, left_over ? 0 : 1, label_prefix + ":0");
  int t2 = add_crossing(d, left_over ? 0 : 1, label_prefix + ":1");
  weld(d, e.lu, dart_of(t1, 2));
  weld(d, e.ru, dart_of(t1, 3));
  weld(d, dart_of(t1, 0), dart_of(t2, 3));
  weld(d, dart_of(t1, 1), dart_of(t2, 2));
  weld(d, dart_of(t2, 1), e.lv);
  weld(d, dart_of(t2, 0), e.rv);
  return {dart_of(t2, 1), e.lv, dart_of(t2, 0), e.rv};
}

// Joins the two parallel copies into a single strand through a two-crossing
// clasp: upstream ends meet through one arc, downstream ends through the
// other, and the arcs cross twice with alternating over/under (so the clasp
// is not a cancellable pair).  Tries the four local wirings and keeps the
// first that is planar with both clasp crossings positive.
void insert_clasp(Diagram& d, const EdgePair& e, const std::string& label_a,
                  const std::string& label_b) {
  require_edge(d, e.lu, e.lv, "insert_clasp(left)");
  require_edge(d, e.ru, e.rv, "insert_clasp(right)");
  // Swapping which copy the joining arc leaves first mirrors the clasp, so
  // between the swap and the two free slots per crossing some wiring is both
  // planar and positive.
  for (int sw = 0; sw < 2; ++sw) {
    EdgePair f = sw ? EdgePair{e.ru, e.rv, e.lu, e.lv} : e;
    for (int qa = 0; qa < 2; ++qa) {
      for (int qb = 0; qb < 2; ++qb) {
        Diagram trial = d;
        cut_edge(trial, f.lu);
        cut_edge(trial, f.ru);
        int k1 = add_crossing(trial, 0, label_a);  // joining arc P over here
        int k2 = add_crossing(trial, 1, label_b);  // and under here
        weld(trial, f.lu, dart_of(k1, 2));
        weld(trial, dart_of(k1, 0), dart_of(k2, 2));
        weld(trial, dart_of(k2, 0), f.ru);
        int q2_in = qa ? 3 : 1;
        int q1_in = qb ? 3 : 1;
        weld(trial, f.rv, dart_of(k2, q2_in));
        weld(trial, strand_exit(dart_of(k2, q2_in)), dart_of(k1, q1_in));
        weld(trial, strand_exit(dart_of(k1, q1_in)), f.lv);
        if (!validate(trial)) continue;
        if (crossing_sign(trial, k1) != 1 || crossing_sign(trial, k2) != 1)
          continue;
        d = std::move(trial);
        return;
      }
    }
  }
  throw std::logic_error("insert_clasp: no planar positive wiring exists here");
}

// Clasped double of a crossing-free circle: a standalone two-crossing piece
// (one curl of each copy locked through the clasp), appended to `d` in the
// unbounded region.  Returns a dart of the new piece.
Dart append_clasp_curl(Diagram& d, const std::string& label_a,
                       const std::string& label_b) {
  for (int mirror = 0; mirror < 2; ++mirror) {
  for (int qa = 0; qa < 2; ++qa) {
    for (int qb = 0; qb < 2; ++qb) {
      Diagram trial = d;
      int k1 = add_crossing(trial, mirror ? 1 : 0, label_a);
      int k2 = add_crossing(trial, mirror ? 0 : 1, label_b);
      int q2_in = qa ? 3 : 1;
      int q1_in = qb ? 3 : 1;
      weld(trial, dart_of(k1, 0), dart_of(k2, 2));                  // joining arc
      weld(trial, strand_exit(dart_of(k2, q2_in)), dart_of(k1, q1_in));
      weld(trial, dart_of(k2, 0), dart_of(k2, q2_in));              // one cap
      weld(trial, strand_exit(dart_of(k1, q1_in)), dart_of(k1, 2));  // other cap
      // The new piece sits in the unbounded region; its widest face (the only
      // four-cornered one) faces outward.
      Dart first_new = dart_of(k1, 0);
      Dart outer = kNoDart;
      size_t best_corners = 0;
      for (const FaceWalk& f : faces(trial)) {
        if (f.id < first_new) continue;
        if (f.corners.size() > best_corners) {
          best_corners = f.corners.size();
          outer = f.id;
        }
      }
      if (outer == kNoDart) continue;
      trial.outer_marks.push_back(outer);
      normalize_marks(trial);
      if (!validate(trial)) continue;
      if (crossing_sign(trial, k1) != 1 || crossing_sign(trial, k2) != 1) continue;
      d = std::move(trial);
      return dart_of(k1, 0);
    }
  }
  }
  throw std::logic_error("append_clasp_curl: no planar positive wiring exists");
}

}  // namespace

Diagram whitehead_double(const Diagram& in) {
  if (std::string err = validate_error(in); !err.empty())
    throw std::invalid_argument("whitehead_double: " + err);
  for (const Circle& c : in.circles)
    if (c.anchor != kNoDart)
      throw std::invalid_argument(
          "whitehead_double: circle components must sit in the unbounded region");
  const auto comps_in = components(in);
  ParallelDouble pd = parallel_double(in);
  Diagram d = std::move(pd.d);
  d.component_labels.clear();
  d.circles.clear();  // doubled circles are rebuilt as clasped curls below

  std::vector<std::pair<Dart, std::string>> reps;  // dart in output, label
  for (size_t k = 0; k < comps_in.size(); ++k) {
    std::string name = k < in.component_labels.size() && !in.component_labels[k].empty()
                           ? in.component_labels[k]
                           : std::to_string(k);
    Dart t0 = comps_in[k].front();
    Dart u = strand_exit(t0);
    Dart v = in.partner[u];
    EdgePair e{pd.left_of[u], pd.left_of[v], pd.right_of[u], pd.right_of[v]};
    int la = component_index_of(d, e.lu);
    int ra = component_index_of(d, e.ru);
    // The copies link as much as the strand's writhe (blackboard framing).
    // Measure the linking change of one twist on a scratch copy, then insert
    // enough twists of the compensating chirality to cancel it.
    int lk0 = linking_number(d, la, ra);
    if (lk0 != 0) {
      Diagram scratch = d;
      insert_full_twist(scratch, e, /*left_over=*/true, "calibration");
      int delta = linking_number(scratch, la, ra) - lk0;
      if (delta != 1 && delta != -1)
        throw std::logic_error("whitehead_double: twist calibration failed");
      bool left_over = (delta * lk0 < 0);
      for (int i = 0; i < std::abs(lk0); ++i)
        e = insert_full_twist(d, e, left_over,
                              "twist[" + name + "]:" + std::to_string(i));
    }
    if (component_index_of(d, e.lu) != la || component_index_of(d, e.ru) != ra ||
        la == ra || linking_number(d, la, ra) != 0)
      throw std::logic_error("whitehead_double: twist compensation failed");
    insert_clasp(d, e, "clasp[" + name + "]a", "clasp[" + name + "]b");
    reps.emplace_back(e.lu, name);
  }
  for (size_t i = 0; i < in.circles.size(); ++i) {
    std::string name = !in.circles[i].label.empty()
                           ? in.circles[i].label
                           : std::to_string(comps_in.size() + i);
    Dart rep = append_clasp_curl(d, "clasp[" + name + "]a", "clasp[" + name + "]b");
    reps.emplace_back(rep, name);
  }

  std::vector<std::string> labels(components(d).size());
  bool any = false;
  for (const auto& [rep, name] : reps) {
    labels[component_index_of(d, rep)] = name;
    any = !name.empty() || any;
  }
  // Keep labels only when the input was labeled; plain inputs stay plain.
  if (!in.component_labels.empty() ||
      std::any_of(in.circles.begin(), in.circles.end(),
                  [](const Circle& c) { return !c.label.empty(); }))
    d.component_labels = std::move(labels);
  normalize_marks(d);
  if (std::string err = validate_error(d); !err.empty())
    throw std::logic_error("whitehead_double: output invalid: " + err);
  if (component_count(d) != static_cast<int>(comps_in.size() + in.circles.size()))
    throw std::logic_error("whitehead_double: component count changed");
  return d;
}

// ---------------------------------------------------------------------------
// Formula -> link compiler.
//
// Layout: the variable Hopf pairs and the clause ring triples sit on a
// west-to-east line, and every band connecting a ring to its component runs
// through the region south of that line.  A band is a pair of parallel
// strands following an L-shaped path: a vertical drop at the variable-side
// attachment, a horizontal rail at a depth of the band's own, and a vertical
// rise at the clause-side section.  Two bands cross if and only if their
// x-intervals strictly interleave; depths are assigned by interval width so
// nested intervals never touch (the wider band runs deeper).  Each crossing
// of two bands is a single 2x2 block of four crossings with one band passing
// cleanly over the other.
// ---------------------------------------------------------------------------

namespace {

// Position along a band's L-shaped path.  Phase 0 is the drop at the
// variable side (keyed by increasing depth), phase 1 the rail (keyed by
// increasing x), phase 2 the rise at the clause side (keyed by decreasing
// depth, stored negated).  Phase -1 marks the path start.
struct PathPos {
  int phase = 0;
  int key = 0;
  bool operator<(const PathPos& o) const {
    return phase != o.phase ? phase < o.phase : key < o.key;
  }
};

// One edge of a band strand, recorded in travel direction (variable side
// toward clause side): d.partner[from] == to.
struct BandEdge {
  Dart from = kNoDart;
  Dart to = kNoDart;
};

// A stretch of both band strands between consecutive crossing blocks.  The
// `first` strand is the one on the right of the direction of travel (west on
// the drop, south on the rail, east on the rise); the block stub tables
// below rely on that invariant.
struct BandSeg {
  BandEdge first, second;
};

struct Band {
  int zone = 0;    // variable-side attachment zone, west to east
  int clause = 0;  // 1-based clause index
  int slot = 0;    // 0..2 west-to-east section position at the clause
  int x_var = 0, x_sec = 0, depth = 0;
  std::map<PathPos, BandSeg> segs;  // keyed by segment start position
  bool built = false;
};

bool intervals_interleave(const Band& a, const Band& b) {
  return (a.x_var < b.x_var && b.x_var < a.x_sec && a.x_sec < b.x_sec) ||
         (b.x_var < a.x_var && a.x_var < b.x_sec && b.x_sec < a.x_sec);
}

// External stubs of a crossing block, as (member, slot) pairs; members are
// indexed 0=NW 1=NE 2=SW 3=SE and slots use the compass 0=E 1=N 2=W 3=S.
// `in` stubs receive the travel-earlier strand ends, `out` stubs are the new
// travel-later ends.  Indexed by the band's phase at the block.
struct PhaseStubs {
  int in_f_m, in_f_s, in_s_m, in_s_s;
  int out_f_m, out_f_s, out_s_m, out_s_s;
};
constexpr PhaseStubs kPhaseStubs[3] = {
    {0, 1, 1, 1, 2, 3, 3, 3},  // drop: first runs NW->SW, second NE->SE
    {2, 2, 0, 2, 3, 0, 1, 0},  // rail: first runs SW->SE, second NW->NE
    {3, 3, 2, 3, 1, 1, 0, 1},  // rise: first runs SE->NE, second SW->NW
};

// Four fresh crossings wired as a 2x2 grid: the vertical band runs the
// columns (slots 1/3), the rail band the rows (slots 0/2), so over_axis 0
// puts the rail on top and over_axis 1 the vertical band.
std::array<int, 4> make_block(Diagram& d, uint8_t over_axis,
                              const std::string& tag) {
  std::array<int, 4> m;
  for (int k = 0; k < 4; ++k)
    m[k] = add_crossing(d, over_axis, tag + ":" + std::to_string(k));
  weld(d, dart_of(m[0], 0), dart_of(m[1], 2));
  weld(d, dart_of(m[2], 0), dart_of(m[3], 2));
  weld(d, dart_of(m[0], 3), dart_of(m[2], 1));
  weld(d, dart_of(m[1], 3), dart_of(m[3], 1));
  return m;
}

// An edge a band can be spliced into, on the boundary of a template piece.
// `u_west` says the upstream dart is the geometric-west stub once the edge
// is cut with the band region on its outer side: the face orbit through a
// dart lies on the right of that dart's direction, so the outer face lies
// right of the flow exactly when the flow runs east.
struct AttachEdge {
  Dart u = kNoDart, v = kNoDart;  // flow direction: partner[u] == v
  bool u_west = false;
};

// Flips the section order read off a template's outer face walk.  The walk
// direction is a global convention; `false` means the walk already lists
// boundary sections west to east when the piece sits on the line with its
// attachment edges facing south (checked by the planarity assertions in the
// construction tests).
constexpr bool kBoundaryReversed = false;

AttachEdge attach_edge_at(const Diagram& d, const std::set<Dart>& entries,
                          Dart corner) {
  Dart a = corner, b = d.partner[corner];
  AttachEdge e;
  if (entries.count(a)) {
    e.u = b;
    e.v = a;
  } else {
    e.u = a;
    e.v = b;
  }
  e.u_west = face_is_outer(d, e.u);
  return e;
}

std::set<Dart> entry_darts(const Diagram& d) {
  std::set<Dart> entries;
  for (const auto& comp : components(d))
    entries.insert(comp.begin(), comp.end());
  return entries;
}

struct HopfTemplate {
  Diagram d;                      // two crossings, two circles
  std::array<AttachEdge, 2> sec;  // boundary edges, one per circle
};

const HopfTemplate& hopf_template() {
  static const HopfTemplate t = [] {
    HopfTemplate h;
    h.d = from_pd_code("X[4,1,3,2] X[2,3,1,4]");
    std::set<Dart> entries = entry_darts(h.d);
    for (const FaceWalk& f : faces(h.d)) {
      if (!f.outer) continue;
      if (f.corners.size() != 2)
        throw std::logic_error("hopf template: unexpected outer face");
      for (int i = 0; i < 2; ++i)
        h.sec[i] = attach_edge_at(h.d, entries, f.corners[i]);
    }
    if (component_index_of(h.d, h.sec[0].u) == component_index_of(h.d, h.sec[1].u))
      throw std::logic_error("hopf template: boundary edges share a circle");
    return h;
  }();
  return t;
}

struct RingTemplate {
  Diagram d;                      // six crossings, three rings
  std::array<AttachEdge, 3> sec;  // boundary sections in walk order
};

const RingTemplate& ring_template() {
  static const RingTemplate t = [] {
    RingTemplate r;
    r.d = ring_triple();
    std::set<Dart> entries = entry_darts(r.d);
    for (const FaceWalk& f : faces(r.d)) {
      if (!f.outer) continue;
      if (f.corners.size() != 3)
        throw std::logic_error("ring template: unexpected outer face");
      for (int i = 0; i < 3; ++i)
        r.sec[i] = attach_edge_at(r.d, entries, f.corners[i]);
    }
    return r;
  }();
  return t;
}

// Successive band splices into one component's attachment edge.  The east
// anchor stub stays fixed; every later splice cuts the edge just west of it,
// so bands spliced earlier end up farther west.
struct SpliceSite {
  Dart u = kNoDart, v = kNoDart;
  bool u_west = false;
  bool cut = false;
  Dart anchor = kNoDart;
};

// Returns the (west, east) stub darts of a fresh cut at the site.
std::pair<Dart, Dart> cut_next(Diagram& d, SpliceSite& s) {
  if (!s.cut) {
    cut_edge(d, s.u);
    s.cut = true;
    s.anchor = s.u_west ? s.v : s.u;
    return s.u_west ? std::make_pair(s.u, s.v) : std::make_pair(s.v, s.u);
  }
  Dart w = d.partner[s.anchor];
  cut_edge(d, s.anchor);
  return {w, s.anchor};
}

void check_three_sat(const CnfFormula& f, const char* who) {
  for (size_t j = 0; j < f.clauses.size(); ++j) {
    const Clause& c = f.clauses[j];
    std::string where = std::string(who) + ": malformed clause " + std::to_string(j + 1);
    if (c.size() != 3) throw std::invalid_argument(where + ": needs exactly 3 literals");
    std::set<int> seen;
    for (const Literal& l : c) {
      if (l.variable < 1 || l.variable > f.num_vars)
        throw std::invalid_argument(where + ": variable out of range");
      seen.insert(l.encoded());
      if (seen.count(-l.encoded()))
        throw std::invalid_argument(where + ": contains a variable and its negation");
    }
  }
}

}  // namespace

Diagram build_trivial_sublink_link(const CnfFormula& f) {
  check_three_sat(f, "build_trivial_sublink_link");
  const int n = f.num_vars;
  const int m = static_cast<int>(f.clauses.size());
  const HopfTemplate& H = hopf_template();
  const RingTemplate& R = ring_template();

  Diagram d;
  std::vector<Dart> pristine_marks;
  auto append_piece = [&](const Diagram& piece) {
    Dart off = d.num_darts();
    for (int c = 0; c < piece.num_crossings(); ++c)
      add_crossing(d, piece.crossings[c].over_axis, piece.crossings[c].label);
    for (Dart t = 0; t < piece.num_darts(); ++t)
      d.partner[off + t] = piece.partner[t] + off;
    for (Dart mk : piece.outer_marks) pristine_marks.push_back(mk + off);
    return off;
  };
  auto shifted = [](const AttachEdge& e, Dart off) {
    return AttachEdge{e.u + off, e.v + off, e.u_west};
  };

  // Variable pieces: one Hopf pair per variable, positive circle west.
  // Zone 2(i-1) is kappa[x_i], zone 2(i-1)+1 is kappa[!x_i].
  std::vector<SpliceSite> kappa(2 * n);
  std::vector<Dart> kappa_rep(2 * n, kNoDart);
  for (int i = 1; i <= n; ++i) {
    Dart off = append_piece(H.d);
    for (int k = 0; k < 2; ++k)
      d.crossings[off / 4 + k].label =
          "hopf[x" + std::to_string(i) + "]:" + std::to_string(k);
    for (int side = 0; side < 2; ++side) {
      const AttachEdge e = shifted(H.sec[kBoundaryReversed ? 1 - side : side], off);
      kappa[2 * (i - 1) + side] = SpliceSite{e.u, e.v, e.u_west, false, kNoDart};
      kappa_rep[2 * (i - 1) + side] = e.u;
    }
  }

  // Clause pieces: one ring triple per clause, east of every variable.
  std::vector<std::array<SpliceSite, 3>> section(m);
  for (int j = 1; j <= m; ++j) {
    Dart off = append_piece(R.d);
    for (int c = 0; c < R.d.num_crossings(); ++c)
      d.crossings[off / 4 + c].label += "[" + std::to_string(j) + "]";
    for (int slot = 0; slot < 3; ++slot) {
      const AttachEdge e =
          shifted(R.sec[kBoundaryReversed ? 2 - slot : slot], off);
      section[j - 1][slot] = SpliceSite{e.u, e.v, e.u_west, false, kNoDart};
    }
  }

  // Band list.  Within a clause, west-to-east section slots take the
  // literals in order of descending attachment zone, so same-clause bands
  // nest instead of crossing.
  const int zone_width = 3 * m + 4;
  const int clause_base = 2 * n * zone_width;
  std::vector<Band> bands;
  for (int j = 1; j <= m; ++j) {
    std::array<int, 3> order{0, 1, 2};
    auto zone_of = [&](int k) {
      const Literal& l = f.clauses[j - 1][k];
      return 2 * (l.variable - 1) + (l.negated ? 1 : 0);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return zone_of(a) > zone_of(b); });
    for (int slot = 0; slot < 3; ++slot) {
      Band b;
      b.zone = zone_of(order[slot]);
      b.clause = j;
      b.slot = slot;
      b.x_sec = clause_base + 8 * j + slot;
      bands.push_back(b);
    }
  }

  // Per-zone build order: clause descending, then slot descending.  Earlier
  // splices sit farther west, so same-component bands nest as well.
  std::vector<std::vector<int>> zone_order(2 * n);
  for (int b = 0; b < static_cast<int>(bands.size()); ++b)
    zone_order[bands[b].zone].push_back(b);
  for (int z = 0; z < 2 * n; ++z) {
    auto& ord = zone_order[z];
    std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
      return std::make_pair(-bands[a].clause, -bands[a].slot) <
             std::make_pair(-bands[b].clause, -bands[b].slot);
    });
    for (int r = 0; r < static_cast<int>(ord.size()); ++r)
      bands[ord[r]].x_var = z * zone_width + r;
  }

  // Depths by interval width: the wider band of a nested pair runs deeper,
  // so only strictly interleaved pairs meet.
  {
    std::vector<int> by_width(bands.size());
    for (size_t i = 0; i < bands.size(); ++i) by_width[i] = static_cast<int>(i);
    std::sort(by_width.begin(), by_width.end(), [&](int a, int b) {
      return std::make_tuple(bands[a].x_sec - bands[a].x_var, bands[a].clause,
                             bands[a].slot) <
             std::make_tuple(bands[b].x_sec - bands[b].x_var, bands[b].clause,
                             bands[b].slot);
    });
    for (size_t r = 0; r < by_width.size(); ++r)
      bands[by_width[r]].depth = static_cast<int>(r) + 1;
  }

  // Thread the bands.  Every crossing of two bands is realized when the
  // later of the two is built: the earlier band's segment map tells which
  // edge pair to cut.
  for (int z = 0; z < 2 * n; ++z) {
    for (int bi : zone_order[z]) {
      Band& P = bands[bi];
      struct Event {
        PathPos on_p, on_q;
        int q;
      };
      std::vector<Event> events;
      for (int qi = 0; qi < static_cast<int>(bands.size()); ++qi) {
        const Band& Q = bands[qi];
        if (!Q.built || !intervals_interleave(P, Q)) continue;
        Event ev;
        ev.q = qi;
        if (P.depth > Q.depth) {
          // P's vertical crosses Q's rail; pick whichever vertical of P
          // lies strictly inside Q's interval.
          bool west = Q.x_var < P.x_var && P.x_var < Q.x_sec;
          ev.on_p = west ? PathPos{0, Q.depth} : PathPos{2, -Q.depth};
          ev.on_q = PathPos{1, west ? P.x_var : P.x_sec};
        } else {
          bool west = P.x_var < Q.x_var && Q.x_var < P.x_sec;
          ev.on_p = PathPos{1, west ? Q.x_var : Q.x_sec};
          ev.on_q = west ? PathPos{0, P.depth} : PathPos{2, -P.depth};
        }
        events.push_back(ev);
      }
      std::sort(events.begin(), events.end(),
                [](const Event& a, const Event& b) { return a.on_p < b.on_p; });

      auto [cf, cs] = cut_next(d, kappa[z]);
      PathPos prev{-1, 0};
      for (const Event& ev : events) {
        Band& Q = bands[ev.q];
        const Band& vert = ev.on_p.phase == 1 ? Q : P;
        const Band& rail = ev.on_p.phase == 1 ? P : Q;
        // The band with the lexicographically smaller (clause, slot)
        // identity passes over at this block -- a uniform over-pass.
        bool rail_over = std::make_pair(rail.clause, rail.slot) <
                         std::make_pair(vert.clause, vert.slot);
        std::string tag = "b[" + std::to_string(vert.clause) + ":" +
                          std::to_string(vert.slot) + "x" +
                          std::to_string(rail.clause) + ":" +
                          std::to_string(rail.slot) + "]";
        auto blk = make_block(d, rail_over ? 0 : 1, tag);
        auto stub = [&](int member, int slot) { return dart_of(blk[member], slot); };

        const PhaseStubs& sp = kPhaseStubs[ev.on_p.phase];
        weld(d, cf, stub(sp.in_f_m, sp.in_f_s));
        weld(d, cs, stub(sp.in_s_m, sp.in_s_s));
        P.segs[prev] = BandSeg{{cf, stub(sp.in_f_m, sp.in_f_s)},
                               {cs, stub(sp.in_s_m, sp.in_s_s)}};
        cf = stub(sp.out_f_m, sp.out_f_s);
        cs = stub(sp.out_s_m, sp.out_s_s);
        prev = ev.on_p;

        auto it = Q.segs.upper_bound(ev.on_q);
        if (it == Q.segs.begin())
          throw std::logic_error("band routing: cut before path start");
        --it;
        BandSeg old = it->second;
        cut_edge(d, old.first.from);
        cut_edge(d, old.second.from);
        const PhaseStubs& sq = kPhaseStubs[ev.on_q.phase];
        weld(d, old.first.from, stub(sq.in_f_m, sq.in_f_s));
        weld(d, stub(sq.out_f_m, sq.out_f_s), old.first.to);
        weld(d, old.second.from, stub(sq.in_s_m, sq.in_s_s));
        weld(d, stub(sq.out_s_m, sq.out_s_s), old.second.to);
        it->second = BandSeg{{old.first.from, stub(sq.in_f_m, sq.in_f_s)},
                             {old.second.from, stub(sq.in_s_m, sq.in_s_s)}};
        Q.segs[ev.on_q] = BandSeg{{stub(sq.out_f_m, sq.out_f_s), old.first.to},
                                  {stub(sq.out_s_m, sq.out_s_s), old.second.to}};
      }

      // Plug into the clause-side section.  The band arrives traveling
      // north, so its first strand takes the east stub.
      SpliceSite& sec = section[P.clause - 1][P.slot];
      if (sec.cut) throw std::logic_error("band routing: section cut twice");
      cut_edge(d, sec.u);
      sec.cut = true;
      Dart east = sec.u_west ? sec.v : sec.u;
      Dart west = sec.u_west ? sec.u : sec.v;
      weld(d, cf, east);
      weld(d, cs, west);
      P.segs[prev] = BandSeg{{cf, east}, {cs, west}};
      P.built = true;
    }
  }

  // Rebuild the outer marks.  For a piece that contains bands, the region
  // south of its deepest band's rail is that piece's outer exposure; the
  // witness dart is the right-of-travel edge of the segment spanning the
  // rail's west corner.  Untouched pieces keep their template marks.
  auto pcs = pieces(d);
  std::vector<Dart> mark_of(pcs.size(), kNoDart);
  std::vector<int> best_depth(pcs.size(), -1);
  for (Band& b : bands) {
    auto it = b.segs.upper_bound(PathPos{1, b.x_var});
    --it;
    Dart w = it->second.first.from;
    int pi = piece_index_of(d, w / 4);
    if (b.depth > best_depth[pi]) {
      best_depth[pi] = b.depth;
      mark_of[pi] = w;
    }
  }
  for (Dart mk : pristine_marks) {
    int pi = piece_index_of(d, mk / 4);
    if (mark_of[pi] == kNoDart) mark_of[pi] = mk;
  }
  d.outer_marks.clear();
  for (Dart mk : mark_of) {
    if (mk == kNoDart) throw std::logic_error("band routing: unmarked piece");
    d.outer_marks.push_back(mk);
  }

  // Component labels via the remembered representative darts.
  auto comps = components(d);
  if (static_cast<int>(comps.size()) != 2 * n)
    throw std::logic_error("build_trivial_sublink_link: component count drifted");
  d.component_labels.assign(comps.size(), "");
  for (int z = 0; z < 2 * n; ++z) {
    std::string name =
        "kappa[" + std::string(z % 2 ? "!x" : "x") + std::to_string(z / 2 + 1) + "]";
    int idx = component_index_of(d, kappa_rep[z]);
    if (!d.component_labels[idx].empty())
      throw std::logic_error("build_trivial_sublink_link: label collision");
    d.component_labels[idx] = name;
  }

  normalize_marks(d);
  if (std::string err = validate_error(d); !err.empty())
    throw std::logic_error("build_trivial_sublink_link: output invalid: " + err);
  return d;
}

namespace {

// Parses "kappa[x12]" / "kappa[!x12]" into (variable, negated).
std::optional<std::pair<int, bool>> parse_kappa_label(const std::string& s) {
  if (s.size() < 9 || s.compare(0, 6, "kappa[") != 0 || s.back() != ']')
    return std::nullopt;
  size_t at = 6;
  bool neg = s[at] == '!';
  if (neg) ++at;
  if (s[at] != 'x') return std::nullopt;
  ++at;
  int var = 0;
  if (at == s.size() - 1) return std::nullopt;
  for (; at + 1 < s.size(); ++at) {
    if (!std::isdigit(static_cast<unsigned char>(s[at]))) return std::nullopt;
    var = var * 10 + (s[at] - '0');
  }
  if (var < 1) return std::nullopt;
  return std::make_pair(var, neg);
}

}  // namespace

Diagram select_sublink(const Diagram& link, const Assignment& a) {
  auto comps = components(link);
  const int C = static_cast<int>(comps.size());
  if (static_cast<int>(link.component_labels.size()) != C)
    throw std::invalid_argument("select_sublink: component label mismatch");

  auto keep_label = [&](const std::string& label) {
    auto lit = parse_kappa_label(label);
    if (!lit)
      throw std::invalid_argument("select_sublink: component label mismatch: '" +
                                  label + "'");
    auto it = a.find(lit->first);
    if (it == a.end())
      throw std::invalid_argument("select_sublink: assignment misses variable " +
                                  std::to_string(lit->first));
    // Keep the component exactly when the assignment falsifies its literal.
    return it->second == lit->second;
  };
  std::set<std::string> seen_labels;
  for (const std::string& label : link.component_labels)
    if (!seen_labels.insert(label).second)
      throw std::invalid_argument("select_sublink: duplicate component label '" +
                                  label + "'");
  std::vector<bool> keep(C);
  for (int c = 0; c < C; ++c) keep[c] = keep_label(link.component_labels[c]);

  // Rebuild from scratch: crossings with both passes on kept components
  // survive, single-pass crossings are smoothed through, and a kept
  // component with no surviving passes becomes a closed circle.
  std::vector<int> newidx(link.num_crossings(), -1);
  Diagram out;
  for (int c = 0; c < link.num_crossings(); ++c) {
    int c0 = component_index_of(link, dart_of(c, 0));
    int c1 = component_index_of(link, dart_of(c, 1));
    if (keep[c0] && keep[c1])
      newidx[c] = add_crossing(out, link.crossings[c].over_axis,
                               link.crossings[c].label);
  }
  std::vector<std::pair<Dart, std::string>> reps;
  for (int ci = 0; ci < C; ++ci) {
    if (!keep[ci]) continue;
    std::vector<Dart> surviving;
    for (Dart e : comps[ci])
      if (newidx[e / 4] >= 0) surviving.push_back(dart_of(newidx[e / 4], e & 3));
    if (surviving.empty()) {
      out.circles.push_back(Circle{link.component_labels[ci], kNoDart});
      continue;
    }
    for (size_t i = 0; i < surviving.size(); ++i)
      weld(out, strand_exit(surviving[i]),
           surviving[(i + 1) % surviving.size()]);
    reps.emplace_back(surviving.front(), link.component_labels[ci]);
  }
  for (const Circle& circ : link.circles) {
    if (keep_label(circ.label)) out.circles.push_back(Circle{circ.label, kNoDart});
  }

  // Fresh outer marks, one per piece; kept circles sit in the unbounded
  // region.  On the sphere the choice of outer face does not change the
  // link, and split pieces stay split wherever they are parked.
  out.outer_marks.clear();
  for (const auto& piece : pieces(out))
    out.outer_marks.push_back(dart_of(piece.front(), 0));
  out.component_labels.assign(components(out).size(), "");
  for (const auto& [rep, name] : reps)
    out.component_labels[component_index_of(out, rep)] = name;
  normalize_marks(out);
  if (std::string err = validate_error(out); !err.empty())
    throw std::logic_error("select_sublink: output invalid: " + err);
  return out;
}

Diagram build_lphiwh(const CnfFormula& f) {
  Diagram link = build_trivial_sublink_link(f);
  for (std::string& label : link.component_labels)
    label = "kappa_wh[" + label.substr(6);
  return whitehead_double(link);
}

std::vector<int> unlinking_certificate(const CnfFormula& f, const Assignment& a) {
  check_three_sat(f, "unlinking_certificate");
  for (int v = 1; v <= f.num_vars; ++v)
    if (!a.count(v))
      throw std::invalid_argument("unlinking_certificate: assignment misses variable " +
                                  std::to_string(v));
  if (!satisfies(f, a))
    throw std::invalid_argument(
        "unlinking_certificate: assignment does not satisfy the formula");
  Diagram wh = build_lphiwh(f);
  std::vector<int> clasps;
  for (int v = 1; v <= f.num_vars; ++v) {
    std::string lit = (a.at(v) ? "x" : "!x") + std::to_string(v);
    int id = find_crossing_by_label(wh, "clasp[kappa_wh[" + lit + "]]a");
    if (id < 0)
      throw std::logic_error("unlinking_certificate: clasp crossing not found");
    clasps.push_back(id);
  }
  return clasps;
}

}  // namespace linkred
