#include "linkred/moves.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "linkred/json_io.hpp"

namespace linkred {

namespace {

// ---------------------------------------------------------------------------
// Applicability probes.  Each returns the geometric data that the surgery
// needs, or nullopt when the named face is not a site of the given kind.

bool face_hosts_circle(const Diagram& d, Dart face) {
  for (const Circle& c : d.circles)
    if (c.anchor != kNoDart && face_id_of(d, c.anchor) == face) return true;
  return false;
}

// Removal moves only act on bounded faces with no circle floating inside.
bool bounded_and_clear(const Diagram& d, Dart face) {
  return !face_is_outer(d, face) && !face_hosts_circle(d, face);
}

struct OneMinusSite {
  Dart loop_dart;   // the monogon's single corner
  int crossing;
  Dart stub_a, stub_b;  // the two non-loop darts, counterclockwise
  bool dissolves;       // stubs joined directly: the strand closes to a circle
};

std::optional<OneMinusSite> probe_one_minus(const Diagram& d, Dart face) {
  if (face < 0 || face >= d.num_darts() || face_id_of(d, face) != face)
    return std::nullopt;
  auto orbit = face_orbit(d, face);
  if (orbit.size() != 1 || !bounded_and_clear(d, face)) return std::nullopt;
  OneMinusSite s;
  s.loop_dart = orbit[0];
  s.crossing = crossing_of(s.loop_dart);
  // the loop edge joins two cyclically adjacent slots; rot_cw(loop_dart) is
  // its other end, so the stubs are the next two slots counterclockwise
  s.stub_a = rot_ccw(s.loop_dart);
  s.stub_b = rot_ccw(s.stub_a);
  s.dissolves = d.partner[s.stub_a] == s.stub_b;
  return s;
}

struct TwoMinusSite {
  Dart d1, d2;  // the bigon's corners in orbit order
  int r, s;
};

std::optional<TwoMinusSite> probe_two_minus(const Diagram& d, Dart face) {
  if (face < 0 || face >= d.num_darts() || face_id_of(d, face) != face)
    return std::nullopt;
  auto orbit = face_orbit(d, face);
  if (orbit.size() != 2 || !bounded_and_clear(d, face)) return std::nullopt;
  TwoMinusSite s;
  s.d1 = orbit[0];
  s.d2 = orbit[1];
  s.r = crossing_of(s.d1);
  s.s = crossing_of(s.d2);
  if (s.r == s.s) return std::nullopt;
  // one boundary strand must run over at both ends, the other under at both
  bool a1 = d.dart_over(s.d1), a2 = d.dart_over(rot_cw(s.d2));
  bool b1 = d.dart_over(s.d2), b2 = d.dart_over(rot_cw(s.d1));
  if (a1 != a2 || b1 != b2 || a1 == b1) return std::nullopt;
  return s;
}

struct ThreeSite {
  Dart t1, t2, t3;  // trigon corners in orbit order
};

std::optional<ThreeSite> probe_three(const Diagram& d, Dart face) {
  if (face < 0 || face >= d.num_darts() || face_id_of(d, face) != face)
    return std::nullopt;
  auto orbit = face_orbit(d, face);
  if (orbit.size() != 3 || !bounded_and_clear(d, face)) return std::nullopt;
  ThreeSite s{orbit[0], orbit[1], orbit[2]};
  int r1 = crossing_of(s.t1), r2 = crossing_of(s.t2), r3 = crossing_of(s.t3);
  if (r1 == r2 || r2 == r3 || r1 == r3) return std::nullopt;
  // The three boundary strands meet pairwise at the corners; the move exists
  // iff their over-relations form a strict total order.  The relations are
  // cyclic exactly when the three darts below sit on one level.
  bool xy = d.dart_over(rot_cw(s.t2));  // strand of edge t1-t2 above at r2?
  bool yz = d.dart_over(rot_cw(s.t3));
  bool zx = d.dart_over(rot_cw(s.t1));
  if (xy == yz && yz == zx) return std::nullopt;
  return s;
}

bool circle_in_outer(const Diagram& d, int k) {
  return k >= 0 && k < static_cast<int>(d.circles.size()) &&
         d.circles[k].anchor == kNoDart;
}

bool valid_dart(const Diagram& d, Dart t) { return t >= 0 && t < d.num_darts(); }

void require(bool ok, const Move& m) {
  if (!ok) throw std::invalid_argument("move not applicable: " + site_encoding(m));
}

void check_applicable(const Diagram& d, const Move& m) {
  switch (m.kind) {
    case MoveKind::IMinus:
      require(probe_one_minus(d, m.a).has_value(), m);
      break;
    case MoveKind::IIMinus:
      require(probe_two_minus(d, m.a).has_value(), m);
      break;
    case MoveKind::III:
      require(probe_three(d, m.a).has_value(), m);
      break;
    case MoveKind::IPlus:
      require((m.side == 0 || m.side == 1) && (m.sign == 1 || m.sign == -1), m);
      if (m.circle_a >= 0)
        require(circle_in_outer(d, m.circle_a), m);
      else
        require(valid_dart(d, m.a), m);
      break;
    case MoveKind::IIPlus:
      require(m.over == 0 || m.over == 1, m);
      if (m.circle_a >= 0 && m.circle_b >= 0) {
        require(circle_in_outer(d, m.circle_a) && circle_in_outer(d, m.circle_b), m);
      } else if (m.circle_a >= 0) {
        require(circle_in_outer(d, m.circle_a) && valid_dart(d, m.b) &&
                    face_is_outer(d, m.b),
                m);
      } else if (m.circle_b >= 0) {
        require(valid_dart(d, m.a) && face_is_outer(d, m.a) &&
                    circle_in_outer(d, m.circle_b),
                m);
      } else {
        require(valid_dart(d, m.a) && valid_dart(d, m.b) && m.a != m.b &&
                    d.partner[m.a] != m.b &&
                    face_id_of(d, m.a) == face_id_of(d, m.b),
                m);
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// Shared surgery plumbing.

MoveOutcome finish(Diagram&& out, std::map<int, int> correspondence,
                   std::vector<int> created, std::vector<int> removed) {
  std::string err = validate_error(out);
  if (!err.empty())
    throw std::logic_error("move surgery produced an invalid diagram: " + err);
  normalize_marks(out);
  MoveOutcome oc;
  oc.result = std::move(out);
  oc.correspondence = std::move(correspondence);
  oc.created = std::move(created);
  oc.removed = std::move(removed);
  return oc;
}

std::vector<Dart> sorted_orbit(const Diagram& d, Dart face) {
  auto orbit = face_orbit(d, face);
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

// Deletes the given crossings, reconnecting each surviving strand end to the
// next surviving end along its strand.  Strands left with no crossing at all
// become circles, parked in the region the deleted faces merged into.
// `merged_faces` names the faces (of d) that fuse into one region; every
// reference into them, and into any face that loses all of its darts, is
// re-anchored to that region's surviving boundary.
MoveOutcome apply_removal(const Diagram& d, const std::vector<int>& removed,
                          const std::vector<Dart>& merged_faces) {
  const int n = d.num_crossings();
  std::vector<char> gone(n, 0);
  for (int c : removed) gone[c] = 1;
  auto survives = [&](Dart t) { return !gone[crossing_of(t)]; };

  std::vector<int> newid(n, -1);
  std::vector<int> oldid;
  for (int c = 0; c < n; ++c)
    if (!gone[c]) {
      newid[c] = static_cast<int>(oldid.size());
      oldid.push_back(c);
    }
  auto dm = [&](Dart t) { return dart_of(newid[crossing_of(t)], slot_of(t)); };

  // Surviving boundary of the merged region, smallest darts first.
  std::vector<Dart> class_darts;
  for (Dart f : merged_faces)
    for (Dart t : face_orbit(d, f)) class_darts.push_back(t);
  std::sort(class_darts.begin(), class_darts.end());
  class_darts.erase(std::unique(class_darts.begin(), class_darts.end()),
                    class_darts.end());
  auto in_merged = [&](Dart f) {
    return std::find(merged_faces.begin(), merged_faces.end(), f) !=
           merged_faces.end();
  };
  // A surviving dart bounding the region that the reference's face becomes.
  // Faces that lose every dart melt into the merged region.
  auto region_rep = [&](Dart ref) -> Dart {
    Dart f = face_id_of(d, ref);
    if (!in_merged(f)) {
      for (Dart t : sorted_orbit(d, f))
        if (survives(t)) return t;
    }
    for (Dart t : class_darts)
      if (survives(t)) return t;
    return kNoDart;
  };

  Diagram out;
  for (int c : oldid) out.crossings.push_back(d.crossings[c]);
  out.partner.assign(4 * oldid.size(), kNoDart);
  for (Dart t = 0; t < d.num_darts(); ++t) {
    if (!survives(t)) continue;
    Dart p = d.partner[t];
    while (!survives(p)) p = d.partner[strand_exit(p)];
    out.partner[dm(t)] = dm(p);
  }

  // Carried circles keep their labels; anchors follow their regions.
  for (const Circle& c : d.circles) {
    Circle nc;
    nc.label = c.label;
    if (c.anchor != kNoDart) {
      Dart rep = region_rep(c.anchor);
      nc.anchor = rep == kNoDart ? kNoDart : dm(rep);
    }
    out.circles.push_back(nc);
  }

  // Strand components whose every pass was deleted close up into circles.
  auto comps = components(d);
  Dart merged_rep = kNoDart;
  for (Dart t : class_darts)
    if (survives(t)) {
      merged_rep = t;
      break;
    }
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    bool all_gone = true;
    for (Dart t : comps[ci]) all_gone = all_gone && !survives(t);
    if (!all_gone) continue;
    Circle nc;
    if (!d.component_labels.empty()) nc.label = d.component_labels[ci];
    nc.anchor = merged_rep == kNoDart ? kNoDart : dm(merged_rep);
    out.circles.push_back(nc);
  }

  // Outer marks.  Pieces not touched by the removal keep theirs; each piece
  // that remains of the touched one faces, first choice, whatever is left of
  // the old outer face, and otherwise the merged region (the only region a
  // detaching piece can border when the old outer boundary went elsewhere).
  const int removal_piece = piece_index_of(d, removed.front());
  Dart old_mark = kNoDart;
  for (Dart mk : d.outer_marks) {
    if (piece_index_of(d, crossing_of(mk)) == removal_piece)
      old_mark = mk;
    else
      out.outer_marks.push_back(dm(mk));
  }
  std::vector<Dart> pool;
  if (old_mark != kNoDart) {
    Dart f = face_id_of(d, old_mark);
    if (!in_merged(f)) pool = sorted_orbit(d, f);
  }
  pool.insert(pool.end(), class_darts.begin(), class_darts.end());
  auto new_pieces = pieces(out);
  for (const auto& pc : new_pieces) {
    if (piece_index_of(d, oldid[pc[0]]) != removal_piece) continue;
    Dart mark = kNoDart;
    for (Dart t : pool) {
      if (!survives(t)) continue;
      Dart nt = dm(t);
      if (std::binary_search(pc.begin(), pc.end(), crossing_of(nt))) {
        mark = nt;
        break;
      }
    }
    if (mark == kNoDart)
      throw std::logic_error("removal left a piece with no outer boundary");
    out.outer_marks.push_back(mark);
  }

  // A dissolved region bordering the unbounded one parks its circles outside.
  for (Circle& c : out.circles)
    if (c.anchor != kNoDart && face_is_outer(out, c.anchor)) c.anchor = kNoDart;

  // Thread strand labels through to the surviving components.
  if (!d.component_labels.empty()) {
    auto ncomps = components(out);
    for (const auto& comp : ncomps) {
      Dart back = dart_of(oldid[crossing_of(comp[0])], slot_of(comp[0]));
      out.component_labels.push_back(
          d.component_labels[component_index_of(d, back)]);
    }
  }

  std::map<int, int> corr;
  for (int c = 0; c < n; ++c)
    if (newid[c] >= 0) corr[c] = newid[c];
  std::vector<int> rem(removed);
  std::sort(rem.begin(), rem.end());
  return finish(std::move(out), std::move(corr), {}, std::move(rem));
}

MoveOutcome apply_one_minus(const Diagram& d, const Move& m) {
  auto s = *probe_one_minus(d, m.a);
  // the monogon merges with the face wrapping around the outside of the loop
  Dart lobe = face_id_of(d, rot_cw(s.loop_dart));
  return apply_removal(d, {s.crossing}, {m.a, lobe});
}

MoveOutcome apply_two_minus(const Diagram& d, const Move& m) {
  auto s = *probe_two_minus(d, m.a);
  // the bigon merges with the two faces past its tips
  std::vector<Dart> merged{m.a, face_id_of(d, strand_exit(s.d1)),
                           face_id_of(d, strand_exit(s.d2))};
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return apply_removal(d, {s.r, s.s}, merged);
}

MoveOutcome apply_three(const Diagram& d, const Move& m) {
  auto s = *probe_three(d, m.a);
  const Dart t[3] = {s.t1, s.t2, s.t3};

  // Slide the triangle to the other side of each corner: every boundary edge
  // of the trigon and every edge hanging off it swings from one end of its
  // crossing to the opposite end.  In dart terms the six darts opposite the
  // trigon's corners move onto those corners, taking their edges along, and
  // the vacated opposite darts become the new trigon.
  std::map<Dart, Dart> rho;
  for (Dart c : t) {
    rho[strand_exit(c)] = c;
    rho[strand_exit(rot_cw(c))] = rot_cw(c);
  }
  Diagram out = d;
  for (const auto& [u, nu] : rho) {
    Dart v = d.partner[u];
    auto it = rho.find(v);
    Dart nv = it == rho.end() ? v : it->second;
    out.partner[nu] = nv;
    out.partner[nv] = nu;
  }
  for (int i = 0; i < 3; ++i) {
    Dart a = strand_exit(t[i]);
    Dart b = strand_exit(rot_cw(t[(i + 1) % 3]));
    out.partner[a] = b;
    out.partner[b] = a;
  }

  // References into the sectors at the three crossings follow their regions:
  // the region beyond each corner swaps places with the vacated triangle
  // sector, and the two side sectors trade as the strands slide across.
  auto sigma = [&](Dart q) -> Dart {
    for (Dart c : t) {
      if (crossing_of(q) != crossing_of(c)) continue;
      if (q == strand_exit(c)) return c;
      if (q == rot_ccw(c)) return rot_cw(c);
      if (q == rot_cw(c)) return rot_ccw(c);
      throw std::logic_error("reference inside a sliding trigon");
    }
    return q;
  };
  for (Dart& mk : out.outer_marks) mk = sigma(mk);
  for (Circle& c : out.circles)
    if (c.anchor != kNoDart) c.anchor = sigma(c.anchor);

  std::map<int, int> corr;
  for (int c = 0; c < d.num_crossings(); ++c) corr[c] = c;
  return finish(std::move(out), std::move(corr), {}, {});
}

// Eight darts of a fresh strand-over-strand pair: crossing x1 carries the
// lens-side half, x2 the far half.  Slots are fixed so that the finger strand
// runs on the odd axis of both crossings.
struct DoublePoint {
  int x1, x2;
  Dart E1b, R1, E1m, L1;  // x1 slots 0..3
  Dart E2m, R2, E2a, L2;  // x2 slots 0..3
};

DoublePoint add_crossing_pair(Diagram& out, int over) {
  DoublePoint p;
  p.x1 = out.num_crossings();
  p.x2 = p.x1 + 1;
  Crossing c;
  c.over_axis = over ? 1 : 0;
  out.crossings.push_back(c);
  out.crossings.push_back(c);
  out.partner.resize(out.partner.size() + 8, kNoDart);
  p.E1b = dart_of(p.x1, 0), p.R1 = dart_of(p.x1, 1);
  p.E1m = dart_of(p.x1, 2), p.L1 = dart_of(p.x1, 3);
  p.E2m = dart_of(p.x2, 0), p.R2 = dart_of(p.x2, 1);
  p.E2a = dart_of(p.x2, 2), p.L2 = dart_of(p.x2, 3);
  return p;
}

std::map<int, int> identity_corr(const Diagram& d) {
  std::map<int, int> corr;
  for (int c = 0; c < d.num_crossings(); ++c) corr[c] = c;
  return corr;
}

// Removes circle k, about to become a strand with crossings; returns its
// label so it can be appended as a strand component label.
std::string consume_circle(Diagram& out, int k) {
  std::string label = out.circles[k].label;
  out.circles.erase(out.circles.begin() + k);
  return label;
}

// The new strand components of an addition move sort after every old one
// (their darts are the largest), so labels are threaded by appending.
void append_component_labels(Diagram& out, const Diagram& before,
                             const std::vector<std::string>& extra) {
  out.component_labels = before.component_labels;
  bool any = !out.component_labels.empty();
  for (const auto& l : extra) any = any || !l.empty();
  if (!any) return;
  if (out.component_labels.empty())
    out.component_labels.assign(components(before).size(), "");
  for (const auto& l : extra) out.component_labels.push_back(l);
}

MoveOutcome apply_one_plus_edge(const Diagram& d, const Move& m) {
  Dart u = m.a, pu = d.partner[u];
  Diagram out = d;
  int x = out.num_crossings();
  Crossing c;
  c.over_axis = m.sign > 0 ? 0 : 1;
  out.crossings.push_back(c);
  out.partner.resize(out.partner.size() + 4, kNoDart);
  auto link = [&](Dart a, Dart b) {
    out.partner[a] = b;
    out.partner[b] = a;
  };
  link(dart_of(x, 2), dart_of(x, 3));  // the kink's loop
  if (m.side == 1) {
    link(u, dart_of(x, 0));
    link(pu, dart_of(x, 1));
  } else {
    link(u, dart_of(x, 1));
    link(pu, dart_of(x, 0));
  }
  append_component_labels(out, d, {});
  return finish(std::move(out), identity_corr(d), {x}, {});
}

MoveOutcome apply_one_plus_circle(const Diagram& d, const Move& m) {
  Diagram out = d;
  std::string label = consume_circle(out, m.circle_a);
  int x = out.num_crossings();
  Crossing c;
  c.over_axis = m.sign > 0 ? 0 : 1;
  out.crossings.push_back(c);
  out.partner.resize(out.partner.size() + 4, kNoDart);
  out.partner[dart_of(x, 0)] = dart_of(x, 1);
  out.partner[dart_of(x, 1)] = dart_of(x, 0);
  out.partner[dart_of(x, 2)] = dart_of(x, 3);
  out.partner[dart_of(x, 3)] = dart_of(x, 2);
  // side 1 curls the loop outward: the two-corner wrap face is the outside;
  // side 0 tucks the circle's disk into the loop, leaving a monogon outside
  out.outer_marks.push_back(m.side == 1 ? dart_of(x, 0) : dart_of(x, 1));
  append_component_labels(out, d, {label});
  return finish(std::move(out), identity_corr(d), {x}, {});
}

MoveOutcome apply_two_plus_corners(const Diagram& d, const Move& m) {
  Dart u = m.a, v = m.b;
  Dart pu = d.partner[u], pv = d.partner[v];
  Diagram out = d;
  DoublePoint p = add_crossing_pair(out, m.over);
  auto link = [&](Dart a, Dart b) {
    out.partner[a] = b;
    out.partner[b] = a;
  };
  // finger leg and return leg cut the common face; the lens lands past the
  // target edge
  link(p.L1, u);
  link(p.L2, pu);
  link(p.E2a, v);
  link(p.E1b, pv);
  link(p.E1m, p.E2m);
  link(p.R1, p.R2);
  append_component_labels(out, d, {});
  return finish(std::move(out), identity_corr(d), {p.x1, p.x2}, {});
}

MoveOutcome apply_two_plus_circle_finger(const Diagram& d, const Move& m) {
  Dart v = m.b, pv = d.partner[v];
  Diagram out = d;
  std::string label = consume_circle(out, m.circle_a);
  DoublePoint p = add_crossing_pair(out, m.over);
  auto link = [&](Dart a, Dart b) {
    out.partner[a] = b;
    out.partner[b] = a;
  };
  link(p.L1, p.L2);  // the circle, now a loop reaching across the edge
  link(p.R1, p.R2);
  link(p.E2a, v);
  link(p.E1b, pv);
  link(p.E1m, p.E2m);
  append_component_labels(out, d, {label});
  return finish(std::move(out), identity_corr(d), {p.x1, p.x2}, {});
}

MoveOutcome apply_two_plus_circle_target(const Diagram& d, const Move& m) {
  Dart u = m.a, pu = d.partner[u];
  Diagram out = d;
  std::string label = consume_circle(out, m.circle_b);
  DoublePoint p = add_crossing_pair(out, m.over);
  auto link = [&](Dart a, Dart b) {
    out.partner[a] = b;
    out.partner[b] = a;
  };
  link(p.L1, u);
  link(p.L2, pu);
  link(p.E1b, p.E2a);  // the circle's two arcs under the finger
  link(p.E1m, p.E2m);
  link(p.R1, p.R2);
  append_component_labels(out, d, {label});
  return finish(std::move(out), identity_corr(d), {p.x1, p.x2}, {});
}

MoveOutcome apply_two_plus_circles(const Diagram& d, const Move& m) {
  Diagram out = d;
  if (m.circle_a == m.circle_b) {
    std::string label = consume_circle(out, m.circle_a);
    DoublePoint p = add_crossing_pair(out, m.over);
    auto link = [&](Dart a, Dart b) {
      out.partner[a] = b;
      out.partner[b] = a;
    };
    // one circle folded across itself: a figure with two crossings
    link(p.R1, p.R2);
    link(p.E1m, p.E2m);
    link(p.L1, p.E1b);
    link(p.L2, p.E2a);
    out.outer_marks.push_back(p.R1);
    append_component_labels(out, d, {label});
    return finish(std::move(out), identity_corr(d), {p.x1, p.x2}, {});
  }
  int hi = std::max(m.circle_a, m.circle_b), lo = std::min(m.circle_a, m.circle_b);
  std::string label_hi = out.circles[hi].label;
  std::string label_lo = out.circles[lo].label;
  out.circles.erase(out.circles.begin() + hi);
  out.circles.erase(out.circles.begin() + lo);
  std::string label_finger = m.circle_a == lo ? label_lo : label_hi;
  std::string label_target = m.circle_b == lo ? label_lo : label_hi;
  DoublePoint p = add_crossing_pair(out, m.over);
  auto link = [&](Dart a, Dart b) {
    out.partner[a] = b;
    out.partner[b] = a;
  };
  link(p.E1b, p.E2a);  // target circle
  link(p.E1m, p.E2m);
  link(p.R1, p.R2);  // finger circle
  link(p.L1, p.L2);
  out.outer_marks.push_back(p.E1b);
  // the target strand owns the smaller darts and sorts first
  append_component_labels(out, d, {label_target, label_finger});
  return finish(std::move(out), identity_corr(d), {p.x1, p.x2}, {});
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface.

std::string move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::IPlus: return "I+";
    case MoveKind::IMinus: return "I-";
    case MoveKind::IIPlus: return "II+";
    case MoveKind::IIMinus: return "II-";
    case MoveKind::III: return "III";
  }
  throw std::logic_error("unknown move kind");
}

std::string site_encoding(const Move& m) {
  char buf[64];
  switch (m.kind) {
    case MoveKind::IMinus:
      std::snprintf(buf, sizeof buf, "I-@f%05d", m.a);
      break;
    case MoveKind::IIMinus:
      std::snprintf(buf, sizeof buf, "II-@f%05d", m.a);
      break;
    case MoveKind::III:
      std::snprintf(buf, sizeof buf, "III@f%05d", m.a);
      break;
    case MoveKind::IPlus:
      if (m.circle_a >= 0)
        std::snprintf(buf, sizeof buf, "I+@k%03d,s%d,c%c", m.circle_a, m.side,
                      m.sign > 0 ? 'p' : 'm');
      else
        std::snprintf(buf, sizeof buf, "I+@e%05d,s%d,c%c", m.a, m.side,
                      m.sign > 0 ? 'p' : 'm');
      break;
    case MoveKind::IIPlus:
      if (m.circle_a >= 0 && m.circle_b >= 0)
        std::snprintf(buf, sizeof buf, "II+@k%03d,l%03d,o%d", m.circle_a,
                      m.circle_b, m.over);
      else if (m.circle_a >= 0)
        std::snprintf(buf, sizeof buf, "II+@k%03d,v%05d,o%d", m.circle_a, m.b,
                      m.over);
      else if (m.circle_b >= 0)
        std::snprintf(buf, sizeof buf, "II+@u%05d,k%03d,o%d", m.a, m.circle_b,
                      m.over);
      else
        std::snprintf(buf, sizeof buf, "II+@u%05d,v%05d,o%d", m.a, m.b, m.over);
      break;
  }
  return buf;
}

std::vector<Move> enumerate_moves(const Diagram& d) {
  return enumerate_moves(d, {MoveKind::IPlus, MoveKind::IMinus, MoveKind::IIPlus,
                             MoveKind::IIMinus, MoveKind::III});
}

std::vector<Move> enumerate_moves(const Diagram& d,
                                  const std::set<MoveKind>& kinds) {
  std::vector<Move> out;
  auto want = [&](MoveKind k) { return kinds.count(k) != 0; };
  auto fw = faces(d);

  for (const FaceWalk& f : fw) {
    if (want(MoveKind::IMinus) && f.corners.size() == 1 &&
        probe_one_minus(d, f.id)) {
      Move m;
      m.kind = MoveKind::IMinus;
      m.a = f.id;
      out.push_back(m);
    }
    if (want(MoveKind::IIMinus) && f.corners.size() == 2 &&
        probe_two_minus(d, f.id)) {
      Move m;
      m.kind = MoveKind::IIMinus;
      m.a = f.id;
      out.push_back(m);
    }
    if (want(MoveKind::III) && f.corners.size() == 3 && probe_three(d, f.id)) {
      Move m;
      m.kind = MoveKind::III;
      m.a = f.id;
      out.push_back(m);
    }
    if (want(MoveKind::IIPlus)) {
      for (Dart u : f.corners)
        for (Dart v : f.corners) {
          if (u == v || d.partner[u] == v) continue;
          for (int over = 0; over < 2; ++over) {
            Move m;
            m.kind = MoveKind::IIPlus;
            m.a = u;
            m.b = v;
            m.over = over;
            out.push_back(m);
          }
        }
    }
  }

  if (want(MoveKind::IPlus)) {
    for (Dart a = 0; a < d.num_darts(); ++a) {
      if (a >= d.partner[a]) continue;
      for (int side = 0; side < 2; ++side)
        for (int sign : {1, -1}) {
          Move m;
          m.kind = MoveKind::IPlus;
          m.a = a;
          m.side = side;
          m.sign = sign;
          out.push_back(m);
        }
    }
    for (int k = 0; k < static_cast<int>(d.circles.size()); ++k) {
      if (!circle_in_outer(d, k)) continue;
      for (int side = 0; side < 2; ++side)
        for (int sign : {1, -1}) {
          Move m;
          m.kind = MoveKind::IPlus;
          m.circle_a = k;
          m.side = side;
          m.sign = sign;
          out.push_back(m);
        }
    }
  }

  if (want(MoveKind::IIPlus)) {
    std::vector<Dart> outer_corners;
    for (const FaceWalk& f : fw)
      if (f.outer)
        outer_corners.insert(outer_corners.end(), f.corners.begin(),
                             f.corners.end());
    for (int k = 0; k < static_cast<int>(d.circles.size()); ++k) {
      if (!circle_in_outer(d, k)) continue;
      for (Dart v : outer_corners)
        for (int over = 0; over < 2; ++over) {
          Move m;
          m.kind = MoveKind::IIPlus;
          m.circle_a = k;
          m.b = v;
          m.over = over;
          out.push_back(m);
          Move w;
          w.kind = MoveKind::IIPlus;
          w.a = v;
          w.circle_b = k;
          w.over = over;
          out.push_back(w);
        }
      for (int l = 0; l < static_cast<int>(d.circles.size()); ++l) {
        if (!circle_in_outer(d, l)) continue;
        for (int over = 0; over < 2; ++over) {
          Move m;
          m.kind = MoveKind::IIPlus;
          m.circle_a = k;
          m.circle_b = l;
          m.over = over;
          out.push_back(m);
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const Move& x, const Move& y) {
    return site_encoding(x) < site_encoding(y);
  });
  return out;
}

Move resolve_site(const Diagram& d, const std::string& encoding) {
  const char* s = encoding.c_str();
  const int len = static_cast<int>(encoding.size());
  Move m;
  int n1 = 0, n2 = 0, n3 = 0, used = -1;
  char ch = 0;
  auto chirality = [&](char c) {
    if (c == 'p') return 1;
    if (c == 'm') return -1;
    throw std::invalid_argument("unrecognized site: " + encoding);
  };
  if (std::sscanf(s, "I-@f%d%n", &n1, &used) == 1 && used == len) {
    m.kind = MoveKind::IMinus;
    m.a = n1;
  } else if (std::sscanf(s, "II-@f%d%n", &n1, &used) == 1 && used == len) {
    m.kind = MoveKind::IIMinus;
    m.a = n1;
  } else if (std::sscanf(s, "III@f%d%n", &n1, &used) == 1 && used == len) {
    m.kind = MoveKind::III;
    m.a = n1;
  } else if (std::sscanf(s, "I+@e%d,s%d,c%c%n", &n1, &n2, &ch, &used) == 3 &&
             used == len) {
    m.kind = MoveKind::IPlus;
    m.a = n1;
    m.side = n2;
    m.sign = chirality(ch);
  } else if (std::sscanf(s, "I+@k%d,s%d,c%c%n", &n1, &n2, &ch, &used) == 3 &&
             used == len) {
    m.kind = MoveKind::IPlus;
    m.circle_a = n1;
    m.side = n2;
    m.sign = chirality(ch);
  } else if (std::sscanf(s, "II+@u%d,v%d,o%d%n", &n1, &n2, &n3, &used) == 3 &&
             used == len) {
    m.kind = MoveKind::IIPlus;
    m.a = n1;
    m.b = n2;
    m.over = n3;
  } else if (std::sscanf(s, "II+@k%d,v%d,o%d%n", &n1, &n2, &n3, &used) == 3 &&
             used == len) {
    m.kind = MoveKind::IIPlus;
    m.circle_a = n1;
    m.b = n2;
    m.over = n3;
  } else if (std::sscanf(s, "II+@u%d,k%d,o%d%n", &n1, &n2, &n3, &used) == 3 &&
             used == len) {
    m.kind = MoveKind::IIPlus;
    m.a = n1;
    m.circle_b = n2;
    m.over = n3;
  } else if (std::sscanf(s, "II+@k%d,l%d,o%d%n", &n1, &n2, &n3, &used) == 3 &&
             used == len) {
    m.kind = MoveKind::IIPlus;
    m.circle_a = n1;
    m.circle_b = n2;
    m.over = n3;
  } else {
    throw std::invalid_argument("unrecognized site: " + encoding);
  }
  check_applicable(d, m);
  return m;
}

MoveOutcome apply(const Diagram& d, const Move& m) {
  check_applicable(d, m);
  switch (m.kind) {
    case MoveKind::IMinus: return apply_one_minus(d, m);
    case MoveKind::IIMinus: return apply_two_minus(d, m);
    case MoveKind::III: return apply_three(d, m);
    case MoveKind::IPlus:
      return m.circle_a >= 0 ? apply_one_plus_circle(d, m)
                             : apply_one_plus_edge(d, m);
    case MoveKind::IIPlus:
      if (m.circle_a >= 0 && m.circle_b >= 0) return apply_two_plus_circles(d, m);
      if (m.circle_a >= 0) return apply_two_plus_circle_finger(d, m);
      if (m.circle_b >= 0) return apply_two_plus_circle_target(d, m);
      return apply_two_plus_corners(d, m);
  }
  throw std::logic_error("unknown move kind");
}

MoveSequence apply_sequence(const Diagram& start, const std::vector<Move>& moves) {
  MoveSequence seq;
  seq.start = start;
  for (const Move& m : moves) {
    MoveOutcome oc = apply(seq.final(), m);
    seq.steps.emplace_back(m, std::move(oc));
  }
  return seq;
}

int defect(const MoveSequence& seq) {
  if (!seq.final().crossingless())
    throw std::invalid_argument("defect: the sequence does not end crossingless");
  return 2 * static_cast<int>(seq.steps.size()) - seq.start.num_crossings();
}

WeightReport trace_weights(const MoveSequence& seq) {
  if (!seq.final().crossingless())
    throw std::invalid_argument(
        "trace_weights: the sequence does not end crossingless");
  const int n0 = seq.start.num_crossings();
  WeightReport rep;
  rep.per_crossing.resize(n0);
  std::vector<int> cur(n0);
  for (int i = 0; i < n0; ++i) cur[i] = i;

  const Diagram* host = &seq.start;
  for (const auto& [mv, oc] : seq.steps) {
    if (mv.kind == MoveKind::III) {
      std::set<int> trigon;
      for (Dart t : face_orbit(*host, mv.a)) trigon.insert(crossing_of(t));
      for (int i = 0; i < n0; ++i)
        if (cur[i] >= 0 && trigon.count(cur[i])) ++rep.per_crossing[i].m3;
    }
    if (!oc.removed.empty()) {
      std::set<int> rem(oc.removed.begin(), oc.removed.end());
      std::vector<int> dying;
      for (int i = 0; i < n0; ++i)
        if (cur[i] >= 0 && rem.count(cur[i])) dying.push_back(i);
      for (int i : dying)
        rep.per_crossing[i].fate =
            mv.kind == MoveKind::IMinus
                ? CrossingFate::IMinus
                : (dying.size() == 2 ? CrossingFate::EconomicalII
                                     : CrossingFate::WastefulII);
    }
    for (int i = 0; i < n0; ++i) {
      if (cur[i] < 0) continue;
      auto it = oc.correspondence.find(cur[i]);
      cur[i] = it == oc.correspondence.end() ? -1 : it->second;
    }
    host = &oc.result;
  }

  for (auto& f : rep.per_crossing) {
    int base = f.fate == CrossingFate::IMinus
                   ? 3
                   : (f.fate == CrossingFate::WastefulII ? 6 : 0);
    f.weight_thirds = 2 * f.m3 + base;
    rep.total_thirds += f.weight_thirds;
  }
  rep.defect = defect(seq);
  return rep;
}

std::vector<ArcCandidate> arc_candidates(const Diagram& d, int r, bool over,
                                         const std::set<int>& R, int c) {
  if (r < 0 || r >= d.num_crossings())
    throw std::invalid_argument("arc_candidates: unknown crossing");
  if (c < 0) throw std::invalid_argument("arc_candidates: negative budget");
  std::vector<ArcCandidate> out;
  int axis = d.crossings[r].over_axis & 1;
  if (!over) axis ^= 1;
  for (Dart exit0 : {dart_of(r, axis), dart_of(r, axis + 2)}) {
    std::vector<Dart> path{exit0};
    std::vector<int> interior;
    std::set<int> seen;
    int in_r = 0;
    Dart entry = d.partner[exit0];
    while (crossing_of(entry) != r) {
      int x = crossing_of(entry);
      path.push_back(entry);
      if (!seen.count(x)) {
        if (d.dart_over(entry) == over) {
          ArcCandidate cand;
          cand.crossing = x;
          cand.interior_in_r = in_r;
          cand.path = path;
          cand.interior = interior;
          out.push_back(std::move(cand));
        }
        seen.insert(x);
        interior.push_back(x);
        if (R.count(x) && ++in_r > c) break;  // every longer arc busts too
      }
      entry = d.partner[strand_exit(entry)];
    }
  }
  return out;
}

std::optional<CloseNeighborWitness> close_neighbors(const Diagram& d, int r,
                                                    int s,
                                                    const std::set<int>& R,
                                                    int c) {
  if (r < 0 || r >= d.num_crossings() || s < 0 || s >= d.num_crossings())
    throw std::invalid_argument("close_neighbors: unknown crossing");
  if (r == s) return std::nullopt;
  auto keep_s = [&](std::vector<ArcCandidate> v) {
    v.erase(std::remove_if(v.begin(), v.end(),
                           [&](const ArcCandidate& a) { return a.crossing != s; }),
            v.end());
    return v;
  };
  auto alphas = keep_s(arc_candidates(d, r, true, R, c));
  auto betas = keep_s(arc_candidates(d, r, false, R, c));

  std::optional<CloseNeighborWitness> best;
  std::tuple<int, std::vector<Dart>, std::vector<Dart>> best_key;
  for (const auto& a : alphas)
    for (const auto& b : betas) {
      std::set<int> shared;
      for (int x : a.interior)
        if (R.count(x)) shared.insert(x);
      for (int x : b.interior)
        if (R.count(x)) shared.insert(x);
      int combined = static_cast<int>(shared.size());
      if (combined > c) continue;
      std::tuple<int, std::vector<Dart>, std::vector<Dart>> key{combined, a.path,
                                                                b.path};
      if (!best || key < best_key) {
        best_key = key;
        CloseNeighborWitness w;
        w.r = r;
        w.s = s;
        w.alpha = a.path;
        w.beta = b.path;
        w.interior_count = combined;
        best = std::move(w);
      }
    }
  return best;
}

nlohmann::ordered_json sequence_to_json(const MoveSequence& seq) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["start"] = diagram_to_json(seq.start);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [mv, oc] : seq.steps) {
    nlohmann::ordered_json step;
    step["kind"] = move_kind_name(mv.kind);
    step["site"] = site_encoding(mv);
    arr.push_back(step);
  }
  j["moves"] = arr;
  return j;
}

MoveSequence sequence_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("version", 0) != 1)
    throw std::runtime_error("move sequence: unsupported version");
  MoveSequence seq;
  seq.start = diagram_from_json(j.at("start"));
  for (const auto& step : j.at("moves")) {
    Move m = resolve_site(seq.final(), step.at("site").get<std::string>());
    if (move_kind_name(m.kind) != step.at("kind").get<std::string>())
      throw std::runtime_error("move sequence: kind does not match site " +
                               step.at("site").get<std::string>());
    MoveOutcome oc = apply(seq.final(), m);
    seq.steps.emplace_back(m, std::move(oc));
  }
  return seq;
}

}  // namespace linkred
