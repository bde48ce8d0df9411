// Reidemeister move calculus on plane diagrams: enumeration of applicable
// moves, surgery with crossing correspondences, defect and weight accounting
// for untanglings, and close-neighbor witnesses.
//
// Site conventions
//   I-  : the one-corner face (by face id).  Removes its crossing.
//   II- : a two-corner face whose one boundary strand runs over at both ends
//         and whose other runs under at both (by face id).  Removes both
//         crossings; strands that lose all their passes become circles.
//   III : a three-corner face whose three strands are layered in a strict
//         total order (by face id).  Slides the triangle to the opposite
//         side; every crossing survives with its strand pair intact.
//   I+  : an edge (its smaller dart), a side (0 = the face holding that
//         dart, 1 = the face holding its partner), and a chirality (the
//         writhe of the created kink).  Circle variant: a circle in the
//         unbounded region, side 0 = loop inside, 1 = loop outside.
//   II+ : an ordered pair of corners (finger, target) on one common face:
//         a finger of the first corner's outgoing edge is pushed across the
//         second corner's outgoing edge.  `over` = 1 puts the finger strand
//         on top.  The lens lands beyond the target edge, which is why the
//         pair is ordered.  Circle variants (circle finger across an edge,
//         edge finger across a circle, circle across a circle including a
//         circle across itself) require the circles to sit in the unbounded
//         region and any corner to lie on an unbounded face.
//
// Removal sites must be bounded faces hosting no circles; strands never
// slide across the unbounded region.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "linkred/diagram.hpp"

namespace linkred {

enum class MoveKind { IPlus, IMinus, IIPlus, IIMinus, III };

std::string move_kind_name(MoveKind k);  // "I+", "I-", "II+", "II-", "III"

struct Move {
  MoveKind kind;
  Dart a = kNoDart;   // face id (I-/II-/III), edge dart (I+), finger corner (II+)
  Dart b = kNoDart;   // target corner (II+)
  int side = 0;       // I+ placement choice
  int sign = 1;       // I+ chirality: writhe of the new kink
  int over = 0;       // II+: 1 = finger strand over, 0 = target over
  int circle_a = -1;  // I+ circle / II+ finger circle
  int circle_b = -1;  // II+ target circle
};

// Fixed-width textual site name; doubles as the deterministic sort key and
// as the serialized form inside move-sequence files.
std::string site_encoding(const Move& m);

// All applicable moves, sorted by site encoding.
std::vector<Move> enumerate_moves(const Diagram& d);
std::vector<Move> enumerate_moves(const Diagram& d, const std::set<MoveKind>& kinds);

// The applicable move with the given site name; throws when none matches.
Move resolve_site(const Diagram& d, const std::string& encoding);

struct MoveOutcome {
  Diagram result;
  // Surviving input crossings to their ids in the result; injective.  A III
  // move maps every crossing to the one pairing the same two strands.
  std::map<int, int> correspondence;
  std::vector<int> created;  // result ids introduced by I+/II+
  std::vector<int> removed;  // input ids deleted by I-/II-
};

MoveOutcome apply(const Diagram& d, const Move& m);  // throws if inapplicable

struct MoveSequence {
  Diagram start;
  std::vector<std::pair<Move, MoveOutcome>> steps;
  const Diagram& final() const { return steps.empty() ? start : steps.back().second.result; }
};

// Applies the moves in order, validating applicability at each stage.
MoveSequence apply_sequence(const Diagram& start, const std::vector<Move>& moves);

// 2*(number of moves) - (starting crossing count); requires the sequence to
// end crossingless.  Nonnegative, and zero exactly when every move is a II-.
int defect(const MoveSequence& seq);

// Per starting crossing: how many III moves it took part in, and how it
// left the diagram.  Weights are exact thirds: 2*m3 + 3*(0 economical II-,
// 1 I-, 2 wasteful II-).  The defect bounds the weight total from above.
struct CrossingFate {
  enum Kind { EconomicalII, IMinus, WastefulII, Survives };
  int m3 = 0;
  Kind fate = Survives;
  int weight_thirds = 0;
};

struct WeightReport {
  std::vector<CrossingFate> per_crossing;  // indexed by starting crossing id
  long long total_thirds = 0;
  int defect = 0;
};

WeightReport trace_weights(const MoveSequence& seq);

// Arcs reachable from r along its over strand (over = true) or under strand:
// walking both directions, every first visit of a crossing arriving on the
// matching strand level becomes a candidate, as long as the crossings passed
// strictly in between contain at most c members of R.
struct ArcCandidate {
  int crossing;
  int interior_in_r;
  std::vector<Dart> path;      // exit dart at r, pass entries, entry at end
  std::vector<int> interior;   // distinct crossings strictly between
};

std::vector<ArcCandidate> arc_candidates(const Diagram& d, int r, bool over,
                                         const std::set<int>& R, int c);

// Two arcs joining r and s, one entering both as an overpass and one as an
// underpass, with neither endpoint in any interior and at most c distinct
// R-crossings across both interiors combined.
struct CloseNeighborWitness {
  int r = -1, s = -1;
  std::vector<Dart> alpha, beta;
  int interior_count = 0;  // distinct R-crossings over both arcs
};

std::optional<CloseNeighborWitness> close_neighbors(const Diagram& d, int r,
                                                    int s,
                                                    const std::set<int>& R,
                                                    int c);

// Serialized form: the starting diagram plus ordered (kind, site) pairs;
// loading replays them and fails if any site is not applicable at its turn.
nlohmann::ordered_json sequence_to_json(const MoveSequence& seq);
MoveSequence sequence_from_json(const nlohmann::json& j);

}  // namespace linkred
