#pragma once
// Combinatorial link diagrams in the plane.
//
// A diagram is a 4-valent combinatorial map with over/under decorations plus
// a count of crossing-free circle components.  Crossing c owns four darts
// 4c+0 .. 4c+3, listed counterclockwise around the crossing; dart 4c+s is one
// end of an edge, and partner(d) is the other end (a fixed-point-free
// involution).  A strand entering at slot s leaves at slot (s+2)%4; the slot
// pair {over_axis, over_axis+2} carries the over-strand.
//
// Faces are the orbits of d -> rot_ccw(partner(d)) with rot_ccw(4c+s) =
// 4c+(s+1)%4.  For each connected piece with V crossings this yields V+2
// orbits (Euler on the sphere); validation rejects anything else, which is
// exactly the planarity check.  Pieces sit side by side in the plane: each
// piece marks one orbit as its outer face, and the union of the marked orbits
// bounds the single unbounded region.  Crossing-free circles carry a label
// and the region containing them (a bounded face, identified by any dart of
// its orbit, or the outer region).
//
// Values are immutable in use: all operations are pure and return new
// diagrams.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace linkred {

using Dart = int32_t;
constexpr Dart kNoDart = -1;

inline Dart dart_of(int crossing, int slot) { return 4 * crossing + slot; }
inline int crossing_of(Dart d) { return d / 4; }
inline int slot_of(Dart d) { return d & 3; }
inline Dart rot_ccw(Dart d) { return (d & ~3) | ((d + 1) & 3); }
inline Dart rot_cw(Dart d) { return (d & ~3) | ((d + 3) & 3); }
inline Dart strand_exit(Dart d) { return (d & ~3) | ((d + 2) & 3); }

struct Crossing {
  uint8_t over_axis = 1;  // slots {over_axis, over_axis+2} are the over-strand
  std::string label;      // compiler tag such as "p[x1]"; empty = unlabeled
};

// A crossing-free closed component.  anchor == kNoDart places the circle in
// the unbounded outer region; otherwise anchor is any dart of the bounded
// face orbit containing the circle.
struct Circle {
  std::string label;
  Dart anchor = kNoDart;
};

struct FaceWalk {
  Dart id = kNoDart;           // minimal dart of the orbit
  std::vector<Dart> corners;   // orbit in traversal order, starting at id
  bool outer = false;          // true if this orbit bounds the unbounded region
};

struct Diagram {
  std::vector<Crossing> crossings;
  std::vector<Dart> partner;        // size 4*crossings.size()
  std::vector<Dart> outer_marks;    // one dart per connected piece, marking
                                    // the orbit that faces the outer region
  std::vector<Circle> circles;
  std::vector<std::string> component_labels;  // per strand component, in
                                              // order of smallest dart

  int num_crossings() const { return static_cast<int>(crossings.size()); }
  int num_darts() const { return static_cast<int>(partner.size()); }
  bool crossingless() const { return crossings.empty(); }

  // True if dart d lies on the over-strand of its crossing.
  bool dart_over(Dart d) const {
    return (slot_of(d) & 1) == (crossings[crossing_of(d)].over_axis & 1);
  }
};

// ---- construction & validation ------------------------------------------

// Builds a diagram from an X[a,b,c,d] PD code: slot 0 is the incoming
// under-strand edge, slots counterclockwise.  An optional "circles <n>"
// header token adds n crossing-free circles; the `extra_circles` parameter
// adds more (both end up in the outer region).  The rotation system must be
// planar; the outer face of each piece is chosen deterministically (most
// corners, ties by smallest dart).  Throws std::runtime_error on malformed
// input, dangling edge labels, or a non-planar rotation system.
Diagram from_pd_code(const std::string& text, int extra_circles = 0);

// Emits a PD code: "circles <n>" header when circles are present, then one
// X[a,b,c,d] token per crossing with edges numbered consecutively along each
// component in the default orientation.  Re-parsing yields an isomorphic
// diagram whenever every piece's deterministic outer-face choice coincides
// with the marked one (true for all fixtures; the JSON format is the lossless
// carrier).
std::string to_pd_code(const Diagram& d);

// Returns the empty string when valid, otherwise the name of the violated
// invariant.
std::string validate_error(const Diagram& d);
inline bool validate(const Diagram& d) { return validate_error(d).empty(); }

// Replaces each outer mark and bounded circle anchor by the minimal dart of
// its orbit and sorts the outer marks.  Call after constructing or editing a
// diagram by hand so equal diagrams compare equal field-by-field.
void normalize_marks(Diagram& d);

// ---- traversal -----------------------------------------------------------

// All face orbits, each tagged with whether it bounds the outer region,
// sorted by id.  Per connected piece with V crossings there are V+2 orbits.
std::vector<FaceWalk> faces(const Diagram& d);

// Face orbit containing dart d, as its minimal dart (the face id).
Dart face_id_of(const Diagram& d, Dart dart);

// All corners of the face orbit containing `dart`, in traversal order.
std::vector<Dart> face_orbit(const Diagram& d, Dart dart);

// True if `dart`'s face orbit is one of the marked outer orbits.
bool face_is_outer(const Diagram& d, Dart dart);

// Strand components with at least one crossing.  Each component is the cycle
// of entry darts in its default orientation (the orientation whose orbit
// contains the component's smallest dart), starting at that dart.
std::vector<std::vector<Dart>> components(const Diagram& d);

// Total component count including crossing-free circles.
int component_count(const Diagram& d);

// Index into components(d) order for the component through dart d.
int component_index_of(const Diagram& d, Dart dart);

// Connected pieces of the 4-valent map, as sorted crossing-index lists,
// sorted by smallest crossing.
std::vector<std::vector<int>> pieces(const Diagram& d);

// Piece index (in pieces(d) order) containing the given crossing.
int piece_index_of(const Diagram& d, int crossing);

// ---- canonical form ------------------------------------------------------

// Canonical byte string: equal for two diagrams iff they are isomorphic as
// over/under-decorated planar maps with matching outer faces and matching
// circle placement (labels are ignored).  Invariant under crossing/dart
// renumbering and slot rotation; minimized over breadth-first relabelings
// from every start dart.  Mirror images are distinct.
std::string canonical_code(const Diagram& d);

// ---- misc ----------------------------------------------------------------

// Diagram with the over/under decoration at one crossing flipped; everything
// else identical.  Involution.
Diagram crossing_change(const Diagram& d, int crossing);

// Crossing index with the given label, or -1.
int find_crossing_by_label(const Diagram& d, const std::string& label);

}  // namespace linkred
