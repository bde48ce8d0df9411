#pragma once
//
// Compilers from CNF formulas to link diagrams, plus the certificate
// generators that witness their key properties:
//
//   build_trivial_sublink_link  2n-component labeled link whose n-component
//                               trivial sublinks track satisfying assignments
//   select_sublink              keep the components an assignment leaves behind
//   build_dphi                  one-component unknot diagram with a known
//                               optimal untangling cost
//   certificate_untangling      untangling driven by a satisfying assignment:
//                               n kink removals, pair cancellations otherwise
//   parallel_double             blackboard-framed two-strand cabling engine
//   whitehead_double            clasped double with zero copy-copy linking
//   build_lphiwh                clasped double of the trivial-sublink link
//   unlinking_certificate       clasp crossings to change for a full unlink
//
// The two gadget diagrams that drive the compilation (the 17-crossing
// truth-value gadget and the doubled-ring clause gadget) are frozen as
// versioned fixtures and embedded here; accessors expose them together with
// the splice metadata the compilers need.

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "linkred/diagram.hpp"
#include "linkred/moves.hpp"
#include "linkred/satlib.hpp"

namespace linkred {

// ---------------------------------------------------------------------------
// Frozen gadgets
// ---------------------------------------------------------------------------

// A gadget diagram in self-contained closed form, together with the metadata
// needed to splice instances of it into larger constructions.
struct GadgetTranscription {
  Diagram closed;
  // Named severable edges: name -> (upstream dart, downstream dart) in the
  // strand's flow direction.  Severing such an edge leaves two loose strand
  // ends that a compiler welds onto other structure.
  std::map<std::string, std::pair<Dart, Dart>> cut_edges;
  // Names of the severable edges in the cyclic order in which they touch the
  // unbounded region of the closed form.
  std::vector<std::string> boundary_order;
};

// 17-crossing truth-value gadget.  Crossing labels: p[x], p[!x], q[x], q[!x],
// r, s1..s12.  Severable edges: gamma1_pos/gamma2_pos (positive tentacle),
// gamma1_neg/gamma2_neg (negative tentacle), delta/epsilon (chain edges).
// Closed up as-is it is a one-component unknot diagram that untangles with
// one kink removal and eight pair cancellations.
const GadgetTranscription& variable_gadget();

// Clause gadget: three band rings (each a pair of parallel closed strands),
// pairwise sharing 8 crossings, 24 crossings total, arranged so that deleting
// any one ring frees the other two.  Each ring carries a severable section --
// a pair of parallel edges (outer copy, inner copy) on the gadget boundary --
// whose severing exposes the four loose ends a routed segment plugs into.
struct ClauseGadget {
  Diagram closed;
  struct RingSection {
    std::pair<Dart, Dart> outer_edge;  // (upstream, downstream) darts
    std::pair<Dart, Dart> inner_edge;
  };
  std::array<RingSection, 3> rings;  // in boundary cyclic order ring0,1,2
};
const ClauseGadget& clause_gadget();

// Single-copy alternating ring triple: six crossings, three closed strands,
// every two strands crossing exactly twice with uniform cyclic dominance and
// linking number zero.  Building block behind the clause constructions.
Diagram ring_triple();

// Raw JSON sources of the frozen gadgets, identical byte for byte to the
// files shipped under fixtures/ (tests enforce the equality).
const std::string& variable_gadget_source();
const std::string& clause_gadget_source();

// ---------------------------------------------------------------------------
// Routing plan
// ---------------------------------------------------------------------------

// Deterministic routing plan for build_dphi: which literals get routed
// segments, how segments are ordered, which clause visits each segment makes,
// and every segment-pair crossing event with its dominance decision.
struct Blueprint {
  struct Segment {
    int literal = 0;            // signed variable index; sign picks the side
    std::vector<int> clauses;   // clause indices visited, east to west
    int terminal_clause = 0;    // westernmost clause, where the segment ends
  };
  enum class EventKind { Reorder, FingerDescent, FingerAscent };
  struct CrossingEvent {
    EventKind kind;
    int over_literal = 0;   // passes over all 16 strand crossings
    int under_literal = 0;
    int clause = 0;         // finger events only; 0 for reorder events
  };
  std::vector<Segment> segments;       // north-to-south order
  std::vector<CrossingEvent> events;   // in construction order
  // ring_of[j][slot] = literal plugged into ring `slot` of clause j+1
  std::vector<std::array<int, 3>> ring_of;
};
Blueprint make_blueprint(const CnfFormula& f);

// ---------------------------------------------------------------------------
// Formula -> link compilers
// ---------------------------------------------------------------------------

// 2n-component labeled link: one Hopf-linked pair kappa[x_i] / kappa[!x_i]
// per variable and one ring triple per clause, each ring banded into the
// component matching its literal.  Band over-passes are uniform (no weaving)
// and no two bands cross twice.
Diagram build_trivial_sublink_link(const CnfFormula& f);

// Delete every component whose literal the (total) assignment satisfies.
// Keeps exactly one component per variable.  Throws std::invalid_argument if
// the diagram lacks the expected component labels or the assignment misses a
// variable.
Diagram select_sublink(const Diagram& link, const Assignment& a);

// One-component unknot diagram compiled from a formula in restricted form
// (every variable in 1..3 clauses, no repeated-literal clauses).  Contains
// one truth-value gadget instance per variable (labels instantiated, e.g.
// p[x2]) and one clause gadget instance per clause.
Diagram build_dphi(const CnfFormula& f);

// Untangling of build_dphi(f) driven by a satisfying assignment: exactly one
// kink removal per variable, at the satisfied side's crossing p[x_i] or
// p[!x_i], and pair cancellations for everything else.  The returned
// sequence replays to a crossingless diagram; its defect equals n.
MoveSequence certificate_untangling(const CnfFormula& f, const Assignment& a);

// ---------------------------------------------------------------------------
// Doubling
// ---------------------------------------------------------------------------

// Blackboard-framed parallel double: every strand becomes two parallel
// copies, every crossing a 2x2 block of four.  The copy-copy linking number
// of a component equals its writhe (no correction applied here).
struct ParallelDouble {
  Diagram d;
  std::vector<std::array<int, 4>> blocks;  // input crossing -> 4 outputs
  // Input dart -> output dart of the copy running on the left / right of the
  // strand's default orientation, at that side of the block.
  std::vector<Dart> left_of;
  std::vector<Dart> right_of;
};
ParallelDouble parallel_double(const Diagram& d);

// Per-component clasped double: parallel copies, twist insertions until the
// copy-copy linking number is zero (verified numerically on the intermediate
// diagram; std::logic_error if compensation fails), then a clasp join whose
// two crossings are positive.  Component count and labels are preserved;
// clasp crossings are labeled clasp[<label-or-index>]a / ...b.
Diagram whitehead_double(const Diagram& d);

// whitehead_double(build_trivial_sublink_link(f)), with component labels
// rewritten kappa[..] -> kappa_wh[..].
Diagram build_lphiwh(const CnfFormula& f);

// One clasp crossing id per variable -- on the component of the literal the
// assignment satisfies -- whose crossing changes turn build_lphiwh(f) into a
// 2n-component unlink.  Throws std::invalid_argument if the assignment does
// not satisfy f or is not total.
std::vector<int> unlinking_certificate(const CnfFormula& f, const Assignment& a);

}  // namespace linkred
