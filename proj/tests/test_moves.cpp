// Move calculus: enumeration censuses on small fixtures, surgery and its
// inverses, accounting for untangling sequences, and strand-arc witnesses.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "linkred/diagram.hpp"
#include "linkred/invariants.hpp"
#include "linkred/json_io.hpp"
#include "linkred/moves.hpp"

using namespace linkred;

namespace {

const char* kPoke = "X[4,1,3,2] X[3,1,4,2]";      // one strand twice under the other
const char* kHopf = "X[4,1,3,2] X[2,3,1,4]";      // alternating clasp
const char* kTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

Diagram poke() { return from_pd_code(kPoke); }
Diagram hopf() { return from_pd_code(kHopf); }
Diagram trefoil() { return from_pd_code(kTrefoil); }
Diagram unknot_circle(int n = 1) {
  return from_pd_code("circles " + std::to_string(n));
}

std::vector<std::string> encodings(const std::vector<Move>& ms) {
  std::vector<std::string> out;
  for (const Move& m : ms) out.push_back(site_encoding(m));
  return out;
}

std::vector<std::string> encodings_of(const Diagram& d,
                                      const std::set<MoveKind>& kinds) {
  return encodings(enumerate_moves(d, kinds));
}

// Inserting a strand pair or a kink and removing it at its new face must give
// back the very same diagram.
void check_insert_undo(const Diagram& d, const Move& m) {
  MoveOutcome in = apply(d, m);
  Move undo;
  if (m.kind == MoveKind::IIPlus) {
    undo.kind = MoveKind::IIMinus;
    undo.a = face_id_of(in.result, dart_of(in.created.front(), 2));
  } else {
    undo.kind = MoveKind::IMinus;
    undo.a = face_id_of(in.result, dart_of(in.created.front(), 3));
  }
  MoveOutcome back = apply(in.result, undo);
  CHECK(canonical_code(back.result) == canonical_code(d));
}

// All strand-level moves applicable on diagrams built only from insertions.
const std::set<MoveKind> kInsertions{MoveKind::IPlus, MoveKind::IIPlus};
const std::set<MoveKind> kRemovals{MoveKind::IMinus, MoveKind::IIMinus};

Diagram random_insertions(std::mt19937& rng, int steps, int circles) {
  Diagram d = unknot_circle(circles);
  for (int i = 0; i < steps; ++i) {
    auto ms = enumerate_moves(d, kInsertions);
    if (ms.empty()) break;
    d = apply(d, ms[rng() % ms.size()]).result;
  }
  return d;
}

// The text format carries neither the outer-face choice nor circle placement.
// Quotient both out: smallest canonical code over every outer-mark assignment,
// with circles detached into the unbounded region.
std::string mark_free_code(const Diagram& d) {
  Diagram base = d;
  for (Circle& c : base.circles) c.anchor = kNoDart;
  auto ps = pieces(base);
  std::vector<std::vector<Dart>> options(ps.size());
  for (const FaceWalk& f : faces(base))
    options[piece_index_of(base, crossing_of(f.id))].push_back(f.id);
  std::string best;
  std::vector<size_t> pick(ps.size(), 0);
  while (true) {
    Diagram v = base;
    v.outer_marks.clear();
    for (size_t i = 0; i < ps.size(); ++i)
      v.outer_marks.push_back(options[i][pick[i]]);
    normalize_marks(v);
    std::string code = canonical_code(v);
    if (best.empty() || code < best) best = code;
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return best;
}

// True when each piece has a single largest face and the mark sits on it; in
// that case the parser's outer-face choice cannot depend on dart numbering.
bool marks_forced(const Diagram& d) {
  auto ps = pieces(d);
  std::vector<std::vector<size_t>> sizes(ps.size());
  std::vector<std::pair<size_t, Dart>> top(ps.size(), {0, kNoDart});
  for (const FaceWalk& f : faces(d)) {
    int p = piece_index_of(d, crossing_of(f.id));
    sizes[p].push_back(f.corners.size());
    if (f.corners.size() > top[p].first) top[p] = {f.corners.size(), f.id};
  }
  std::set<Dart> marks(d.outer_marks.begin(), d.outer_marks.end());
  for (size_t p = 0; p < ps.size(); ++p) {
    if (std::count(sizes[p].begin(), sizes[p].end(), top[p].first) != 1)
      return false;
    if (!marks.count(top[p].second)) return false;
  }
  return true;
}

// Independent close-neighbor verdict: scan every prefix of the four strand
// walks out of r, check the defining conditions directly on each, and take
// the smallest combined interior over valid pairs.
struct OracleVerdict {
  bool exists = false;
  int best = -1;
};

OracleVerdict oracle_close(const Diagram& d, int r, int s,
                           const std::set<int>& R, int c) {
  auto arcs = [&](bool over) {
    std::vector<std::set<int>> good;
    int ax = (d.crossings[r].over_axis & 1) ^ (over ? 0 : 1);
    for (Dart e0 : {dart_of(r, ax), dart_of(r, ax + 2)}) {
      std::vector<std::pair<int, bool>> hits;
      Dart cur = d.partner[e0];
      while (crossing_of(cur) != r) {
        hits.emplace_back(crossing_of(cur), d.dart_over(cur));
        cur = d.partner[strand_exit(cur)];
      }
      for (size_t i = 0; i < hits.size(); ++i) {
        if (hits[i].first != s || hits[i].second != over) continue;
        bool endpoint_clean = true;
        std::set<int> interior_r;
        for (size_t j = 0; j < i; ++j) {
          if (hits[j].first == s) endpoint_clean = false;
          if (R.count(hits[j].first)) interior_r.insert(hits[j].first);
        }
        if (endpoint_clean && static_cast<int>(interior_r.size()) <= c)
          good.push_back(interior_r);
      }
    }
    return good;
  };
  OracleVerdict v;
  for (const auto& A : arcs(true))
    for (const auto& B : arcs(false)) {
      std::set<int> u = A;
      u.insert(B.begin(), B.end());
      int n = static_cast<int>(u.size());
      if (n <= c && (!v.exists || n < v.best)) {
        v.exists = true;
        v.best = n;
      }
    }
  return v;
}

void check_arc(const Diagram& d, const std::vector<Dart>& path, int r, int s,
               bool over) {
  REQUIRE(path.size() >= 2);
  CHECK(crossing_of(path.front()) == r);
  CHECK(d.dart_over(path.front()) == over);
  for (size_t i = 1; i < path.size(); ++i)
    CHECK(path[i] == d.partner[i == 1 ? path[0] : strand_exit(path[i - 1])]);
  CHECK(crossing_of(path.back()) == s);
  CHECK(d.dart_over(path.back()) == over);
  for (size_t i = 1; i + 1 < path.size(); ++i) {
    CHECK(crossing_of(path[i]) != r);
    CHECK(crossing_of(path[i]) != s);
  }
}

}  // namespace

TEST_CASE("crossingless unknot admits only insertions") {
  Diagram d = unknot_circle();
  auto names = encodings(enumerate_moves(d));
  std::vector<std::string> expect{"I+@k000,s0,cm", "I+@k000,s0,cp",
                                  "I+@k000,s1,cm", "I+@k000,s1,cp",
                                  "II+@k000,l000,o0", "II+@k000,l000,o1"};
  CHECK(names == expect);
  CHECK(encodings_of(d, kRemovals).empty());
  CHECK(encodings_of(d, {MoveKind::III}).empty());
}

TEST_CASE("poke move census") {
  Diagram d = poke();
  CHECK(encodings_of(d, {MoveKind::IIMinus}) ==
        std::vector<std::string>{"II-@f00001", "II-@f00002", "II-@f00003"});
  CHECK(encodings_of(d, {MoveKind::IMinus}).empty());
  CHECK(encodings_of(d, {MoveKind::III}).empty());
  CHECK(enumerate_moves(d, {MoveKind::IPlus}).size() == 16);   // 4 edges * 4
  CHECK(enumerate_moves(d, {MoveKind::IIPlus}).size() == 16);  // 4 bigons * 4
  CHECK(enumerate_moves(d).size() == 35);

  // every published site resolves back to an identical move
  for (const Move& m : enumerate_moves(d)) {
    Move r = resolve_site(d, site_encoding(m));
    CHECK(site_encoding(r) == site_encoding(m));
  }
  CHECK_THROWS_AS(resolve_site(d, "II-@f00000"), std::invalid_argument);  // outer
  CHECK_THROWS_AS(resolve_site(d, "I-@f00001"), std::invalid_argument);
  CHECK_THROWS_AS(resolve_site(d, "totally-bogus"), std::invalid_argument);
}

TEST_CASE("alternating clasps and trefoils resist strand-level removal") {
  CHECK(encodings_of(hopf(), kRemovals).empty());
  CHECK(encodings_of(trefoil(), kRemovals).empty());
  CHECK(encodings_of(trefoil(), {MoveKind::III}).empty());  // cyclic layering
  CHECK(encodings_of(hopf(), {MoveKind::III}).empty());
}

TEST_CASE("removing either poke bigon unlinks it") {
  Diagram d = poke();
  for (const char* site : {"II-@f00001", "II-@f00002", "II-@f00003"}) {
    MoveOutcome oc = apply(d, resolve_site(d, site));
    CHECK(oc.result.crossingless());
    CHECK(oc.result.circles.size() == 2);
    CHECK(oc.result.outer_marks.empty());
    CHECK(oc.result.circles[0].anchor == kNoDart);
    CHECK(oc.result.circles[1].anchor == kNoDart);
    CHECK(oc.correspondence.empty());
    CHECK(oc.removed == std::vector<int>{0, 1});
    CHECK(canonical_code(oc.result) == canonical_code(unknot_circle(2)));
  }
  MoveSequence seq =
      apply_sequence(d, {resolve_site(d, "II-@f00001")});
  CHECK(defect(seq) == 0);
  WeightReport w = trace_weights(seq);
  CHECK(w.total_thirds == 0);
  CHECK(w.per_crossing[0].fate == CrossingFate::EconomicalII);
  CHECK(w.per_crossing[1].fate == CrossingFate::EconomicalII);
}

TEST_CASE("a circle poked through itself: one bigon, two curls") {
  Diagram d = unknot_circle();
  for (int over : {0, 1}) {
    Move m;
    m.kind = MoveKind::IIPlus;
    m.circle_a = 0;
    m.circle_b = 0;
    m.over = over;
    MoveOutcome oc = apply(d, m);
    CHECK(oc.result.num_crossings() == 2);
    CHECK(oc.result.circles.empty());
    CHECK(oc.created == std::vector<int>{0, 1});
    CHECK(encodings_of(oc.result, kRemovals) ==
          std::vector<std::string>{"I-@f00000", "I-@f00007", "II-@f00002"});

    // undoing the bigon restores the bare circle
    MoveOutcome undone = apply(oc.result, resolve_site(oc.result, "II-@f00002"));
    CHECK(undone.result.crossingless());
    CHECK(canonical_code(undone.result) == canonical_code(d));

    // untwisting one curl instead leaves a single kink
    MoveOutcome kinked = apply(oc.result, resolve_site(oc.result, "I-@f00000"));
    CHECK(kinked.result.num_crossings() == 1);
    CHECK(kinked.result.circles.empty());
    CHECK(enumerate_moves(kinked.result, {MoveKind::IMinus}).size() == 2);
  }
}

TEST_CASE("kink insertion carries the requested writhe and undoes cleanly") {
  Diagram circle = unknot_circle();
  for (int side : {0, 1})
    for (int sign : {1, -1}) {
      Move m;
      m.kind = MoveKind::IPlus;
      m.circle_a = 0;
      m.side = side;
      m.sign = sign;
      MoveOutcome oc = apply(circle, m);
      CHECK(oc.result.num_crossings() == 1);
      CHECK(writhe(oc.result, 0) == sign);
      check_insert_undo(circle, m);
    }

  Diagram t = trefoil();
  for (Dart e : {0, 2, 5})
    for (int side : {0, 1})
      for (int sign : {1, -1}) {
        Move m;
        m.kind = MoveKind::IPlus;
        m.a = std::min(e, t.partner[e]);
        m.side = side;
        m.sign = sign;
        MoveOutcome oc = apply(t, m);
        CHECK(oc.result.num_crossings() == 4);
        CHECK(writhe(oc.result, 0) == 3 + sign);
        check_insert_undo(t, m);
      }
}

TEST_CASE("strand-pair insertion undoes cleanly at its bigon") {
  Diagram t = trefoil();
  int checked = 0;
  for (const Move& m : enumerate_moves(t, {MoveKind::IIPlus})) {
    check_insert_undo(t, m);
    ++checked;
  }
  CHECK(checked == 36);

  // circle variants: a loose circle next to the trefoil
  Diagram td = from_pd_code(kTrefoil, 1);
  int corner_sites = 0, circle_sites = 0;
  for (const Move& m : enumerate_moves(td, {MoveKind::IIPlus})) {
    if (m.circle_a >= 0 || m.circle_b >= 0)
      ++circle_sites;
    else
      ++corner_sites;
    check_insert_undo(td, m);
  }
  CHECK(corner_sites == 36);
  // the outer face has three corners: 3 fingers out, 3 edges across, the
  // self-poke, all doubled by the over choice
  CHECK(circle_sites == 14);
}

TEST_CASE("sliding a triangle and sliding it back") {
  Diagram d = crossing_change(trefoil(), 0);  // break the cyclic layering

  CHECK(encodings_of(d, {MoveKind::III}) ==
        std::vector<std::string>{"III@f00002"});
  CHECK(encodings_of(d, {MoveKind::IIMinus}) ==
        std::vector<std::string>{"II-@f00001", "II-@f00003"});

  MoveOutcome slid = apply(d, resolve_site(d, "III@f00002"));
  CHECK(slid.result.num_crossings() == 3);
  CHECK(slid.created.empty());
  CHECK(slid.removed.empty());
  CHECK(slid.correspondence == std::map<int, int>{{0, 0}, {1, 1}, {2, 2}});

  // the triangle reappears on the opposite side, here at the former outer face
  CHECK(encodings_of(slid.result, {MoveKind::III}) ==
        std::vector<std::string>{"III@f00000"});
  CHECK(encodings_of(slid.result, {MoveKind::IIMinus}) ==
        std::vector<std::string>{"II-@f00001", "II-@f00003"});
  // the wiring genuinely changed, but this diagram happens to have a
  // half-turn symmetry carrying the slid picture back onto itself
  CHECK(slid.result.partner != d.partner);
  CHECK(canonical_code(slid.result) == canonical_code(d));

  MoveOutcome back = apply(slid.result, resolve_site(slid.result, "III@f00000"));
  CHECK(back.result.partner == d.partner);
  CHECK(back.result.outer_marks == d.outer_marks);
  CHECK(canonical_code(back.result) == canonical_code(d));
}

TEST_CASE("untangling accounts: economy, waste, and triangle tolls") {
  Diagram d = crossing_change(trefoil(), 0);

  SUBCASE("straight economical untangling") {
    MoveSequence seq;
    seq.start = d;
    seq.steps.emplace_back(resolve_site(d, "II-@f00001"),
                           apply(d, resolve_site(d, "II-@f00001")));
    const Diagram& mid = seq.final();
    auto ones = enumerate_moves(mid, {MoveKind::IMinus});
    REQUIRE(ones.size() > 0);
    seq.steps.emplace_back(ones[0], apply(mid, ones[0]));
    REQUIRE(seq.final().crossingless());

    CHECK(defect(seq) == 1);
    WeightReport w = trace_weights(seq);
    CHECK(w.per_crossing[0].fate == CrossingFate::EconomicalII);
    CHECK(w.per_crossing[1].fate == CrossingFate::EconomicalII);
    CHECK(w.per_crossing[2].fate == CrossingFate::IMinus);
    CHECK(w.per_crossing[2].weight_thirds == 3);
    CHECK(w.total_thirds == 3);
    CHECK(3 * w.defect == w.total_thirds);
  }

  SUBCASE("triangle slide first: every crossing pays the toll") {
    std::vector<Move> plan;
    Diagram cur = d;
    plan.push_back(resolve_site(cur, "III@f00002"));
    cur = apply(cur, plan.back()).result;
    plan.push_back(resolve_site(cur, "II-@f00001"));
    cur = apply(cur, plan.back()).result;
    auto ones = enumerate_moves(cur, {MoveKind::IMinus});
    REQUIRE(ones.size() > 0);
    plan.push_back(ones[0]);

    MoveSequence seq = apply_sequence(d, plan);
    REQUIRE(seq.final().crossingless());
    CHECK(defect(seq) == 3);
    WeightReport w = trace_weights(seq);
    for (int i = 0; i < 3; ++i) CHECK(w.per_crossing[i].m3 == 1);
    CHECK(w.total_thirds == 9);
    CHECK(3 * w.defect == w.total_thirds);
  }

  SUBCASE("a bigon of one old and one new crossing is wasteful") {
    Diagram kink = from_pd_code("X[1,2,2,1]");
    Move push;
    push.kind = MoveKind::IIPlus;
    push.a = 1;
    push.b = 3;
    push.over = 0;
    std::vector<Move> plan{push};
    Diagram cur = apply(kink, push).result;
    plan.push_back(resolve_site(cur, "II-@f00003"));
    cur = apply(cur, plan.back()).result;
    auto ones = enumerate_moves(cur, {MoveKind::IMinus});
    REQUIRE(ones.size() > 0);
    plan.push_back(ones[0]);

    MoveSequence seq = apply_sequence(kink, plan);
    REQUIRE(seq.final().crossingless());
    CHECK(defect(seq) == 5);
    WeightReport w = trace_weights(seq);
    REQUIRE(w.per_crossing.size() == 1);
    CHECK(w.per_crossing[0].fate == CrossingFate::WastefulII);
    CHECK(w.per_crossing[0].weight_thirds == 6);
    CHECK(w.total_thirds == 6);
    CHECK(3 * w.defect >= w.total_thirds);
  }

  SUBCASE("defect requires a crossingless end") {
    MoveSequence idle;
    idle.start = d;
    CHECK_THROWS_AS(defect(idle), std::invalid_argument);
    CHECK_THROWS_AS(trace_weights(idle), std::invalid_argument);
  }
}

TEST_CASE("labels ride through surgery") {
  auto j = diagram_to_json(poke());
  j["crossings"][0]["label"] = "first";
  j["crossings"][1]["label"] = "second";
  j["component_labels"] = {"top strand", "bottom strand"};
  Diagram lp = diagram_from_json(j);

  MoveOutcome oc = apply(lp, resolve_site(lp, "II-@f00002"));
  REQUIRE(oc.result.circles.size() == 2);
  CHECK(oc.result.circles[0].label == "top strand");
  CHECK(oc.result.circles[1].label == "bottom strand");
  CHECK(oc.result.component_labels.empty());

  Move kink;
  kink.kind = MoveKind::IPlus;
  kink.a = 0;
  MoveOutcome added = apply(lp, kink);
  CHECK(added.result.crossings[0].label == "first");
  CHECK(added.result.crossings[1].label == "second");
  CHECK(added.result.crossings[2].label.empty());
  CHECK(added.result.component_labels ==
        std::vector<std::string>{"top strand", "bottom strand"});

  // a labeled circle keeps its name when it becomes a strand
  Diagram two = unknot_circle(2);
  two.circles[0].label = "ring A";
  two.circles[1].label = "ring B";
  Move link;
  link.kind = MoveKind::IIPlus;
  link.circle_a = 0;
  link.circle_b = 1;
  link.over = 1;
  MoveOutcome linked = apply(two, link);
  CHECK(linked.result.component_labels ==
        std::vector<std::string>{"ring B", "ring A"});  // target strand sorts first
}

TEST_CASE("insertion sites respect circle anchoring") {
  Diagram d = from_pd_code(kPoke, 1);
  REQUIRE(d.circles.size() == 1);
  d.circles[0].anchor = 1;  // park the circle inside the first bigon
  normalize_marks(d);
  REQUIRE(validate(d));

  auto removals = encodings_of(d, {MoveKind::IIMinus});
  CHECK(removals == std::vector<std::string>{"II-@f00002", "II-@f00003"});
  for (const Move& m : enumerate_moves(d, kInsertions))
    CHECK(m.circle_a < 0);  // an anchored circle cannot reach across its face
  for (const Move& m : enumerate_moves(d, kInsertions))
    CHECK(m.circle_b < 0);

  MoveOutcome oc = apply(d, resolve_site(d, "II-@f00002"));
  CHECK(oc.result.crossingless());
  CHECK(oc.result.circles.size() == 3);
  for (const Circle& c : oc.result.circles) CHECK(c.anchor == kNoDart);
}

TEST_CASE("every removal is reversible by some insertion") {
  std::vector<Diagram> starts{poke(), crossing_change(trefoil(), 0)};
  {
    Move self;
    self.kind = MoveKind::IIPlus;
    self.circle_a = 0;
    self.circle_b = 0;
    self.over = 1;
    starts.push_back(apply(unknot_circle(), self).result);
  }
  for (const Diagram& d : starts) {
    std::string code = canonical_code(d);
    for (const Move& m : enumerate_moves(d, kRemovals)) {
      Diagram after = apply(d, m).result;
      bool restored = false;
      for (const Move& ins : enumerate_moves(after, kInsertions)) {
        if (canonical_code(apply(after, ins).result) == code) {
          restored = true;
          break;
        }
      }
      CHECK_MESSAGE(restored, "no inverse found for ", site_encoding(m));
    }
  }
}

TEST_CASE("random insertions build valid diagrams and the text format keeps them") {
  std::mt19937 rng(20250819);
  int forced = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Diagram d = random_insertions(rng, 2 + rng() % 3, 1 + rng() % 2);
    REQUIRE(validate(d));
    Diagram re = from_pd_code(to_pd_code(d));
    REQUIRE(validate(re));
    REQUIRE(re.num_crossings() == d.num_crossings());
    REQUIRE(re.circles.size() == d.circles.size());
    // everything the text represents survives the round trip
    REQUIRE(mark_free_code(d) == mark_free_code(re));
    // when the outer face is forced, the whole diagram survives verbatim
    if (marks_forced(d)) {
      ++forced;
      Diagram detached = d;
      for (Circle& c : detached.circles) c.anchor = kNoDart;
      normalize_marks(detached);
      REQUIRE(canonical_code(detached) == canonical_code(re));
    }
  }
  CHECK(forced > 100);
}

TEST_CASE("ten thousand random applications stay sound") {
  std::mt19937 rng(7151234);
  std::vector<Diagram> seeds{unknot_circle(1), unknot_circle(2), poke(),
                             trefoil(), crossing_change(trefoil(), 0)};
  size_t applies = 0;
  int builds = 0;
  while (applies < 10000) {
    Diagram d = seeds[builds++ % seeds.size()];
    int steps = 3 + rng() % 6;
    for (int i = 0; i < steps; ++i) {
      std::set<MoveKind> kinds{MoveKind::IMinus, MoveKind::IIMinus,
                               MoveKind::III};
      if (d.num_crossings() <= 10) {
        kinds.insert(MoveKind::IPlus);
        kinds.insert(MoveKind::IIPlus);
      }
      auto ms = enumerate_moves(d, kinds);
      if (ms.empty()) break;
      const Move& m = ms[rng() % ms.size()];
      MoveOutcome oc = apply(d, m);
      ++applies;
      REQUIRE(validate(oc.result));
      REQUIRE(oc.result.num_crossings() ==
              d.num_crossings() - static_cast<int>(oc.removed.size()) +
                  static_cast<int>(oc.created.size()));
      for (const auto& [from, to] : oc.correspondence) {
        REQUIRE(from >= 0);
        REQUIRE(from < d.num_crossings());
        REQUIRE(to >= 0);
        REQUIRE(to < oc.result.num_crossings());
      }
      if (applies % 97 == 0) {
        Diagram re = diagram_from_json(diagram_to_json(oc.result));
        REQUIRE(canonical_code(re) == canonical_code(oc.result));
      }
      d = std::move(oc.result);
    }
  }
  CHECK(applies >= 10000);
}

TEST_CASE("arcs reachable along a strand") {
  Diagram t = trefoil();
  std::set<int> all{0, 1, 2};

  auto over = arc_candidates(t, 0, true, all, 3);
  REQUIRE(over.size() == 2);
  CHECK(over[0].crossing == 2);
  CHECK(over[0].path == std::vector<Dart>{1, 6, 11});
  CHECK(over[0].interior == std::vector<int>{1});
  CHECK(over[0].interior_in_r == 1);
  CHECK(over[1].crossing == 1);
  CHECK(over[1].path == std::vector<Dart>{3, 8, 5});
  CHECK(over[1].interior == std::vector<int>{2});

  auto under = arc_candidates(t, 0, false, all, 3);
  REQUIRE(under.size() == 2);
  CHECK(under[0].path == std::vector<Dart>{0, 7, 10});
  CHECK(under[0].crossing == 2);
  CHECK(under[1].path == std::vector<Dart>{2, 9, 4});
  CHECK(under[1].crossing == 1);

  // a zero budget kills both walks at their first tolled crossing
  CHECK(arc_candidates(t, 0, true, all, 0).empty());
  // tolls apply only to listed crossings
  auto partial = arc_candidates(t, 0, true, {1}, 0);
  REQUIRE(partial.size() == 1);
  CHECK(partial[0].crossing == 1);
  CHECK(partial[0].path == std::vector<Dart>{3, 8, 5});
  CHECK(partial[0].interior_in_r == 0);

  CHECK_THROWS_AS(arc_candidates(t, 9, true, all, 3), std::invalid_argument);
  CHECK_THROWS_AS(arc_candidates(t, 0, true, all, -1), std::invalid_argument);
}

TEST_CASE("close neighbor verdicts") {
  Diagram p = poke();
  auto w = close_neighbors(p, 0, 1, {0, 1}, 0);
  REQUIRE(w.has_value());
  CHECK(w->alpha == std::vector<Dart>{1, 5});
  CHECK(w->beta == std::vector<Dart>{0, 6});
  CHECK(w->interior_count == 0);
  check_arc(p, w->alpha, 0, 1, true);
  check_arc(p, w->beta, 0, 1, false);

  CHECK(!close_neighbors(p, 0, 0, {0, 1}, 3).has_value());

  // in the alternating clasp each strand changes level between the crossings,
  // so no arc enters both as an overpass
  CHECK(!close_neighbors(hopf(), 0, 1, {0, 1}, 3).has_value());

  Diagram t = trefoil();
  CHECK(!close_neighbors(t, 0, 1, {0, 1, 2}, 0).has_value());
  auto wt = close_neighbors(t, 0, 1, {0, 1, 2}, 1);
  REQUIRE(wt.has_value());
  CHECK(wt->alpha == std::vector<Dart>{3, 8, 5});
  CHECK(wt->beta == std::vector<Dart>{2, 9, 4});
  CHECK(wt->interior_count == 1);
  auto cheap = close_neighbors(t, 0, 1, {0, 1}, 0);
  REQUIRE(cheap.has_value());
  CHECK(cheap->interior_count == 0);
  CHECK(close_neighbors(t, 1, 0, {0, 1, 2}, 1).has_value());
}

TEST_CASE("close neighbors agree with a path scan") {
  std::mt19937 rng(424243);
  std::vector<Diagram> pool{poke(), hopf(), trefoil(),
                            crossing_change(trefoil(), 0)};
  for (int i = 0; i < 40; ++i) {
    Diagram d = random_insertions(rng, 3 + rng() % 3, 1);
    if (d.num_crossings() >= 2 && d.num_crossings() <= 12) pool.push_back(d);
  }
  int compared = 0;
  for (const Diagram& d : pool) {
    int n = d.num_crossings();
    std::set<int> all, evens;
    for (int x = 0; x < n; ++x) {
      all.insert(x);
      if (x % 2 == 0) evens.insert(x);
    }
    for (const auto& R : {all, evens})
      for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s)
          for (int c : {0, 1, 3}) {
            auto mine = close_neighbors(d, r, s, R, c);
            auto ref = oracle_close(d, r, s, R, c);
            REQUIRE(mine.has_value() == ref.exists);
            if (mine) {
              REQUIRE(mine->interior_count == ref.best);
              check_arc(d, mine->alpha, r, s, true);
              check_arc(d, mine->beta, r, s, false);
            }
            ++compared;
          }
  }
  CHECK(compared > 500);
}

TEST_CASE("move sequences serialize and replay") {
  Diagram kink = from_pd_code("X[1,2,2,1]");
  Move push;
  push.kind = MoveKind::IIPlus;
  push.a = 1;
  push.b = 3;
  push.over = 0;
  std::vector<Move> plan{push};
  Diagram cur = apply(kink, push).result;
  plan.push_back(resolve_site(cur, "II-@f00003"));
  cur = apply(cur, plan.back()).result;
  plan.push_back(enumerate_moves(cur, {MoveKind::IMinus}).front());
  MoveSequence seq = apply_sequence(kink, plan);

  auto j = sequence_to_json(seq);
  CHECK(j["version"] == 1);
  REQUIRE(j["moves"].size() == 3);
  CHECK(j["moves"][0]["kind"] == "II+");
  CHECK(j["moves"][1]["kind"] == "II-");
  CHECK(j["moves"][1]["site"] == "II-@f00003");

  MoveSequence re = sequence_from_json(j);
  CHECK(re.steps.size() == seq.steps.size());
  CHECK(canonical_code(re.final()) == canonical_code(seq.final()));
  CHECK(defect(re) == defect(seq));

  auto bad = j;
  bad["moves"][1]["site"] = "II-@f00099";
  CHECK_THROWS(sequence_from_json(bad));
  auto mismatched = j;
  mismatched["moves"][0]["kind"] = "I+";
  CHECK_THROWS(sequence_from_json(mismatched));
  auto unversioned = j;
  unversioned["version"] = 2;
  CHECK_THROWS(sequence_from_json(unversioned));
}
