// CNF handling: DIMACS parsing, the exhaustive oracle, the forcing gadget,
// and the pair-splitting rewrite, cross-checked against an independent
// backtracking solver.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "linkred/satlib.hpp"

using namespace linkred;

namespace {

Literal pos(int v) { return Literal{v, false}; }
Literal neg(int v) { return Literal{v, true}; }

// Reference decision procedure: unit propagation plus chronological
// backtracking, sharing nothing with brute_force_sat or the rewrite.
bool dpll(const CnfFormula& f) {
  std::vector<std::vector<int>> cl;
  for (const Clause& c : f.clauses) {
    std::vector<int> v;
    for (const Literal& l : c) v.push_back(l.encoded());
    cl.push_back(v);
  }
  std::function<bool(std::map<int, int>)> go =
      [&](std::map<int, int> val) -> bool {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& c : cl) {
        bool sat = false;
        int open = 0, last = 0;
        for (int lit : c) {
          auto it = val.find(std::abs(lit));
          if (it == val.end()) {
            ++open;
            last = lit;
          } else if ((lit > 0) == (it->second != 0)) {
            sat = true;
            break;
          }
        }
        if (sat) continue;
        if (open == 0) return false;
        if (open == 1) {
          val[std::abs(last)] = last > 0;
          changed = true;
        }
      }
    }
    int branch = 0;
    for (const auto& c : cl) {
      bool sat = false;
      int cand = 0;
      for (int lit : c) {
        auto it = val.find(std::abs(lit));
        if (it == val.end()) {
          if (!cand) cand = std::abs(lit);
        } else if ((lit > 0) == (it->second != 0)) {
          sat = true;
          break;
        }
      }
      if (!sat && cand) {
        branch = cand;
        break;
      }
    }
    if (!branch) return true;
    auto high = val;
    high[branch] = 1;
    if (go(std::move(high))) return true;
    val[branch] = 0;
    return go(std::move(val));
  };
  return go({});
}

CnfFormula make(int vars, std::vector<std::vector<int>> clauses) {
  CnfFormula f;
  f.num_vars = vars;
  for (const auto& c : clauses) {
    Clause cl;
    for (int lit : c) cl.push_back(Literal{std::abs(lit), lit < 0});
    f.clauses.push_back(cl);
  }
  return f;
}

}  // namespace

TEST_CASE("dimacs parsing") {
  CnfFormula f = parse_dimacs("p cnf 1 1\n1 0\n");
  CHECK(f.num_vars == 1);
  REQUIRE(f.clauses.size() == 1);
  CHECK(f.clauses[0] == Clause{pos(1)});

  f = parse_dimacs("c a comment\np cnf 2 1\nc mid comment\n1 -2 0\n");
  CHECK(f.num_vars == 2);
  CHECK(f.clauses[0] == Clause{pos(1), neg(2)});

  // clause split across lines, several clauses on one line
  f = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1 -2 -3 0\n");
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0] == Clause{pos(1), pos(2), pos(3)});
  CHECK(f.clauses[1] == Clause{neg(1), neg(2), neg(3)});

  std::string pigeons =
      "c three items, two slots, nobody shares\n"
      "p cnf 3 5\n"
      "1 2 0\n"
      "3 1 0\n"
      "-1 -2 0\n"
      "-1 -3 0\n"
      "-2 -3 0\n";
  CHECK(parse_dimacs(pigeons).clauses.size() == 5);

  CHECK_THROWS_AS(parse_dimacs(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf x 1\n1 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p dnf 1 1\n1 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1 7\n1 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("1 0\np cnf 1 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 zz 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1 0\np cnf 1 1\n1 0\n"),
                  std::invalid_argument);
}

TEST_CASE("dimacs writing round-trips") {
  CnfFormula f = make(2, {{1, -2}});
  CHECK(to_dimacs(f) == "p cnf 2 1\n1 -2 0\n");
  std::string with_comments = to_dimacs(f, {"one", "two"});
  CHECK(with_comments.rfind("c one\nc two\n", 0) == 0);
  CHECK(parse_dimacs(with_comments) == f);

  CnfFormula g = make(4, {{1, 2, -3}, {-1, 4, 2}, {3, -4, -2}});
  CHECK(parse_dimacs(to_dimacs(g)) == g);
}

TEST_CASE("exhaustive oracle") {
  auto a = brute_force_sat(make(1, {{1}}));
  REQUIRE(a.has_value());
  CHECK((*a)[1] == true);

  CHECK(!brute_force_sat(make(1, {{1}, {-1}})).has_value());

  // least witness: variable 1 false beats variable 1 true
  auto least = brute_force_sat(make(2, {{1, 2}}));
  REQUIRE(least.has_value());
  CHECK((*least)[1] == false);
  CHECK((*least)[2] == true);
  CHECK(satisfies(make(2, {{1, 2}}), *least));

  CHECK(!brute_force_sat(make(3, {{}})).has_value());  // empty clause
  CHECK(brute_force_sat(make(0, {})).has_value());     // empty formula

  CnfFormula too_big;
  too_big.num_vars = 26;
  CHECK_THROWS_AS(brute_force_sat(too_big), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_sat(make(1, {{2}})), std::invalid_argument);
  CHECK_THROWS_AS(satisfies(make(2, {{1, 2}}), Assignment{{1, true}}),
                  std::invalid_argument);
}

TEST_CASE("the forcing gadget pins its first variable") {
  CnfFormula f = psi(1, 2, 3, 4);
  CHECK(f.num_vars == 4);
  REQUIRE(f.clauses.size() == 5);
  CHECK(f.clauses[0] == Clause{pos(1), pos(2), neg(3)});
  CHECK(f.clauses[3] == Clause{pos(2), pos(3), pos(4)});
  CHECK(f.clauses[4] == Clause{neg(2), neg(3), neg(4)});

  // all sixteen assignments, counted by hand-rolled enumeration
  int satisfying = 0;
  for (int m = 0; m < 16; ++m) {
    Assignment a{{1, bool(m & 8)}, {2, bool(m & 4)}, {3, bool(m & 2)},
                 {4, bool(m & 1)}};
    if (satisfies(f, a)) {
      ++satisfying;
      CHECK(a[1] == true);
    }
  }
  CHECK(satisfying == 6);

  // the advertised witness: t true, a true, b false, c either way
  CHECK(satisfies(f, Assignment{{1, true}, {2, true}, {3, false}, {4, false}}));
  CHECK(satisfies(f, Assignment{{1, true}, {2, true}, {3, false}, {4, true}}));

  // pinning t false makes it unsatisfiable
  CnfFormula pinned = f;
  pinned.clauses.push_back({neg(1)});
  CHECK(!brute_force_sat(pinned).has_value());

  CHECK(brute_force_sat(f).has_value());
  CHECK(is_restricted(f));
  CHECK(psi(7, 2, 9, 4).num_vars == 9);
  CHECK_THROWS_AS(psi(1, 2, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(psi(0, 2, 3, 4), std::invalid_argument);
}

TEST_CASE("restricted-form checker") {
  std::string why;
  CHECK(is_restricted(make(3, {{1, 2, 3}, {-1, -2, 3}})));
  CHECK(!is_restricted(make(3, {{1, 2}}), &why));
  CHECK(why.find("2 literals") != std::string::npos);
  CHECK(!is_restricted(make(3, {{1, -1, 2}}), &why));
  CHECK(why.find("negation") != std::string::npos);
  CHECK(!is_restricted(make(4, {{1, 2, 3}, {1, 2, 4}}), &why));
  CHECK(why.find("occurs in clauses 0 and 1") != std::string::npos);
  // a doubled literal inside one clause is fine: no distinct pair repeats
  CHECK(is_restricted(make(2, {{1, 1, 2}})));
}

TEST_CASE("pair splitting on the textbook shape") {
  CnfFormula in = make(4, {{1, 2, 3}, {1, 2, 4}});
  std::map<int, std::string> prov;
  std::vector<int> trace;
  CnfFormula out = restrict_form(in, &prov, &trace);

  CHECK(out.num_vars == 13);
  REQUIRE(out.clauses.size() == 13);
  CHECK(out.clauses[0] == Clause{pos(1), pos(2), pos(5)});
  CHECK(out.clauses[1] == Clause{pos(3), neg(5), neg(6)});
  CHECK(out.clauses[2] == Clause{pos(4), neg(5), neg(7)});
  CHECK(is_restricted(out));
  CHECK(trace == std::vector<int>{1, 0});
  CHECK(prov.size() == 9);
  CHECK(prov.at(5).find("splitter") != std::string::npos);
  CHECK(prov.at(6).find("guard 1") != std::string::npos);

  REQUIRE(brute_force_sat(in).has_value());
  auto witness = brute_force_sat(out);
  REQUIRE(witness.has_value());
  // the witness restricted to the original variables satisfies the input
  Assignment sub;
  for (int v = 1; v <= in.num_vars; ++v) sub[v] = witness->at(v);
  CHECK(satisfies(in, sub));

  // already-restricted input comes back untouched
  CHECK(restrict_form(out) == out);
  // determinism
  CHECK(restrict_form(in) == out);
}

TEST_CASE("always-true clauses vanish, duplicates merge") {
  CnfFormula taut = make(2, {{1, -1, 2}});
  CnfFormula out = restrict_form(taut);
  CHECK(out.clauses.empty());
  CHECK(out.num_vars == 2);

  CnfFormula dup = make(3, {{1, 2, 3}, {3, 2, 1}});
  out = restrict_form(dup);
  REQUIRE(out.clauses.size() == 1);
  CHECK(out.clauses[0] == Clause{pos(1), pos(2), pos(3)});

  CHECK_THROWS_AS(restrict_form(make(2, {{1, 2}})), std::invalid_argument);
}

TEST_CASE("an unsatisfiable cluster stays unsatisfiable across many splits") {
  // the eight ternary clauses force variable 1 both ways
  CnfFormula in = make(3, {{1, 2, 3},
                           {1, 2, -3},
                           {1, -2, 3},
                           {1, -2, -3},
                           {-1, 2, 3},
                           {-1, 2, -3},
                           {-1, -2, 3},
                           {-1, -2, -3}});
  REQUIRE(!brute_force_sat(in).has_value());
  std::vector<int> trace;
  CnfFormula out = restrict_form(in, nullptr, &trace);
  CHECK(is_restricted(out));
  for (size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] < trace[i - 1]);
  CHECK(trace.back() == 0);
  CHECK(out.num_vars > 25);  // big enough to need the reference solver
  CHECK(!dpll(out));
  CHECK(dpll(in) == false);  // solver sanity on the input side
}

TEST_CASE("five hundred random formulas: checked, equisatisfiable") {
  std::mt19937 rng(61409);
  int unsat_seen = 0, oracle_sized = 0;
  for (int round = 0; round < 500; ++round) {
    // every fifth round is tightly over-constrained so both verdicts occur
    bool tight = round % 5 == 0;
    int vars = tight ? 3 : 3 + int(rng() % 8);
    int clauses = tight ? 8 + int(rng() % 5) : 1 + int(rng() % 12);
    CnfFormula in;
    in.num_vars = vars;
    for (int i = 0; i < clauses; ++i) {
      Clause c;
      for (int k = 0; k < 3; ++k)
        c.push_back(Literal{1 + int(rng() % vars), bool(rng() % 2)});
      in.clauses.push_back(c);
    }
    bool in_sat = brute_force_sat(in).has_value();
    if (!in_sat) ++unsat_seen;
    CHECK(dpll(in) == in_sat);  // keeps the reference solver honest

    std::vector<int> trace;
    CnfFormula out = restrict_form(in, nullptr, &trace);
    std::string why;
    REQUIRE_MESSAGE(is_restricted(out, &why), why);
    for (size_t i = 1; i < trace.size(); ++i) REQUIRE(trace[i] < trace[i - 1]);

    bool out_sat;
    if (out.num_vars <= 25) {
      ++oracle_sized;
      out_sat = brute_force_sat(out).has_value();
    } else {
      out_sat = dpll(out);
    }
    REQUIRE(out_sat == in_sat);
  }
  CHECK(unsat_seen >= 10);  // both verdicts genuinely exercised
  CHECK(oracle_sized >= 50);
}

TEST_CASE("triple repeated literals rewrite behind the optional pass") {
  CnfFormula in = make(3, {{1, 1, 1}, {2, 3, -1}});
  std::map<int, std::string> prov;
  CnfFormula out = rewrite_repeated_literal_clauses(in, &prov);
  CHECK(out.num_vars == 11);
  REQUIRE(out.clauses.size() == 12);
  CHECK(out.clauses[0] == Clause{pos(1), neg(4), neg(5)});
  CHECK(out.clauses[1] == Clause{pos(2), pos(3), neg(1)});
  CHECK(prov.size() == 8);
  for (const Clause& c : out.clauses)
    CHECK(!(c.size() == 3 && c[0] == c[1] && c[1] == c[2]));
  CHECK(is_restricted(out));
  CHECK(brute_force_sat(out).has_value() == brute_force_sat(in).has_value());

  // a merely doubled literal is left alone
  CnfFormula doubled = make(2, {{1, 1, 2}});
  CHECK(rewrite_repeated_literal_clauses(doubled) == doubled);
}
