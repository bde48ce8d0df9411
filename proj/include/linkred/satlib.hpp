// CNF formulas: DIMACS parsing, an exhaustive satisfiability oracle, and the
// pair-splitting rewrite that brings a 3-CNF into restricted form (every
// clause ternary, no clause with x and ¬x, every unordered literal pair in at
// most one clause).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace linkred {

struct Literal {
  int variable = 1;  // 1-based
  bool negated = false;

  bool operator==(const Literal&) const = default;
  bool operator<(const Literal& o) const {
    return variable != o.variable ? variable < o.variable : negated < o.negated;
  }
  int encoded() const { return negated ? -variable : variable; }
};

using Clause = std::vector<Literal>;
using Assignment = std::map<int, bool>;  // total over 1..num_vars

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;
  bool operator==(const CnfFormula&) const = default;
};

// DIMACS CNF text.  Comments ('c' lines) may appear anywhere; the header
// clause count must match the body.  Throws std::invalid_argument on
// malformed input.
CnfFormula parse_dimacs(const std::string& text);
std::string to_dimacs(const CnfFormula& f,
                      const std::vector<std::string>& comments = {});

// True when every clause holds a true literal.  The assignment must cover
// every variable the formula mentions.
bool satisfies(const CnfFormula& f, const Assignment& a);

// Exhaustive enumeration in lexicographic order (variable 1 most
// significant, false before true), so the returned witness is the least
// satisfying assignment.  Deliberately brute force; at most 25 variables.
std::optional<Assignment> brute_force_sat(const CnfFormula& f);

// The five-clause formula over (t, a, b, c) whose every satisfying
// assignment sets t true:
//   (t ∨ a ∨ ¬b) (t ∨ b ∨ ¬c) (t ∨ c ∨ ¬a) (a ∨ b ∨ c) (¬a ∨ ¬b ∨ ¬c)
// The ids must be distinct.
CnfFormula psi(int t, int a, int b, int c);

// Checks the three restricted-form conditions; on failure optionally reports
// the first violation found.
bool is_restricted(const CnfFormula& f, std::string* reason = nullptr);

// Count of excess literal-pair incidences: for each unordered pair of
// distinct literals, the number of clauses containing it beyond the first.
// Zero for pair-disjoint formulas; each splitting step lowers it.
int multi_incidence_count(const CnfFormula& f);

// Rewrites a 3-CNF into restricted form.  Clauses containing both x and ¬x
// are dropped, duplicate clauses are merged, and while some literal pair
// lives in two clauses (ℓ1∨ℓ2∨ℓ3), (ℓ1∨ℓ2∨ℓ4), those two become
//   (ℓ1∨ℓ2∨x) (ℓ3∨¬x∨¬t1) (ℓ4∨¬x∨¬t2)  plus forcing gadgets for t1 and t2,
// with nine fresh variables numbered sequentially (x, t1, t2, a1, a2, b1,
// b2, c1, c2).  The result is satisfiable exactly when the input is.
// Offending pairs are processed in lexicographic order.  `provenance`
// receives a role description per fresh variable; `measure_trace` receives
// multi_incidence_count before each splitting step and after the last one.
// Throws std::invalid_argument when a clause is not ternary.
CnfFormula restrict_form(const CnfFormula& f,
                         std::map<int, std::string>* provenance = nullptr,
                         std::vector<int>* measure_trace = nullptr);

// Replaces each clause of the shape (ℓ ∨ ℓ ∨ ℓ) by (ℓ ∨ ¬t1 ∨ ¬t2) plus
// forcing gadgets for the fresh t1, t2 (eight fresh variables per clause:
// t1, t2, a1, a2, b1, b2, c1, c2).  Restricted form is preserved; other
// clauses are untouched.
CnfFormula rewrite_repeated_literal_clauses(
    const CnfFormula& f, std::map<int, std::string>* provenance = nullptr);

}  // namespace linkred
