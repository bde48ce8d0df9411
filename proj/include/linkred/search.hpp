// Bounded search over the move graph: shortest untangling sequences and
// unlink certificates, found by iterative deepening with canonical-form
// memoization.
//
// Completeness is always relative to the crossing cap: a sequence that needs
// to pass through a diagram with more than `max_crossings` crossings is
// invisible to the search.  Within that cap, iterative deepening guarantees
// that a Found sequence is of minimal length and lexicographically least (by
// site encoding) among the minimal ones.
#pragma once

#include <optional>

#include "linkred/diagram.hpp"
#include "linkred/moves.hpp"

namespace linkred {

struct SearchBudget {
  int max_moves = 8;        // deepest sequence length attempted
  int max_crossings = 16;   // intermediate diagrams above this are pruned
  long long max_states = 1'000'000;  // memo-table cap; exceeding it aborts
};

// Conventional budget for a given start: allow two extra crossings of slack.
SearchBudget default_budget(const Diagram& d, int max_moves);

enum class SearchStatus {
  Found,           // sequence attached, minimal within the caps
  Exhausted,       // provably no sequence within max_moves and max_crossings
  BudgetExceeded,  // memo table hit max_states before the question settled
};

const char* search_status_name(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<MoveSequence> sequence;  // set iff status == Found
  long long states_explored = 0;
  bool optimal = false;  // true iff every shorter length was fully ruled out
};

// Shortest route to a crossingless diagram.  `use_memo = false` disables the
// transposition table (slower, same answers); it exists so the memoization
// can be cross-checked.  Throws std::invalid_argument on an invalid diagram
// or a non-positive budget.
SearchResult untangle(const Diagram& d, const SearchBudget& budget,
                      bool use_memo = true);

// Minimal untangling length within the budget, or nullopt when the budget
// ran out or was exhausted without an answer.
std::optional<int> reid(const Diagram& d, const SearchBudget& budget);

struct UnlinkResult {
  bool yes = false;
  std::optional<MoveSequence> sequence;  // set iff yes
  long long states_explored = 0;
};

// Does the diagram present an unlink?  Pairwise linking numbers are checked
// first (a nonzero value is a permanent obstruction, not a budget artifact);
// then a greedy crossing-reduction prefix feeds the bounded search.  A "no"
// only ever means "not certified within this budget".
UnlinkResult is_unlink(const Diagram& d, const SearchBudget& budget);

}  // namespace linkred
