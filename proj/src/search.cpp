#include "linkred/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "linkred/invariants.hpp"

namespace linkred {

namespace {

int crossing_delta(MoveKind k) {
  switch (k) {
    case MoveKind::IPlus:
      return 1;
    case MoveKind::IIPlus:
      return 2;
    default:
      return 0;  // removals shrink, the triangle slide keeps the count
  }
}

// Depth-limited DFS with a transposition table keyed on canonical form.  An
// entry remembers the largest remaining depth already searched fruitlessly
// from that state; revisits with no more depth to spend are cut off.  Table
// entries stay valid across deepening iterations because "no route within r
// moves" does not depend on how the state was reached.
struct Searcher {
  const SearchBudget& budget;
  bool use_memo;
  long long states = 0;
  bool truncated = false;
  std::unordered_map<std::string, int> searched;
  std::vector<Move> path;

  explicit Searcher(const SearchBudget& b, bool memo)
      : budget(b), use_memo(memo) {}

  bool dive(const Diagram& d, int remaining) {
    ++states;
    if (d.crossingless()) return true;
    if (remaining == 0) return false;
    std::string code;
    if (use_memo) {
      code = canonical_code(d);
      auto [it, fresh] = searched.try_emplace(code, remaining);
      if (!fresh) {
        if (it->second >= remaining) return false;
        it->second = remaining;
      } else if (static_cast<long long>(searched.size()) > budget.max_states) {
        truncated = true;
        return false;
      }
    }
    for (const Move& m : enumerate_moves(d)) {
      if (d.num_crossings() + crossing_delta(m.kind) > budget.max_crossings)
        continue;
      MoveOutcome oc = apply(d, m);
      path.push_back(m);
      if (dive(oc.result, remaining - 1)) return true;
      path.pop_back();
      if (truncated) {
        // the abandoned expansion must not pass for a finished one
        if (use_memo) searched.erase(code);
        return false;
      }
    }
    return false;
  }
};

void require_searchable(const Diagram& d, const SearchBudget& b) {
  std::string err = validate_error(d);
  if (!err.empty())
    throw std::invalid_argument("search: invalid diagram: " + err);
  if (b.max_moves <= 0 || b.max_crossings <= 0 || b.max_states <= 0)
    throw std::invalid_argument("search: budget fields must be positive");
}

SearchResult run_deepening(const Diagram& d, const SearchBudget& budget,
                           bool use_memo) {
  Searcher s(budget, use_memo);
  SearchResult out;
  for (int depth = 0; depth <= budget.max_moves; ++depth) {
    if (s.dive(d, depth)) {
      out.status = SearchStatus::Found;
      out.sequence = apply_sequence(d, s.path);
      out.optimal = true;
      break;
    }
    if (s.truncated) {
      out.status = SearchStatus::BudgetExceeded;
      break;
    }
    out.status = SearchStatus::Exhausted;
  }
  out.states_explored = s.states;
  return out;
}

}  // namespace

SearchBudget default_budget(const Diagram& d, int max_moves) {
  SearchBudget b;
  b.max_moves = max_moves;
  b.max_crossings = std::max(2, d.num_crossings() + 2);
  return b;
}

const char* search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "FOUND";
    case SearchStatus::Exhausted:
      return "EXHAUSTED";
    default:
      return "BUDGET_EXCEEDED";
  }
}

SearchResult untangle(const Diagram& d, const SearchBudget& budget,
                      bool use_memo) {
  require_searchable(d, budget);
  return run_deepening(d, budget, use_memo);
}

std::optional<int> reid(const Diagram& d, const SearchBudget& budget) {
  SearchResult r = untangle(d, budget);
  if (r.status != SearchStatus::Found) return std::nullopt;
  return static_cast<int>(r.sequence->steps.size());
}

UnlinkResult is_unlink(const Diagram& d, const SearchBudget& budget) {
  require_searchable(d, budget);
  UnlinkResult out;

  // a nonzero pairwise linking number survives every move; no budget can help
  int ncomp = component_count(d);
  for (int i = 0; i < ncomp; ++i)
    for (int j = i + 1; j < ncomp; ++j)
      if (linking_number(d, i, j) != 0) return out;

  // peel off whatever shrinks the diagram before searching in earnest
  std::vector<Move> prefix;
  Diagram cur = d;
  while (!cur.crossingless() &&
         static_cast<int>(prefix.size()) < budget.max_moves) {
    auto ms =
        enumerate_moves(cur, {MoveKind::IMinus, MoveKind::IIMinus});
    if (ms.empty()) break;
    prefix.push_back(ms.front());
    cur = apply(cur, ms.front()).result;
  }
  if (cur.crossingless()) {
    out.yes = true;
    out.sequence = apply_sequence(d, prefix);
    return out;
  }

  SearchBudget rest = budget;
  rest.max_moves = budget.max_moves - static_cast<int>(prefix.size());
  if (rest.max_moves > 0) {
    SearchResult tail = run_deepening(cur, rest, true);
    out.states_explored += tail.states_explored;
    if (tail.status == SearchStatus::Found) {
      std::vector<Move> all = prefix;
      for (const auto& [m, oc] : tail.sequence->steps) all.push_back(m);
      out.yes = true;
      out.sequence = apply_sequence(d, all);
      return out;
    }
  }
  if (prefix.empty()) return out;

  // the greedy prefix may have committed badly; retry uncommitted
  SearchResult full = run_deepening(d, budget, true);
  out.states_explored += full.states_explored;
  if (full.status == SearchStatus::Found) {
    out.yes = true;
    out.sequence = std::move(full.sequence);
  }
  return out;
}

}  // namespace linkred
