#include "linkred/satlib.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace linkred {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("cnf: " + what);
}

Clause sorted_clause(const Clause& c) {
  Clause s = c;
  std::sort(s.begin(), s.end());
  return s;
}

bool is_tautology(const Clause& c) {
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = i + 1; j < c.size(); ++j)
      if (c[i].variable == c[j].variable && c[i].negated != c[j].negated)
        return true;
  return false;
}

// distinct unordered literal pairs of one clause, each reported once
std::set<std::pair<Literal, Literal>> clause_pairs(const Clause& c) {
  std::set<std::pair<Literal, Literal>> out;
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = i + 1; j < c.size(); ++j) {
      if (c[i] == c[j]) continue;
      out.insert(std::minmax(c[i], c[j]));
    }
  return out;
}

std::string pair_text(const std::pair<Literal, Literal>& p) {
  return "(" + std::to_string(p.first.encoded()) + " " +
         std::to_string(p.second.encoded()) + ")";
}

}  // namespace

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfFormula f;
  int declared_clauses = -1;
  std::string body;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (first[0] == 'c') continue;  // comment line
    if (first == "p") {
      if (declared_clauses >= 0) bad("duplicate header");
      std::string fmt;
      if (!(ls >> fmt >> f.num_vars >> declared_clauses) || fmt != "cnf")
        bad("malformed header: " + line);
      if (f.num_vars < 0 || declared_clauses < 0)
        bad("negative counts in header");
      std::string extra;
      if (ls >> extra) bad("trailing tokens after header");
      continue;
    }
    if (declared_clauses < 0) bad("clause data before header");
    body += line + "\n";
  }
  if (declared_clauses < 0) bad("missing header");

  std::istringstream bs(body);
  std::string tok;
  Clause cur;
  while (bs >> tok) {
    size_t used = 0;
    int lit;
    try {
      lit = std::stoi(tok, &used);
    } catch (const std::exception&) {
      bad("not a literal: '" + tok + "'");
    }
    if (used != tok.size()) bad("not a literal: '" + tok + "'");
    if (lit == 0) {
      f.clauses.push_back(cur);
      cur.clear();
      continue;
    }
    int var = std::abs(lit);
    if (var > f.num_vars)
      bad("literal " + tok + " exceeds declared " +
          std::to_string(f.num_vars) + " variables");
    cur.push_back(Literal{var, lit < 0});
  }
  if (!cur.empty()) bad("unterminated final clause");
  if (static_cast<int>(f.clauses.size()) != declared_clauses)
    bad("header declares " + std::to_string(declared_clauses) +
        " clauses, found " + std::to_string(f.clauses.size()));
  return f;
}

std::string to_dimacs(const CnfFormula& f,
                      const std::vector<std::string>& comments) {
  std::string out;
  for (const std::string& c : comments) out += "c " + c + "\n";
  out += "p cnf " + std::to_string(f.num_vars) + " " +
         std::to_string(f.clauses.size()) + "\n";
  for (const Clause& c : f.clauses) {
    for (const Literal& l : c) out += std::to_string(l.encoded()) + " ";
    out += "0\n";
  }
  return out;
}

bool satisfies(const CnfFormula& f, const Assignment& a) {
  for (const Clause& c : f.clauses)
    for (const Literal& l : c)
      if (!a.count(l.variable))
        bad("assignment misses variable " + std::to_string(l.variable));
  for (const Clause& c : f.clauses) {
    bool sat = false;
    for (const Literal& l : c)
      if (a.at(l.variable) != l.negated) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

std::optional<Assignment> brute_force_sat(const CnfFormula& f) {
  if (f.num_vars > 25) bad("brute force limited to 25 variables");
  const int n = f.num_vars;
  for (const Clause& c : f.clauses)
    for (const Literal& l : c)
      if (l.variable < 1 || l.variable > n)
        bad("literal " + std::to_string(l.encoded()) +
            " outside declared variables");
  for (unsigned long long mask = 0; mask < (1ull << n); ++mask) {
    bool ok = true;
    for (const Clause& c : f.clauses) {
      bool sat = false;
      for (const Literal& l : c) {
        // variable 1 is the most significant position: ascending masks
        // enumerate assignments in lexicographic order
        bool value = (mask >> (n - l.variable)) & 1;
        if (value != l.negated) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok) {
      Assignment a;
      for (int v = 1; v <= n; ++v) a[v] = (mask >> (n - v)) & 1;
      return a;
    }
  }
  return std::nullopt;
}

CnfFormula psi(int t, int a, int b, int c) {
  std::vector<int> ids{t, a, b, c};
  for (int id : ids)
    if (id < 1) bad("psi requires positive variable ids");
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    bad("psi requires distinct variable ids");
  auto pos = [](int v) { return Literal{v, false}; };
  auto neg = [](int v) { return Literal{v, true}; };
  CnfFormula f;
  f.num_vars = std::max({t, a, b, c});
  f.clauses = {
      {pos(t), pos(a), neg(b)}, {pos(t), pos(b), neg(c)},
      {pos(t), pos(c), neg(a)}, {pos(a), pos(b), pos(c)},
      {neg(a), neg(b), neg(c)},
  };
  return f;
}

bool is_restricted(const CnfFormula& f, std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  std::map<std::pair<Literal, Literal>, size_t> first_seen;
  for (size_t i = 0; i < f.clauses.size(); ++i) {
    const Clause& c = f.clauses[i];
    if (c.size() != 3)
      return fail("clause " + std::to_string(i) + " has " +
                  std::to_string(c.size()) + " literals");
    if (is_tautology(c))
      return fail("clause " + std::to_string(i) +
                  " contains a variable and its negation");
    for (const auto& p : clause_pairs(c)) {
      auto [it, fresh] = first_seen.try_emplace(p, i);
      if (!fresh)
        return fail("literal pair " + pair_text(p) + " occurs in clauses " +
                    std::to_string(it->second) + " and " + std::to_string(i));
    }
  }
  return true;
}

int multi_incidence_count(const CnfFormula& f) {
  std::map<std::pair<Literal, Literal>, int> count;
  for (const Clause& c : f.clauses)
    for (const auto& p : clause_pairs(c)) ++count[p];
  int excess = 0;
  for (const auto& [p, n] : count) excess += std::max(0, n - 1);
  return excess;
}

CnfFormula restrict_form(const CnfFormula& f,
                         std::map<int, std::string>* provenance,
                         std::vector<int>* measure_trace) {
  for (size_t i = 0; i < f.clauses.size(); ++i)
    if (f.clauses[i].size() != 3)
      bad("restricted-form rewrite expects ternary clauses; clause " +
          std::to_string(i) + " has " + std::to_string(f.clauses[i].size()));

  CnfFormula out;
  out.num_vars = f.num_vars;
  std::set<Clause> seen;
  for (const Clause& c : f.clauses) {
    if (is_tautology(c)) continue;  // always satisfied, drop
    if (!seen.insert(sorted_clause(c)).second) continue;  // duplicate, drop
    out.clauses.push_back(c);
  }

  while (true) {
    if (measure_trace) measure_trace->push_back(multi_incidence_count(out));
    // lexicographically least pair living in two clauses, earliest clauses
    std::map<std::pair<Literal, Literal>, std::vector<size_t>> where;
    for (size_t i = 0; i < out.clauses.size(); ++i)
      for (const auto& p : clause_pairs(out.clauses[i])) where[p].push_back(i);
    auto hit = where.end();
    for (auto it = where.begin(); it != where.end(); ++it)
      if (it->second.size() >= 2) {
        hit = it;
        break;
      }
    if (hit == where.end()) break;

    const auto [l1, l2] = hit->first;
    size_t ia = hit->second[0], ib = hit->second[1];
    auto third = [&](const Clause& c) {
      Clause rest = c;
      rest.erase(std::find(rest.begin(), rest.end(), l1));
      rest.erase(std::find(rest.begin(), rest.end(), l2));
      return rest.front();
    };
    Literal l3 = third(out.clauses[ia]);
    Literal l4 = third(out.clauses[ib]);

    int base = out.num_vars;
    int x = base + 1, t1 = base + 2, t2 = base + 3;
    int a1 = base + 4, a2 = base + 5, b1 = base + 6, b2 = base + 7;
    int c1 = base + 8, c2 = base + 9;
    out.num_vars = base + 9;
    if (provenance) {
      std::string at = " for pair " + pair_text(hit->first);
      (*provenance)[x] = "splitter" + at;
      (*provenance)[t1] = "forced guard 1" + at;
      (*provenance)[t2] = "forced guard 2" + at;
      (*provenance)[a1] = "forcing aux a for guard 1" + at;
      (*provenance)[a2] = "forcing aux a for guard 2" + at;
      (*provenance)[b1] = "forcing aux b for guard 1" + at;
      (*provenance)[b2] = "forcing aux b for guard 2" + at;
      (*provenance)[c1] = "forcing aux c for guard 1" + at;
      (*provenance)[c2] = "forcing aux c for guard 2" + at;
    }

    out.clauses.erase(out.clauses.begin() + ib);  // ib > ia
    out.clauses.erase(out.clauses.begin() + ia);
    out.clauses.push_back({l1, l2, Literal{x, false}});
    out.clauses.push_back({l3, Literal{x, true}, Literal{t1, true}});
    out.clauses.push_back({l4, Literal{x, true}, Literal{t2, true}});
    for (const Clause& c : psi(t1, a1, b1, c1).clauses) out.clauses.push_back(c);
    for (const Clause& c : psi(t2, a2, b2, c2).clauses) out.clauses.push_back(c);
  }
  return out;
}

CnfFormula rewrite_repeated_literal_clauses(
    const CnfFormula& f, std::map<int, std::string>* provenance) {
  CnfFormula out = f;
  size_t original = out.clauses.size();
  for (size_t i = 0; i < original; ++i) {
    Clause& c = out.clauses[i];
    if (c.size() != 3 || !(c[0] == c[1] && c[1] == c[2])) continue;
    Literal l = c[0];
    int base = out.num_vars;
    int t1 = base + 1, t2 = base + 2;
    int a1 = base + 3, a2 = base + 4, b1 = base + 5, b2 = base + 6;
    int c1 = base + 7, c2 = base + 8;
    out.num_vars = base + 8;
    if (provenance) {
      std::string at =
          " for repeated literal " + std::to_string(l.encoded());
      (*provenance)[t1] = "forced guard 1" + at;
      (*provenance)[t2] = "forced guard 2" + at;
      (*provenance)[a1] = "forcing aux a for guard 1" + at;
      (*provenance)[a2] = "forcing aux a for guard 2" + at;
      (*provenance)[b1] = "forcing aux b for guard 1" + at;
      (*provenance)[b2] = "forcing aux b for guard 2" + at;
      (*provenance)[c1] = "forcing aux c for guard 1" + at;
      (*provenance)[c2] = "forcing aux c for guard 2" + at;
    }
    c = {l, Literal{t1, true}, Literal{t2, true}};
    for (const Clause& pc : psi(t1, a1, b1, c1).clauses)
      out.clauses.push_back(pc);
    for (const Clause& pc : psi(t2, a2, b2, c2).clauses)
      out.clauses.push_back(pc);
  }
  return out;
}

}  // namespace linkred
