#include "linkred/invariants.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace linkred {

namespace {

using Rational = boost::multiprecision::cpp_rational;

struct StrandInfo {
  std::vector<int> comp_of;    // per dart
  std::vector<char> is_entry;  // per dart, under default directions
  int strand_count = 0;
};

StrandInfo strand_info(const Diagram& d) {
  StrandInfo info;
  info.comp_of.assign(d.num_darts(), -1);
  info.is_entry.assign(d.num_darts(), 0);
  auto comps = components(d);
  info.strand_count = static_cast<int>(comps.size());
  for (size_t i = 0; i < comps.size(); ++i) {
    for (Dart e : comps[i]) {
      info.comp_of[e] = static_cast<int>(i);
      info.comp_of[strand_exit(e)] = static_cast<int>(i);
      info.is_entry[e] = 1;
    }
  }
  return info;
}

// Entry dart of the pass running along the given axis of a crossing, under
// default directions possibly flipped per component.
Dart pass_entry(const StrandInfo& info, const Orientation& orient, int crossing,
                int axis) {
  Dart a = dart_of(crossing, axis);
  Dart entry = info.is_entry[a] ? a : strand_exit(a);
  int comp = info.comp_of[entry];
  bool flip = comp < (int)orient.size() && orient[comp];
  return flip ? strand_exit(entry) : entry;
}

int sign_at(const Diagram& d, const StrandInfo& info, const Orientation& orient,
            int crossing) {
  int over = d.crossings[crossing].over_axis & 1;
  Dart ue = pass_entry(info, orient, crossing, over ^ 1);
  Dart oe = pass_entry(info, orient, crossing, over);
  return ((slot_of(oe) - slot_of(ue)) & 3) == 1 ? 1 : -1;
}

}  // namespace

int crossing_sign(const Diagram& d, int crossing, const Orientation& orient) {
  if (crossing < 0 || crossing >= d.num_crossings())
    throw std::runtime_error("crossing_sign: unknown crossing");
  return sign_at(d, strand_info(d), orient, crossing);
}

int writhe(const Diagram& d, int component) {
  StrandInfo info = strand_info(d);
  if (component < 0 || component >= info.strand_count + (int)d.circles.size())
    throw std::runtime_error("writhe: unknown component");
  if (component >= info.strand_count) return 0;  // crossing-free circle
  int w = 0;
  for (int c = 0; c < d.num_crossings(); ++c) {
    if (info.comp_of[dart_of(c, 0)] == component &&
        info.comp_of[dart_of(c, 1)] == component)
      w += sign_at(d, info, {}, c);
  }
  return w;
}

int linking_number(const Diagram& d, int c1, int c2, const Orientation& orient) {
  StrandInfo info = strand_info(d);
  int total = info.strand_count + static_cast<int>(d.circles.size());
  if (c1 < 0 || c2 < 0 || c1 >= total || c2 >= total)
    throw std::runtime_error("linking_number: unknown component");
  if (c1 == c2)
    throw std::runtime_error("linking_number: same component passed twice");
  int sum = 0;
  for (int c = 0; c < d.num_crossings(); ++c) {
    int a = info.comp_of[dart_of(c, 0)];
    int b = info.comp_of[dart_of(c, 1)];
    if ((a == c1 && b == c2) || (a == c2 && b == c1))
      sum += sign_at(d, info, orient, c);
  }
  // Two closed curves in the plane meet an even number of times.
  if (sum % 2 != 0)
    throw std::logic_error("linking_number: odd signed sum on valid diagram");
  return sum / 2;
}

// ---- Seifert forms -------------------------------------------------------

SeifertMatrix whitehead_hopf_seifert_matrix() {
  return {{1, 0, 0, 0},  //
          {1, 0, 0, 1},
          {0, 0, 1, 0},
          {0, 1, 1, 0}};
}

SeifertMatrix block_sum(const SeifertMatrix& m, int n) {
  if (n < 1) throw std::runtime_error("block_sum: need at least one block");
  size_t k = m.size();
  SeifertMatrix out(n * k, std::vector<long long>(n * k, 0));
  for (int b = 0; b < n; ++b)
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) out[b * k + i][b * k + j] = m[i][j];
  return out;
}

SignatureValue signature(const SeifertMatrix& m) {
  size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::runtime_error("signature: matrix not square");

  // S = M + M^T over exact rationals.
  std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) s[i][j] = Rational(m[i][j]) + m[j][i];

  // Symmetric congruence diagonalization.  Zero diagonals are repaired by a
  // row/column swap with a later nonzero diagonal when one exists; otherwise
  // every remaining diagonal vanishes, and adding row and column j with
  // S[i][j] != 0 yields the pivot 2*S[i][j], splitting the hyperbolic pair
  // into one positive and one negative ordinary pivot.
  int pos = 0, neg = 0, nul = 0;
  for (size_t i = 0; i < n; ++i) {
    if (s[i][i] == 0) {
      size_t j = i + 1;
      while (j < n && s[j][j] == 0) ++j;
      if (j < n) {
        for (size_t c = i; c < n; ++c) std::swap(s[i][c], s[j][c]);
        for (size_t r = i; r < n; ++r) std::swap(s[r][i], s[r][j]);
      } else {
        j = i + 1;
        while (j < n && s[i][j] == 0) ++j;
        if (j == n) {
          ++nul;
          continue;
        }
        for (size_t c = i; c < n; ++c) s[i][c] += s[j][c];
        for (size_t r = i; r < n; ++r) s[r][i] += s[r][j];
      }
    }
    if (s[i][i] > 0)
      ++pos;
    else
      ++neg;
    // Trailing block becomes its Schur complement, which is exactly the
    // congruence image and stays symmetric.
    for (size_t r = i + 1; r < n; ++r) {
      if (s[r][i] == 0) continue;
      Rational f = s[r][i] / s[i][i];
      for (size_t c = i + 1; c < n; ++c) s[r][c] -= f * s[i][c];
      s[r][i] = 0;
    }
  }
  SignatureValue v;
  v.signature = pos - neg;
  v.nullity = nul;
  return v;
}

bool murasugi_bound_holds(long long sigma, const std::vector<long long>& genera,
                          long long mu, long long nu) {
  if (nu != (long long)genera.size() || nu < 1 || mu < nu)
    throw std::runtime_error("murasugi_bound_holds: inconsistent arities");
  long long total = 0;
  for (long long g : genera) total += g;
  long long bound = 2 * total + mu - nu;
  return (sigma < 0 ? -sigma : sigma) <= bound;
}

long long chi4_lower_bound(long long mu, long long cs) {
  if (mu < 1 || cs < 0) throw std::runtime_error("chi4_lower_bound: bad inputs");
  return mu - 2 * cs;
}

}  // namespace linkred
