// Orientation-aware crossing signs, writhe and linking numbers, plus the
// exact-integer signature machinery for Seifert forms.
//
// Orientations: every strand component has a default direction (the walk
// starting at its smallest dart).  An Orientation value holds one flip flag
// per strand component, indexed like components(d); the empty vector means
// all defaults.

#pragma once

#include <vector>

#include "linkred/diagram.hpp"

namespace linkred {

using Orientation = std::vector<uint8_t>;

// +1 when the over strand crosses the under strand left-to-right seen along
// the under direction, -1 otherwise.
int crossing_sign(const Diagram& d, int crossing, const Orientation& orient = {});

// Signed count of the self-crossings of one strand component; independent of
// its direction.
int writhe(const Diagram& d, int component);

// Half the signed sum over crossings where the two strands meet; symmetric,
// zero when either index names a crossing-free circle.  Rejects c1 == c2.
int linking_number(const Diagram& d, int c1, int c2, const Orientation& orient = {});

// Seifert forms ------------------------------------------------------------

using SeifertMatrix = std::vector<std::vector<long long>>;

struct SignatureValue {
  int signature = 0;
  int nullity = 0;
  bool operator==(const SignatureValue&) const = default;
};

// The 4x4 Seifert matrix of one clasped satellite block of the doubled hopf
// link; the building block whose n-fold sum realizes signature 2n.
SeifertMatrix whitehead_hopf_seifert_matrix();

// Block-diagonal n-fold sum of m with itself.
SeifertMatrix block_sum(const SeifertMatrix& m, int n);

// Signature and nullity of the symmetrized form M + M^T, computed by exact
// rational congruence diagonalization; no floating point anywhere.
SignatureValue signature(const SeifertMatrix& m);

// |sigma| <= 2*sum(genera) + mu - nu, the classical signature bound for a
// nu-component sublink of a mu-component link bounding genus-g_i surfaces.
bool murasugi_bound_holds(long long sigma, const std::vector<long long>& genera,
                          long long mu, long long nu);

// mu - 2*cs: the smallest total four-ball Euler characteristic compatible
// with cs strand-to-strand crossing changes on a mu-component link.
long long chi4_lower_bound(long long mu, long long cs);

}  // namespace linkred
