#pragma once

#include <string>

#include "datum.hpp"
#include "oracle.hpp"
#include "perm.hpp"

namespace hurwitz {

// Bipartite map on a closed orientable surface, stored combinatorially as the
// black and white rotations of the edge set {1..E}. Faces are the cycles of
// (black*white)^-1, so the triple (black, white, faces) multiplies to the
// identity and matches the monodromy criterion literally.
struct Dessin {
  Perm black;
  Perm white;

  int edge_count() const { return black.degree(); }
  Partition black_valences() const { return black.cycle_type(); }
  Partition white_valences() const { return white.cycle_type(); }
  Perm face_permutation() const { return inverse(compose(black, white)); }
  Partition face_lengths() const { return face_permutation().cycle_type(); }
  // Euler: l(black) + l(white) + l(faces) - E = 2 - 2g
  int genus() const;

  std::string to_string() const;  // E=<n> b=<cycles> w=<cycles>
};

// throws not_connected unless <theta1, theta2> acts transitively on the edges
Dessin dessin_from_pair(const Perm& theta1, const Perm& theta2);

// (g*T, S, E, 3; black valences, white valences, face lengths)
BranchDatum dessin_to_datum(const Dessin& dessin);

// the n=3 realizability criterion as an executable statement: a datum is
// realizable iff a dessin with matching valence/face data exists, which the
// monodromy oracle decides
bool realizable_via_dessins(const BranchDatum& datum, const SearchBudget& budget, int jobs = 1);

}  // namespace hurwitz
