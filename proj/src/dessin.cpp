#include "dessin.hpp"

#include <array>

namespace hurwitz {

int Dessin::genus() const {
  int vertices_and_faces =
      black.cycle_count() + white.cycle_count() + face_permutation().cycle_count();
  int euler = vertices_and_faces - edge_count();
  if (euler > 2 || (2 - euler) % 2 != 0) fail(errc::internal, "odd Euler characteristic");
  return (2 - euler) / 2;
}

std::string Dessin::to_string() const {
  return "E=" + std::to_string(edge_count()) + " b=" + black.to_cycles() +
         " w=" + white.to_cycles();
}

Dessin dessin_from_pair(const Perm& theta1, const Perm& theta2) {
  if (theta1.degree() != theta2.degree()) {
    fail(errc::degree_mismatch, "rotation degrees differ");
  }
  std::array<Perm, 2> gens{theta1, theta2};
  if (!is_transitive(gens)) fail(errc::not_connected, "the dessin would be disconnected");
  return Dessin{theta1, theta2};
}

BranchDatum dessin_to_datum(const Dessin& dessin) {
  std::array<Perm, 2> gens{dessin.black, dessin.white};
  if (!is_transitive(gens)) fail(errc::not_connected, "disconnected dessin");
  return BranchDatum::validate(
      dessin.genus(), BaseSurface{0}, dessin.edge_count(),
      {dessin.black_valences(), dessin.white_valences(), dessin.face_lengths()});
}

bool realizable_via_dessins(const BranchDatum& datum, const SearchBudget& budget, int jobs) {
  if (datum.num_partitions() != 3) fail(errc::bad_argument, "dessins decide n=3 data only");
  if (!datum.base().is_sphere()) fail(errc::unsupported_base, "sphere base required");
  ThreeValued verdict = is_realizable(datum, budget, jobs);
  if (verdict == ThreeValued::unknown) fail(errc::precondition, "budget exceeded");
  return verdict == ThreeValued::yes;
}

}  // namespace hurwitz
