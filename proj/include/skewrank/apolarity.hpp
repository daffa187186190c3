// Graded annihilators, apolar ideals of Grassmannian points, essential spaces.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewrank/multivector.hpp"

namespace skewrank {

/// Piece s is ker C_t^{s,d-s}, a subspace of the degree-s dual forms written in
/// lex coordinates.
struct GradedAnnihilator {
  int dim = 0, degree = 0;
  std::vector<Subspace> pieces;  // indices 0..degree
  /// Basis of piece s as dual multivectors.
  std::vector<Multivector> basis(int s) const;
};

GradedAnnihilator annihilator(const Multivector& t);

struct PointIdealReport {
  int dim = 0, degree = 0, max_degree = 0;
  std::vector<Subspace> pieces;          // I_s for s = 0..max_degree
  std::vector<size_t> dims;              // dim I_s
  std::vector<size_t> generator_counts;  // dim I_s - dim(V* ^ I_{s-1})
  /// Complement of V* ^ I_{s-1} inside I_s, chosen from the echelon basis of I_s.
  std::vector<std::vector<Multivector>> generators;
  /// Degrees s with a nonzero generator count.
  std::vector<int> generator_degrees() const;
  // Filled in when a tensor t is supplied.
  bool has_tensor = false;
  bool condition_ii = false;   // I_s lies in ker C_t^{s,d-s} for every s
  bool condition_iii = false;  // I_d lies in ker C_t^{d,0}
};

/// Apolar ideal of decomposable points. Pieces above the common degree d are
/// the whole degree-s dual space; max_degree < 0 means dim.
PointIdealReport point_ideal(const std::vector<Multivector>& points, int max_degree = -1,
                             const std::optional<Multivector>& t = std::nullopt);

struct ApolarityResult {
  bool apolar = false;
  std::vector<Scalar> coefficients;  // t = sum a_i points_i when apolar
};
ApolarityResult apolarity_check(const Multivector& t, const std::vector<Multivector>& points);

/// W = (ker C_t^{1,d-1})^perp with t rewritten in the echelon basis of W.
struct EssentialSpace {
  Subspace W;           // rows are vectors of V
  Multivector reduced;  // t in coordinates w.r.t. the rows of W (ambient dim = dim W)
  size_t dim() const { return W.dim(); }
  /// Maps a coordinate vector on W back into V.
  Vec lift(const Vec& w) const;
  /// Maps a multivector over W back into V.
  Multivector lift(const Multivector& m) const;
};
EssentialSpace essential_space(const Multivector& t);

}  // namespace skewrank
