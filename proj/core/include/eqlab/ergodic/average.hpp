#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "eqlab/equidist/sequence.hpp"
#include "eqlab/lefn/function.hpp"
#include "eqlab/weights/scheme.hpp"

namespace eqlab::ergodic {

using Vector = std::vector<std::complex<double>>;

// k commuting unitaries U_i = diag(e(theta_i1), ..., e(theta_iD)) acting on C^D.
struct DiagonalSystem {
  std::size_t dimension = 0;
  std::vector<std::vector<long double>> phases;  // [i][j] = theta_ij
  Vector f;

  void validate() const;
  // Coordinates where every phase is an integer (joint fixed space).
  std::vector<bool> invariant_mask() const;
  Vector project(const Vector& v) const;
};

struct ErgodicOptions {
  unsigned threads = 1;
  equidist::Precision precision = equidist::Precision::Fast;
  equidist::PrepareOptions prepare;
};

struct ErgodicReport {
  std::vector<std::uint64_t> checkpoints;
  std::vector<Vector> average;     // A_N f per checkpoint
  std::vector<double> s0;          // weighted mass over W(N)
  std::vector<double> distance;    // |A_N f - s0 P f|_2
  Vector pf;
  bool exploratory = false;        // span condition failed; convergence not guaranteed
  std::string warning;
  std::uint64_t first_index = 0;
};

// A_N f = (1/W(N)) sum w(n) prod_i U_i^floor(u_i(idx(n))) f, idx = stream.
ErgodicReport weighted_average(const DiagonalSystem& sys, const std::vector<lefn::LEFunction>& us,
                               const equidist::IndexStream& stream, const weights::WeightScheme& scheme,
                               const std::vector<std::uint64_t>& checkpoints, const ErgodicOptions& opts = {});

// Coordinate j as a 1-D sequence: sum_i theta_ij floor(u_i(idx(n))).
equidist::SequenceSpec coordinate_sequence(const DiagonalSystem& sys, const std::vector<lefn::LEFunction>& us,
                                           const equidist::IndexStream& stream, std::size_t j);

} // namespace eqlab::ergodic
