#pragma once

#include <cstdint>

#include "fano/exact_matrix.hpp"
#include "fano/fano_core.hpp"
#include "fano/random.hpp"
#include "fano/system_builder.hpp"

namespace fano {

/// Homogeneous linear conditions on the coefficient vector of F (layout of
/// FormSystem::coefficient_vector). The right-hand side is zero.
struct ConstraintSystem {
  ExactMatrix matrix;
};

/// Gaussian rational with real and imaginary parts num/den, num in
/// [-10, 10] and den in [1, 10].
GaussianRational random_gaussian(Rng& rng);

FormSystem random_form_system(const FanoType& t, std::uint64_t seed);

/// Rows equivalent to G_F(x_l) = 0, one per equation of G.
ConstraintSystem containment_constraints(const FanoType& t, const ChartPoint& ell);

/// Rows equivalent to DG_F(x_l) v = 0. Throws std::invalid_argument for v = 0.
ConstraintSystem tangency_constraints(const FanoType& t, const ChartPoint& ell, const TangentVector& v);

/// Random element of the solution space of both constraint systems. A draw
/// with some form identically zero is replaced by the draw for seed + 1.
FormSystem constrained_form_system(const FanoType& t, const ChartPoint& ell, const TangentVector& v,
                                   std::uint64_t seed);

/// The chart origin.
ChartPoint default_ell(const FanoType& t);
/// Identity in the top (r+1) x (r+1) block of the chart, zero elsewhere.
TangentVector default_v(const FanoType& t);

}  // namespace fano
