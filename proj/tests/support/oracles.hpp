#pragma once

// Reference implementations used only by tests. They are written from the
// definitions (explicit pair lists, dense operator matrices, textbook
// optimization loops) and do not call the solver code paths they check.

#include <fingraph/graph_ops.hpp>
#include <fingraph/synth.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using fingraph::Index;
using fingraph::Matrix;
using fingraph::Vector;

/// Node pairs (i, j), i > j, in edge-vector order: column-major strict lower
/// triangle, i.e. 1-based position k = i - j + (j-1)(2p-j)/2.
std::vector<std::pair<Index, Index>> edge_pairs(Index p);

/// p^2 x m matrix with vec(Lw) = Lmat * w (column-major vec).
Matrix dense_laplacian_operator(Index p);
/// p x m matrix with degrees = Dmat * w.
Matrix dense_degree_operator(Index p);

/// Laplacian built entry by entry from an explicit pair list.
Matrix laplacian_from_pairs(const Vector& w, Index p);

/// Minimizer of rho/2 w^T (D^T D + L^T L) w + <w, c> over w >= 0 by plain
/// projected gradient with a fixed learning rate.
Vector projected_gradient_quadratic(const Matrix& q, const Vector& c, Vector w, double lr, int steps);

/// High-precision solve of
///   min tr(S Lw) - log det(Lw + J)  s.t.  deg(w) = d, w >= 0
/// by the method of multipliers on the degree constraint with an Armijo
/// projected-gradient inner solver.
Vector penalty_method_connected(const Matrix& s, const Vector& d, Vector w0);

/// Degree-preserving randomization of an unweighted graph by double edge
/// swaps (a-b, c-d) -> (a-d, c-b).
fingraph::WeightVector rewire(const fingraph::WeightVector& w, int swaps_per_edge, std::uint64_t seed);

/// Sample covariance with denominator n (no centring when `centre` is false).
Matrix second_moment(const Matrix& x, bool centre);

double median(std::vector<double> values);

/// Adds a common factor loading * f_t * sd_j to every column, f_t ~ N(0, 1).
Matrix add_market_factor(const Matrix& x, double loading, std::uint64_t seed);

}  // namespace oracle
