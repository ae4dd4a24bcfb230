#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tracepair/matrix_core.hpp"

namespace tracepair {

enum class IsometryType { Elliptic, Parabolic, Loxodromic };
std::string_view isometry_name(IsometryType t);

// Fixed-point trichotomy, decided spectrally: loxodromic when some eigenvalue
// modulus differs from 1 by more than `tolerance`; otherwise elliptic when the
// element is diagonalizable (geometric multiplicity matches each eigenvalue
// cluster) and parabolic when it is not. When the element is inside the
// unit-modulus band and the diagonalizability test sits within a decade of
// its rank threshold, ToleranceAmbiguous is raised instead of guessing.
IsometryType classify_isometry(const GroupElement& g,
                               double tolerance = tol::isometry);

enum class ReducibilityVerdict {
  Irreducible,
  ReducibleLine,
  ReduciblePlane,
  ReducibleOther,
};
std::string_view verdict_name(ReducibilityVerdict v);

enum class ReducedCase { Line, Plane };
std::string_view case_name(ReducedCase c);

struct ReducibilityReport {
  ReducibilityVerdict verdict;
  int span_dimension;  // dimension of the algebra generated by the pair
  std::optional<Eigen::MatrixXcd> subspace_basis;  // 4 x k, orthonormal columns
  std::optional<std::pair<int, int>> subspace_signature;  // (plus, minus)
  double invariance_tolerance;
};

// Orthonormal basis (as matrices) of the unital algebra generated by a and b:
// start from {I, a, b}, keep left-multiplying by the generators, track rank,
// stop when a full round adds nothing or the span is all of M_4.
std::vector<Matrix4c> algebra_span(const Matrix4c& a, const Matrix4c& b,
                                   double rank_tolerance = 1e-10);

// Common invariant subspaces of dimension 1..3, each as a 4 x k matrix with
// orthonormal columns. Searches eigenline subsets of either generator and
// cyclic modules generated from eigenvectors of random algebra elements, and
// closes under the H-orthogonal complement.
std::vector<Eigen::MatrixXcd> invariant_subspaces(
    const GroupElement& a, const GroupElement& b,
    double invariance_tolerance = 1e-8);

// Signature (plus, minus, null) of the restriction of the Hermitian form to
// the column span; eigenvalues of the Gram matrix within `zero_tolerance`
// count as null.
struct FormSignature {
  int plus;
  int minus;
  int null;
};
FormSignature subspace_signature(const Eigen::MatrixXcd& basis,
                                 double zero_tolerance = tol::signature_zero);

// Burnside test plus subspace classification. A reducible pair earns the
// Line/Plane verdict only when both generators are loxodromic and an
// invariant subspace of the matching signature exists ((1,1) in dimension 2,
// (2,1) in dimension 3); everything else reducible is ReducibleOther.
ReducibilityReport irreducibility(const GroupElement& a, const GroupElement& b,
                                  double invariance_tolerance = 1e-8);

// Invariant subspace of the signature demanded by `c`, when one exists.
std::optional<Eigen::MatrixXcd> find_case_subspace(const GroupElement& a,
                                                   const GroupElement& b,
                                                   ReducedCase c);

struct ReducedInvariants {
  ReducedCase which;
  // Line : tr A, tr B, tr AB, sigma A, sigma B, sigma AB
  // Plane: tr A, tr B, tr AB, tr(A^-1 B), tr([A,B]), sigma A, sigma B
  std::vector<Complex> values;
};

double max_difference(const ReducedInvariants& lhs,
                      const ReducedInvariants& rhs);

ReducedInvariants reduced_invariants(const GroupElement& a,
                                     const GroupElement& b, ReducedCase c);

struct BlockDecomposition {
  GroupElement basis;  // k with k* H k = H and det 1
  Matrix4c a_block;    // k^-1 A k
  Matrix4c b_block;
  double off_block_residual;
};

// Change of basis aligning the invariant splitting with the standard one:
// coordinates {e1, e4} + {e2, e3} for the Line case, {e1, e2, e4} + {e3} for
// the Plane case. Raises DecompositionFailed when the form degenerates on the
// invariant subspace (a null subspace, outside the reduced-case hypotheses).
BlockDecomposition block_decompose(const GroupElement& a, const GroupElement& b,
                                   const ReducibilityReport& report);

// Entries allowed to be nonzero after a successful decomposition.
bool in_block_pattern(ReducedCase c, int row, int col);

struct ClassificationReport {
  std::optional<IsometryType> a_type;  // present for SU(3,1) generators
  std::optional<IsometryType> b_type;
  ReducibilityReport reducibility;
  double isometry_tolerance;
};

ClassificationReport classify_pair(const GroupElement& a, const GroupElement& b,
                                   double isometry_tolerance = tol::isometry);

}  // namespace tracepair
