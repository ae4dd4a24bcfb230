#pragma once

#include <cstdint>
#include <optional>

#include "tracepair/classify.hpp"
#include "tracepair/coordinates.hpp"

namespace tracepair {

struct ConjugacyCertificate {
  bool conjugate;
  std::optional<GroupElement> conjugator;
  double coordinate_distance;
  int kernel_dimension;
  // The irreducibility screen is the computable stand-in for polystability;
  // when it fails the verdict is "coordinates equal, polystability
  // unverified" rather than a refusal.
  bool polystability_verified;
  double conjugation_residual;  // meaningful when a conjugator is present
  double tolerance;
};

// Coordinate-fingerprint comparison: conjugate when the trace vectors agree
// to `tolerance` in max norm. No conjugator is produced.
ConjugacyCertificate conjugacy_test(const GroupElement& a, const GroupElement& b,
                                    const GroupElement& a2, const GroupElement& b2,
                                    CatalogName cat,
                                    double tolerance = tol::trace_equality);

// Solves the 32-equation linear system M A = A' M, M B = B' M over the 16
// matrix entries. Requires (a, b) irreducible; then the kernel is at most a
// line and an invertible kernel element scaled to determinant 1 (principal
// fourth root; the four scalings differ by the center) is the conjugator.
// Raises NoConjugator when the kernel is trivial or contains no invertible
// element.
ConjugacyCertificate find_conjugator(const GroupElement& a, const GroupElement& b,
                                     const GroupElement& a2, const GroupElement& b2);

// Theorem-level comparison for reducible loxodromic pairs of a common case:
// the 6 (Line) or 7 (Plane) reduced invariants are compared at 1e-8, and on
// agreement a conjugator is recovered from random invertible combinations of
// the intertwiner kernel.
ConjugacyCertificate reduced_conjugacy_test(const GroupElement& a,
                                            const GroupElement& b,
                                            const GroupElement& a2,
                                            const GroupElement& b2);

struct FitConfig {
  int restarts = 32;
  int max_iterations = 200;
  double tolerance = 1e-6;       // max-norm coordinate residual target
  double fd_step = 1e-6;         // forward-difference step
  double damping_init = 1e-3;    // multiplied/divided by 10 on reject/accept
  double init_scale = 1.0;       // Gaussian spread of restart offsets
  std::uint64_t seed = 0;
  // Optional starting pair; restart 0 always begins at the base point
  // (this pair when given, the identity pair otherwise).
  std::optional<std::pair<GroupElement, GroupElement>> initial;
};

struct FitResult {
  GroupElement a;
  GroupElement b;
  double residual;  // max-norm coordinate mismatch of the returned pair
  int iterations;   // iterations spent by the reported restart
  int restarts_used;
  bool converged;
  std::uint64_t seed;
};

// Damped least squares against a target trace vector over pairs parameterized
// by Lie-algebra offsets from the base point (traceless matrices for the SL4
// catalogs, the su(3,1) algebra for SU31_22). Never throws on failure to
// converge: the best pair found is returned with converged = false.
FitResult fit_pair(const TraceVector& target, const FitConfig& config = {});

}  // namespace tracepair
