#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "tracepair/catalogs.hpp"
#include "tracepair/matrix_core.hpp"
#include "tracepair/word.hpp"

namespace tracepair {

struct TraceVector {
  CatalogName catalog;
  Eigen::VectorXcd values;  // one per catalog entry, catalog order
};

// values[i] = tr(entries[i](A, B)). SU31_22 refuses pairs not validated as
// SU(3,1) members.
TraceVector compute(CatalogName cat, const GroupElement& a,
                    const GroupElement& b);

// Max-norm distance; requires matching catalogs.
double max_distance(const TraceVector& lhs, const TraceVector& rhs);

// The 39 real coordinates: Re and Im of every SU31_22 value except the five
// imaginary parts of tr(w^2) slots, which are recoverable as Im(tr(w)^2).
struct RealCoordinateVector {
  std::vector<std::string> slots;  // "Re(w)" / "Im(w)" labels, catalog order
  Eigen::VectorXd values;
};

RealCoordinateVector real_coords(const GroupElement& a, const GroupElement& b);
RealCoordinateVector real_coords(const TraceVector& traces);

// tr(x^-1) = (tr(x^3) + tr(x)^3/2 - (3/2) tr(x) tr(x^2)) / 3  for det 1.
Complex recover_tr_x_inverse(Complex t1, Complex t2, Complex t3);

// Residual of the substitution identity
//   -tr(u x^-1 v) = tr(u x^3 v) - tr(x) tr(u x^2 v)
//                   + sigma(x) tr(u x v) - tr(x^-1) tr(u v).
double verify_sublemma(const Word& u, const Word& v, const Matrix4c& a,
                       const Matrix4c& b);

// tr(x y^2) rebuilt from inverse-letter data:
//   tr(y) tr(xy) - sigma(y) tr(x) + tr(y^-1) tr(x y^-1) - tr(x y^-2).
Complex recover_tr_xy2(const GroupElement& a, const GroupElement& b);

// tr((y^2 x)^2 x y x) rebuilt from catalog values and their conjugates with
// v = y^2 x and u = x y x; the conjugation steps need SU(3,1) inputs.
Complex recover_long_word(const GroupElement& a, const GroupElement& b);

// Residuals |tr(w^-1) - conj(tr(w))| for the six eliminated words. Accepts
// any determinant-1 pair: away from SU(3,1) the residuals are expected to be
// large, which is the point of reporting rather than refusing.
std::array<double, 6> verify_eliminated_traces(const GroupElement& a,
                                               const GroupElement& b);

// Numerical rank of the derivative of the coordinate map at (a, b).
//
// SL4 catalogs: directions a exp(t E), b exp(t E) over the 15 traceless
// complex basis elements per generator; the Jacobian is complex 2*15 columns
// wide and its complex rank is reported (the trace map is holomorphic).
// The SU31 catalog uses the 15-dimensional real algebra per generator and
// reports the real rank of the Re/Im-stacked Jacobian.
//
// Central differences with step h; singular values count when they exceed
// 1e-6 relative to max(1, largest singular value) — the absolute floor keeps
// the all-derivatives-vanish case (the identity pair) at rank zero.
int jacobian_rank(const GroupElement& a, const GroupElement& b,
                  CatalogName cat, double step = tol::jacobian_step);
int jacobian_rank(const GroupElement& a, const GroupElement& b,
                  std::span<const Word> words, Flavor chart,
                  double step = tol::jacobian_step);

namespace testhooks {
// Test-only fault injection: flips the sign of the final term of
// recover_tr_xy2 so sensitivity checks can watch the fuzz harness fail.
extern bool flip_recover_xy2_sign;
}  // namespace testhooks

}  // namespace tracepair
