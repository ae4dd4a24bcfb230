#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "tracepair/types.hpp"

namespace tracepair {

// The Hermitian form of signature (3,1):
//   <z, w> = w* H z,  H = antidiag blocks below; H = H*, H^2 = I.
const Matrix4c& hermitian_form();

// Signed form value <u, v> = v* H u.
Complex form_product(const Vector4c& u, const Vector4c& v);

double max_abs(const Matrix4c& m);

// Classical adjugate: transpose cofactor matrix, a * adjugate(a) = det(a) I.
// Written out as 3x3 cofactor determinants; no pivoting, no division.
Matrix4c adjugate(const Matrix4c& m);

// Second characteristic coefficient, (tr(m)^2 - tr(m^2)) / 2.
template <typename Derived>
Complex sigma(const Eigen::MatrixBase<Derived>& m) {
  const Matrix4c a = m.derived();
  const Complex t = a.trace();
  return (t * t - (a * a).trace()) / 2.0;
}

enum class Flavor { SL4, SU31 };
std::string_view flavor_name(Flavor f);

struct MembershipReport {
  double det_residual;   // |det - 1|
  double form_residual;  // ||m* H m - H||_max
  bool within(double tolerance) const {
    return det_residual <= tolerance && form_residual <= tolerance;
  }
};

MembershipReport su31_residuals(const Matrix4c& m);
bool is_su31(const Matrix4c& m, double tolerance = tol::membership);

// A determinant-1 matrix tagged with the group it was validated against.
class GroupElement {
 public:
  static GroupElement sl4(const Matrix4c& m, double tolerance = tol::membership);
  static GroupElement su31(const Matrix4c& m, double tolerance = tol::membership);

  const Matrix4c& matrix() const { return m_; }
  Flavor flavor() const { return flavor_; }
  bool in_su31() const { return flavor_ == Flavor::SU31; }

 private:
  GroupElement(Matrix4c m, Flavor f) : m_(std::move(m)), flavor_(f) {}
  Matrix4c m_;
  Flavor flavor_;
};

// Inverse through the adjugate (exact for det = 1); keeps the flavor.
GroupElement inverse(const GroupElement& g, double tolerance = tol::membership);

struct CharPolyData {
  Complex t1;     // tr(A)
  Complex sigma;  // second coefficient
  Complex t_inv;  // tr(A^-1)
  Complex det;
};

// chi_A(x) = x^4 - t1 x^3 + sigma x^2 - t_inv x + det.
CharPolyData char_poly(const GroupElement& g);

// Eigenvalues with multiplicity, sorted lexicographically by (Re, Im) so
// repeated runs produce identical reports.
Vector4c eigenvalues(const Matrix4c& m);

// Real basis of {X : X*H + HX = 0, tr X = 0}, the 15-dimensional algebra of
// the form-preserving group.
const std::array<Matrix4c, 15>& su31_algebra_basis();

Matrix4c su31_algebra_element(const Eigen::Matrix<double, 15, 1>& coeffs);

// Traceless complex basis of sl(4), 15 matrices (E_ij for i != j plus three
// diagonal differences).
const std::array<Matrix4c, 15>& sl4_algebra_basis();

// Deterministic samplers. Same seed, same build: identical output.
GroupElement random_sl4(std::uint64_t seed);
GroupElement random_su31(std::uint64_t seed, double scale = 1.0);

// k diag(lambda, u, v, 1/conj(lambda)) k^-1 with |lambda| = modulus > 1,
// |u| = |v| = 1 and the phases balanced so the determinant is 1.
GroupElement random_loxodromic(std::uint64_t seed, double modulus);

}  // namespace tracepair
