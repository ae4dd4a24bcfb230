#include "tracepair/matrix_core.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace tracepair {

const Matrix4c& hermitian_form() {
  static const Matrix4c h = [] {
    Matrix4c m = Matrix4c::Zero();
    m(0, 3) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = 1.0;
    m(3, 0) = 1.0;
    return m;
  }();
  return h;
}

Complex form_product(const Vector4c& u, const Vector4c& v) {
  return v.adjoint() * hermitian_form() * u;
}

double max_abs(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

Matrix4c adjugate(const Matrix4c& m) {
  auto cof3 = [&m](int r0, int r1, int r2, int c0, int c1, int c2) {
    return m(r0, c0) * (m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1)) -
           m(r0, c1) * (m(r1, c0) * m(r2, c2) - m(r1, c2) * m(r2, c0)) +
           m(r0, c2) * (m(r1, c0) * m(r2, c1) - m(r1, c1) * m(r2, c0));
  };
  static constexpr int rest[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  Matrix4c adj;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      // adj(i,j) = (-1)^{i+j} det(m with row j, column i removed)
      const auto& r = rest[j];
      const auto& c = rest[i];
      const Complex minor = cof3(r[0], r[1], r[2], c[0], c[1], c[2]);
      adj(i, j) = ((i + j) % 2 == 0) ? minor : -minor;
    }
  }
  return adj;
}

std::string_view flavor_name(Flavor f) {
  return f == Flavor::SL4 ? "SL4" : "SU31";
}

MembershipReport su31_residuals(const Matrix4c& m) {
  const Matrix4c& h = hermitian_form();
  return {std::abs(m.determinant() - 1.0), max_abs(m.adjoint() * h * m - h)};
}

bool is_su31(const Matrix4c& m, double tolerance) {
  return su31_residuals(m).within(tolerance);
}

GroupElement GroupElement::sl4(const Matrix4c& m, double tolerance) {
  if (!m.allFinite()) throw NotUnimodular("matrix has non-finite entries");
  const double res = std::abs(m.determinant() - 1.0);
  if (res > tolerance) {
    throw NotUnimodular("determinant deviates from 1 by " + std::to_string(res));
  }
  return GroupElement(m, Flavor::SL4);
}

GroupElement GroupElement::su31(const Matrix4c& m, double tolerance) {
  if (!m.allFinite()) throw NotUnimodular("matrix has non-finite entries");
  const MembershipReport rep = su31_residuals(m);
  if (rep.det_residual > tolerance) {
    throw NotUnimodular("determinant deviates from 1 by " +
                        std::to_string(rep.det_residual));
  }
  if (rep.form_residual > tolerance) {
    throw FlavorMismatch("matrix does not preserve the (3,1) form; residual " +
                         std::to_string(rep.form_residual));
  }
  return GroupElement(m, Flavor::SU31);
}

GroupElement inverse(const GroupElement& g, double tolerance) {
  const Matrix4c inv = adjugate(g.matrix());
  return g.in_su31() ? GroupElement::su31(inv, tolerance)
                     : GroupElement::sl4(inv, tolerance);
}

CharPolyData char_poly(const GroupElement& g) {
  const Matrix4c& m = g.matrix();
  return {m.trace(), sigma(m), adjugate(m).trace(), m.determinant()};
}

Vector4c eigenvalues(const Matrix4c& m) {
  Eigen::ComplexEigenSolver<Matrix4c> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("complex eigensolver failed to converge");
  }
  Vector4c ev = solver.eigenvalues();
  std::array<Complex, 4> vals{ev(0), ev(1), ev(2), ev(3)};
  std::sort(vals.begin(), vals.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (int i = 0; i < 4; ++i) ev(i) = vals[i];
  return ev;
}

namespace {

Matrix4c unit(int i, int j) {
  Matrix4c m = Matrix4c::Zero();
  m(i, j) = 1.0;
  return m;
}

}  // namespace

const std::array<Matrix4c, 15>& su31_algebra_basis() {
  static const std::array<Matrix4c, 15> basis = [] {
    const Complex im(0.0, 1.0);
    std::array<Matrix4c, 15> out;
    int n = 0;
    // Skew-Hermitian K with tr(HK) = 0; the algebra element is X = H K.
    std::array<Matrix4c, 15> ks;
    ks[n++] = im * unit(0, 0);
    ks[n++] = im * unit(3, 3);
    ks[n++] = im * (unit(1, 1) - unit(2, 2));
    ks[n++] = im * (unit(1, 1) + unit(2, 2)) - im * (unit(0, 3) + unit(3, 0));
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) ks[n++] = unit(i, j) - unit(j, i);
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (i == 0 && j == 3) continue;  // folded into the diagonal combo
        ks[n++] = im * (unit(i, j) + unit(j, i));
      }
    }
    for (int k = 0; k < 15; ++k) out[k] = hermitian_form() * ks[k];
    return out;
  }();
  return basis;
}

Matrix4c su31_algebra_element(const Eigen::Matrix<double, 15, 1>& coeffs) {
  Matrix4c x = Matrix4c::Zero();
  const auto& basis = su31_algebra_basis();
  for (int k = 0; k < 15; ++k) x += coeffs(k) * basis[k];
  return x;
}

const std::array<Matrix4c, 15>& sl4_algebra_basis() {
  static const std::array<Matrix4c, 15> basis = [] {
    std::array<Matrix4c, 15> out;
    int n = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j) out[n++] = unit(i, j);
      }
    }
    for (int k = 0; k < 3; ++k) out[n++] = unit(k, k) - unit(k + 1, k + 1);
    return out;
  }();
  return basis;
}

GroupElement random_sl4(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix4c m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = Complex(re, im);
    }
  }
  // Normalize to det 1 with the principal fourth root.
  const Complex d = m.determinant();
  m /= std::pow(d, 0.25);
  return GroupElement::sl4(m, 1e-10);
}

GroupElement random_su31(std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix<double, 15, 1> coeffs;
  for (int k = 0; k < 15; ++k) coeffs(k) = scale * gauss(rng);
  const Matrix4c g = su31_algebra_element(coeffs).exp();
  return GroupElement::su31(g, tol::membership);
}

GroupElement random_loxodromic(std::uint64_t seed, double modulus) {
  if (!(modulus > 1.0)) {
    throw Error("loxodromic modulus must exceed 1");
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const double theta = angle(rng);
  const double phi = angle(rng);
  const Complex lambda = std::polar(modulus, theta);
  const Complex u = std::polar(1.0, phi);
  // det = lambda * u * v / conj(lambda) = e^{2 i theta} u v; choose v to cancel.
  const Complex v = std::conj(u) * std::polar(1.0, -2.0 * theta);
  Matrix4c d = Matrix4c::Zero();
  d(0, 0) = lambda;
  d(1, 1) = u;
  d(2, 2) = v;
  d(3, 3) = 1.0 / std::conj(lambda);
  const GroupElement k = random_su31(seed, 1.0);
  const Matrix4c g = k.matrix() * d * adjugate(k.matrix());
  return GroupElement::su31(g, 1e-7);
}

}  // namespace tracepair
