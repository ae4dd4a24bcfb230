#include "tracepair/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tracepair {

std::string_view isometry_name(IsometryType t) {
  switch (t) {
    case IsometryType::Elliptic: return "Elliptic";
    case IsometryType::Parabolic: return "Parabolic";
    case IsometryType::Loxodromic: return "Loxodromic";
  }
  return "";
}

std::string_view verdict_name(ReducibilityVerdict v) {
  switch (v) {
    case ReducibilityVerdict::Irreducible: return "Irreducible";
    case ReducibilityVerdict::ReducibleLine: return "ReducibleLine";
    case ReducibilityVerdict::ReduciblePlane: return "ReduciblePlane";
    case ReducibilityVerdict::ReducibleOther: return "ReducibleOther";
  }
  return "";
}

std::string_view case_name(ReducedCase c) {
  return c == ReducedCase::Line ? "Line" : "Plane";
}

namespace {

constexpr double kClusterRadius = 1e-6;

struct DiagonalizabilityResult {
  bool diagonalizable;
  bool marginal;
};

// Per eigenvalue cluster, the rank of (g - lambda I) must drop by exactly the
// cluster size. A singular value within a decade of the zero threshold makes
// the answer marginal.
DiagonalizabilityResult diagonalizability(const Matrix4c& g,
                                          const Vector4c& eigs) {
  const double zero_threshold = 1e-7 * std::max(1.0, g.norm());
  bool diagonalizable = true;
  bool marginal = false;

  std::array<int, 4> cluster{0, 1, 2, 3};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(eigs(i) - eigs(j)) <= kClusterRadius) {
        cluster[i] = cluster[j];
        break;
      }
    }
  }
  for (int c = 0; c < 4; ++c) {
    Complex mean = 0.0;
    int size = 0;
    for (int i = 0; i < 4; ++i) {
      if (cluster[i] == c) {
        mean += eigs(i);
        ++size;
      }
    }
    if (size == 0) continue;
    mean /= static_cast<double>(size);
    const Matrix4c shifted = g - mean * Matrix4c::Identity();
    Eigen::JacobiSVD<Matrix4c> svd(shifted);
    const auto& s = svd.singularValues();
    int nullity = 0;
    for (int i = 0; i < 4; ++i) {
      if (s(i) < zero_threshold) ++nullity;
      if (s(i) > zero_threshold / 10.0 && s(i) < zero_threshold * 10.0) {
        marginal = true;
      }
    }
    if (nullity != size) diagonalizable = false;
  }
  return {diagonalizable, marginal};
}

}  // namespace

IsometryType classify_isometry(const GroupElement& g, double tolerance) {
  if (!g.in_su31()) {
    throw FlavorMismatch("isometry classification requires an SU(3,1) element");
  }
  const Vector4c eigs = eigenvalues(g.matrix());
  double modulus_gap = 0.0;
  for (int i = 0; i < 4; ++i) {
    modulus_gap = std::max(modulus_gap, std::abs(std::abs(eigs(i)) - 1.0));
  }
  if (modulus_gap > tolerance) return IsometryType::Loxodromic;

  const DiagonalizabilityResult d = diagonalizability(g.matrix(), eigs);
  if (d.marginal) {
    throw ToleranceAmbiguous(
        "eigenvalue moduli sit at the unit circle and the diagonalizability "
        "test is within a decade of its threshold");
  }
  return d.diagonalizable ? IsometryType::Elliptic : IsometryType::Parabolic;
}

std::vector<Matrix4c> algebra_span(const Matrix4c& a, const Matrix4c& b,
                                   double rank_tolerance) {
  using Vec16 = Eigen::Matrix<Complex, 16, 1>;
  std::vector<Matrix4c> basis;
  std::vector<Vec16> flat;

  auto try_add = [&](const Matrix4c& m) {
    Vec16 v = Eigen::Map<const Vec16>(m.data());
    const double scale = v.norm();
    for (const Vec16& q : flat) v -= q.dot(v) * q;
    // second orthogonalization pass keeps the basis numerically tight
    for (const Vec16& q : flat) v -= q.dot(v) * q;
    const double n = v.norm();
    if (n > rank_tolerance * std::max(1.0, scale)) {
      v /= n;
      flat.push_back(v);
      basis.push_back(Eigen::Map<const Matrix4c>(v.data()));
      return true;
    }
    return false;
  };

  try_add(Matrix4c::Identity());
  try_add(a);
  try_add(b);
  while (basis.size() < 16) {
    bool added = false;
    const std::size_t current = basis.size();
    for (std::size_t i = 0; i < current; ++i) {
      const Matrix4c q = basis[i];
      added |= try_add(a * q);
      added |= try_add(b * q);
    }
    if (!added) break;
  }
  return basis;
}

FormSignature subspace_signature(const Eigen::MatrixXcd& basis,
                                 double zero_tolerance) {
  const Eigen::MatrixXcd gram =
      basis.adjoint() * hermitian_form() * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
  FormSignature sig{0, 0, 0};
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double ev = solver.eigenvalues()(i);
    if (ev > zero_tolerance) {
      ++sig.plus;
    } else if (ev < -zero_tolerance) {
      ++sig.minus;
    } else {
      ++sig.null;
    }
  }
  return sig;
}

namespace {

// Orthonormal column basis with a relative singular-value cutoff.
Eigen::MatrixXcd orthonormal_columns(const Eigen::MatrixXcd& v,
                                     double rel_tol = 1e-8) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return Eigen::MatrixXcd(v.rows(), 0);
  Eigen::Index k = 0;
  while (k < s.size() && s(k) > rel_tol * s(0)) ++k;
  return svd.matrixU().leftCols(k);
}

double invariance_residual(const Eigen::MatrixXcd& basis,
                           const Matrix4c& m) {
  const Eigen::MatrixXcd image = m * basis;
  const Eigen::MatrixXcd outside = image - basis * (basis.adjoint() * image);
  return outside.norm() / m.norm();
}

bool is_invariant(const Eigen::MatrixXcd& basis, const Matrix4c& a,
                  const Matrix4c& b, double tolerance) {
  return invariance_residual(basis, a) < tolerance &&
         invariance_residual(basis, b) < tolerance;
}

bool already_listed(const std::vector<Eigen::MatrixXcd>& list,
                    const Eigen::MatrixXcd& candidate) {
  for (const auto& s : list) {
    if (s.cols() != candidate.cols()) continue;
    const Eigen::MatrixXcd diff =
        s * s.adjoint() - candidate * candidate.adjoint();
    if (diff.norm() < 1e-6) return true;
  }
  return false;
}

// H-orthogonal complement: kernel of basis^* H.
Eigen::MatrixXcd form_complement(const Eigen::MatrixXcd& basis) {
  const Eigen::MatrixXcd m = basis.adjoint() * hermitian_form();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(4 - basis.cols());
}

void collect_eigenline_subsets(const Matrix4c& reference, const Matrix4c& a,
                               const Matrix4c& b, double tolerance,
                               std::vector<Eigen::MatrixXcd>& out) {
  Eigen::ComplexEigenSolver<Matrix4c> solver(reference);
  if (solver.info() != Eigen::Success) return;
  const Vector4c lam = solver.eigenvalues();
  double min_gap = 1e300;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      min_gap = std::min(min_gap, std::abs(lam(i) - lam(j)));
    }
  }
  if (min_gap < kClusterRadius) return;  // subsets of eigenlines unreliable
  const Matrix4c vec = solver.eigenvectors();
  for (unsigned mask = 1; mask < 15; ++mask) {  // proper nonempty subsets
    const int k = __builtin_popcount(mask);
    Eigen::MatrixXcd cols(4, k);
    int c = 0;
    for (int i = 0; i < 4; ++i) {
      if (mask & (1u << i)) cols.col(c++) = vec.col(i);
    }
    const Eigen::MatrixXcd basis = orthonormal_columns(cols);
    if (basis.cols() != k) continue;
    if (is_invariant(basis, a, b, tolerance) && !already_listed(out, basis)) {
      out.push_back(basis);
    }
  }
}

void collect_cyclic_modules(const GroupElement& ga, const GroupElement& gb,
                            double tolerance,
                            std::vector<Eigen::MatrixXcd>& out) {
  const Matrix4c& a = ga.matrix();
  const Matrix4c& b = gb.matrix();
  const std::vector<Matrix4c> algebra = algebra_span(a, b);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    Matrix4c m = Matrix4c::Zero();
    for (const Matrix4c& q : algebra) {
      m += Complex(gauss(rng), gauss(rng)) * q;
    }
    Eigen::ComplexEigenSolver<Matrix4c> solver(m);
    if (solver.info() != Eigen::Success) continue;
    for (int i = 0; i < 4; ++i) {
      const Vector4c v = solver.eigenvectors().col(i);
      Eigen::MatrixXcd span(4, algebra.size() + 1);
      span.col(0) = v;
      for (std::size_t k = 0; k < algebra.size(); ++k) {
        span.col(static_cast<Eigen::Index>(k + 1)) = algebra[k] * v;
      }
      const Eigen::MatrixXcd basis = orthonormal_columns(span);
      if (basis.cols() >= 4 || basis.cols() == 0) continue;
      if (is_invariant(basis, a, b, tolerance) && !already_listed(out, basis)) {
        out.push_back(basis);
      }
    }
  }
}

}  // namespace

std::vector<Eigen::MatrixXcd> invariant_subspaces(const GroupElement& a,
                                                  const GroupElement& b,
                                                  double tolerance) {
  std::vector<Eigen::MatrixXcd> out;
  collect_eigenline_subsets(a.matrix(), a.matrix(), b.matrix(), tolerance, out);
  collect_eigenline_subsets(b.matrix(), a.matrix(), b.matrix(), tolerance, out);
  collect_cyclic_modules(a, b, tolerance, out);
  // Close under H-complements; they are invariant for form-preserving pairs.
  if (a.in_su31() && b.in_su31()) {
    const std::size_t primary = out.size();
    for (std::size_t i = 0; i < primary; ++i) {
      const Eigen::MatrixXcd comp = form_complement(out[i]);
      if (comp.cols() == 0 || comp.cols() >= 4) continue;
      if (is_invariant(comp, a.matrix(), b.matrix(), tolerance) &&
          !already_listed(out, comp)) {
        out.push_back(comp);
      }
    }
  }
  return out;
}

namespace {

bool both_loxodromic(const GroupElement& a, const GroupElement& b) {
  try {
    return classify_isometry(a) == IsometryType::Loxodromic &&
           classify_isometry(b) == IsometryType::Loxodromic;
  } catch (const ToleranceAmbiguous&) {
    return false;
  }
}

const Eigen::MatrixXcd* match_case(
    const std::vector<Eigen::MatrixXcd>& candidates, ReducedCase c) {
  const int want_dim = c == ReducedCase::Line ? 2 : 3;
  const FormSignature want = c == ReducedCase::Line ? FormSignature{1, 1, 0}
                                                    : FormSignature{2, 1, 0};
  for (const auto& s : candidates) {
    if (s.cols() != want_dim) continue;
    const FormSignature sig = subspace_signature(s);
    if (sig.plus == want.plus && sig.minus == want.minus && sig.null == 0) {
      return &s;
    }
  }
  return nullptr;
}

}  // namespace

ReducibilityReport irreducibility(const GroupElement& a, const GroupElement& b,
                                  double invariance_tolerance) {
  ReducibilityReport report{ReducibilityVerdict::Irreducible, 0, std::nullopt,
                            std::nullopt, invariance_tolerance};
  report.span_dimension =
      static_cast<int>(algebra_span(a.matrix(), b.matrix()).size());
  if (report.span_dimension == 16) return report;

  const auto candidates = invariant_subspaces(a, b, invariance_tolerance);
  const bool su31 = a.in_su31() && b.in_su31();

  if (su31 && both_loxodromic(a, b)) {
    if (const auto* line = match_case(candidates, ReducedCase::Line)) {
      report.verdict = ReducibilityVerdict::ReducibleLine;
      report.subspace_basis = *line;
      report.subspace_signature = {1, 1};
      return report;
    }
    if (const auto* plane = match_case(candidates, ReducedCase::Plane)) {
      report.verdict = ReducibilityVerdict::ReduciblePlane;
      report.subspace_basis = *plane;
      report.subspace_signature = {2, 1};
      return report;
    }
  }

  report.verdict = ReducibilityVerdict::ReducibleOther;
  if (!candidates.empty()) {
    const auto smallest = std::min_element(
        candidates.begin(), candidates.end(),
        [](const auto& lhs, const auto& rhs) { return lhs.cols() < rhs.cols(); });
    report.subspace_basis = *smallest;
    if (su31) {
      const FormSignature sig = subspace_signature(*smallest);
      report.subspace_signature = {sig.plus, sig.minus};
    }
  }
  return report;
}

std::optional<Eigen::MatrixXcd> find_case_subspace(const GroupElement& a,
                                                   const GroupElement& b,
                                                   ReducedCase c) {
  const auto candidates = invariant_subspaces(a, b);
  if (const auto* s = match_case(candidates, c)) return *s;
  return std::nullopt;
}

double max_difference(const ReducedInvariants& lhs,
                      const ReducedInvariants& rhs) {
  if (lhs.which != rhs.which) {
    throw CaseMismatch("reduced invariants come from different cases");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.values.size(); ++i) {
    worst = std::max(worst, std::abs(lhs.values[i] - rhs.values[i]));
  }
  return worst;
}

ReducedInvariants reduced_invariants(const GroupElement& a,
                                     const GroupElement& b, ReducedCase c) {
  if (!both_loxodromic(a, b)) {
    throw NotLoxodromic("reduced invariants require a loxodromic pair");
  }
  if (!find_case_subspace(a, b, c)) {
    throw CaseMismatch(std::string("pair admits no invariant subspace of the ") +
                       std::string(case_name(c)) + " case");
  }
  const Matrix4c& ma = a.matrix();
  const Matrix4c& mb = b.matrix();
  const Matrix4c ab = ma * mb;
  ReducedInvariants inv{c, {}};
  if (c == ReducedCase::Line) {
    inv.values = {ma.trace(), mb.trace(), ab.trace(),
                  sigma(ma),  sigma(mb),  sigma(ab)};
  } else {
    const Matrix4c commutator = ma * mb * adjugate(ma) * adjugate(mb);
    inv.values = {ma.trace(),
                  mb.trace(),
                  ab.trace(),
                  (adjugate(ma) * mb).trace(),
                  commutator.trace(),
                  sigma(ma),
                  sigma(mb)};
  }
  return inv;
}

bool in_block_pattern(ReducedCase c, int row, int col) {
  auto group = [c](int i) {
    if (c == ReducedCase::Line) return (i == 0 || i == 3) ? 0 : 1;
    return i == 2 ? 1 : 0;
  };
  return group(row) == group(col);
}

namespace {

double off_block(const Matrix4c& m, ReducedCase c) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (!in_block_pattern(c, i, j)) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

// Null pair (n1, n2) with <n1,n1> = <n2,n2> = 0 and n1^* H n2 = 1 built from
// a normalized positive/negative pair of form-orthogonal vectors.
std::pair<Vector4c, Vector4c> hyperbolic_pair(const Vector4c& plus,
                                              const Vector4c& minus) {
  Vector4c n1 = (plus + minus) / std::sqrt(2.0);
  Vector4c n2 = (plus - minus) / std::sqrt(2.0);
  const Complex c = n1.adjoint() * hermitian_form() * n2;
  if (std::abs(c) < 1e-12) {
    throw DecompositionFailed("degenerate null pairing on invariant subspace");
  }
  n2 /= c;
  return {n1, n2};
}

}  // namespace

BlockDecomposition block_decompose(const GroupElement& a, const GroupElement& b,
                                   const ReducibilityReport& report) {
  ReducedCase c;
  if (report.verdict == ReducibilityVerdict::ReducibleLine) {
    c = ReducedCase::Line;
  } else if (report.verdict == ReducibilityVerdict::ReduciblePlane) {
    c = ReducedCase::Plane;
  } else {
    throw CaseMismatch("block decomposition needs a Line or Plane verdict");
  }

  Eigen::MatrixXcd s;
  const int want_dim = c == ReducedCase::Line ? 2 : 3;
  if (report.subspace_basis && report.subspace_basis->cols() == want_dim) {
    s = *report.subspace_basis;
  } else if (auto found = find_case_subspace(a, b, c)) {
    s = *found;
  } else {
    throw CaseMismatch("reported case subspace not found");
  }

  const Eigen::MatrixXcd gram = s.adjoint() * hermitian_form() * s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram);
  const auto& ev = solver.eigenvalues();
  if (ev(0) > -tol::signature_zero || ev(ev.size() - 1) < tol::signature_zero) {
    throw DecompositionFailed("invariant subspace is not of the stated signature");
  }
  if (std::abs(ev(0)) < tol::signature_zero ||
      std::abs(ev(1)) < tol::signature_zero) {
    throw DecompositionFailed("form degenerates on the invariant subspace");
  }

  const Vector4c minus = s * solver.eigenvectors().col(0) / std::sqrt(-ev(0));
  const Vector4c plus = s * solver.eigenvectors().col(1) / std::sqrt(ev(1));
  auto [n1, n2] = hyperbolic_pair(plus, minus);

  Matrix4c k;
  if (c == ReducedCase::Line) {
    const Eigen::MatrixXcd comp = form_complement(s);
    const Eigen::MatrixXcd cgram = comp.adjoint() * hermitian_form() * comp;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> csolver(cgram);
    if (csolver.eigenvalues()(0) < tol::signature_zero) {
      throw DecompositionFailed("complement of the line subspace degenerates");
    }
    const Vector4c u2 = comp * csolver.eigenvectors().col(0) /
                        std::sqrt(csolver.eigenvalues()(0));
    const Vector4c u3 = comp * csolver.eigenvectors().col(1) /
                        std::sqrt(csolver.eigenvalues()(1));
    k.col(0) = n1;
    k.col(1) = u2;
    k.col(2) = u3;
    k.col(3) = n2;
  } else {
    const Vector4c plus2 = s * solver.eigenvectors().col(2) / std::sqrt(ev(2));
    const Eigen::MatrixXcd comp = form_complement(s);
    const Complex cnorm = (comp.adjoint() * hermitian_form() * comp)(0, 0);
    if (cnorm.real() < tol::signature_zero) {
      throw DecompositionFailed("complement of the plane subspace degenerates");
    }
    const Vector4c u3 = comp.col(0) / std::sqrt(cnorm.real());
    k.col(0) = n1;
    k.col(1) = plus2;
    k.col(2) = u3;
    k.col(3) = n2;
  }

  // |det k| = 1 because k preserves the form; a unit phase on a positive
  // column makes it exactly 1 without disturbing the Gram pattern.
  const Complex det = k.determinant();
  const int phase_col = c == ReducedCase::Line ? 1 : 2;
  k.col(phase_col) /= det;

  BlockDecomposition out{GroupElement::su31(k, 1e-7), Matrix4c{}, Matrix4c{},
                         0.0};
  const Matrix4c k_inv = adjugate(k);
  out.a_block = k_inv * a.matrix() * k;
  out.b_block = k_inv * b.matrix() * k;
  out.off_block_residual =
      std::max(off_block(out.a_block, c), off_block(out.b_block, c));
  return out;
}

ClassificationReport classify_pair(const GroupElement& a, const GroupElement& b,
                                   double isometry_tolerance) {
  ClassificationReport report{std::nullopt, std::nullopt,
                              irreducibility(a, b), isometry_tolerance};
  if (a.in_su31()) report.a_type = classify_isometry(a, isometry_tolerance);
  if (b.in_su31()) report.b_type = classify_isometry(b, isometry_tolerance);
  return report;
}

}  // namespace tracepair
