#include "tracepair/reconstruct.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace tracepair {

namespace {

constexpr double kKernelRelTol = 1e-8;

struct IntertwinerKernel {
  Eigen::MatrixXcd basis;  // 16 x dim, columns are vec'd intertwiners
  int dimension;
};

// M A = A' M and M B = B' M as a 32 x 16 system on vec(M) (column-major):
// vec(M A) = (A^T kron I) vec(M), vec(A' M) = (I kron A') vec(M).
IntertwinerKernel intertwiner_kernel(const Matrix4c& a, const Matrix4c& b,
                                     const Matrix4c& a2, const Matrix4c& b2) {
  Eigen::MatrixXcd k(32, 16);
  const Matrix4c i4 = Matrix4c::Identity();
  auto fill = [&k, &i4](int row0, const Matrix4c& g, const Matrix4c& g2) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        // block (i, j) of (g^T kron I) - (I kron g2)
        Matrix4c block = g(j, i) * i4;
        if (i == j) block -= g2;
        k.block<4, 4>(row0 + 4 * i, 4 * j) = block;
      }
    }
  };
  fill(0, a, a2);
  fill(16, b, b2);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(k, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = kKernelRelTol * std::max(s(0), 1e-300);
  int dim = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) < cutoff) ++dim;
  }
  return {svd.matrixV().rightCols(dim), dim};
}

Matrix4c unvec(const Eigen::VectorXcd& v) {
  return Eigen::Map<const Matrix4c>(v.data());
}

double conjugation_residual(const Matrix4c& m, const Matrix4c& a,
                            const Matrix4c& b, const Matrix4c& a2,
                            const Matrix4c& b2) {
  const Matrix4c m_inv = m.inverse();
  return std::max(max_abs(m * a * m_inv - a2), max_abs(m * b * m_inv - b2));
}

// Scales to det 1 with the principal fourth root and validates residuals.
std::optional<GroupElement> normalized_conjugator(const Matrix4c& candidate,
                                                  const Matrix4c& a,
                                                  const Matrix4c& b,
                                                  const Matrix4c& a2,
                                                  const Matrix4c& b2,
                                                  double* residual_out) {
  Eigen::JacobiSVD<Matrix4c> svd(candidate);
  const auto& s = svd.singularValues();
  if (s(3) < 1e-6 * s(0)) return std::nullopt;  // not safely invertible
  Matrix4c m = candidate;
  m /= std::pow(m.determinant(), 0.25);
  const double res = conjugation_residual(m, a, b, a2, b2);
  if (res > tol::conjugation) return std::nullopt;
  *residual_out = res;
  return GroupElement::sl4(m, tol::membership);
}

bool screened_irreducible(const GroupElement& a, const GroupElement& b) {
  return irreducibility(a, b).verdict == ReducibilityVerdict::Irreducible;
}

}  // namespace

ConjugacyCertificate conjugacy_test(const GroupElement& a, const GroupElement& b,
                                    const GroupElement& a2, const GroupElement& b2,
                                    CatalogName cat, double tolerance) {
  const TraceVector lhs = compute(cat, a, b);
  const TraceVector rhs = compute(cat, a2, b2);
  ConjugacyCertificate cert{};
  cert.coordinate_distance = max_distance(lhs, rhs);
  cert.kernel_dimension = -1;  // not examined by the fingerprint test
  cert.polystability_verified =
      screened_irreducible(a, b) && screened_irreducible(a2, b2);
  cert.conjugate = cert.coordinate_distance < tolerance;
  cert.conjugation_residual = std::numeric_limits<double>::quiet_NaN();
  cert.tolerance = tolerance;
  return cert;
}

ConjugacyCertificate find_conjugator(const GroupElement& a, const GroupElement& b,
                                     const GroupElement& a2,
                                     const GroupElement& b2) {
  if (!screened_irreducible(a, b)) {
    throw NotIrreducible("find_conjugator requires an irreducible source pair");
  }
  const IntertwinerKernel kernel =
      intertwiner_kernel(a.matrix(), b.matrix(), a2.matrix(), b2.matrix());
  if (kernel.dimension == 0) {
    throw NoConjugator("intertwiner system has trivial kernel", 0);
  }

  ConjugacyCertificate cert{};
  cert.kernel_dimension = kernel.dimension;
  cert.coordinate_distance = max_distance(
      compute(CatalogName::Sl4Djokovic30, a, b),
      compute(CatalogName::Sl4Djokovic30, a2, b2));
  cert.tolerance = tol::conjugation;

  std::mt19937_64 rng(0xc0417);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 24; ++attempt) {
    Eigen::VectorXcd coeffs(kernel.dimension);
    if (attempt < kernel.dimension) {
      coeffs.setZero();
      coeffs(attempt) = 1.0;
    } else {
      for (int i = 0; i < kernel.dimension; ++i) {
        coeffs(i) = Complex(gauss(rng), gauss(rng));
      }
    }
    double res = 0.0;
    auto conj = normalized_conjugator(unvec(kernel.basis * coeffs), a.matrix(),
                                      b.matrix(), a2.matrix(), b2.matrix(), &res);
    if (conj) {
      cert.conjugate = true;
      cert.conjugator = *conj;
      cert.conjugation_residual = res;
      cert.polystability_verified = true;
      return cert;
    }
  }
  throw NoConjugator("intertwiner kernel contains no invertible element",
                     kernel.dimension);
}

namespace {

ReducedCase required_case(const GroupElement& a, const GroupElement& b) {
  if (find_case_subspace(a, b, ReducedCase::Line)) return ReducedCase::Line;
  if (find_case_subspace(a, b, ReducedCase::Plane)) return ReducedCase::Plane;
  throw CaseMismatch("pair is not reducible of Line or Plane type");
}

}  // namespace

ConjugacyCertificate reduced_conjugacy_test(const GroupElement& a,
                                            const GroupElement& b,
                                            const GroupElement& a2,
                                            const GroupElement& b2) {
  const ReducedCase first = required_case(a, b);
  const ReducedCase second = required_case(a2, b2);
  if (first != second) {
    throw CaseMismatch("pairs are reducible of different cases");
  }
  const ReducedInvariants lhs = reduced_invariants(a, b, first);
  const ReducedInvariants rhs = reduced_invariants(a2, b2, first);

  ConjugacyCertificate cert{};
  cert.coordinate_distance = max_difference(lhs, rhs);
  cert.tolerance = 1e-8;
  cert.polystability_verified = true;  // reduced loxodromic orbits are closed
  cert.conjugation_residual = std::numeric_limits<double>::quiet_NaN();

  const IntertwinerKernel kernel =
      intertwiner_kernel(a.matrix(), b.matrix(), a2.matrix(), b2.matrix());
  cert.kernel_dimension = kernel.dimension;
  if (cert.coordinate_distance >= cert.tolerance) {
    cert.conjugate = false;
    return cert;
  }

  std::mt19937_64 rng(0x8edc3d);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 48 && kernel.dimension > 0; ++attempt) {
    Eigen::VectorXcd coeffs(kernel.dimension);
    if (attempt < kernel.dimension) {
      coeffs.setZero();
      coeffs(attempt) = 1.0;
    } else {
      for (int i = 0; i < kernel.dimension; ++i) {
        coeffs(i) = Complex(gauss(rng), gauss(rng));
      }
    }
    double res = 0.0;
    auto conj = normalized_conjugator(unvec(kernel.basis * coeffs), a.matrix(),
                                      b.matrix(), a2.matrix(), b2.matrix(), &res);
    if (conj) {
      cert.conjugate = true;
      cert.conjugator = *conj;
      cert.conjugation_residual = res;
      return cert;
    }
  }
  cert.conjugate = false;
  return cert;
}

namespace {

struct FitChart {
  Flavor flavor;
  int parameter_count;  // real parameters across both generators
};

FitChart chart_for(CatalogName cat) {
  if (cat == CatalogName::Su31_22) return {Flavor::SU31, 30};
  return {Flavor::SL4, 60};
}

Matrix4c chart_element(Flavor flavor, const double* params) {
  Matrix4c x = Matrix4c::Zero();
  if (flavor == Flavor::SU31) {
    const auto& basis = su31_algebra_basis();
    for (int k = 0; k < 15; ++k) x += params[k] * basis[k];
  } else {
    const auto& basis = sl4_algebra_basis();
    for (int k = 0; k < 15; ++k) {
      x += Complex(params[2 * k], params[2 * k + 1]) * basis[k];
    }
  }
  return x.exp();
}

Eigen::VectorXcd catalog_traces(const Catalog& cat, const Matrix4c& a,
                                const Matrix4c& b) {
  PairContext ctx(a, b);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(cat.size()));
  for (std::size_t i = 0; i < cat.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = trace_word(cat.entries[i], ctx);
  }
  return out;
}

struct Residual {
  Eigen::VectorXd stacked;  // Re then Im of the coordinate mismatch
  double max_norm;
  bool finite;
};

class FitProblem {
 public:
  FitProblem(const TraceVector& target, const FitChart& chart,
             Matrix4c base_a, Matrix4c base_b)
      : target_(target),
        chart_(chart),
        base_a_(std::move(base_a)),
        base_b_(std::move(base_b)),
        cat_(catalog(target.catalog)) {}

  std::pair<Matrix4c, Matrix4c> pair_at(const Eigen::VectorXd& p) const {
    const int half = chart_.parameter_count / 2;
    return {base_a_ * chart_element(chart_.flavor, p.data()),
            base_b_ * chart_element(chart_.flavor, p.data() + half)};
  }

  Residual evaluate(const Eigen::VectorXd& p) const {
    const auto [a, b] = pair_at(p);
    if (!a.allFinite() || !b.allFinite()) return {{}, 0.0, false};
    Eigen::VectorXcd traces;
    try {
      traces = catalog_traces(cat_, a, b);
    } catch (const SingularMatrix&) {
      return {{}, 0.0, false};
    }
    const Eigen::VectorXcd diff = traces - target_.values;
    if (!diff.allFinite()) return {{}, 0.0, false};
    Residual r;
    const Eigen::Index m = diff.size();
    r.stacked.resize(2 * m);
    r.stacked.head(m) = diff.real();
    r.stacked.tail(m) = diff.imag();
    r.max_norm = diff.cwiseAbs().maxCoeff();
    r.finite = true;
    return r;
  }

  int parameters() const { return chart_.parameter_count; }

 private:
  const TraceVector& target_;
  FitChart chart_;
  Matrix4c base_a_, base_b_;
  const Catalog& cat_;
};

struct StartOutcome {
  Eigen::VectorXd params;
  double max_norm = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

StartOutcome run_start(const FitProblem& problem, Eigen::VectorXd p,
                       const FitConfig& config) {
  StartOutcome out;
  Residual current = problem.evaluate(p);
  if (!current.finite) return out;

  const int n = problem.parameters();
  const Eigen::Index m = current.stacked.size();
  double cost = current.stacked.squaredNorm();
  double damping = config.damping_init;

  out.params = p;
  out.max_norm = current.max_norm;

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    out.iterations = iter;
    if (current.max_norm < config.tolerance) {
      out.converged = true;
      return out;
    }

    Eigen::MatrixXd jac(m, n);
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd shifted = p;
      shifted(k) += config.fd_step;
      const Residual rs = problem.evaluate(shifted);
      if (!rs.finite) return out;  // base point at the edge of the chart
      jac.col(k) = (rs.stacked - current.stacked) / config.fd_step;
    }
    const Eigen::VectorXd gradient = jac.transpose() * current.stacked;
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd diag =
        normal.diagonal().cwiseMax(1e-12);

    bool accepted = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal() += damping * diag;
      const Eigen::VectorXd step = damped.ldlt().solve(-gradient);
      if (!step.allFinite()) {
        damping *= 10.0;
        continue;
      }
      const Eigen::VectorXd candidate = p + step;
      const Residual next = problem.evaluate(candidate);
      const double next_cost =
          next.finite ? next.stacked.squaredNorm()
                      : std::numeric_limits<double>::infinity();
      if (next_cost < cost && next.max_norm <= current.max_norm) {
        p = candidate;
        current = next;
        cost = next_cost;
        damping = std::max(damping / 10.0, 1e-12);
        out.params = p;
        out.max_norm = current.max_norm;
        accepted = true;
        break;
      }
      damping *= 10.0;
      if (damping > 1e12) break;
    }
    if (!accepted) break;  // stalled
  }
  out.converged = current.max_norm < config.tolerance;
  return out;
}

}  // namespace

FitResult fit_pair(const TraceVector& target, const FitConfig& config) {
  const FitChart chart = chart_for(target.catalog);
  Matrix4c base_a = Matrix4c::Identity();
  Matrix4c base_b = Matrix4c::Identity();
  if (config.initial) {
    base_a = config.initial->first.matrix();
    base_b = config.initial->second.matrix();
  }
  const FitProblem problem(target, chart, base_a, base_b);

  StartOutcome best;
  int best_restart = -1;
  int restarts_used = 0;
  for (int restart = 0; restart < std::max(config.restarts, 1); ++restart) {
    ++restarts_used;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(chart.parameter_count);
    if (restart > 0) {
      std::mt19937_64 rng(config.seed + 0x9e3779b97f4a7c15ull *
                                            static_cast<std::uint64_t>(restart));
      std::normal_distribution<double> gauss(0.0, config.init_scale);
      for (int k = 0; k < chart.parameter_count; ++k) p(k) = gauss(rng);
    }
    StartOutcome outcome = run_start(problem, p, config);
    // Minimal residual wins; ties resolve to the earlier restart index.
    if (best_restart < 0 || outcome.max_norm < best.max_norm) {
      best = outcome;
      best_restart = restart;
    }
    if (best.converged) break;
  }

  auto [ma, mb] = problem.pair_at(
      best_restart >= 0 && best.params.size() == chart.parameter_count
          ? best.params
          : Eigen::VectorXd::Zero(chart.parameter_count));
  const double element_tol = 1e-6;  // exp drift, not a membership claim
  GroupElement ga = chart.flavor == Flavor::SU31
                        ? GroupElement::su31(ma, element_tol)
                        : GroupElement::sl4(ma, element_tol);
  GroupElement gb = chart.flavor == Flavor::SU31
                        ? GroupElement::su31(mb, element_tol)
                        : GroupElement::sl4(mb, element_tol);
  return FitResult{std::move(ga), std::move(gb), best.max_norm,
                   best.iterations, restarts_used, best.converged, config.seed};
}

}  // namespace tracepair
