#include "tracepair/coordinates.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace tracepair {

namespace testhooks {
bool flip_recover_xy2_sign = false;
}  // namespace testhooks

namespace {

void check_flavor(CatalogName cat, const GroupElement& a,
                  const GroupElement& b) {
  if (cat == CatalogName::Su31_22 && !(a.in_su31() && b.in_su31())) {
    throw FlavorMismatch("catalog SU31_22 requires both elements in SU(3,1)");
  }
}

void check_su31(const GroupElement& a, const GroupElement& b,
                const char* what) {
  if (!(a.in_su31() && b.in_su31())) {
    throw FlavorMismatch(std::string(what) + " requires SU(3,1) inputs");
  }
}

}  // namespace

TraceVector compute(CatalogName name, const GroupElement& a,
                    const GroupElement& b) {
  check_flavor(name, a, b);
  const Catalog& cat = catalog(name);
  PairContext ctx(a.matrix(), b.matrix());
  TraceVector out{name, Eigen::VectorXcd(cat.size())};
  for (std::size_t i = 0; i < cat.size(); ++i) {
    out.values(static_cast<Eigen::Index>(i)) = trace_word(cat.entries[i], ctx);
  }
  return out;
}

double max_distance(const TraceVector& lhs, const TraceVector& rhs) {
  if (lhs.catalog != rhs.catalog || lhs.values.size() != rhs.values.size()) {
    throw Error("trace vectors come from different catalogs");
  }
  return (lhs.values - rhs.values).cwiseAbs().maxCoeff();
}

RealCoordinateVector real_coords(const TraceVector& traces) {
  if (traces.catalog != CatalogName::Su31_22) {
    throw FlavorMismatch("real coordinates are defined for SU31_22 vectors");
  }
  const Catalog& cat = su31_22();
  std::array<bool, 22> drop_imag{};
  for (const SigmaPair& p : su31_sigma_pairs()) drop_imag[p.square_index] = true;

  RealCoordinateVector out;
  out.slots.reserve(39);
  std::vector<double> vals;
  vals.reserve(39);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    const std::string w = cat.entries[i].str();
    const Complex z = traces.values(static_cast<Eigen::Index>(i));
    out.slots.push_back("Re(" + w + ")");
    vals.push_back(z.real());
    if (!drop_imag[i]) {
      out.slots.push_back("Im(" + w + ")");
      vals.push_back(z.imag());
    }
  }
  out.values = Eigen::Map<Eigen::VectorXd>(vals.data(),
                                           static_cast<Eigen::Index>(vals.size()));
  return out;
}

RealCoordinateVector real_coords(const GroupElement& a, const GroupElement& b) {
  check_su31(a, b, "real_coords");
  return real_coords(compute(CatalogName::Su31_22, a, b));
}

Complex recover_tr_x_inverse(Complex t1, Complex t2, Complex t3) {
  return (t3 + t1 * t1 * t1 / 2.0 - 1.5 * t1 * t2) / 3.0;
}

double verify_sublemma(const Word& u, const Word& v, const Matrix4c& a,
                       const Matrix4c& b) {
  PairContext ctx(a, b);
  const Word x = Word::parse("x");
  auto tr = [&ctx](const Word& w) { return trace_word(w, ctx); };
  auto middle = [&](const Word& mid) { return tr(concat(concat(u, mid), v)); };

  const Complex tx = tr(x);
  const Complex sx = sigma(a);
  const Complex tx_inv = trace_word(Word::parse("X"), ctx);
  const Complex lhs = -middle(Word::parse("X"));
  const Complex rhs = middle(Word::parse("xxx")) - tx * middle(Word::parse("xx")) +
                      sx * middle(x) - tx_inv * tr(concat(u, v));
  return std::abs(lhs - rhs);
}

Complex recover_tr_xy2(const GroupElement& a, const GroupElement& b) {
  PairContext ctx(a.matrix(), b.matrix());
  auto tr = [&ctx](std::string_view w) { return trace_word(Word::parse(w), ctx); };
  const Complex last = tr("xYY");
  const Complex signed_last = testhooks::flip_recover_xy2_sign ? last : -last;
  return tr("y") * tr("xy") - sigma(b.matrix()) * tr("x") +
         tr("Y") * tr("xY") + signed_last;
}

Complex recover_long_word(const GroupElement& a, const GroupElement& b) {
  check_su31(a, b, "recover_long_word");
  PairContext ctx(a.matrix(), b.matrix());
  auto tr = [&ctx](std::string_view w) { return trace_word(Word::parse(w), ctx); };
  const Complex tv = tr("yyx");          // tr(v), v = y^2 x
  const Complex tv2 = tr("yyxyyx");      // tr(v^2)
  const Complex tuv = tr("yyxxyx");      // tr(u v) up to rotation
  const Complex tu = tr("xxy");          // tr(u), u = x y x
  const Complex sigma_v = (tv * tv - tv2) / 2.0;
  return tv * tuv - sigma_v * tu + std::conj(tv) * tr("xY") -
         std::conj(tr("Xyyxy"));
}

std::array<double, 6> verify_eliminated_traces(const GroupElement& a,
                                               const GroupElement& b) {
  PairContext ctx(a.matrix(), b.matrix());
  std::array<double, 6> out{};
  int i = 0;
  for (const Word& w : eliminated_words()) {
    const Complex t = trace_word(w, ctx);
    const Complex t_inv = trace_word(invert(w), ctx);
    out[i++] = std::abs(t_inv - std::conj(t));
  }
  return out;
}

namespace {

Eigen::VectorXcd word_traces(std::span<const Word> words, const Matrix4c& a,
                             const Matrix4c& b) {
  PairContext ctx(a, b);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(words.size()));
  for (std::size_t i = 0; i < words.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = trace_word(words[i], ctx);
  }
  return out;
}

int count_above_threshold(const Eigen::VectorXd& singulars) {
  const double top = singulars.size() ? singulars(0) : 0.0;
  const double cutoff = tol::rank_relative * std::max(1.0, top);
  int rank = 0;
  for (Eigen::Index i = 0; i < singulars.size(); ++i) {
    if (singulars(i) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace

int jacobian_rank(const GroupElement& a, const GroupElement& b,
                  std::span<const Word> words, Flavor chart, double step) {
  if (!(step > 0.0)) throw Error("finite-difference step must be positive");
  const Eigen::Index m = static_cast<Eigen::Index>(words.size());

  auto perturbed = [&](int generator, const Matrix4c& direction, double t) {
    const Matrix4c p = (t * direction).exp();
    const Matrix4c pa = generator == 0 ? Matrix4c(a.matrix() * p) : a.matrix();
    const Matrix4c pb = generator == 1 ? Matrix4c(b.matrix() * p) : b.matrix();
    return word_traces(words, pa, pb);
  };

  if (chart == Flavor::SL4) {
    const auto& basis = sl4_algebra_basis();
    Eigen::MatrixXcd jac(m, 30);
    int col = 0;
    for (int generator = 0; generator < 2; ++generator) {
      for (const Matrix4c& dir : basis) {
        jac.col(col++) = (perturbed(generator, dir, step) -
                          perturbed(generator, dir, -step)) /
                         (2.0 * step);
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac);
    return count_above_threshold(svd.singularValues());
  }

  const auto& basis = su31_algebra_basis();
  Eigen::MatrixXd jac(2 * m, 30);
  int col = 0;
  for (int generator = 0; generator < 2; ++generator) {
    for (const Matrix4c& dir : basis) {
      const Eigen::VectorXcd d = (perturbed(generator, dir, step) -
                                  perturbed(generator, dir, -step)) /
                                 (2.0 * step);
      jac.col(col).head(m) = d.real();
      jac.col(col).tail(m) = d.imag();
      ++col;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  return count_above_threshold(svd.singularValues());
}

int jacobian_rank(const GroupElement& a, const GroupElement& b,
                  CatalogName cat, double step) {
  check_flavor(cat, a, b);
  const Flavor chart =
      cat == CatalogName::Su31_22 ? Flavor::SU31 : Flavor::SL4;
  return jacobian_rank(a, b, catalog(cat).entries, chart, step);
}

}  // namespace tracepair
