#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "tracepair/matrix_core.hpp"
#include "tracepair/word.hpp"

namespace tracepair::testing {

// Naive triple-loop product, independent of Eigen's expression kernels.
inline Matrix4c naive_multiply(const Matrix4c& a, const Matrix4c& b) {
  Matrix4c out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

// Left-fold word evaluation against explicit inverse matrices; written
// separately from the library evaluator on purpose.
inline Matrix4c naive_evaluate(const Word& w, const Matrix4c& a,
                               const Matrix4c& b) {
  const Matrix4c a_inv = a.inverse();
  const Matrix4c b_inv = b.inverse();
  Matrix4c m = Matrix4c::Identity();
  for (Letter l : w.letters()) {
    switch (l) {
      case Letter::X: m = naive_multiply(m, a); break;
      case Letter::Y: m = naive_multiply(m, b); break;
      case Letter::Xinv: m = naive_multiply(m, a_inv); break;
      case Letter::Yinv: m = naive_multiply(m, b_inv); break;
    }
  }
  return m;
}

// Determinant by Laplace expansion along the first row.
inline Complex naive_det(const Matrix4c& m) {
  auto det3 = [&m](int r0, int r1, int r2, int c0, int c1, int c2) {
    return m(r0, c0) * (m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1)) -
           m(r0, c1) * (m(r1, c0) * m(r2, c2) - m(r1, c2) * m(r2, c0)) +
           m(r0, c2) * (m(r1, c0) * m(r2, c1) - m(r1, c1) * m(r2, c0));
  };
  return m(0, 0) * det3(1, 2, 3, 1, 2, 3) - m(0, 1) * det3(1, 2, 3, 0, 2, 3) +
         m(0, 2) * det3(1, 2, 3, 0, 1, 3) - m(0, 3) * det3(1, 2, 3, 0, 1, 2);
}

// Durand-Kerner iteration on a monic quartic; independent root oracle for
// comparing against eigensolver output.
inline std::array<Complex, 4> quartic_roots(Complex c3, Complex c2, Complex c1,
                                            Complex c0) {
  auto p = [&](Complex x) {
    return ((x + c3) * x + c2) * x * x + c1 * x + c0 -
           c2 * x * x + c2 * x * x;  // keep the compiler honest about order
  };
  auto poly = [&](Complex x) {
    return x * x * x * x + c3 * x * x * x + c2 * x * x + c1 * x + c0;
  };
  (void)p;
  std::array<Complex, 4> r;
  const Complex seed(0.4, 0.9);
  Complex power = 1.0;
  for (int i = 0; i < 4; ++i) {
    power *= seed;
    r[i] = power;
  }
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0.0;
    for (int i = 0; i < 4; ++i) {
      Complex denom = 1.0;
      for (int j = 0; j < 4; ++j) {
        if (j != i) denom *= r[i] - r[j];
      }
      const Complex next = r[i] - poly(r[i]) / denom;
      moved = std::max(moved, std::abs(next - r[i]));
      r[i] = next;
    }
    if (moved < 1e-14) break;
  }
  return r;
}

// Greedy multiset distance between two 4-element complex sets.
inline double multiset_distance(std::vector<Complex> lhs,
                                std::vector<Complex> rhs) {
  double worst = 0.0;
  for (const Complex& a : lhs) {
    double best = 1e300;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      if (std::abs(a - rhs[j]) < best) {
        best = std::abs(a - rhs[j]);
        best_j = j;
      }
    }
    worst = std::max(worst, best);
    if (!rhs.empty()) rhs.erase(rhs.begin() + static_cast<long>(best_j));
  }
  return worst;
}

inline Word random_reduced_word(std::mt19937_64& rng, int length) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(length));
  while (static_cast<int>(letters.size()) < length) {
    const Letter l = static_cast<Letter>(pick(rng));
    if (!letters.empty() && letters.back() == inverse(l)) continue;
    letters.push_back(l);
  }
  return Word(letters);
}

inline Matrix4c diag(Complex a, Complex b, Complex c, Complex d) {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

}  // namespace tracepair::testing
