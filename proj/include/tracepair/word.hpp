#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracepair/types.hpp"

namespace tracepair {

// Letters of the free group F_2 = <x, y>. ASCII serialization uses
// x, y for the generators and X, Y for their inverses.
enum class Letter : std::uint8_t { X = 0, Y = 1, Xinv = 2, Yinv = 3 };

constexpr Letter inverse(Letter l) {
  switch (l) {
    case Letter::X: return Letter::Xinv;
    case Letter::Y: return Letter::Yinv;
    case Letter::Xinv: return Letter::X;
    case Letter::Yinv: return Letter::Y;
  }
  return Letter::X;  // unreachable
}

constexpr bool is_inverse_letter(Letter l) {
  return l == Letter::Xinv || l == Letter::Yinv;
}

constexpr char to_char(Letter l) {
  switch (l) {
    case Letter::X: return 'x';
    case Letter::Y: return 'y';
    case Letter::Xinv: return 'X';
    case Letter::Yinv: return 'Y';
  }
  return '?';
}

std::optional<Letter> letter_from_char(char c);

// A freely reduced word in F_2. Every constructor reduces, so no adjacent
// mutually-inverse letters survive construction.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> letters);

  // Parses the ASCII form ("Xyyxy" = x^-1 y^2 x y); any character outside
  // {x, y, X, Y} raises ParseError.
  static Word parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Free reduction of an arbitrary letter sequence; idempotent.
Word reduce(std::span<const Letter> letters);

Word concat(const Word& lhs, const Word& rhs);

// Group inverse: reversed sequence with every letter inverted.
Word invert(const Word& w);

// The outer automorphism swapping x and y.
Word apply_tau(const Word& w);

// The outer automorphism x -> x^-1, y -> y^-1 (letterwise inversion).
Word apply_iota(const Word& w);

// Letter sequence reversed without inverting; invert(w) == apply_iota(reversed(w)).
Word reversed(const Word& w);

// Plain letters weigh 1, inverse letters weigh 3.
int weighted_length(const Word& w);

// Removes matching inverse letters from the two ends until none remain.
// Not applied automatically: catalogs fix specific representatives.
Word cyclic_reduce(const Word& w);

// Least rotation of the cyclic reduction; words share a normal form exactly
// when their traces agree identically on all pairs.
Word cyclic_normal_form(const Word& w);

bool trace_equivalent(const Word& a, const Word& b);

// Evaluation context for one (A, B) pair. Inverses are computed once on
// first use and cached; a numerically singular matrix raises SingularMatrix.
class PairContext {
 public:
  PairContext(Matrix4c a, Matrix4c b, double condition_limit = 1e12);

  const Matrix4c& factor(Letter l) const;
  const Matrix4c& a() const { return a_; }
  const Matrix4c& b() const { return b_; }

 private:
  Matrix4c a_, b_;
  mutable std::optional<Matrix4c> a_inv_, b_inv_;
  double condition_limit_;
};

// Substitutes A for x, B for y (and cached inverses for X, Y) and multiplies
// left to right; the empty word evaluates to the identity.
Matrix4c evaluate(const Word& w, const PairContext& ctx);
Matrix4c evaluate(const Word& w, const Matrix4c& a, const Matrix4c& b);

Complex trace_word(const Word& w, const PairContext& ctx);

}  // namespace tracepair
