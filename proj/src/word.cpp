#include "tracepair/word.hpp"

#include <algorithm>

namespace tracepair {

std::optional<Letter> letter_from_char(char c) {
  switch (c) {
    case 'x': return Letter::X;
    case 'y': return Letter::Y;
    case 'X': return Letter::Xinv;
    case 'Y': return Letter::Yinv;
    default: return std::nullopt;
  }
}

Word::Word(std::span<const Letter> letters) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (!letters_.empty() && letters_.back() == inverse(l)) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> seq;
  seq.reserve(text.size());
  for (char c : text) {
    auto l = letter_from_char(c);
    if (!l) {
      throw ParseError("invalid word character '" + std::string(1, c) +
                       "' (expected one of x, y, X, Y)");
    }
    seq.push_back(*l);
  }
  return Word(seq);
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(to_char(l));
  return s;
}

Word reduce(std::span<const Letter> letters) { return Word(letters); }

Word concat(const Word& lhs, const Word& rhs) {
  std::vector<Letter> seq = lhs.letters();
  seq.insert(seq.end(), rhs.letters().begin(), rhs.letters().end());
  return Word(seq);
}

Word invert(const Word& w) {
  std::vector<Letter> seq;
  seq.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    seq.push_back(inverse(*it));
  }
  return Word(seq);
}

Word apply_tau(const Word& w) {
  std::vector<Letter> seq;
  seq.reserve(w.size());
  for (Letter l : w.letters()) {
    switch (l) {
      case Letter::X: seq.push_back(Letter::Y); break;
      case Letter::Y: seq.push_back(Letter::X); break;
      case Letter::Xinv: seq.push_back(Letter::Yinv); break;
      case Letter::Yinv: seq.push_back(Letter::Xinv); break;
    }
  }
  return Word(seq);
}

Word apply_iota(const Word& w) {
  std::vector<Letter> seq;
  seq.reserve(w.size());
  for (Letter l : w.letters()) seq.push_back(inverse(l));
  return Word(seq);
}

Word reversed(const Word& w) {
  std::vector<Letter> seq(w.letters().rbegin(), w.letters().rend());
  return Word(seq);
}

int weighted_length(const Word& w) {
  int total = 0;
  for (Letter l : w.letters()) total += is_inverse_letter(l) ? 3 : 1;
  return total;
}

Word cyclic_reduce(const Word& w) {
  std::vector<Letter> seq = w.letters();
  while (seq.size() >= 2 && seq.front() == inverse(seq.back())) {
    seq.erase(seq.begin());
    seq.pop_back();
  }
  return Word(seq);
}

Word cyclic_normal_form(const Word& w) {
  Word c = cyclic_reduce(w);
  if (c.size() <= 1) return c;
  std::vector<Letter> best = c.letters();
  std::vector<Letter> rot = c.letters();
  for (std::size_t i = 1; i < c.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return Word(best);
}

bool trace_equivalent(const Word& a, const Word& b) {
  return cyclic_normal_form(a) == cyclic_normal_form(b);
}

namespace {

// Operator 1-norm condition estimate; cheap and adequate for 4x4.
double cond1(const Matrix4c& m, const Matrix4c& m_inv) {
  const double nm = m.cwiseAbs().colwise().sum().maxCoeff();
  const double ni = m_inv.cwiseAbs().colwise().sum().maxCoeff();
  return nm * ni;
}

Matrix4c checked_inverse(const Matrix4c& m, double condition_limit,
                         const char* which) {
  Matrix4c inv = m.inverse();
  if (!inv.allFinite() || cond1(m, inv) > condition_limit) {
    throw SingularMatrix(std::string("matrix for generator ") + which +
                         " is numerically singular");
  }
  return inv;
}

}  // namespace

PairContext::PairContext(Matrix4c a, Matrix4c b, double condition_limit)
    : a_(std::move(a)), b_(std::move(b)), condition_limit_(condition_limit) {}

const Matrix4c& PairContext::factor(Letter l) const {
  switch (l) {
    case Letter::X: return a_;
    case Letter::Y: return b_;
    case Letter::Xinv:
      if (!a_inv_) a_inv_ = checked_inverse(a_, condition_limit_, "x");
      return *a_inv_;
    case Letter::Yinv:
      if (!b_inv_) b_inv_ = checked_inverse(b_, condition_limit_, "y");
      return *b_inv_;
  }
  return a_;  // unreachable
}

Matrix4c evaluate(const Word& w, const PairContext& ctx) {
  Matrix4c m = Matrix4c::Identity();
  for (Letter l : w.letters()) m = m * ctx.factor(l);
  return m;
}

Matrix4c evaluate(const Word& w, const Matrix4c& a, const Matrix4c& b) {
  return evaluate(w, PairContext(a, b));
}

Complex trace_word(const Word& w, const PairContext& ctx) {
  return evaluate(w, ctx).trace();
}

}  // namespace tracepair
