#include "tracepair/catalogs.hpp"

#include <algorithm>
#include <set>

namespace tracepair {

namespace {

std::vector<Word> parse_all(std::initializer_list<std::string_view> texts) {
  std::vector<Word> words;
  words.reserve(texts.size());
  for (auto t : texts) words.push_back(Word::parse(t));
  return words;
}

// First table: system of parameters, lengths 1..4 and the two squares of
// length six. The two pure fourth powers are dropped in the 30-word catalog.
const std::vector<Word>& g1_minus_fourth_powers() {
  static const std::vector<Word> words = parse_all({
      "x", "y",
      "xx", "xy", "yy",
      "xxx", "xxy", "xyy", "yyy",
      "xxxy", "xxyy", "xyyy", "xyxy",
      "xxyxxy", "yyxyyx",
  });
  return words;
}

const std::vector<Word>& g2_words() {
  static const std::vector<Word> words = parse_all({
      "xxxyy", "yyyxx",
      "xxyyxy", "yyxxyx",
      "xxxyyxy", "yyyxxyx",
      "xxxyyxxy", "yyyxxyyx", "xxxyyyxy", "yyyxxxyx",
      "xxxyxxyxy", "xxyyxyxxy", "yyxxyxyyx", "yyyxyyxyx",
      "xxxyyyxxyy",
  });
  return words;
}

// The 16 weighted-length rows of the symmetric half.
const std::vector<Word>& symmetric_half() {
  static const std::vector<Word> words = parse_all({
      "x",
      "xx", "xy",
      "X", "xYY",
      "Xy", "xxyy", "xyxy",
      "Xyy",
      "xxyxxy", "xxyyxy",
      "Xyyxy",
      "Xyyxxy", "XYxy",
      "Xyxxyxy", "xxyyxyxxy",
  });
  return words;
}

Catalog build_djokovic() {
  Catalog cat{CatalogName::Sl4Djokovic30, {}};
  cat.entries = g1_minus_fourth_powers();
  const auto& g2 = g2_words();
  cat.entries.insert(cat.entries.end(), g2.begin(), g2.end());
  return cat;
}

Catalog build_symmetric() {
  Catalog cat{CatalogName::Sl4Symmetric30, {}};
  cat.entries = symmetric_half();
  // Append tau images, skipping the ones already present as trace
  // coordinates (tau fixes xy, x^2y^2 and xyxy up to rotation).
  for (const Word& w : symmetric_half()) {
    const Word image = apply_tau(w);
    const bool dup = std::any_of(
        cat.entries.begin(), cat.entries.end(),
        [&image](const Word& e) { return trace_equivalent(e, image); });
    if (!dup) cat.entries.push_back(image);
  }
  cat.entries.push_back(Word::parse("XYxxyy"));
  return cat;
}

Catalog build_su31() {
  Catalog cat{CatalogName::Su31_22, {}};
  cat.entries = parse_all({
      "x", "y",
      "xx", "xy", "yy", "Xy",
      "xyy", "yxx",
      "xxyy", "xyxy", "XYxy",
      "Xyyxy", "Yxxyx",
      "xxyxxy", "yyxyyx", "xxyyxy", "XYxxyy", "yyxxyx", "Xyyxxy", "Yxxyyx",
      "Xyxxyxy", "Yxyyxyx",
  });
  return cat;
}

void require(bool ok, const char* message) {
  if (!ok) throw Error(std::string("catalog validation failed: ") + message);
}

void validate(const Catalog& cat, std::size_t expected) {
  require(cat.entries.size() == expected, "entry count mismatch");
  std::set<std::string> normal_forms;
  for (const Word& w : cat.entries) {
    require(!w.empty(), "empty entry");
    require(w == Word(w.letters()), "entry not freely reduced");
    normal_forms.insert(cyclic_normal_form(w).str());
  }
  require(normal_forms.size() == expected,
          "entries not distinct as trace coordinates");
}

void validate_all(const Catalog& dj, const Catalog& sym, const Catalog& su) {
  validate(dj, 30);
  validate(sym, 30);
  validate(su, 22);
  // The symmetric catalog is tau-stable as a set of trace coordinates.
  for (const Word& w : sym.entries) {
    const Word image = apply_tau(w);
    require(std::any_of(sym.entries.begin(), sym.entries.end(),
                        [&image](const Word& e) {
                          return trace_equivalent(e, image);
                        }),
            "symmetric catalog is not tau-stable");
  }
}

struct Catalogs {
  Catalog djokovic = build_djokovic();
  Catalog symmetric = build_symmetric();
  Catalog su31 = build_su31();
  Catalogs() { validate_all(djokovic, symmetric, su31); }
};

const Catalogs& instance() {
  static const Catalogs cats;
  return cats;
}

}  // namespace

std::string_view catalog_id(CatalogName name) {
  switch (name) {
    case CatalogName::Sl4Djokovic30: return "SL4_DJOKOVIC_30";
    case CatalogName::Sl4Symmetric30: return "SL4_SYMMETRIC_30";
    case CatalogName::Su31_22: return "SU31_22";
  }
  return "";
}

CatalogName catalog_from_id(std::string_view id) {
  if (id == "SL4_DJOKOVIC_30") return CatalogName::Sl4Djokovic30;
  if (id == "SL4_SYMMETRIC_30") return CatalogName::Sl4Symmetric30;
  if (id == "SU31_22") return CatalogName::Su31_22;
  throw ParseError("unknown catalog '" + std::string(id) + "'");
}

const Catalog& catalog(CatalogName name) {
  switch (name) {
    case CatalogName::Sl4Djokovic30: return instance().djokovic;
    case CatalogName::Sl4Symmetric30: return instance().symmetric;
    case CatalogName::Su31_22: return instance().su31;
  }
  return instance().djokovic;
}

const Catalog& sl4_djokovic_30() { return catalog(CatalogName::Sl4Djokovic30); }
const Catalog& sl4_symmetric_30() { return catalog(CatalogName::Sl4Symmetric30); }
const Catalog& su31_22() { return catalog(CatalogName::Su31_22); }

std::span<const Word> independent_parameter_words() {
  return {sl4_djokovic_30().entries.data(), 15};
}

std::span<const SigmaPair> su31_sigma_pairs() {
  // (x, x^2), (y, y^2), (xy, (xy)^2), (x^2y, (x^2y)^2), (y^2x, (y^2x)^2);
  // tr(x^2 y) is stored as tr(y x^2) and tr(y^2 x) as tr(x y^2).
  static const SigmaPair pairs[5] = {{0, 2}, {1, 4}, {3, 9}, {7, 13}, {6, 14}};
  return pairs;
}

std::span<const Word> eliminated_words() {
  static const std::vector<Word> words =
      parse_all({"X", "Y", "Xyy", "Yxx", "Yx", "YXyx"});
  return words;
}

}  // namespace tracepair
