#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "tracepair/matrix_core.hpp"
#include "tracepair/word.hpp"

namespace tracepair {

enum class CatalogName { Sl4Djokovic30, Sl4Symmetric30, Su31_22 };

// Normative identifiers used in the JSON file format and on the CLI.
std::string_view catalog_id(CatalogName name);
CatalogName catalog_from_id(std::string_view id);

struct Catalog {
  CatalogName name;
  std::vector<Word> entries;  // frozen table order

  // SU31_22 evaluates only on SU(3,1) pairs; the SL4 catalogs accept any
  // determinant-1 pair (SU(3,1) included).
  Flavor required_flavor() const {
    return name == CatalogName::Su31_22 ? Flavor::SU31 : Flavor::SL4;
  }
  std::size_t size() const { return entries.size(); }
};

// The stored lists are validated once on first access: entry counts, free
// reduction, pairwise distinctness up to cyclic equivalence, and the
// construction of the symmetric catalog from its 16-word half under tau.
const Catalog& catalog(CatalogName name);
const Catalog& sl4_djokovic_30();
const Catalog& sl4_symmetric_30();
const Catalog& su31_22();

// The 15 algebraically independent words (the parameter rows of the first
// table minus the two pure fourth powers); a prefix of SL4_DJOKOVIC_30.
std::span<const Word> independent_parameter_words();

// Indices into SU31_22 of the five (tr w, tr w^2) companion pairs whose
// sigma combination is real on SU(3,1).
struct SigmaPair {
  int word_index;    // tr(w) slot
  int square_index;  // tr(w^2) slot
};
std::span<const SigmaPair> su31_sigma_pairs();

// The six inverse-letter words eliminated from the symmetric catalog because
// tr(w) is the conjugate of the trace of an inverse-free partner.
std::span<const Word> eliminated_words();

}  // namespace tracepair
