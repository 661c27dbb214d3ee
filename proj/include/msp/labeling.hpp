#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msp/algorithms.hpp"
#include "msp/arrivals.hpp"
#include "msp/matroid.hpp"

namespace msp {

// Post-hoc labeling of improving traces. Labels are assigned per improving
// time to the members of OPT(E_t+); the word records the arriving element's
// label, visiting improving times in decreasing order.
struct LabelScheme {
  enum class Kind { induced, chain, lambda0, lambda1 };
  Kind kind = Kind::induced;
  ValueOrder order;     // induced only
  ElementId estar = -1;  // chain / lambda0 / lambda1
  // Labels not pinned by the scheme go by ascending element id; flipping the
  // tiebreak must not change language membership.
  bool reverse_tiebreak = false;

  static LabelScheme induced(ValueOrder pi);
  static LabelScheme induced_estar_first(const MatroidInstance& m, ElementId estar);
  static LabelScheme chain(ElementId estar);
  static LabelScheme lambda0(ElementId estar);
  static LabelScheme lambda1(ElementId estar);
};

// Chain order with respect to e*: e* first, then elements sorted by the
// inclusion order of their membership pattern in the chain induced by e*,
// ties broken by element id.
ValueOrder chain_order(const MatroidInstance& m, ElementId estar);

using Word = std::vector<int>;  // symbols over [r]

Word improving_word(const ImprovingTrace& trace, const LabelScheme& scheme, double a, double b);

std::string word_to_string(const Word& w, int r);

struct Language {
  enum class Kind { uniform, laminar, basic, generation, forbidden };
  Kind kind = Kind::uniform;
  int r = 0;  // required by uniform / laminar
  int q = 0;  // forbidden only

  static Language uniform(int r) { return {Kind::uniform, r, 0}; }
  static Language laminar(int r) { return {Kind::laminar, r, 0}; }
  static Language basic() { return {Kind::basic, 0, 0}; }
  static Language generation() { return {Kind::generation, 0, 0}; }
  static Language forbidden(int q) { return {Kind::forbidden, 0, q}; }
};

bool in_language(const Word& w, const Language& lang);

enum class Pairing { uniform, laminar, basic, generation };

struct ImplicationStats {
  long trials = 0;
  long word_in_lang = 0;
  long selected = 0;
  long violations = 0;           // z in L but e* not selected
  long converse_violations = 0;  // uniform pairing only: e* selected, z not in L
};

// Paired trials: the same arrivals feed the algorithm and the word
// extraction. The (algorithm, scheme, language, augmentation) tuple is fixed
// per pairing; incompatible instances are rejected.
ImplicationStats verify_implication(const MatroidInstance& base, Pairing pairing,
                                    ElementId estar, double p, long trials,
                                    std::uint64_t seed);

}  // namespace msp
