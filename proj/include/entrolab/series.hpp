#pragma once

#include <string>
#include <vector>

#include "entrolab/fingen.hpp"

namespace entrolab {

// z in K commuting with every element of K.
FiniteSubgroup center(const Family& fam, const FiniteSubgroup& k);

// Subgroup generated by all commutators [a,b] = a^-1 b^-1 a b, a in A, b in B.
FiniteSubgroup commutator_subgroup(const Family& fam, const FiniteSubgroup& a,
                                   const FiniteSubgroup& b,
                                   uint64_t budget = kDefaultClosureBudget);

enum class SeriesKind { lower_central, upper_central, derived };

const char* series_kind_name(SeriesKind k);

// terms holds the distinct series terms in definition order:
//   lower_central: G = γ_1 ⊇ γ_2 ⊇ ... (ends at trivial iff nilpotent)
//   upper_central: 1 = Z_0 ⊆ Z_1 ⊆ ... (ends at K iff nilpotent)
//   derived:       K = K^(0) ⊇ K^(1) ⊇ ... (ends at trivial iff solvable)
// series_class is the nilpotency class / derived length, or -1 when the
// series stabilizes early ("not nilpotent" / "not solvable").
struct SeriesReport {
  SeriesKind kind;
  std::vector<FiniteSubgroup> terms;
  std::vector<uint64_t> orders;
  int series_class = -1;

  bool degenerate() const { return series_class < 0; }
  std::string class_label() const;
};

SeriesReport lower_central_series(const Family& fam, const FiniteSubgroup& k,
                                  uint64_t budget = kDefaultClosureBudget);
SeriesReport derived_series(const Family& fam, const FiniteSubgroup& k,
                            uint64_t budget = kDefaultClosureBudget);
SeriesReport upper_central_series(const Family& fam, const FiniteSubgroup& k,
                                  uint64_t budget = kDefaultClosureBudget);

// Subgroup generated by every x in K with x^n = identity.
FiniteSubgroup n_torsion_subgroup(const Family& fam, const FiniteSubgroup& k,
                                  uint64_t n,
                                  uint64_t budget = kDefaultClosureBudget);

}  // namespace entrolab
