#pragma once

#include <cstdint>
#include <vector>

#include "entrolab/element_set.hpp"

namespace entrolab {

constexpr uint64_t kDefaultClosureBudget = 10'000'000;
constexpr uint64_t kDefaultProductBudget = 10'000'000;

// Subgroup generated by gens: breadth-first closure under multiplication by
// generators and their inverses. Throws ClosureBudgetExceeded when the
// closure would grow past the budget. Identity is always element 0.
FiniteSubgroup from_generators(const Family& fam, std::vector<Elem> gens,
                               uint64_t budget = kDefaultClosureBudget);

// Pointwise product set {a*b : a in A, b in B}, enumerated in (a,b) index
// order. Throws ProductBudgetExceeded when the result would exceed budget.
ElementSet set_product(const Family& fam, const ElementSet& a,
                       const ElementSet& b,
                       uint64_t budget = kDefaultProductBudget);

bool is_subgroup(const Family& fam, const ElementSet& s);

// Precondition: h's elements are contained in g (throws NotContained).
bool is_normal_in(const Family& fam, const FiniteSubgroup& h,
                  const FiniteSubgroup& g);

// Finite quotient G/N presented as a Cayley table over canonical coset
// representatives. reps[0] is the identity; every rep is the canonical-least
// element of its coset; coset_of[i] gives the coset of g.elements[i].
struct QuotientTable {
  TablePtr table;
  std::vector<Elem> reps;
  std::vector<int32_t> coset_of;
};

QuotientTable quotient_table(const Family& fam, const FiniteSubgroup& g,
                             const FiniteSubgroup& n);

// Re-presents a small subgroup (order <= 256) as a standalone Cayley table.
// order[i] is the element at table index i, sorted canonically, identity
// first.
struct SubgroupTable {
  TablePtr table;
  std::vector<Elem> order;
};

SubgroupTable subgroup_table(const Family& fam, const FiniteSubgroup& sub);

// Canonical exhaustion ladder rungs.
//   finite       whole group, any radius
//   direct_sum   all maps supported on coordinates [0, r]
//   poly_heis    a, b supported on exponents [0, r]; c on [0, 2r]
//                (closed under the product: conv([0,r],[0,r]) lies in [0,2r])
//   finitary_ut  the (r x r) upper unitriangular corner
FiniteSubgroup ball(const Family& fam, int radius,
                    uint64_t budget = kDefaultClosureBudget);

// Whole group for the finite family (errors on the infinite families).
FiniteSubgroup whole_group(const Family& fam);

FiniteSubgroup trivial_subgroup(const Family& fam);

}  // namespace entrolab
