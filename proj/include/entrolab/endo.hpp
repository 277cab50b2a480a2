#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "entrolab/fingen.hpp"

namespace entrolab {

// ---------------------------------------------------------------------------
// Endomorphisms
// ---------------------------------------------------------------------------

enum class EndoKind {
  identity,
  shift,     // direct_sum: index translation; poly_heis: (t^k a, t^k b, t^2k c);
             // finitary_ut: entry (i,j) -> (i+k, j+k), k >= 0
  diagonal,  // base-table endomorphism applied pointwise (finite, direct_sum)
  t_scale,   // poly_heis only: (a,b,c) -> (t a, t b, t^2 c)
  inner,     // x -> g^-1 x g
  compose,   // right-to-left composition
  wrapped,   // opaque verified map (restrictions / induced maps)
};

struct Endo;
using EndoPtr = std::shared_ptr<const Endo>;

struct Endo {
  EndoKind kind;
  Family family;  // domain and codomain
  int k = 0;
  std::vector<int16_t> base_map;
  Elem g, g_inv;
  std::vector<EndoPtr> list;
  std::function<Elem(const Elem&)> fn;
  std::string label;
};

std::string endo_name(const EndoPtr& e);

// Every constructor verifies the homomorphism property on >= 10^3 sampled
// pairs (deterministic rng seeded from `seed`); Diagonal is verified by a
// full base-table sweep instead. Failure throws HomomorphismCheckFailed.
EndoPtr make_identity(const Family& fam, uint64_t seed = 0);
EndoPtr make_shift(const Family& fam, int k, uint64_t seed = 0);
EndoPtr make_diagonal(const Family& fam, std::vector<int16_t> base_map,
                      uint64_t seed = 0);
EndoPtr make_t_scale(const Family& fam, uint64_t seed = 0);
EndoPtr make_inner(const Family& fam, const Elem& g, uint64_t seed = 0);
EndoPtr make_compose(const Family& fam, std::vector<EndoPtr> list,
                     uint64_t seed = 0);
EndoPtr make_wrapped(const Family& fam, std::function<Elem(const Elem&)> fn,
                     std::string label, uint64_t seed = 0);

// Call as apply(*phi, x). (No EndoPtr overload: an unqualified call with a
// shared_ptr argument would pull std::apply into overload resolution via ADL,
// which does not survive substitution against non-tuple arguments here.)
Elem apply(const Endo& e, const Elem& x);
ElementSet apply_set(const Endo& e, const ElementSet& a);

// Exact sweep: phi(H) ⊆ H.
bool is_invariant(const EndoPtr& phi, const FiniteSubgroup& h);

// ---------------------------------------------------------------------------
// Subgroup descriptors: possibly infinite phi-invariant subgroups given by a
// membership predicate plus an embedding onto a standalone family, so that
// restricted endomorphisms have a family to live on.
// ---------------------------------------------------------------------------

enum class DescKind {
  whole,           // H = G
  trivial,         // H = {e}
  finite_sub,      // explicit finite subgroup, embedded as a table group
  coordinatewise,  // direct_sum(B): all maps into a subgroup N <= B
  heis_center,     // poly_heis(p): {(0,0,c)}, embedded as direct_sum(Z_p)
};

struct SubgroupDesc;
using DescPtr = std::shared_ptr<const SubgroupDesc>;

struct SubgroupDesc {
  DescKind kind;
  Family ambient;
  Family embedded;

  // finite_sub
  std::shared_ptr<const FiniteSubgroup> fsub;  // ambient-side elements
  std::vector<Elem> order;                     // embedded index -> ambient elem
  std::shared_ptr<const ElementSet> order_index;

  // coordinatewise
  std::vector<int16_t> base_subset;       // ascending base indices forming N
  std::vector<int16_t> base_to_embedded;  // base index -> N index, -1 if out

  bool contains(const Elem& x) const;
  Elem to_embedded(const Elem& x) const;  // pre: contains(x)
  Elem to_ambient(const Elem& y) const;
  std::string name() const;
};

DescPtr desc_whole(const Family& g);
DescPtr desc_trivial(const Family& g);
// Full center: coordinatewise Z(B) on direct_sum, {(0,0,c)} on poly_heis,
// trivial on finitary_ut, exact center on finite.
DescPtr desc_center(const Family& g);
// G[n], the subgroup generated by elements x with x^n = e (finite and
// direct_sum families).
DescPtr desc_torsion(const Family& g, uint64_t n);
DescPtr desc_coordinatewise(const Family& g, std::vector<int> base_indices);
DescPtr desc_finite(const Family& g, FiniteSubgroup sub);
// Z_i of a finite-family group (computed once via the upper central series).
DescPtr desc_upper_central(const Family& g, int i);

// Endo on the embedded family: y -> embed(phi(unembed(y))). Invariance of the
// descriptor under phi is verified (exact for finite_sub, sampled otherwise);
// NotInvariant on failure. Structural cases (shift on coordinatewise, scaling
// on the center, anything on a finite_sub) produce first-class endo kinds.
EndoPtr restrict_endo(const EndoPtr& phi, const DescPtr& h, uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Quotient models: hand-coded G/N presentations with projection and a
// canonical-minimal section.
// ---------------------------------------------------------------------------

enum class QuotKind {
  identity_model,   // N trivial: G/N = G
  collapse,         // N = G: trivial quotient
  finite_table,     // finite G: coset table
  direct_sum_base,  // direct_sum(B)/coordinatewise(N) = direct_sum(B/N)
  heis_center,      // poly_heis(p)/center = direct_sum(Z_p x Z_p), (a,b,c)->(a,b)
};

struct QuotientModel {
  QuotKind kind;
  Family source, target;
  DescPtr kernel;

  // finite_table
  std::shared_ptr<const QuotientTable> qt;

  // direct_sum_base
  std::vector<int16_t> base_coset;  // base index -> coset index
  std::vector<int16_t> coset_rep;   // coset index -> minimal base index

  Elem project(const Elem& x) const;
  // Set-theoretic section: canonical-minimal preimage; lift(identity) = identity.
  Elem lift(const Elem& y) const;
  std::string name() const;
};

// Builds the model for (family, kernel) or throws UnsupportedQuotient.
// Validates on sampled elements: projection is a homomorphism, lift is a
// right inverse of project, and project kills exactly the declared kernel.
QuotientModel make_quotient_model(const Family& g, const DescPtr& kernel,
                                  uint64_t seed = 0);

// Endo on the quotient with psi∘project = project∘phi, verified on >= 10^3
// samples (NotCompatible on failure, including a non-invariant kernel).
EndoPtr induced_endo(const EndoPtr& phi, const QuotientModel& q,
                     uint64_t seed = 0);

}  // namespace entrolab
