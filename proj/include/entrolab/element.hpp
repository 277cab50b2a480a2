#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "entrolab/base_table.hpp"

namespace entrolab {

// The four locally finite group families every element belongs to.
enum class FamilyKind : uint8_t { finite, direct_sum, poly_heis, finitary_ut };

const char* family_kind_name(FamilyKind k);

// Group family descriptor. Elements only carry their payload plus a kind tag;
// all arithmetic needs the family as context.
//
//   finite        one fixed Cayley-table group
//   direct_sum    finitely supported maps Z -> base group, coordinatewise op
//   poly_heis     Heisenberg triples (a,b,c) of Laurent polynomials over F_p,
//                 (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b')
//   finitary_ut   I + M with M strictly upper triangular over F_p, finitely
//                 many nonzero entries (rows/cols indexed from 1)
struct Family {
  FamilyKind kind;
  TablePtr base;  // finite, direct_sum
  int p = 0;      // poly_heis, finitary_ut

  bool is_abelian() const;
  std::string name() const;
  bool operator==(const Family& other) const;
};

Family finite_family(BaseTable table);
Family direct_sum_family(BaseTable base);
Family poly_heis_family(int p);
Family finitary_ut_family(int p);

// A group element in canonical encoding. Canonical means: supports sorted,
// no identity/zero values stored, so equality of elements is exactly equality
// of encodings. Payload layout per kind:
//
//   finite        { index }
//   direct_sum    { i0,v0, i1,v1, ... }            i ascending, v in 1..ord-1
//   poly_heis     { na,nb,nc, a pairs, b pairs, c pairs }   (exp,coeff) pairs
//   finitary_ut   { r0,c0,v0, ... }                (r,c) ascending, 1 <= r < c
struct Elem {
  FamilyKind kind{FamilyKind::finite};
  std::vector<int16_t> data;

  bool operator==(const Elem& other) const = default;
};

struct ElemHash {
  size_t operator()(const Elem& e) const { return hash64(e); }
  static uint64_t hash64(const Elem& e);
};

// Deterministic total order used wherever a canonical representative is
// needed (coset representatives, deterministic reports). Shorter encodings
// first, then lexicographic. The identity is the global minimum.
bool canonical_less(const Elem& a, const Elem& b);

Elem identity_elem(const Family& fam);
bool is_identity(const Family& fam, const Elem& x);

Elem mul(const Family& fam, const Elem& x, const Elem& y);
Elem inverse(const Family& fam, const Elem& x);
Elem pow(const Family& fam, const Elem& x, long long k);

constexpr uint64_t kDefaultOrderCap = 1'000'000;
uint64_t element_order(const Family& fam, const Elem& x,
                       uint64_t cap = kDefaultOrderCap);

// Constructors that canonicalize and validate their input.
Elem finite_elem(const Family& fam, int index);
// pairs (index, base value); must not repeat indices; zero values are dropped (identity coordinate)
Elem direct_sum_elem(const Family& fam,
                     std::vector<std::pair<int, int>> support);
Elem poly_heis_elem(const Family& fam, std::vector<std::pair<int, int>> a,
                    std::vector<std::pair<int, int>> b,
                    std::vector<std::pair<int, int>> c);
// entries (row, col, value), 1 <= row < col
Elem finitary_ut_elem(const Family& fam,
                      std::vector<std::array<int, 3>> entries);

// Uniform-ish random element with small support; deterministic given the RNG
// state. Used by the sampled verification passes.
Elem random_elem(const Family& fam, std::mt19937_64& rng);

}  // namespace entrolab
