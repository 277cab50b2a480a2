#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "entrolab/errors.hpp"
#include "entrolab/series.hpp"

using namespace entrolab;

namespace {

// Independent upper-central oracle working directly on the Cayley table:
// Z_0 = 1, Z_{i+1} = { x : [x,g] in Z_i for every g }. No library series
// code involved; commutators are computed with raw table lookups.
std::vector<std::set<int>> oracle_upper_central(const BaseTable& t) {
  auto comm = [&](int x, int g) {
    // x^-1 g^-1 x g
    return t.at(t.at(t.at(t.inv[x], t.inv[g]), x), g);
  };
  std::vector<std::set<int>> terms;
  std::set<int> z = {0};
  terms.push_back(z);
  for (;;) {
    std::set<int> next;
    for (int x = 0; x < t.order; ++x) {
      bool in = true;
      for (int g = 0; g < t.order && in; ++g) in = z.count(comm(x, g)) > 0;
      if (in) next.insert(x);
    }
    if (next == z) break;
    terms.push_back(next);
    z = std::move(next);
  }
  return terms;
}

// Lower-central oracle: gamma_1 = G, gamma_{i+1} = <[gamma_i, G]> with the
// subgroup closure done by plain BFS over table indices.
std::vector<std::set<int>> oracle_lower_central(const BaseTable& t) {
  auto comm = [&](int x, int g) {
    return t.at(t.at(t.at(t.inv[x], t.inv[g]), x), g);
  };
  auto close = [&](std::set<int> gens) {
    std::set<int> sub = {0};
    std::vector<int> frontier = {0};
    gens.insert(0);
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int a : frontier)
        for (int g : gens)
          for (int b : {t.at(a, g), t.at(a, t.inv[g])})
            if (sub.insert(b).second) next.push_back(b);
      frontier = std::move(next);
    }
    return sub;
  };
  std::set<int> whole;
  for (int i = 0; i < t.order; ++i) whole.insert(i);
  std::vector<std::set<int>> terms = {whole};
  std::set<int> cur = whole;
  for (;;) {
    std::set<int> gens;
    for (int x : cur)
      for (int g = 0; g < t.order; ++g) gens.insert(comm(x, g));
    std::set<int> next = close(gens);
    if (next == cur) break;
    terms.push_back(next);
    cur = std::move(next);
  }
  return terms;
}

std::set<int> indices_of(const FiniteSubgroup& sub) {
  std::set<int> out;
  for (const Elem& e : sub.elements) out.insert(e.data.empty() ? 0 : e.data[0]);
  return out;
}

void check_series_matches(const BaseTable& t,
                          const std::vector<std::set<int>>& oracle,
                          const SeriesReport& rep) {
  REQUIRE(rep.terms.size() == oracle.size());
  for (size_t i = 0; i < oracle.size(); ++i) {
    CHECK(indices_of(rep.terms[i]) == oracle[i]);
    CHECK(rep.orders[i] == oracle[i].size());
  }
}

}  // namespace

TEST_CASE("upper central series matches the centralizer-chain oracle") {
  struct Case {
    BaseTable table;
    std::vector<uint64_t> orders;
    int cls;
  };
  std::vector<Case> cases;
  cases.push_back({ut3_f2_table(), {1, 2, 8}, 2});
  cases.push_back({ut4_f2_table(), {1, 2, 8, 64}, 3});
  cases.push_back(
      {direct_product_table(cyclic_table(2), cyclic_table(4)), {1, 8}, 1});
  cases.push_back({symmetric3_table(), {1}, -1});
  for (const Case& c : cases) {
    Family fam = finite_family(c.table);
    SeriesReport rep = upper_central_series(fam, whole_group(fam));
    CHECK(rep.orders == c.orders);
    CHECK(rep.series_class == c.cls);
    check_series_matches(c.table, oracle_upper_central(c.table), rep);
  }
}

TEST_CASE("lower central series matches the commutator-closure oracle") {
  for (const BaseTable& t : {ut3_f2_table(), ut4_f2_table(),
                             symmetric3_table()}) {
    Family fam = finite_family(t);
    SeriesReport rep = lower_central_series(fam, whole_group(fam));
    check_series_matches(t, oracle_lower_central(t), rep);
  }
  // classes agree between the two central series on nilpotent groups
  Family ut4 = finite_family(ut4_f2_table());
  CHECK(lower_central_series(ut4, whole_group(ut4)).series_class ==
        upper_central_series(ut4, whole_group(ut4)).series_class);
  Family s3 = finite_family(symmetric3_table());
  SeriesReport low = lower_central_series(s3, whole_group(s3));
  CHECK(low.series_class == -1);
  CHECK(low.class_label() == "not nilpotent");
  CHECK(low.orders == std::vector<uint64_t>{6, 3});  // stalls at A3
}

TEST_CASE("derived series") {
  Family s3 = finite_family(symmetric3_table());
  SeriesReport rep = derived_series(s3, whole_group(s3));
  CHECK(rep.orders == std::vector<uint64_t>{6, 3, 1});
  CHECK(rep.series_class == 2);  // solvable of derived length 2
  Family ut4 = finite_family(ut4_f2_table());
  SeriesReport rep2 = derived_series(ut4, whole_group(ut4));
  CHECK(rep2.orders == std::vector<uint64_t>{64, 8, 1});
  CHECK(rep2.series_class == 2);
}

TEST_CASE("center") {
  Family ut3 = finite_family(ut3_f2_table());
  FiniteSubgroup z = center(ut3, whole_group(ut3));
  CHECK(z.order() == 2);
  CHECK(z.contains(finite_elem(ut3, 4)));
  Family s3 = finite_family(symmetric3_table());
  CHECK(center(s3, whole_group(s3)).order() == 1);
  Family ab = finite_family(direct_product_table(cyclic_table(2), cyclic_table(4)));
  CHECK(center(ab, whole_group(ab)).order() == 8);
}

TEST_CASE("commutator subgroup") {
  Family ut4 = finite_family(ut4_f2_table());
  FiniteSubgroup g = whole_group(ut4);
  FiniteSubgroup derived = commutator_subgroup(ut4, g, g);
  CHECK(derived.order() == 8);
  CHECK(is_normal_in(ut4, derived, g));
  Family ab = finite_family(cyclic_table(12));
  FiniteSubgroup dab =
      commutator_subgroup(ab, whole_group(ab), whole_group(ab));
  CHECK(dab.order() == 1);
}

TEST_CASE("n-torsion subgroups match the direct order sweep") {
  // abelian: G[n] = { x : x^n = 1 } has exactly gcd(n, 12) elements in Z12
  Family z12 = finite_family(cyclic_table(12));
  FiniteSubgroup g = whole_group(z12);
  for (uint64_t n = 1; n <= 12; ++n) {
    FiniteSubgroup tor = n_torsion_subgroup(z12, g, n);
    uint64_t expect = std::gcd(n, uint64_t{12});
    CHECK(tor.order() == expect);
    for (const Elem& e : tor.elements)
      CHECK(is_identity(z12, pow(z12, e, static_cast<long long>(n))));
  }
  // Z2 x Z4: the 2-torsion is the Klein subgroup of order 4
  Family z2z4 =
      finite_family(direct_product_table(cyclic_table(2), cyclic_table(4)));
  CHECK(n_torsion_subgroup(z2z4, whole_group(z2z4), 2).order() == 4);
  CHECK(n_torsion_subgroup(z2z4, whole_group(z2z4), 4).order() == 8);
  // non-abelian: in S3 the squares of all elements land in A3, and the
  // 2-torsion elements (transpositions + identity) generate the whole group
  Family s3 = finite_family(symmetric3_table());
  CHECK(n_torsion_subgroup(s3, whole_group(s3), 2).order() == 6);
  CHECK(n_torsion_subgroup(s3, whole_group(s3), 3).order() == 3);
}
