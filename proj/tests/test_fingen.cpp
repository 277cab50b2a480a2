#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "entrolab/errors.hpp"
#include "entrolab/fingen.hpp"

using namespace entrolab;

TEST_CASE("closure of the coordinate-0 generators recovers the full copy") {
  Family fam = direct_sum_family(ut3_f2_table());
  // E12 and E23 generate UT3(F2); plant them at coordinate 0
  FiniteSubgroup sub = from_generators(
      fam, {direct_sum_elem(fam, {{0, 1}}), direct_sum_elem(fam, {{0, 2}})});
  CHECK(sub.order() == 8);
  // independent enumeration: exactly the eight coordinate-0 maps
  std::set<Elem, decltype(&canonical_less)> expect(&canonical_less);
  expect.insert(identity_elem(fam));
  for (int v = 1; v < 8; ++v) expect.insert(direct_sum_elem(fam, {{0, v}}));
  for (const Elem& e : sub.elements) CHECK(expect.count(e) == 1);
  CHECK(sub.order() == expect.size());
  CHECK(is_subgroup(fam, sub.elements));
  CHECK(sub.contains(direct_sum_elem(fam, {{0, 4}})));
  CHECK(!sub.contains(direct_sum_elem(fam, {{1, 1}})));
}

TEST_CASE("closure respects its budget") {
  Family fam = direct_sum_family(cyclic_table(2));
  std::vector<Elem> gens;
  for (int i = 0; i < 20; ++i) gens.push_back(direct_sum_elem(fam, {{i, 1}}));
  CHECK_THROWS_AS(from_generators(fam, gens, 1000), Error);
  try {
    from_generators(fam, gens, 1000);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::closure_budget_exceeded);
  }
}

TEST_CASE("support balls") {
  Family z2 = direct_sum_family(cyclic_table(2));
  for (int r = 0; r < 5; ++r)
    CHECK(ball(z2, r).order() == (1u << (r + 1)));

  Family heis = poly_heis_family(2);
  // a, b on [0,r]; c on [0,2r]
  CHECK(ball(heis, 0).order() == 8);
  CHECK(ball(heis, 1).order() == 128);
  CHECK(is_subgroup(heis, ball(heis, 1).elements));

  Family fin = finitary_ut_family(2);
  CHECK(ball(fin, 1).order() == 1);  // 1x1 corner is trivial
  CHECK(ball(fin, 3).order() == 8);
  CHECK(ball(fin, 4).order() == 64);
  CHECK(is_subgroup(fin, ball(fin, 4).elements));

  Family tab = finite_family(symmetric3_table());
  CHECK(ball(tab, 0).order() == 6);  // finite family: whole group at any radius
}

TEST_CASE("set products") {
  Family fam = direct_sum_family(cyclic_table(6));
  ElementSet a = ball(fam, 0).elements;                 // 6 elements at coord 0
  ElementSet b;
  b.insert(identity_elem(fam));
  b.insert(direct_sum_elem(fam, {{1, 2}}));
  ElementSet ab = set_product(fam, a, b);
  CHECK(ab.size() == 12);
  // associativity of the set product
  ElementSet c;
  c.insert(identity_elem(fam));
  c.insert(direct_sum_elem(fam, {{2, 3}}));
  ElementSet left = set_product(fam, set_product(fam, a, b), c);
  ElementSet right = set_product(fam, a, set_product(fam, b, c));
  CHECK(left.size() == right.size());
  for (const Elem& e : left) CHECK(right.contains(e));
  CHECK_THROWS_AS(set_product(fam, a, b, 5), Error);
}

TEST_CASE("is_subgroup rejects non-closed and identity-free sets") {
  Family fam = direct_sum_family(cyclic_table(4));
  ElementSet no_id;
  no_id.insert(direct_sum_elem(fam, {{0, 2}}));
  CHECK(!is_subgroup(fam, no_id));
  ElementSet not_closed;
  not_closed.insert(identity_elem(fam));
  not_closed.insert(direct_sum_elem(fam, {{0, 1}}));  // misses {0:2}, {0:3}
  CHECK(!is_subgroup(fam, not_closed));
  ElementSet closed;
  closed.insert(identity_elem(fam));
  closed.insert(direct_sum_elem(fam, {{0, 2}}));
  CHECK(is_subgroup(fam, closed));
}

TEST_CASE("normality") {
  Family s3 = finite_family(symmetric3_table());
  FiniteSubgroup g = whole_group(s3);
  // A3 is normal; the subgroup generated by a transposition is not
  std::vector<Elem> a3;
  for (int i = 0; i < 6; ++i)
    if (finite_family(symmetric3_table()).base->elem_order(i) != 2)
      a3.push_back(finite_elem(s3, i));
  FiniteSubgroup alt = from_generators(s3, a3);
  CHECK(alt.order() == 3);
  CHECK(is_normal_in(s3, alt, g));
  int transposition = -1;
  for (int i = 1; i < 6; ++i)
    if (s3.base->elem_order(i) == 2) {
      transposition = i;
      break;
    }
  FiniteSubgroup two = from_generators(s3, {finite_elem(s3, transposition)});
  CHECK(two.order() == 2);
  CHECK(!is_normal_in(s3, two, g));
  // containment precondition
  Family z2 = finite_family(cyclic_table(2));
  CHECK_THROWS_AS(is_normal_in(s3, whole_group(s3), alt), Error);
}

TEST_CASE("quotient tables") {
  // UT3(F2) / center is the Klein four-group
  Family ut3 = finite_family(ut3_f2_table());
  FiniteSubgroup g = whole_group(ut3);
  FiniteSubgroup z = from_generators(ut3, {finite_elem(ut3, 4)});  // {I, E13}
  CHECK(z.order() == 2);
  QuotientTable q = quotient_table(ut3, g, z);
  CHECK(q.table->order == 4);
  CHECK(q.table->abelian);
  CHECK(q.table->exponent() == 2);
  // reps: identity first, one canonical representative per coset
  CHECK(q.reps.size() == 4);
  CHECK(is_identity(ut3, q.reps[0]));
  // coset_of partitions the 8 elements into 4 cosets of size 2
  std::vector<int> sizes(4, 0);
  for (int32_t c : q.coset_of) sizes[c]++;
  for (int s : sizes) CHECK(s == 2);
  // Lagrange on every (G, N) pair here
  CHECK(g.order() == z.order() * q.table->order);

  // Z4 / {0,2} is Z2
  Family z4 = finite_family(cyclic_table(4));
  FiniteSubgroup n = from_generators(z4, {finite_elem(z4, 2)});
  QuotientTable q2 = quotient_table(z4, whole_group(z4), n);
  CHECK(q2.table->order == 2);
  CHECK(q2.table->elem_order(1) == 2);
}

TEST_CASE("subgroup re-presentation as a standalone table") {
  Family fam = direct_sum_family(ut3_f2_table());
  FiniteSubgroup sub = from_generators(
      fam, {direct_sum_elem(fam, {{0, 4}}), direct_sum_elem(fam, {{3, 4}})});
  CHECK(sub.order() == 4);
  SubgroupTable st = subgroup_table(fam, sub);
  CHECK(st.table->order == 4);
  CHECK(st.table->abelian);
  CHECK(is_identity(fam, st.order[0]));
  CHECK(std::is_sorted(st.order.begin(), st.order.end(), canonical_less));
  // the table really is the multiplication of the listed elements
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(mul(fam, st.order[a], st.order[b]) == st.order[st.table->at(a, b)]);
}

TEST_CASE("whole_group is finite-family only") {
  CHECK(whole_group(finite_family(ut4_f2_table())).order() == 64);
  CHECK_THROWS_AS(whole_group(direct_sum_family(cyclic_table(2))), Error);
  CHECK_THROWS_AS(whole_group(poly_heis_family(2)), Error);
  Family fam = poly_heis_family(5);
  FiniteSubgroup t = trivial_subgroup(fam);
  CHECK(t.order() == 1);
  CHECK(is_identity(fam, t.elements[0]));
}
