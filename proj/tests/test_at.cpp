#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "entrolab/at.hpp"
#include "entrolab/errors.hpp"

using namespace entrolab;

namespace {

std::vector<LadderRung> ball_rungs(const Family& fam,
                                   std::vector<int> radii) {
  std::vector<LadderRung> rungs;
  for (int r : radii)
    rungs.push_back({"ball(" + std::to_string(r) + ")",
                     ball(fam, r).elements.items()});
  return rungs;
}

}  // namespace

TEST_CASE("addition identity with the degenerate edges") {
  Family fam = direct_sum_family(cyclic_table(2));
  EndoPtr shift = make_shift(fam, 1);

  // H = G: the quotient collapses, alpha_q = 1
  ATReport whole = check_AT(fam, shift, desc_whole(fam),
                            ball_rungs(fam, {0, 1}), 8);
  CHECK(whole.verdict == ATVerdict::exact_equality);
  REQUIRE(whole.alpha_g.has_value());
  CHECK(*whole.alpha_g == 2);
  CHECK(*whole.alpha_h == 2);
  CHECK(*whole.alpha_q == 1);

  // H = 1: everything lives in the quotient
  ATReport triv = check_AT(fam, shift, desc_trivial(fam),
                           ball_rungs(fam, {0, 1}), 8);
  CHECK(triv.verdict == ATVerdict::exact_equality);
  CHECK(*triv.alpha_h == 1);
  CHECK(*triv.alpha_q == 2);
}

TEST_CASE("addition identity across the center of directsum(UT3)") {
  Family fam = direct_sum_family(ut3_f2_table());
  EndoPtr shift = make_shift(fam, 1);
  ATReport rep = check_AT(fam, shift, desc_center(fam),
                          ball_rungs(fam, {0, 1}), 6);
  CHECK(rep.verdict == ATVerdict::exact_equality);
  CHECK(*rep.alpha_g == 8);
  CHECK(*rep.alpha_h == 2);
  CHECK(*rep.alpha_q == 4);
  CHECK(*rep.alpha_g == *rep.alpha_h * *rep.alpha_q);
  // every rung table in all three ladders is subadditive
  for (const LadderResult* lr : {&rep.g, &rep.h, &rep.q})
    for (const TrajectoryTable& t : lr->tables) CHECK(check_fekete(t));
}

TEST_CASE("budget exhaustion yields inconclusive, never violation") {
  Family fam = direct_sum_family(ut3_f2_table());
  EndoPtr shift = make_shift(fam, 1);
  ATReport rep = check_AT(fam, shift, desc_center(fam),
                          ball_rungs(fam, {0, 1}), 6, 3, /*budget=*/1000);
  CHECK(rep.verdict == ATVerdict::inconclusive);
}

TEST_CASE("factorization certificate rows match an independent replication") {
  // G = directsum(Z4), N = 2-torsion, phi = shift. Everything is abelian and
  // small, so each certificate row can be recomputed from first principles.
  Family fam = direct_sum_family(cyclic_table(4));
  EndoPtr shift = make_shift(fam, 1);
  DescPtr kernel = desc_torsion(fam, 2);
  std::vector<Elem> f = ball(fam, 0).elements.items();
  DaggerCertificate cert = check_dagger(fam, shift, kernel, f, 4);
  CHECK(cert.holds);
  CHECK(cert.verdict() == "holds");
  CHECK(cert.section_fixes_identity);
  CHECK(cert.q_order == 2);
  REQUIRE(cert.rows.size() == 4);
  for (const DaggerRow& row : cert.rows) {
    // independent values: T_n(F) has 4^n elements (full supports on [0,n-1]);
    // the quotient copy is directsum(Z2) so T_n(Q) = 2^n; K_n consists of the
    // 2^n maps [0,n-1] -> {0,2}, and its n-step product set spans [0,2n-2]
    CHECK(row.t_full == (uint64_t{1} << (2 * row.n)));
    CHECK(row.t_quotient == (uint64_t{1} << row.n));
    CHECK(row.k_size == (uint64_t{1} << row.n));
    CHECK(row.t_kernel == (uint64_t{1} << (2 * row.n - 1)));
    CHECK(row.holds);
    CHECK(row.slack ==
          static_cast<int64_t>(row.t_quotient * row.t_kernel - row.t_full));
    CHECK(row.slack >= 0);
  }
  // n = 1 is exact equality: 2 * 2 = 4
  CHECK(cert.rows[0].slack == 0);
}

TEST_CASE("trivial kernel reduces the certificate to exact equality") {
  Family fam = direct_sum_family(cyclic_table(2));
  EndoPtr shift = make_shift(fam, 1);
  DaggerCertificate cert =
      check_dagger(fam, shift, desc_trivial(fam),
                   ball(fam, 0).elements.items(), 5, /*trace_eta=*/true);
  CHECK(cert.holds);
  for (const DaggerRow& row : cert.rows) {
    CHECK(row.t_kernel == 1);
    CHECK(row.t_full == row.t_quotient);
    CHECK(row.slack == 0);
  }
  // the recorded eta defects are all trivial: t and its lifted projection
  // coincide, so eta(t) = t * s(pi(t))^{-1} = identity
  REQUIRE(cert.eta.size() == cert.rows.size());
  for (size_t n = 0; n < cert.eta.size(); ++n) {
    CHECK(cert.eta[n].size() == cert.rows[n].t_full);
    for (const auto& [t, defect] : cert.eta[n])
      CHECK(is_identity(fam, defect));
  }
}

TEST_CASE("certificates require a central kernel") {
  Family fam = direct_sum_family(ut3_f2_table());
  EndoPtr shift = make_shift(fam, 1);
  // the coordinatewise copy over the whole base is normal but not central
  DescPtr whole_coords = desc_coordinatewise(fam, {0, 1, 2, 3, 4, 5, 6, 7});
  CHECK_THROWS_AS(
      check_dagger(fam, shift, whole_coords, ball(fam, 0).elements.items(), 3),
      Error);
  try {
    check_dagger(fam, shift, whole_coords, ball(fam, 0).elements.items(), 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_central);
  }
}

TEST_CASE("torsion chain: rung entropies ascend to the full estimate") {
  Family fam = direct_sum_family(cyclic_table(6));
  EndoPtr shift = make_shift(fam, 1);
  std::vector<ChainTerm> terms;
  {
    ChainTerm t;
    t.name = "G[2]";
    t.desc = desc_torsion(fam, 2);
    t.rungs = ball_rungs(t.desc->embedded, {0, 1});
    terms.push_back(std::move(t));
  }
  {
    ChainTerm t;
    t.name = "G[24]";
    t.desc = desc_torsion(fam, 24);
    t.rungs = ball_rungs(t.desc->embedded, {0, 1});
    terms.push_back(std::move(t));
  }
  ChainReport rep =
      check_chain(fam, shift, terms, ball_rungs(fam, {0, 1}), 7, 3);
  CHECK(rep.ascending);
  CHECK(rep.alphas_nondecreasing);
  REQUIRE(rep.term_alphas[0].has_value());
  REQUIRE(rep.term_alphas[1].has_value());
  CHECK(*rep.term_alphas[0] == 2);
  CHECK(*rep.term_alphas[1] == 6);
  REQUIRE(rep.sup_alpha.has_value());
  CHECK(*rep.sup_alpha == 6);
  CHECK(rep.sup_matches_full);
  CHECK(rep.verdict() == "holds");
}

TEST_CASE("chains flag non-nested terms as a violation") {
  Family fam = direct_sum_family(cyclic_table(6));
  EndoPtr shift = make_shift(fam, 1);
  std::vector<ChainTerm> terms;
  {
    ChainTerm t;
    t.name = "G[2]";
    t.desc = desc_torsion(fam, 2);  // {0,3} per coordinate
    t.rungs = ball_rungs(t.desc->embedded, {0});
    terms.push_back(std::move(t));
  }
  {
    ChainTerm t;
    t.name = "G[3]";
    t.desc = desc_torsion(fam, 3);  // {0,2,4}: does not contain G[2]
    t.rungs = ball_rungs(t.desc->embedded, {0});
    terms.push_back(std::move(t));
  }
  ChainReport rep =
      check_chain(fam, shift, terms, ball_rungs(fam, {0}), 6, 3);
  CHECK(!rep.ascending);
  REQUIRE(rep.term_alphas.size() == 2);
  CHECK(*rep.term_alphas[0] == 2);
  CHECK(*rep.term_alphas[1] == 3);
  CHECK(rep.alphas_nondecreasing);
  // the full group grows by 6 per step, the broken chain only witnesses 3
  CHECK(!rep.sup_matches_full);
  CHECK(rep.verdict() == std::string("violation"));
}
