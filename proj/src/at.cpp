#include "entrolab/at.hpp"

#include <algorithm>
#include <cmath>

#include "entrolab/errors.hpp"

namespace entrolab {

namespace {

// exact centrality test for a single element, per family
bool is_central_elem(const Family& fam, const Elem& x) {
  switch (fam.kind) {
    case FamilyKind::finite: {
      const BaseTable& b = *fam.base;
      for (int g = 0; g < b.order; ++g)
        if (b.at(x.data[0], g) != b.at(g, x.data[0])) return false;
      return true;
    }
    case FamilyKind::direct_sum: {
      const BaseTable& b = *fam.base;
      for (size_t i = 1; i < x.data.size(); i += 2)
        for (int w = 0; w < b.order; ++w)
          if (b.at(x.data[i], w) != b.at(w, x.data[i])) return false;
      return true;
    }
    case FamilyKind::poly_heis:
      return x.data[0] == 0 && x.data[1] == 0;
    case FamilyKind::finitary_ut:
      return x.data.empty();
  }
  return false;
}

void require_central(const Family& fam, const DescPtr& n) {
  switch (n->kind) {
    case DescKind::trivial:
    case DescKind::heis_center:
      return;
    case DescKind::whole:
      if (!fam.is_abelian())
        fail(ErrorCode::not_central, "whole group is not abelian");
      return;
    case DescKind::coordinatewise: {
      const BaseTable& b = *fam.base;
      for (int16_t v : n->base_subset)
        for (int w = 0; w < b.order; ++w)
          if (b.at(v, w) != b.at(w, v))
            fail(ErrorCode::not_central,
                 "base subgroup is not central in the base table");
      return;
    }
    case DescKind::finite_sub:
      for (const Elem& z : n->order)
        if (!is_central_elem(fam, z))
          fail(ErrorCode::not_central, "subgroup element is not central");
      return;
  }
}

// does every element of `a` lie in `b`? exact where enumerable, sampled else
bool desc_subset_of(const DescPtr& a, const DescPtr& b, uint64_t seed) {
  if (a->kind == DescKind::trivial) return true;
  if (b->kind == DescKind::whole) return true;
  if (a->kind == DescKind::finite_sub) {
    for (const Elem& x : a->order)
      if (!b->contains(x)) return false;
    return true;
  }
  if (a->kind == DescKind::coordinatewise &&
      b->kind == DescKind::coordinatewise) {
    for (int16_t v : a->base_subset)
      if (b->base_to_embedded[v] < 0) return false;
    return true;
  }
  std::mt19937_64 rng(0x9E3779B97F4A7C15ull ^ seed ^ 0x77ull);
  for (int i = 0; i < 1000; ++i)
    if (!b->contains(a->to_ambient(random_elem(a->embedded, rng))))
      return false;
  return true;
}

}  // namespace

const char* verdict_name(ATVerdict v) {
  switch (v) {
    case ATVerdict::exact_equality: return "exact_equality";
    case ATVerdict::bounds_consistent: return "bounds_consistent";
    case ATVerdict::violation: return "violation";
    case ATVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

ATReport check_AT(const Family& fam, const EndoPtr& phi, const DescPtr& h,
                  const std::vector<LadderRung>& g_rungs, int n_max,
                  int window, uint64_t product_budget, uint64_t seed) {
  ATReport rep;
  EndoPtr phi_h = restrict_endo(phi, h, seed);
  QuotientModel q = make_quotient_model(fam, h, seed);
  EndoPtr psi = induced_endo(phi, q, seed);
  rep.restricted_name = endo_name(phi_h);
  rep.induced_name = endo_name(psi);

  std::vector<LadderRung> h_rungs, q_rungs;
  for (const LadderRung& rung : g_rungs) {
    LadderRung hr{rung.label, {}}, qr{rung.label, {}};
    ElementSet hseen, qseen;
    for (const Elem& x : rung.elems) {
      if (h->contains(x)) {
        Elem e = h->to_embedded(x);
        if (hseen.insert(e)) hr.elems.push_back(std::move(e));
      }
      Elem p = q.project(x);
      if (qseen.insert(p)) qr.elems.push_back(std::move(p));
    }
    h_rungs.push_back(std::move(hr));
    q_rungs.push_back(std::move(qr));
  }

  rep.g = h_ladder(fam, phi, g_rungs, n_max, window, product_budget);
  rep.h = h_ladder(h->embedded, phi_h, h_rungs, n_max, window, product_budget);
  rep.q = h_ladder(q.target, psi, q_rungs, n_max, window, product_budget);
  rep.alpha_g = rep.g.sup_alpha;
  rep.alpha_h = rep.h.sup_alpha;
  rep.alpha_q = rep.q.sup_alpha;

  if (rep.g.any_truncated || rep.h.any_truncated || rep.q.any_truncated) {
    rep.verdict = ATVerdict::inconclusive;
  } else if (rep.g.all_stabilized && rep.h.all_stabilized &&
             rep.q.all_stabilized) {
    rep.verdict = (*rep.alpha_g == *rep.alpha_h * *rep.alpha_q)
                      ? ATVerdict::exact_equality
                      : ATVerdict::violation;
  } else if (!rep.alpha_g || !rep.alpha_h || !rep.alpha_q) {
    rep.verdict = ATVerdict::inconclusive;
  } else {
    double lhs_lo = rep.g.sup_lower, lhs_hi = rep.g.sup_upper;
    double rhs_lo = rep.h.sup_lower + rep.q.sup_lower;
    double rhs_hi = rep.h.sup_upper + rep.q.sup_upper;
    bool overlap = lhs_lo <= rhs_hi + 1e-9 && rhs_lo <= lhs_hi + 1e-9;
    rep.verdict =
        overlap ? ATVerdict::bounds_consistent : ATVerdict::violation;
  }
  return rep;
}

DaggerCertificate check_dagger(const Family& fam, const EndoPtr& phi,
                               const DescPtr& kernel,
                               const std::vector<Elem>& f, int n_max,
                               bool trace_eta, uint64_t product_budget,
                               uint64_t closure_budget, uint64_t seed) {
  require_central(fam, kernel);
  QuotientModel q = make_quotient_model(fam, kernel, seed);
  EndoPtr psi = induced_endo(phi, q, seed);
  EndoPtr phi_n = restrict_endo(phi, kernel, seed);

  DaggerCertificate cert;
  cert.kernel_name = kernel->name();
  cert.section_fixes_identity =
      q.lift(identity_elem(q.target)) == identity_elem(fam);
  if (!cert.section_fixes_identity)
    fail(ErrorCode::invalid_table, "section does not fix the identity");

  ElementSet qset;
  for (const Elem& x : f) qset.insert(q.project(x));
  std::vector<Elem> qitems = qset.items();
  cert.q_order = qset.size();

  TrajectoryTable t_full = trajectory(fam, phi, f, n_max, product_budget);
  TrajectoryTable t_quot =
      trajectory(q.target, psi, qitems, n_max, product_budget);

  std::vector<Elem> f_cap_n;
  for (const Elem& x : f)
    if (kernel->contains(x)) f_cap_n.push_back(kernel->to_embedded(x));

  ElementSet u_amb;  // accumulated factor defects, in the ambient group
  u_amb.insert(identity_elem(fam));
  std::vector<Elem> factors = f;          // phi^{n-1}(F) at row n
  std::vector<Elem> qfactors = qitems;    // psi^{n-1}(Q) at row n
  std::vector<Elem> lgens;                // union of the psi^j(Q), j < n
  ElementSet lgen_seen;

  ElementSet tset;  // the actual T_n, only maintained when tracing
  if (trace_eta)
    for (const Elem& x : f) tset.insert(x);

  cert.holds = true;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) {
      for (Elem& a : factors) a = apply(*phi, a);
      for (Elem& a : qfactors) a = apply(*psi, a);
      if (trace_eta) {
        if (tset.size() * factors.size() > 1u << 22)
          fail(ErrorCode::schema_error,
               "eta trace is limited to small trajectories");
        std::vector<Elem> rows = tset.items();
        for (const Elem& t : rows)
          for (const Elem& a : factors) tset.insert(mul(fam, t, a));
      }
    }
    for (const Elem& a : factors) {
      // u(a) = a * s(pi(a))^-1, the defect of a against the section
      Elem u = mul(fam, a, inverse(fam, q.lift(q.project(a))));
      if (!kernel->contains(u))
        fail(ErrorCode::not_central, "factor defect left the kernel");
      u_amb.insert(std::move(u));
    }
    for (const Elem& y : qfactors)
      if (lgen_seen.insert(y)) lgens.push_back(y);

    FiniteSubgroup l = from_generators(q.target, lgens, closure_budget);

    // section defects over L_n
    std::vector<Elem> s_of(l.order()), sinv_of(l.order());
    for (size_t i = 0; i < l.order(); ++i) {
      s_of[i] = q.lift(l.elements[i]);
      sinv_of[i] = inverse(fam, s_of[i]);
    }
    ElementSet c_set;
    for (size_t i = 0; i < l.order(); ++i)
      for (size_t j = 0; j < l.order(); ++j) {
        Elem xy = mul(q.target, l.elements[i], l.elements[j]);
        ptrdiff_t k = l.elements.index_of(xy);
        if (k < 0)
          fail(ErrorCode::invalid_table, "generated subgroup is not closed");
        Elem c = mul(fam, mul(fam, s_of[i], s_of[j]), sinv_of[k]);
        if (!kernel->contains(c))
          fail(ErrorCode::not_central, "section defect left the kernel");
        c_set.insert(std::move(c));
      }

    std::vector<Elem> kgens = f_cap_n;
    if (kgens.empty()) kgens.push_back(identity_elem(kernel->embedded));
    for (const Elem& c : c_set) kgens.push_back(kernel->to_embedded(c));
    for (const Elem& u : u_amb) kgens.push_back(kernel->to_embedded(u));
    FiniteSubgroup k_n = from_generators(kernel->embedded, kgens, closure_budget);

    TrajectoryTable t_k =
        trajectory(kernel->embedded, phi_n, k_n.elements.items(), n,
                   product_budget);

    if (t_full.sizes.size() < static_cast<size_t>(n) ||
        t_quot.sizes.size() < static_cast<size_t>(n) ||
        t_k.sizes.size() < static_cast<size_t>(n)) {
      cert.truncated = true;
      break;
    }

    DaggerRow row;
    row.n = n;
    row.l_size = l.order();
    row.c_size = c_set.size();
    row.u_size = u_amb.size();
    row.k_size = k_n.order();
    row.t_full = t_full.sizes[n - 1];
    row.t_quotient = t_quot.sizes[n - 1];
    row.t_kernel = t_k.sizes[n - 1];
    if (row.t_quotient != 0 &&
        row.t_kernel > UINT64_MAX / row.t_quotient) {
      row.holds = true;
      row.slack = INT64_MAX;
    } else {
      uint64_t rhs = row.t_quotient * row.t_kernel;
      row.holds = rhs >= row.t_full;
      row.slack = rhs > static_cast<uint64_t>(INT64_MAX)
                      ? INT64_MAX
                      : static_cast<int64_t>(rhs) -
                            static_cast<int64_t>(row.t_full);
    }
    cert.holds = cert.holds && row.holds;
    cert.rows.push_back(row);

    if (trace_eta) {
      std::vector<std::pair<Elem, Elem>> tr;
      tr.reserve(tset.size());
      for (const Elem& t : tset) {
        Elem eta = mul(fam, t, inverse(fam, q.lift(q.project(t))));
        if (!kernel->contains(eta))
          fail(ErrorCode::not_central, "trajectory defect left the kernel");
        tr.emplace_back(t, std::move(eta));
      }
      cert.eta.push_back(std::move(tr));
    }
  }
  return cert;
}

bool check_fekete(const TrajectoryTable& table) {
  const auto& s = table.sizes;
  for (size_t n = 1; n <= s.size(); ++n)
    for (size_t m = 1; n + m <= s.size(); ++m)
      if (s[n + m - 1] > s[n - 1] * s[m - 1]) return false;
  return true;
}

uint64_t check_dichotomy(const EntropyEstimate& est) {
  if (!est.stabilized())
    fail(ErrorCode::not_stabilized,
         "growth ratio did not settle inside the window");
  return *est.stabilized_ratio;
}

ChainReport check_chain(const Family& fam, const EndoPtr& phi,
                        const std::vector<ChainTerm>& terms,
                        const std::vector<LadderRung>& full_rungs, int n_max,
                        int window, uint64_t product_budget, uint64_t seed) {
  if (terms.empty()) fail(ErrorCode::schema_error, "chain needs >= 1 term");
  ChainReport rep;
  rep.ascending = true;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && !desc_subset_of(terms[i - 1].desc, terms[i].desc, seed))
      rep.ascending = false;
    EndoPtr r = restrict_endo(phi, terms[i].desc, seed);
    rep.term_names.push_back(terms[i].name);
    rep.term_ladders.push_back(h_ladder(terms[i].desc->embedded, r,
                                        terms[i].rungs, n_max, window,
                                        product_budget));
    rep.term_alphas.push_back(rep.term_ladders.back().sup_alpha);
    rep.truncated = rep.truncated || rep.term_ladders.back().any_truncated;
  }
  rep.full = h_ladder(fam, phi, full_rungs, n_max, window, product_budget);
  rep.truncated = rep.truncated || rep.full.any_truncated;

  rep.alphas_nondecreasing = true;
  for (size_t i = 0; i < rep.term_alphas.size(); ++i) {
    if (!rep.term_alphas[i]) {
      rep.alphas_nondecreasing = false;
      break;
    }
    if (i > 0 && *rep.term_alphas[i] < *rep.term_alphas[i - 1])
      rep.alphas_nondecreasing = false;
    rep.sup_alpha =
        std::max(rep.sup_alpha.value_or(0), *rep.term_alphas[i]);
  }
  rep.sup_matches_full = rep.sup_alpha && rep.full.sup_alpha &&
                         *rep.sup_alpha == *rep.full.sup_alpha;
  return rep;
}

}  // namespace entrolab
