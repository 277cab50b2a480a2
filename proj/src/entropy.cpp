#include "entrolab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entrolab/errors.hpp"
#include "entrolab/parallel.hpp"

namespace entrolab {

TrajectoryTable trajectory(const Family& fam, const EndoPtr& phi,
                           const std::vector<Elem>& f, int n_max,
                           uint64_t product_budget) {
  if (!(phi->family == fam))
    fail(ErrorCode::family_mismatch, "endo family differs from trajectory family");
  if (n_max < 1) fail(ErrorCode::schema_error, "n_max must be >= 1");

  TrajectoryTable out;
  ElementSet t;
  for (const Elem& e : f) t.insert(e);
  // the seed must be a finite subgroup: the step below walks left cosets of
  // the factor sets phi^j(F), which are subgroups exactly when F is one
  if (!is_subgroup(fam, t))
    fail(ErrorCode::invalid_table, "trajectory seed must be a finite subgroup");
  if (t.size() > product_budget) {
    out.truncated = true;
    return out;
  }
  out.sizes.push_back(t.size());

  std::vector<Elem> factors = f;
  std::vector<Elem> buf;
  for (int step = 1; step < n_max; ++step) {
    for (Elem& a : factors) a = apply(*phi, a);  // now A = phi^step(F)
    // T_{step+1} = T_step * A = union of the left cosets tA, t in T_step.
    // A row t already present in the output lies in an earlier coset, so its
    // whole coset is already there and the row is skipped; each element of
    // T_{step+1} is therefore produced exactly once. Per-coset products are
    // computed in parallel and inserted in (row, column) order, which keeps
    // the enumeration identical to the sequential loop.
    ElementSet next;
    next.reserve(t.size() * 2);
    bool over = false;
    for (size_t r = 0; r < t.size() && !over; ++r) {
      const Elem& row = t[r];
      if (next.contains(row)) continue;
      par::map_indexed(factors.size(), buf,
                       [&](size_t i) { return mul(fam, row, factors[i]); });
      for (Elem& e : buf) {
        next.insert(std::move(e));
        if (next.size() > product_budget) {
          over = true;
          break;
        }
      }
    }
    if (over) {
      out.truncated = true;
      break;
    }
    out.sizes.push_back(next.size());
    t = std::move(next);
  }
  return out;
}

EntropyEstimate h_estimate(const TrajectoryTable& table, int window) {
  if (window < 1) fail(ErrorCode::schema_error, "window must be >= 1");
  const auto& s = table.sizes;
  if (s.size() < static_cast<size_t>(window) + 1 && !table.truncated)
    fail(ErrorCode::table_too_short,
         "need at least window+1 trajectory sizes, have " +
             std::to_string(s.size()));
  EntropyEstimate est;
  est.truncated = table.truncated;
  if (s.size() < static_cast<size_t>(window) + 1) {
    // the budget cut the table before a stabilization window fit: report an
    // open interval instead of claiming anything
    est.prefix_inf = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < s.size(); ++i) {
      if (i > 0)
        est.increments.push_back(std::log(static_cast<double>(s[i])) -
                                 std::log(static_cast<double>(s[i - 1])));
      est.prefix_inf = std::min(
          est.prefix_inf, std::log(static_cast<double>(s[i])) / double(i + 1));
    }
    est.h_lower = est.increments.empty() ? 0.0 : est.increments.back();
    est.h_upper = est.prefix_inf;
    return est;
  }
  est.prefix_inf = std::log(static_cast<double>(s[0]));
  for (size_t i = 0; i + 1 < s.size(); ++i) {
    est.increments.push_back(std::log(static_cast<double>(s[i + 1])) -
                             std::log(static_cast<double>(s[i])));
    est.prefix_inf =
        std::min(est.prefix_inf,
                 std::log(static_cast<double>(s[i + 1])) / double(i + 2));
  }
  // exact integer ratio over the trailing window
  bool stable = true;
  uint64_t alpha = 0;
  for (size_t i = s.size() - window; i < s.size() && stable; ++i) {
    if (s[i] % s[i - 1] != 0) {
      stable = false;
      break;
    }
    uint64_t r = s[i] / s[i - 1];
    if (alpha == 0) alpha = r;
    stable = r == alpha;
  }
  // a genuinely eventually-constant ratio satisfies log(alpha) <= every
  // prefix ratio; a transient match that violates this cannot persist
  if (stable && std::log(static_cast<double>(alpha)) > est.prefix_inf + 1e-9)
    stable = false;
  if (stable) {
    est.stabilized_ratio = alpha;
    est.h_lower = est.h_upper = std::log(static_cast<double>(alpha));
  } else {
    est.h_lower = est.increments.empty() ? 0.0 : est.increments.back();
    est.h_upper = est.prefix_inf;
  }
  return est;
}

LadderResult h_ladder(const Family& fam, const EndoPtr& phi,
                      const std::vector<LadderRung>& rungs, int n_max,
                      int window, uint64_t product_budget) {
  if (rungs.empty()) fail(ErrorCode::schema_error, "ladder needs >= 1 rung");
  LadderResult out;
  out.monotone = true;
  out.all_stabilized = true;
  out.alphas_nondecreasing = true;
  for (size_t i = 0; i < rungs.size(); ++i) {
    if (i > 0) {
      ElementSet upper;
      for (const Elem& e : rungs[i].elems) upper.insert(e);
      for (const Elem& e : rungs[i - 1].elems)
        if (!upper.contains(e))
          fail(ErrorCode::not_contained,
               "ladder rungs are not nested: '" + rungs[i - 1].label +
                   "' is not inside '" + rungs[i].label + "'");
    }
    out.labels.push_back(rungs[i].label);
    out.tables.push_back(
        trajectory(fam, phi, rungs[i].elems, n_max, product_budget));
    out.estimates.push_back(h_estimate(out.tables.back(), window));

    const TrajectoryTable& tb = out.tables.back();
    const EntropyEstimate& est = out.estimates.back();
    if (i > 0) {
      const auto& prev = out.tables[i - 1].sizes;
      for (size_t n = 0; n < prev.size() && n < tb.sizes.size(); ++n)
        if (tb.sizes[n] < prev[n]) out.monotone = false;
    }
    out.any_truncated = out.any_truncated || tb.truncated;
    out.all_stabilized = out.all_stabilized && est.stabilized();
    if (i > 0 && out.estimates[i - 1].stabilized() && est.stabilized() &&
        *est.stabilized_ratio < *out.estimates[i - 1].stabilized_ratio)
      out.alphas_nondecreasing = false;
    if (est.stabilized())
      out.sup_alpha = std::max(out.sup_alpha.value_or(0), *est.stabilized_ratio);
    out.sup_lower = std::max(out.sup_lower, est.h_lower);
    out.sup_upper = std::max(out.sup_upper, est.h_upper);
  }
  return out;
}

}  // namespace entrolab
