#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entrolab/endo.hpp"
#include "entrolab/element_set.hpp"
#include "entrolab/fingen.hpp"

namespace entrolab {

inline constexpr int kDefaultWindow = 3;

// Sizes of the partial trajectories T_n = F * phi(F) * ... * phi^{n-1}(F).
// sizes[i] = |T_{i+1}|, so sizes[0] = |F|. When the running set would exceed
// the product budget the computation stops after the last completed step and
// `truncated` is set; sizes never contains a partial step.
struct TrajectoryTable {
  std::vector<uint64_t> sizes;
  bool truncated = false;

  int steps() const { return static_cast<int>(sizes.size()); }
};

// Build the trajectory table for n = 1..n_max. `f` must contain the identity
// (any finite subgroup does), which makes the trajectories nested and lets the
// set grow in place. The multiplication waves are computed in parallel but
// inserted in sequential (row, column) order, so the result and the insertion
// order of the underlying set are independent of the worker count.
TrajectoryTable trajectory(const Family& fam, const EndoPtr& phi,
                           const std::vector<Elem>& f, int n_max,
                           uint64_t product_budget = kDefaultProductBudget);

// Growth analysis of one trajectory table.
//   increments[i] = log(sizes[i+1]/sizes[i])      (one fewer than sizes)
//   prefix_inf    = min_n log(sizes[n-1]) / n     (upper estimate, by
//                   subadditivity the true limit is <= every prefix ratio)
//   stabilized_ratio = alpha when the last `window` consecutive ratios are
//                   the same exact integer and log(alpha) <= prefix_inf;
//                   then h_lower = h_upper = log(alpha)
// Without stabilization the interval is [last increment, prefix_inf].
struct EntropyEstimate {
  std::vector<double> increments;
  double prefix_inf = 0.0;
  std::optional<uint64_t> stabilized_ratio;
  double h_lower = 0.0;
  double h_upper = 0.0;
  bool truncated = false;

  bool stabilized() const { return stabilized_ratio.has_value(); }
};

// Requires sizes.size() >= window + 1 (throws TableTooShort otherwise).
EntropyEstimate h_estimate(const TrajectoryTable& table,
                           int window = kDefaultWindow);

// Entropy along an ascending ladder of finite subgroups F_0 <= F_1 <= ...
// The supremum over the ladder is the entropy estimate for the endomorphism
// itself when the ladder exhausts (enough of) the group.
struct LadderResult {
  std::vector<std::string> labels;
  std::vector<TrajectoryTable> tables;
  std::vector<EntropyEstimate> estimates;
  std::optional<uint64_t> sup_alpha;  // max stabilized ratio over the rungs
  double sup_lower = 0.0;             // max h_lower
  double sup_upper = 0.0;             // max h_upper over the rungs
  bool all_stabilized = false;
  bool any_truncated = false;
  bool monotone = false;  // sizes grow pointwise up the ladder
  // stabilized ratios never drop from one rung to the next
  bool alphas_nondecreasing = false;
};

struct LadderRung {
  std::string label;
  std::vector<Elem> elems;
};

// Checks that consecutive rungs are nested as sets and that the trajectory
// sizes are pointwise monotone up the ladder, then aggregates the estimates.
LadderResult h_ladder(const Family& fam, const EndoPtr& phi,
                      const std::vector<LadderRung>& rungs, int n_max,
                      int window = kDefaultWindow,
                      uint64_t product_budget = kDefaultProductBudget);

}  // namespace entrolab
