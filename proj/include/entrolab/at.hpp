#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entrolab/endo.hpp"
#include "entrolab/entropy.hpp"

namespace entrolab {

// Additivity check along an invariant subgroup H: compare the growth of
// (G, phi) with the growth of (H, phi|H) and (G/H, induced phi).
enum class ATVerdict {
  exact_equality,     // all ladders stabilized, alpha_G = alpha_H * alpha_Q
  bounds_consistent,  // intervals for h(phi) and h(phi|H) + h(quotient) overlap
  violation,          // stabilized values (or disjoint intervals) contradict
  inconclusive,       // a budget cut the data, or nothing stabilized
};
const char* verdict_name(ATVerdict v);

struct ATReport {
  ATVerdict verdict = ATVerdict::inconclusive;
  std::optional<uint64_t> alpha_g, alpha_h, alpha_q;
  LadderResult g, h, q;
  std::string restricted_name, induced_name;
};

// The H- and Q-ladders are derived from the G-ladder: rung i of H is
// F_i ∩ H (in the embedded family), rung i of Q is the image of F_i.
ATReport check_AT(const Family& fam, const EndoPtr& phi, const DescPtr& h,
                  const std::vector<LadderRung>& g_rungs, int n_max,
                  int window = kDefaultWindow,
                  uint64_t product_budget = kDefaultProductBudget,
                  uint64_t seed = 0);

// Counting certificate for the trajectory bound along a central subgroup N:
//   |T_n(phi, F)| <= |T_n(induced, pi(F))| * |T_n(phi|N, K_n)|
// where K_n is generated by F ∩ N, the section defects
// C_n = { s(x)s(y)s(xy)^-1 : x, y in L_n } over the subgroup L_n generated by
// the first n images of pi(F), and the factor defects
// U_n = { a * s(pi(a))^-1 : a in phi^j(F), j < n }.
struct DaggerRow {
  int n = 0;
  uint64_t l_size = 0, c_size = 0, u_size = 0, k_size = 0;
  uint64_t t_full = 0, t_quotient = 0, t_kernel = 0;
  int64_t slack = 0;  // t_quotient * t_kernel - t_full
  bool holds = false;
};

struct DaggerCertificate {
  std::string kernel_name;
  uint64_t q_order = 0;
  bool section_fixes_identity = false;
  std::vector<DaggerRow> rows;
  bool holds = false;      // every emitted row holds
  bool truncated = false;  // a budget stopped the table early
  // per row (same index), only when tracing: (t, t * s(pi(t))^-1) over T_n
  std::vector<std::vector<std::pair<Elem, Elem>>> eta;

  const char* verdict() const {
    return truncated ? "inconclusive" : (holds ? "holds" : "violation");
  }
};

DaggerCertificate check_dagger(const Family& fam, const EndoPtr& phi,
                               const DescPtr& kernel,
                               const std::vector<Elem>& f, int n_max,
                               bool trace_eta = false,
                               uint64_t product_budget = kDefaultProductBudget,
                               uint64_t closure_budget = kDefaultClosureBudget,
                               uint64_t seed = 0);

// Subadditivity of n -> log|T_n|: sizes[n+m-1] <= sizes[n-1] * sizes[m-1]
// for all n, m. This is what makes lim (1/n) log|T_n| exist.
bool check_fekete(const TrajectoryTable& table);

// The stabilized growth ratio must exist and is a positive integer by
// construction; throws NotStabilized when the window never settled.
uint64_t check_dichotomy(const EntropyEstimate& est);

// Exhaustion chain: ascending invariant subgroups D_0 <= D_1 <= ... whose
// union is (enough of) the group. The entropy of phi is the sup of the
// entropies of its restrictions along the chain.
struct ChainTerm {
  std::string name;
  DescPtr desc;
  std::vector<LadderRung> rungs;  // rungs in the embedded family
};

struct ChainReport {
  std::vector<std::string> term_names;
  std::vector<LadderResult> term_ladders;
  std::vector<std::optional<uint64_t>> term_alphas;
  LadderResult full;
  bool ascending = false;
  bool alphas_nondecreasing = false;
  std::optional<uint64_t> sup_alpha;
  bool sup_matches_full = false;
  bool truncated = false;

  const char* verdict() const {
    if (truncated) return "inconclusive";
    return (ascending && alphas_nondecreasing && sup_matches_full)
               ? "holds"
               : "violation";
  }
};

ChainReport check_chain(const Family& fam, const EndoPtr& phi,
                        const std::vector<ChainTerm>& terms,
                        const std::vector<LadderRung>& full_rungs, int n_max,
                        int window = kDefaultWindow,
                        uint64_t product_budget = kDefaultProductBudget,
                        uint64_t seed = 0);

}  // namespace entrolab
