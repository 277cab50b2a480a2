#include "entrolab/series.hpp"

#include "entrolab/errors.hpp"

namespace entrolab {

namespace {

bool same_set(const FiniteSubgroup& a, const FiniteSubgroup& b) {
  if (a.order() != b.order()) return false;
  for (const Elem& x : a.elements)
    if (!b.contains(x)) return false;
  return true;
}

bool is_trivial(const Family& fam, const FiniteSubgroup& s) {
  return s.order() == 1 && s.contains(identity_elem(fam));
}

}  // namespace

FiniteSubgroup center(const Family& fam, const FiniteSubgroup& k) {
  FiniteSubgroup z;
  z.family = fam;
  for (const Elem& x : k.elements) {
    bool central = true;
    for (const Elem& y : k.elements)
      if (!(mul(fam, x, y) == mul(fam, y, x))) {
        central = false;
        break;
      }
    if (central) z.elements.insert(x);
  }
  return z;
}

FiniteSubgroup commutator_subgroup(const Family& fam, const FiniteSubgroup& a,
                                   const FiniteSubgroup& b, uint64_t budget) {
  ElementSet comms;
  for (const Elem& x : a.elements) {
    Elem xi = inverse(fam, x);
    for (const Elem& y : b.elements) {
      Elem yi = inverse(fam, y);
      comms.insert(mul(fam, mul(fam, xi, yi), mul(fam, x, y)));
    }
  }
  return from_generators(
      fam, std::vector<Elem>(comms.begin(), comms.end()), budget);
}

const char* series_kind_name(SeriesKind k) {
  switch (k) {
    case SeriesKind::lower_central: return "lower_central";
    case SeriesKind::upper_central: return "upper_central";
    case SeriesKind::derived: return "derived";
  }
  return "?";
}

std::string SeriesReport::class_label() const {
  if (series_class >= 0) return std::to_string(series_class);
  return kind == SeriesKind::derived ? "not solvable" : "not nilpotent";
}

namespace {

SeriesReport descending_series(SeriesKind kind, const Family& fam,
                               const FiniteSubgroup& k, uint64_t budget) {
  SeriesReport rep;
  rep.kind = kind;
  rep.terms.push_back(k);
  for (;;) {
    const FiniteSubgroup& cur = rep.terms.back();
    if (is_trivial(fam, cur)) {
      rep.series_class = static_cast<int>(rep.terms.size()) - 1;
      break;
    }
    FiniteSubgroup next =
        kind == SeriesKind::lower_central
            ? commutator_subgroup(fam, cur, k, budget)
            : commutator_subgroup(fam, cur, cur, budget);
    if (same_set(next, cur)) {
      rep.series_class = -1;  // stabilized above trivial
      break;
    }
    rep.terms.push_back(std::move(next));
  }
  for (const FiniteSubgroup& t : rep.terms) rep.orders.push_back(t.order());
  return rep;
}

}  // namespace

SeriesReport lower_central_series(const Family& fam, const FiniteSubgroup& k,
                                  uint64_t budget) {
  return descending_series(SeriesKind::lower_central, fam, k, budget);
}

SeriesReport derived_series(const Family& fam, const FiniteSubgroup& k,
                            uint64_t budget) {
  return descending_series(SeriesKind::derived, fam, k, budget);
}

SeriesReport upper_central_series(const Family& fam, const FiniteSubgroup& k,
                                  uint64_t) {
  SeriesReport rep;
  rep.kind = SeriesKind::upper_central;
  rep.terms.push_back(trivial_subgroup(fam));
  for (;;) {
    const FiniteSubgroup& cur = rep.terms.back();
    if (same_set(cur, k)) {
      rep.series_class = static_cast<int>(rep.terms.size()) - 1;
      break;
    }
    // Z_{i+1}/Z_i = Z(K/Z_i): take the center of the finite quotient and
    // pull it back through the coset map
    QuotientTable qt = quotient_table(fam, k, cur);
    Family qfam = finite_family(*qt.table);
    FiniteSubgroup qcenter = center(qfam, whole_group(qfam));
    std::vector<bool> central_coset(qt.reps.size(), false);
    for (const Elem& e : qcenter.elements) central_coset[e.data[0]] = true;
    FiniteSubgroup next;
    next.family = fam;
    for (size_t i = 0; i < k.order(); ++i)
      if (central_coset[qt.coset_of[i]]) next.elements.insert(k.elements[i]);
    if (same_set(next, cur)) {
      rep.series_class = -1;  // hypercenter stuck below K: not nilpotent
      break;
    }
    rep.terms.push_back(std::move(next));
  }
  for (const FiniteSubgroup& t : rep.terms) rep.orders.push_back(t.order());
  return rep;
}

FiniteSubgroup n_torsion_subgroup(const Family& fam, const FiniteSubgroup& k,
                                  uint64_t n, uint64_t budget) {
  if (n < 1) fail(ErrorCode::schema_error, "torsion degree must be >= 1");
  std::vector<Elem> gens;
  for (const Elem& x : k.elements)
    if (is_identity(fam, pow(fam, x, static_cast<long long>(n))))
      gens.push_back(x);
  return from_generators(fam, std::move(gens), budget);
}

}  // namespace entrolab
