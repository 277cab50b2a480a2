#include "entrolab/fingen.hpp"

#include <algorithm>

#include "entrolab/errors.hpp"
#include "entrolab/waves.hpp"

namespace entrolab {

FiniteSubgroup from_generators(const Family& fam, std::vector<Elem> gens,
                               uint64_t budget) {
  FiniteSubgroup sub;
  sub.family = fam;
  // multipliers: generators and their inverses, deduplicated, identity-free
  ElementSet mulset;
  for (const Elem& g : gens) {
    if (g.kind != fam.kind)
      fail(ErrorCode::family_mismatch, "generator from wrong family");
    if (!is_identity(fam, g)) {
      mulset.insert(g);
      mulset.insert(inverse(fam, g));
    }
  }
  std::vector<Elem> muls(mulset.begin(), mulset.end());
  sub.elements.insert(identity_elem(fam));
  std::vector<Elem> frontier = {identity_elem(fam)};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    stream_products(fam, frontier, muls, [&](size_t, size_t, Elem&& e) {
      if (sub.elements.insert(std::move(e))) {
        if (sub.elements.size() > budget)
          fail(ErrorCode::closure_budget_exceeded,
               "closure exceeds budget " + std::to_string(budget));
        next.push_back(sub.elements[sub.elements.size() - 1]);
      }
    });
    frontier = std::move(next);
  }
  sub.generators = std::move(gens);
  return sub;
}

ElementSet set_product(const Family& fam, const ElementSet& a,
                       const ElementSet& b, uint64_t budget) {
  ElementSet out;
  out.reserve(std::min<uint64_t>(a.size(), budget));
  stream_products(fam, a.items(), b.items(), [&](size_t, size_t, Elem&& e) {
    if (out.insert(std::move(e)) && out.size() > budget)
      fail(ErrorCode::product_budget_exceeded,
           "set product exceeds budget " + std::to_string(budget));
  });
  return out;
}

bool is_subgroup(const Family& fam, const ElementSet& s) {
  if (!s.contains(identity_elem(fam))) return false;
  for (const Elem& x : s)
    if (!s.contains(inverse(fam, x))) return false;
  for (const Elem& x : s)
    for (const Elem& y : s)
      if (!s.contains(mul(fam, x, y))) return false;
  return true;
}

bool is_normal_in(const Family& fam, const FiniteSubgroup& h,
                  const FiniteSubgroup& g) {
  for (const Elem& x : h.elements)
    if (!g.contains(x))
      fail(ErrorCode::not_contained,
           "subgroup is not contained in the ambient group");
  for (const Elem& x : g.elements) {
    Elem xi = inverse(fam, x);
    for (const Elem& n : h.elements)
      if (!h.contains(mul(fam, mul(fam, x, n), xi))) return false;
  }
  return true;
}

QuotientTable quotient_table(const Family& fam, const FiniteSubgroup& g,
                             const FiniteSubgroup& n) {
  if (!is_normal_in(fam, n, g))
    fail(ErrorCode::not_normal, "quotient by a non-normal subgroup");
  if (g.order() % n.order() != 0)
    fail(ErrorCode::invalid_table, "Lagrange violation: |N| does not divide |G|");
  const size_t k = g.order() / n.order();
  if (k > static_cast<size_t>(BaseTable::kMaxOrder))
    fail(ErrorCode::invalid_table,
         "quotient of order " + std::to_string(k) + " exceeds the table cap");

  QuotientTable q;
  q.coset_of.assign(g.order(), -1);
  // enumerate cosets, identity's coset first, then first-encounter order
  auto sweep_coset = [&](const Elem& x) {
    int32_t id = static_cast<int32_t>(q.reps.size());
    Elem rep = x;
    std::vector<ptrdiff_t> members;
    for (const Elem& m : n.elements) {
      Elem y = mul(fam, x, m);
      ptrdiff_t idx = g.elements.index_of(y);
      if (idx < 0)
        fail(ErrorCode::invalid_table, "ambient set not closed under products");
      if (q.coset_of[idx] != -1)
        fail(ErrorCode::invalid_table, "cosets overlap: N is not a subgroup");
      members.push_back(idx);
      if (canonical_less(y, rep)) rep = y;
    }
    if (members.size() != n.order())
      fail(ErrorCode::invalid_table, "coset smaller than |N|");
    for (ptrdiff_t idx : members) q.coset_of[idx] = id;
    q.reps.push_back(std::move(rep));
  };
  sweep_coset(identity_elem(fam));
  for (size_t i = 0; i < g.order(); ++i)
    if (q.coset_of[i] == -1) sweep_coset(g.elements[i]);
  if (q.reps.size() != k)
    fail(ErrorCode::invalid_table, "coset count mismatch");

  std::vector<int16_t> table(k * k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      ptrdiff_t idx = g.elements.index_of(mul(fam, q.reps[i], q.reps[j]));
      table[i * k + j] = static_cast<int16_t>(q.coset_of[idx]);
    }
  q.table = std::make_shared<const BaseTable>(
      make_table(static_cast<int>(k), std::move(table)));
  return q;
}

SubgroupTable subgroup_table(const Family& fam, const FiniteSubgroup& sub) {
  if (sub.order() > static_cast<size_t>(BaseTable::kMaxOrder))
    fail(ErrorCode::invalid_table,
         "subgroup of order " + std::to_string(sub.order()) +
             " exceeds the table cap");
  SubgroupTable st;
  st.order = sub.elements.items();
  std::sort(st.order.begin(), st.order.end(), canonical_less);
  ElementSet index;
  for (const Elem& e : st.order) index.insert(e);
  const size_t k = st.order.size();
  std::vector<int16_t> table(k * k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      ptrdiff_t idx = index.index_of(mul(fam, st.order[i], st.order[j]));
      if (idx < 0)
        fail(ErrorCode::invalid_table, "element set not closed under products");
      table[i * k + j] = static_cast<int16_t>(idx);
    }
  st.table = std::make_shared<const BaseTable>(
      make_table(static_cast<int>(k), std::move(table)));
  return st;
}

namespace {

uint64_t checked_pow(uint64_t base, uint64_t exp, uint64_t cap) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (r > cap / base + 1) return cap + 1;
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace

FiniteSubgroup ball(const Family& fam, int radius, uint64_t budget) {
  if (radius < 0) fail(ErrorCode::schema_error, "negative ball radius");
  FiniteSubgroup sub;
  sub.family = fam;
  switch (fam.kind) {
    case FamilyKind::finite:
      return whole_group(fam);
    case FamilyKind::direct_sum: {
      const int coords = radius + 1;
      const uint64_t ord = static_cast<uint64_t>(fam.base->order);
      if (checked_pow(ord, coords, budget) > budget)
        fail(ErrorCode::closure_budget_exceeded,
             "ball too large for budget " + std::to_string(budget));
      std::vector<int> vals(coords, 0);
      sub.elements.reserve(checked_pow(ord, coords, budget));
      for (;;) {
        std::vector<std::pair<int, int>> sup;
        for (int i = 0; i < coords; ++i)
          if (vals[i] != 0) sup.push_back({i, vals[i]});
        sub.elements.insert(direct_sum_elem(fam, std::move(sup)));
        int i = coords - 1;
        while (i >= 0 && vals[i] == fam.base->order - 1) vals[i--] = 0;
        if (i < 0) break;
        ++vals[i];
      }
      return sub;
    }
    case FamilyKind::poly_heis: {
      // a, b supported on [0, r]; c on [0, 2r]: closed under the product
      // since the convolution of [0,r] supports lands in [0,2r]
      const int na = radius + 1, nc = 2 * radius + 1;
      const uint64_t total = checked_pow(
          static_cast<uint64_t>(fam.p), static_cast<uint64_t>(2 * na + nc),
          budget);
      if (total > budget)
        fail(ErrorCode::closure_budget_exceeded,
             "ball too large for budget " + std::to_string(budget));
      std::vector<int> vals(2 * na + nc, 0);
      sub.elements.reserve(total);
      for (;;) {
        std::vector<std::pair<int, int>> a, b, c;
        for (int i = 0; i < na; ++i)
          if (vals[i] != 0) a.push_back({i, vals[i]});
        for (int i = 0; i < na; ++i)
          if (vals[na + i] != 0) b.push_back({i, vals[na + i]});
        for (int i = 0; i < nc; ++i)
          if (vals[2 * na + i] != 0) c.push_back({i, vals[2 * na + i]});
        sub.elements.insert(poly_heis_elem(fam, a, b, c));
        int i = static_cast<int>(vals.size()) - 1;
        while (i >= 0 && vals[i] == fam.p - 1) vals[i--] = 0;
        if (i < 0) break;
        ++vals[i];
      }
      return sub;
    }
    case FamilyKind::finitary_ut: {
      // radius r = the r x r upper unitriangular corner
      std::vector<std::pair<int, int>> pos;
      for (int r = 1; r <= radius; ++r)
        for (int c = r + 1; c <= radius; ++c) pos.push_back({r, c});
      std::sort(pos.begin(), pos.end());
      const uint64_t total = checked_pow(static_cast<uint64_t>(fam.p),
                                         pos.size(), budget);
      if (total > budget)
        fail(ErrorCode::closure_budget_exceeded,
             "ball too large for budget " + std::to_string(budget));
      std::vector<int> vals(pos.size(), 0);
      sub.elements.reserve(total);
      for (;;) {
        std::vector<std::array<int, 3>> entries;
        for (size_t i = 0; i < pos.size(); ++i)
          if (vals[i] != 0)
            entries.push_back({pos[i].first, pos[i].second, vals[i]});
        sub.elements.insert(finitary_ut_elem(fam, std::move(entries)));
        int i = static_cast<int>(vals.size()) - 1;
        while (i >= 0 && vals[i] == fam.p - 1) vals[i--] = 0;
        if (i < 0) break;
        ++vals[i];
      }
      return sub;
    }
  }
  fail(ErrorCode::family_mismatch, "unreachable");
}

FiniteSubgroup whole_group(const Family& fam) {
  if (fam.kind != FamilyKind::finite)
    fail(ErrorCode::schema_error,
         "whole-group subgroup only exists for the finite family");
  FiniteSubgroup sub;
  sub.family = fam;
  for (int i = 0; i < fam.base->order; ++i)
    sub.elements.insert(finite_elem(fam, i));
  return sub;
}

FiniteSubgroup trivial_subgroup(const Family& fam) {
  FiniteSubgroup sub;
  sub.family = fam;
  sub.elements.insert(identity_elem(fam));
  return sub;
}

}  // namespace entrolab
