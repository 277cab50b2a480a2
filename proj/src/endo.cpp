#include "entrolab/endo.hpp"

#include <algorithm>

#include "entrolab/errors.hpp"
#include "entrolab/series.hpp"

namespace entrolab {

namespace {

constexpr int kHomSamples = 1000;
constexpr uint64_t kSeedMix = 0x9E3779B97F4A7C15ull;

int16_t shifted(int v, int k, const char* what) {
  long long s = static_cast<long long>(v) + k;
  if (s < INT16_MIN || s > INT16_MAX)
    fail(ErrorCode::schema_error,
         std::string(what) + " out of representable range after shift");
  return static_cast<int16_t>(s);
}

void verify_homomorphism(const Endo& e, uint64_t seed) {
  if (!(apply(e, identity_elem(e.family)) == identity_elem(e.family)))
    fail(ErrorCode::homomorphism_check_failed,
         endo_name(std::make_shared<Endo>(e)) + " does not fix the identity");
  std::mt19937_64 rng(kSeedMix ^ seed);
  for (int i = 0; i < kHomSamples; ++i) {
    Elem x = random_elem(e.family, rng);
    Elem y = random_elem(e.family, rng);
    Elem lhs = apply(e, mul(e.family, x, y));
    Elem rhs = mul(e.family, apply(e, x), apply(e, y));
    if (!(lhs == rhs))
      fail(ErrorCode::homomorphism_check_failed,
           "sampled pair violates apply(xy) = apply(x)apply(y)");
  }
}

EndoPtr finish(Endo e, uint64_t seed) {
  verify_homomorphism(e, seed);
  return std::make_shared<const Endo>(std::move(e));
}

}  // namespace

std::string endo_name(const EndoPtr& e) {
  switch (e->kind) {
    case EndoKind::identity: return "identity";
    case EndoKind::shift: return "shift(" + std::to_string(e->k) + ")";
    case EndoKind::diagonal: return "diagonal";
    case EndoKind::t_scale: return "t_scale";
    case EndoKind::inner: return "inner";
    case EndoKind::compose: {
      std::string s = "compose[";
      for (size_t i = 0; i < e->list.size(); ++i)
        s += (i ? "," : "") + endo_name(e->list[i]);
      return s + "]";
    }
    case EndoKind::wrapped: return e->label;
  }
  return "?";
}

Elem apply(const Endo& e, const Elem& x) {
  if (x.kind != e.family.kind)
    fail(ErrorCode::family_mismatch, "element from wrong family for endo");
  switch (e.kind) {
    case EndoKind::identity:
      return x;
    case EndoKind::shift: {
      Elem out = x;
      switch (e.family.kind) {
        case FamilyKind::direct_sum:
          for (size_t i = 0; i < out.data.size(); i += 2)
            out.data[i] = shifted(out.data[i], e.k, "support index");
          return out;
        case FamilyKind::poly_heis: {
          // (a,b,c) -> (t^k a, t^k b, t^2k c)
          size_t pos = 3;
          for (int i = 0; i < out.data[0] + out.data[1]; ++i, pos += 2)
            out.data[pos] = shifted(out.data[pos], e.k, "exponent");
          for (int i = 0; i < out.data[2]; ++i, pos += 2)
            out.data[pos] = shifted(out.data[pos], 2 * e.k, "exponent");
          return out;
        }
        case FamilyKind::finitary_ut:
          for (size_t i = 0; i < out.data.size(); i += 3) {
            out.data[i] = shifted(out.data[i], e.k, "row");
            out.data[i + 1] = shifted(out.data[i + 1], e.k, "column");
          }
          return out;
        default:
          fail(ErrorCode::family_mismatch, "shift on finite family");
      }
    }
    case EndoKind::diagonal: {
      if (e.family.kind == FamilyKind::finite) {
        Elem out;
        out.kind = x.kind;
        out.data = {e.base_map[x.data[0]]};
        return out;
      }
      Elem out;
      out.kind = x.kind;
      out.data.reserve(x.data.size());
      for (size_t i = 0; i < x.data.size(); i += 2) {
        int16_t v = e.base_map[x.data[i + 1]];
        if (v != 0) {
          out.data.push_back(x.data[i]);
          out.data.push_back(v);
        }
      }
      return out;
    }
    case EndoKind::t_scale: {
      Elem out = x;
      size_t pos = 3;
      for (int i = 0; i < out.data[0] + out.data[1]; ++i, pos += 2)
        out.data[pos] = shifted(out.data[pos], 1, "exponent");
      for (int i = 0; i < out.data[2]; ++i, pos += 2)
        out.data[pos] = shifted(out.data[pos], 2, "exponent");
      return out;
    }
    case EndoKind::inner:
      return mul(e.family, mul(e.family, e.g_inv, x), e.g);
    case EndoKind::compose: {
      Elem cur = x;
      for (auto it = e.list.rbegin(); it != e.list.rend(); ++it)
        cur = apply(**it, cur);
      return cur;
    }
    case EndoKind::wrapped:
      return e.fn(x);
  }
  fail(ErrorCode::family_mismatch, "unreachable");
}

EndoPtr make_identity(const Family& fam, uint64_t seed) {
  Endo e;
  e.kind = EndoKind::identity;
  e.family = fam;
  return finish(std::move(e), seed);
}

EndoPtr make_shift(const Family& fam, int k, uint64_t seed) {
  if (fam.kind == FamilyKind::finite)
    fail(ErrorCode::schema_error, "shift needs an infinite family");
  if (fam.kind == FamilyKind::finitary_ut && k < 0)
    fail(ErrorCode::homomorphism_check_failed,
         "negative diagonal shifts truncate matrix entries and are not "
         "homomorphisms");
  Endo e;
  e.kind = EndoKind::shift;
  e.family = fam;
  e.k = k;
  return finish(std::move(e), seed);
}

EndoPtr make_diagonal(const Family& fam, std::vector<int16_t> base_map,
                      uint64_t seed) {
  if (fam.kind != FamilyKind::finite && fam.kind != FamilyKind::direct_sum)
    fail(ErrorCode::schema_error, "diagonal endo needs a base table family");
  const BaseTable& b = *fam.base;
  if (base_map.size() != static_cast<size_t>(b.order))
    fail(ErrorCode::schema_error, "diagonal map length != base order");
  for (int16_t v : base_map)
    if (v < 0 || v >= b.order)
      fail(ErrorCode::schema_error, "diagonal map value out of range");
  if (base_map[0] != 0)
    fail(ErrorCode::homomorphism_check_failed,
         "diagonal map does not fix the identity");
  // exhaustive base-table sweep
  for (int a = 0; a < b.order; ++a)
    for (int c = 0; c < b.order; ++c)
      if (base_map[b.at(a, c)] != b.at(base_map[a], base_map[c]))
        fail(ErrorCode::homomorphism_check_failed,
             "diagonal map is not a homomorphism of the base table");
  Endo e;
  e.kind = EndoKind::diagonal;
  e.family = fam;
  e.base_map = std::move(base_map);
  return finish(std::move(e), seed);
}

EndoPtr make_t_scale(const Family& fam, uint64_t seed) {
  if (fam.kind != FamilyKind::poly_heis)
    fail(ErrorCode::schema_error, "t_scale is specific to poly_heis");
  Endo e;
  e.kind = EndoKind::t_scale;
  e.family = fam;
  return finish(std::move(e), seed);
}

EndoPtr make_inner(const Family& fam, const Elem& g, uint64_t seed) {
  if (g.kind != fam.kind)
    fail(ErrorCode::family_mismatch, "conjugating element from wrong family");
  Endo e;
  e.kind = EndoKind::inner;
  e.family = fam;
  e.g = g;
  e.g_inv = inverse(fam, g);
  return finish(std::move(e), seed);
}

EndoPtr make_compose(const Family& fam, std::vector<EndoPtr> list,
                     uint64_t seed) {
  if (list.empty()) fail(ErrorCode::schema_error, "empty compose list");
  for (const EndoPtr& p : list)
    if (!(p->family == fam))
      fail(ErrorCode::family_mismatch, "compose parts live on mixed families");
  Endo e;
  e.kind = EndoKind::compose;
  e.family = fam;
  e.list = std::move(list);
  return finish(std::move(e), seed);
}

EndoPtr make_wrapped(const Family& fam, std::function<Elem(const Elem&)> fn,
                     std::string label, uint64_t seed) {
  Endo e;
  e.kind = EndoKind::wrapped;
  e.family = fam;
  e.fn = std::move(fn);
  e.label = std::move(label);
  return finish(std::move(e), seed);
}

ElementSet apply_set(const Endo& e, const ElementSet& a) {
  ElementSet out;
  out.reserve(a.size());
  for (const Elem& x : a) out.insert(apply(e, x));
  return out;
}

bool is_invariant(const EndoPtr& phi, const FiniteSubgroup& h) {
  for (const Elem& x : h.elements)
    if (!h.contains(apply(*phi, x))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subgroup descriptors
// ---------------------------------------------------------------------------

bool SubgroupDesc::contains(const Elem& x) const {
  if (x.kind != ambient.kind) return false;
  switch (kind) {
    case DescKind::whole:
      return true;
    case DescKind::trivial:
      return is_identity(ambient, x);
    case DescKind::finite_sub:
      return order_index->contains(x);
    case DescKind::coordinatewise:
      for (size_t i = 1; i < x.data.size(); i += 2)
        if (base_to_embedded[x.data[i]] < 0) return false;
      return true;
    case DescKind::heis_center:
      return x.data[0] == 0 && x.data[1] == 0;
  }
  return false;
}

Elem SubgroupDesc::to_embedded(const Elem& x) const {
  switch (kind) {
    case DescKind::whole:
      return x;
    case DescKind::trivial:
      return identity_elem(embedded);
    case DescKind::finite_sub: {
      ptrdiff_t idx = order_index->index_of(x);
      if (idx < 0)
        fail(ErrorCode::not_contained, "element outside the finite subgroup");
      return finite_elem(embedded, static_cast<int>(idx));
    }
    case DescKind::coordinatewise: {
      Elem out = x;
      for (size_t i = 1; i < out.data.size(); i += 2) {
        int16_t v = base_to_embedded[out.data[i]];
        if (v < 0)
          fail(ErrorCode::not_contained, "coordinate value outside subgroup");
        out.data[i] = v;
      }
      return out;
    }
    case DescKind::heis_center: {
      if (x.data[0] != 0 || x.data[1] != 0)
        fail(ErrorCode::not_contained, "element outside the center");
      Elem out;
      out.kind = FamilyKind::direct_sum;
      out.data.assign(x.data.begin() + 3, x.data.end());
      return out;
    }
  }
  fail(ErrorCode::family_mismatch, "unreachable");
}

Elem SubgroupDesc::to_ambient(const Elem& y) const {
  switch (kind) {
    case DescKind::whole:
      return y;
    case DescKind::trivial:
      return identity_elem(ambient);
    case DescKind::finite_sub:
      return order[y.data[0]];
    case DescKind::coordinatewise: {
      Elem out = y;
      out.kind = FamilyKind::direct_sum;
      for (size_t i = 1; i < out.data.size(); i += 2)
        out.data[i] = base_subset[out.data[i]];
      return out;
    }
    case DescKind::heis_center: {
      Elem out;
      out.kind = FamilyKind::poly_heis;
      out.data = {0, 0, static_cast<int16_t>(y.data.size() / 2)};
      out.data.insert(out.data.end(), y.data.begin(), y.data.end());
      return out;
    }
  }
  fail(ErrorCode::family_mismatch, "unreachable");
}

std::string SubgroupDesc::name() const {
  switch (kind) {
    case DescKind::whole: return "whole";
    case DescKind::trivial: return "trivial";
    case DescKind::finite_sub:
      return "finite(" + std::to_string(order.size()) + ")";
    case DescKind::coordinatewise:
      return "coordinatewise(" + std::to_string(base_subset.size()) + " of " +
             std::to_string(ambient.base->order) + ")";
    case DescKind::heis_center: return "center";
  }
  return "?";
}

DescPtr desc_whole(const Family& g) {
  auto d = std::make_shared<SubgroupDesc>();
  d->kind = DescKind::whole;
  d->ambient = g;
  d->embedded = g;
  return d;
}

DescPtr desc_trivial(const Family& g) {
  auto d = std::make_shared<SubgroupDesc>();
  d->kind = DescKind::trivial;
  d->ambient = g;
  d->embedded = finite_family(cyclic_table(1));
  return d;
}

DescPtr desc_finite(const Family& g, FiniteSubgroup sub) {
  if (!is_subgroup(g, sub.elements))
    fail(ErrorCode::invalid_table, "element set is not a subgroup");
  auto d = std::make_shared<SubgroupDesc>();
  d->kind = DescKind::finite_sub;
  d->ambient = g;
  SubgroupTable st = subgroup_table(g, sub);
  d->order = std::move(st.order);
  auto idx = std::make_shared<ElementSet>();
  for (const Elem& e : d->order) idx->insert(e);
  d->order_index = std::move(idx);
  d->embedded = finite_family(*st.table);
  d->fsub = std::make_shared<const FiniteSubgroup>(std::move(sub));
  return d;
}

DescPtr desc_coordinatewise(const Family& g, std::vector<int> base_indices) {
  if (g.kind != FamilyKind::direct_sum)
    fail(ErrorCode::schema_error, "coordinatewise descriptor needs direct_sum");
  const BaseTable& b = *g.base;
  std::sort(base_indices.begin(), base_indices.end());
  base_indices.erase(std::unique(base_indices.begin(), base_indices.end()),
                     base_indices.end());
  if (base_indices.empty() || base_indices[0] != 0)
    fail(ErrorCode::schema_error, "base subgroup must contain the identity");
  auto d = std::make_shared<SubgroupDesc>();
  d->kind = DescKind::coordinatewise;
  d->ambient = g;
  d->base_to_embedded.assign(b.order, -1);
  for (size_t j = 0; j < base_indices.size(); ++j) {
    int v = base_indices[j];
    if (v < 0 || v >= b.order)
      fail(ErrorCode::schema_error, "base index out of range");
    d->base_subset.push_back(static_cast<int16_t>(v));
    d->base_to_embedded[v] = static_cast<int16_t>(j);
  }
  // verify N is a subgroup of B and build its reindexed table
  const size_t m = d->base_subset.size();
  std::vector<int16_t> mul_table(m * m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      int16_t v = d->base_to_embedded[b.at(d->base_subset[i], d->base_subset[j])];
      if (v < 0)
        fail(ErrorCode::invalid_table, "base indices are not closed: not a subgroup");
      mul_table[i * m + j] = v;
    }
  d->embedded = direct_sum_family(
      make_table(static_cast<int>(m), std::move(mul_table)));
  return d;
}

DescPtr desc_center(const Family& g) {
  switch (g.kind) {
    case FamilyKind::finite: {
      FiniteSubgroup z = center(g, whole_group(g));
      return desc_finite(g, std::move(z));
    }
    case FamilyKind::direct_sum: {
      std::vector<int> zidx;
      const BaseTable& b = *g.base;
      for (int v = 0; v < b.order; ++v) {
        bool central = true;
        for (int w = 0; w < b.order && central; ++w)
          central = b.at(v, w) == b.at(w, v);
        if (central) zidx.push_back(v);
      }
      return desc_coordinatewise(g, std::move(zidx));
    }
    case FamilyKind::poly_heis: {
      auto d = std::make_shared<SubgroupDesc>();
      d->kind = DescKind::heis_center;
      d->ambient = g;
      d->embedded = direct_sum_family(cyclic_table(g.p));
      return d;
    }
    case FamilyKind::finitary_ut:
      // the finitary direct limit has trivial center: any entry (i,j) fails
      // to commute with a far-enough diagonal generator
      return desc_trivial(g);
  }
  fail(ErrorCode::family_mismatch, "unreachable");
}

DescPtr desc_torsion(const Family& g, uint64_t n) {
  switch (g.kind) {
    case FamilyKind::finite:
      return desc_finite(g, n_torsion_subgroup(g, whole_group(g), n));
    case FamilyKind::direct_sum: {
      Family bf = finite_family(*g.base);
      FiniteSubgroup bn = n_torsion_subgroup(bf, whole_group(bf), n);
      std::vector<int> idx;
      for (const Elem& e : bn.elements) idx.push_back(e.data[0]);
      return desc_coordinatewise(g, std::move(idx));
    }
    default:
      fail(ErrorCode::schema_error,
           "torsion descriptor supports finite and direct_sum families");
  }
}

DescPtr desc_upper_central(const Family& g, int i) {
  if (g.kind != FamilyKind::finite)
    fail(ErrorCode::schema_error,
         "upper_central descriptor needs the finite family");
  if (i < 0) fail(ErrorCode::schema_error, "negative series index");
  SeriesReport rep = upper_central_series(g, whole_group(g));
  size_t idx = std::min<size_t>(i, rep.terms.size() - 1);
  return desc_finite(g, rep.terms[idx]);
}

EndoPtr restrict_endo(const EndoPtr& phi, const DescPtr& h, uint64_t seed) {
  if (!(phi->family == h->ambient))
    fail(ErrorCode::family_mismatch, "endo and descriptor family differ");
  // invariance: exact for finite descriptors, sampled otherwise
  if (h->kind == DescKind::finite_sub) {
    for (const Elem& x : h->order)
      if (!h->contains(apply(*phi, x)))
        fail(ErrorCode::not_invariant,
             "subgroup is not invariant under the endomorphism");
  } else if (h->kind != DescKind::whole) {
    std::mt19937_64 rng(kSeedMix ^ seed ^ 0xA5A5A5A5ull);
    for (int i = 0; i < kHomSamples; ++i) {
      Elem x = h->to_ambient(random_elem(h->embedded, rng));
      if (!h->contains(apply(*phi, x)))
        fail(ErrorCode::not_invariant,
             "sampled element leaves the subgroup under the endomorphism");
    }
  }

  switch (h->kind) {
    case DescKind::whole:
      return phi;
    case DescKind::trivial:
      return make_identity(h->embedded, seed);
    case DescKind::finite_sub: {
      // any endo restricted to a finite subgroup is a table endomorphism
      std::vector<int16_t> map(h->order.size());
      for (size_t i = 0; i < h->order.size(); ++i)
        map[i] = static_cast<int16_t>(
            h->order_index->index_of(apply(*phi, h->order[i])));
      return make_diagonal(h->embedded, std::move(map), seed);
    }
    case DescKind::coordinatewise:
      if (phi->kind == EndoKind::identity)
        return make_identity(h->embedded, seed);
      if (phi->kind == EndoKind::shift)
        return make_shift(h->embedded, phi->k, seed);
      if (phi->kind == EndoKind::diagonal) {
        std::vector<int16_t> emap(h->base_subset.size());
        for (size_t j = 0; j < h->base_subset.size(); ++j) {
          int16_t v = h->base_to_embedded[phi->base_map[h->base_subset[j]]];
          if (v < 0)
            fail(ErrorCode::not_invariant,
                 "base map does not preserve the base subgroup");
          emap[j] = v;
        }
        return make_diagonal(h->embedded, std::move(emap), seed);
      }
      break;
    case DescKind::heis_center:
      if (phi->kind == EndoKind::identity)
        return make_identity(h->embedded, seed);
      if (phi->kind == EndoKind::t_scale)
        return make_shift(h->embedded, 2, seed);  // c -> t^2 c
      if (phi->kind == EndoKind::shift)
        return make_shift(h->embedded, 2 * phi->k, seed);
      break;
  }
  DescPtr hd = h;
  EndoPtr ph = phi;
  return make_wrapped(
      h->embedded,
      [hd, ph](const Elem& y) {
        return hd->to_embedded(apply(*ph, hd->to_ambient(y)));
      },
      "restricted(" + endo_name(phi) + ")", seed);
}

// ---------------------------------------------------------------------------
// Quotient models
// ---------------------------------------------------------------------------

Elem QuotientModel::project(const Elem& x) const {
  switch (kind) {
    case QuotKind::identity_model:
      return x;
    case QuotKind::collapse:
      return identity_elem(target);
    case QuotKind::finite_table:
      return finite_elem(target, qt->coset_of[x.data[0]]);
    case QuotKind::direct_sum_base: {
      Elem out;
      out.kind = FamilyKind::direct_sum;
      out.data.reserve(x.data.size());
      for (size_t i = 0; i < x.data.size(); i += 2) {
        int16_t c = base_coset[x.data[i + 1]];
        if (c != 0) {
          out.data.push_back(x.data[i]);
          out.data.push_back(c);
        }
      }
      return out;
    }
    case QuotKind::heis_center: {
      // (a,b,c) -> (a,b), packed as pairs a_i*p + b_i over the union support
      const int p = source.p;
      const auto& d = x.data;
      size_t ai = 3, ae = 3 + 2 * d[0];
      size_t bi = ae, be = ae + 2 * d[1];
      Elem out;
      out.kind = FamilyKind::direct_sum;
      while (ai < ae || bi < be) {
        int exp, val;
        if (bi >= be || (ai < ae && d[ai] < d[bi])) {
          exp = d[ai];
          val = d[ai + 1] * p;
          ai += 2;
        } else if (ai >= ae || d[bi] < d[ai]) {
          exp = d[bi];
          val = d[bi + 1];
          bi += 2;
        } else {
          exp = d[ai];
          val = d[ai + 1] * p + d[bi + 1];
          ai += 2, bi += 2;
        }
        out.data.push_back(static_cast<int16_t>(exp));
        out.data.push_back(static_cast<int16_t>(val));
      }
      return out;
    }
  }
  fail(ErrorCode::family_mismatch, "unreachable");
}

Elem QuotientModel::lift(const Elem& y) const {
  switch (kind) {
    case QuotKind::identity_model:
      return y;
    case QuotKind::collapse:
      return identity_elem(source);
    case QuotKind::finite_table:
      return qt->reps[y.data[0]];
    case QuotKind::direct_sum_base: {
      Elem out = y;
      for (size_t i = 1; i < out.data.size(); i += 2)
        out.data[i] = coset_rep[out.data[i]];
      return out;
    }
    case QuotKind::heis_center: {
      // minimal preimage: decode (a,b) coefficients, take c = 0
      const int p = source.p;
      std::vector<int16_t> a, b;
      for (size_t i = 0; i < y.data.size(); i += 2) {
        int va = y.data[i + 1] / p, vb = y.data[i + 1] % p;
        if (va != 0) {
          a.push_back(y.data[i]);
          a.push_back(static_cast<int16_t>(va));
        }
        if (vb != 0) {
          b.push_back(y.data[i]);
          b.push_back(static_cast<int16_t>(vb));
        }
      }
      Elem out;
      out.kind = FamilyKind::poly_heis;
      out.data = {static_cast<int16_t>(a.size() / 2),
                  static_cast<int16_t>(b.size() / 2), 0};
      out.data.insert(out.data.end(), a.begin(), a.end());
      out.data.insert(out.data.end(), b.begin(), b.end());
      return out;
    }
  }
  fail(ErrorCode::family_mismatch, "unreachable");
}

std::string QuotientModel::name() const {
  switch (kind) {
    case QuotKind::identity_model: return "identity";
    case QuotKind::collapse: return "collapse";
    case QuotKind::finite_table: return "finite_table";
    case QuotKind::direct_sum_base: return "direct_sum_base";
    case QuotKind::heis_center: return "heis_center";
  }
  return "?";
}

QuotientModel make_quotient_model(const Family& g, const DescPtr& kernel,
                                  uint64_t seed) {
  if (!(kernel->ambient == g))
    fail(ErrorCode::family_mismatch, "kernel descriptor for a different family");
  QuotientModel q;
  q.source = g;
  q.kernel = kernel;
  switch (kernel->kind) {
    case DescKind::trivial:
      q.kind = QuotKind::identity_model;
      q.target = g;
      break;
    case DescKind::whole:
      q.kind = QuotKind::collapse;
      q.target = finite_family(cyclic_table(1));
      break;
    case DescKind::finite_sub: {
      if (g.kind != FamilyKind::finite)
        fail(ErrorCode::unsupported_quotient,
             "finite-subgroup quotients are modeled for the finite family only");
      q.kind = QuotKind::finite_table;
      q.qt = std::make_shared<const QuotientTable>(
          quotient_table(g, whole_group(g), *kernel->fsub));
      q.target = finite_family(*q.qt->table);
      break;
    }
    case DescKind::coordinatewise: {
      q.kind = QuotKind::direct_sum_base;
      Family bf = finite_family(*g.base);
      FiniteSubgroup nsub;
      nsub.family = bf;
      for (int16_t v : kernel->base_subset)
        nsub.elements.insert(finite_elem(bf, v));
      QuotientTable bq = quotient_table(bf, whole_group(bf), nsub);
      q.base_coset.resize(g.base->order);
      for (int v = 0; v < g.base->order; ++v)
        q.base_coset[v] = static_cast<int16_t>(bq.coset_of[v]);
      q.coset_rep.resize(bq.reps.size());
      for (size_t c = 0; c < bq.reps.size(); ++c)
        q.coset_rep[c] = bq.reps[c].data[0];
      q.target = direct_sum_family(*bq.table);
      break;
    }
    case DescKind::heis_center: {
      q.kind = QuotKind::heis_center;
      q.target = direct_sum_family(
          direct_product_table(cyclic_table(g.p), cyclic_table(g.p)));
      break;
    }
  }

  // sampled validation of the model
  if (!(q.lift(identity_elem(q.target)) == identity_elem(g)))
    fail(ErrorCode::invalid_table, "section does not send identity to identity");
  std::mt19937_64 rng(kSeedMix ^ seed ^ 0xC3C3C3C3ull);
  for (int i = 0; i < kHomSamples; ++i) {
    Elem x = random_elem(g, rng), y = random_elem(g, rng);
    if (!(q.project(mul(g, x, y)) ==
          mul(q.target, q.project(x), q.project(y))))
      fail(ErrorCode::homomorphism_check_failed,
           "projection is not a homomorphism on sampled pair");
    Elem t = random_elem(q.target, rng);
    if (!(q.project(q.lift(t)) == t))
      fail(ErrorCode::invalid_table, "section is not a right inverse");
    Elem z = kernel->to_ambient(random_elem(kernel->embedded, rng));
    if (!is_identity(q.target, q.project(z)))
      fail(ErrorCode::invalid_table, "projection does not kill the kernel");
    if (is_identity(q.target, q.project(x)) != kernel->contains(x))
      fail(ErrorCode::invalid_table,
           "projection kernel differs from the declared kernel");
  }
  return q;
}

EndoPtr induced_endo(const EndoPtr& phi, const QuotientModel& q,
                     uint64_t seed) {
  if (!(phi->family == q.source))
    fail(ErrorCode::family_mismatch, "endo family differs from quotient source");
  // the kernel must be phi-invariant for the induced map to exist
  std::mt19937_64 rng(kSeedMix ^ seed ^ 0x3C3C3C3Cull);
  for (int i = 0; i < kHomSamples; ++i) {
    Elem z = q.kernel->to_ambient(random_elem(q.kernel->embedded, rng));
    if (!is_identity(q.target, q.project(apply(*phi, z))))
      fail(ErrorCode::not_compatible,
           "kernel is not invariant under the endomorphism");
  }

  EndoPtr psi;
  auto structural = [&]() -> EndoPtr {
    if (q.kind == QuotKind::identity_model) return phi;
    if (q.kind == QuotKind::collapse) return make_identity(q.target, seed);
    if (phi->kind == EndoKind::identity) return make_identity(q.target, seed);
    if (phi->kind == EndoKind::inner)
      return make_inner(q.target, q.project(phi->g), seed);
    if (q.kind == QuotKind::direct_sum_base) {
      if (phi->kind == EndoKind::shift)
        return make_shift(q.target, phi->k, seed);
      if (phi->kind == EndoKind::diagonal) {
        std::vector<int16_t> qmap(q.coset_rep.size());
        for (size_t c = 0; c < q.coset_rep.size(); ++c)
          qmap[c] = q.base_coset[phi->base_map[q.coset_rep[c]]];
        for (size_t v = 0; v < q.base_coset.size(); ++v)
          if (q.base_coset[phi->base_map[v]] != qmap[q.base_coset[v]])
            fail(ErrorCode::not_compatible,
                 "base map is not constant on cosets");
        return make_diagonal(q.target, std::move(qmap), seed);
      }
    }
    if (q.kind == QuotKind::heis_center) {
      if (phi->kind == EndoKind::t_scale) return make_shift(q.target, 1, seed);
      if (phi->kind == EndoKind::shift) return make_shift(q.target, phi->k, seed);
    }
    if (q.kind == QuotKind::finite_table && phi->kind == EndoKind::diagonal) {
      std::vector<int16_t> qmap(q.qt->reps.size());
      for (size_t c = 0; c < q.qt->reps.size(); ++c)
        qmap[c] = static_cast<int16_t>(
            q.qt->coset_of[phi->base_map[q.qt->reps[c].data[0]]]);
      for (size_t v = 0; v < q.qt->coset_of.size(); ++v)
        if (q.qt->coset_of[phi->base_map[v]] != qmap[q.qt->coset_of[v]])
          fail(ErrorCode::not_compatible, "map is not constant on cosets");
      return make_diagonal(q.target, std::move(qmap), seed);
    }
    QuotientModel qc = q;
    EndoPtr ph = phi;
    return make_wrapped(
        q.target,
        [qc, ph](const Elem& y) { return qc.project(apply(*ph, qc.lift(y))); },
        "induced(" + endo_name(phi) + ")", seed);
  };
  psi = structural();

  // compatibility: psi∘project = project∘phi on samples, whatever the path
  for (int i = 0; i < kHomSamples; ++i) {
    Elem x = random_elem(q.source, rng);
    if (!(apply(*psi, q.project(x)) == q.project(apply(*phi, x))))
      fail(ErrorCode::not_compatible,
           "induced map disagrees with projection∘endo on sampled element");
  }
  return psi;
}

}  // namespace entrolab
