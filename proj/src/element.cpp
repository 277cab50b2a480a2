#include "entrolab/element.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "entrolab/errors.hpp"

namespace entrolab {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void check_kind(const Family& fam, const Elem& x) {
  if (x.kind != fam.kind)
    fail(ErrorCode::family_mismatch,
         std::string("element of family ") + family_kind_name(x.kind) +
             " used with family " + family_kind_name(fam.kind));
}

int16_t to_i16(long long v, const char* what) {
  if (v < INT16_MIN || v > INT16_MAX)
    fail(ErrorCode::schema_error,
         std::string(what) + " out of representable range: " +
             std::to_string(v));
  return static_cast<int16_t>(v);
}

// ---- Laurent polynomials over F_p, encoded as sorted (exp, coeff) pairs ----

using Pair = std::pair<int, int>;
using Poly = std::vector<Pair>;

// Sorts, merges equal exponents mod p, drops zero coefficients.
Poly poly_canon(int p, Poly terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Pair& a, const Pair& b) { return a.first < b.first; });
  Poly out;
  for (const Pair& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second = (out.back().second + t.second) % p;
      if (out.back().second == 0) out.pop_back();
    } else {
      int c = ((t.second % p) + p) % p;
      if (c != 0) out.push_back({t.first, c});
    }
  }
  return out;
}

Poly poly_add(int p, const Poly& a, const Poly& b) {
  Poly out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      int c = (a[i].second + b[j].second) % p;
      if (c != 0) out.push_back({a[i].first, c});
      ++i, ++j;
    }
  }
  return out;
}

Poly poly_neg(int p, const Poly& a) {
  Poly out = a;
  for (Pair& t : out) t.second = p - t.second;
  return out;
}

Poly poly_mul(int p, const Poly& a, const Poly& b) {
  Poly terms;
  terms.reserve(a.size() * b.size());
  for (const Pair& s : a)
    for (const Pair& t : b)
      terms.push_back({s.first + t.first, s.second * t.second});
  return poly_canon(p, terms);
}

struct HeisTriple {
  Poly a, b, c;
};

HeisTriple heis_unpack(const Elem& x) {
  const auto& d = x.data;
  if (d.size() < 3) fail(ErrorCode::invalid_table, "corrupt heis payload");
  HeisTriple t;
  size_t pos = 3;
  auto take = [&](int n) {
    Poly poly;
    poly.reserve(n);
    for (int i = 0; i < n; ++i) {
      poly.push_back({d[pos], d[pos + 1]});
      pos += 2;
    }
    return poly;
  };
  t.a = take(d[0]);
  t.b = take(d[1]);
  t.c = take(d[2]);
  return t;
}

Elem heis_pack(const HeisTriple& t) {
  Elem e;
  e.kind = FamilyKind::poly_heis;
  e.data.reserve(3 + 2 * (t.a.size() + t.b.size() + t.c.size()));
  e.data.push_back(to_i16(t.a.size(), "poly length"));
  e.data.push_back(to_i16(t.b.size(), "poly length"));
  e.data.push_back(to_i16(t.c.size(), "poly length"));
  for (const Poly* poly : {&t.a, &t.b, &t.c})
    for (const Pair& term : *poly) {
      e.data.push_back(to_i16(term.first, "exponent"));
      e.data.push_back(to_i16(term.second, "coefficient"));
    }
  return e;
}

// ---- Sparse strictly upper triangular matrices, rows/cols from 1 ----------

struct UtEntry {
  int r, c, v;
  bool operator<(const UtEntry& o) const {
    return r != o.r ? r < o.r : c < o.c;
  }
};

using UtMat = std::vector<UtEntry>;

UtMat ut_canon(int p, UtMat entries) {
  std::sort(entries.begin(), entries.end());
  UtMat out;
  for (const UtEntry& e : entries) {
    if (!out.empty() && out.back().r == e.r && out.back().c == e.c) {
      out.back().v = (out.back().v + e.v) % p;
      if (out.back().v == 0) out.pop_back();
    } else {
      int v = ((e.v % p) + p) % p;
      if (v != 0) out.push_back({e.r, e.c, v});
    }
  }
  return out;
}

UtMat ut_add(int p, const UtMat& a, const UtMat& b) {
  UtMat all = a;
  all.insert(all.end(), b.begin(), b.end());
  return ut_canon(p, std::move(all));
}

// M * M' for strictly upper triangular sparse matrices.
UtMat ut_mul(int p, const UtMat& a, const UtMat& b) {
  UtMat terms;
  for (const UtEntry& s : a) {
    // entries of b with row == s.c form a contiguous sorted range
    auto lo = std::lower_bound(b.begin(), b.end(), UtEntry{s.c, 0, 0});
    for (auto it = lo; it != b.end() && it->r == s.c; ++it)
      terms.push_back({s.r, it->c, s.v * it->v});
  }
  return ut_canon(p, std::move(terms));
}

UtMat ut_unpack(const Elem& x) {
  UtMat m;
  m.reserve(x.data.size() / 3);
  for (size_t i = 0; i + 3 <= x.data.size(); i += 3)
    m.push_back({x.data[i], x.data[i + 1], x.data[i + 2]});
  return m;
}

Elem ut_pack(const UtMat& m) {
  Elem e;
  e.kind = FamilyKind::finitary_ut;
  e.data.reserve(3 * m.size());
  for (const UtEntry& t : m) {
    e.data.push_back(to_i16(t.r, "row"));
    e.data.push_back(to_i16(t.c, "column"));
    e.data.push_back(to_i16(t.v, "entry"));
  }
  return e;
}

}  // namespace

const char* family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::finite: return "finite";
    case FamilyKind::direct_sum: return "direct_sum";
    case FamilyKind::poly_heis: return "poly_heis";
    case FamilyKind::finitary_ut: return "finitary_ut";
  }
  return "?";
}

bool Family::is_abelian() const {
  switch (kind) {
    case FamilyKind::finite: return base->abelian;
    case FamilyKind::direct_sum: return base->abelian;
    default: return false;
  }
}

std::string Family::name() const {
  switch (kind) {
    case FamilyKind::finite:
      return "finite(" + std::to_string(base->order) + ")";
    case FamilyKind::direct_sum:
      return "direct_sum(" + std::to_string(base->order) + ")";
    case FamilyKind::poly_heis:
      return "poly_heis(" + std::to_string(p) + ")";
    case FamilyKind::finitary_ut:
      return "finitary_ut(" + std::to_string(p) + ")";
  }
  return "?";
}

bool Family::operator==(const Family& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case FamilyKind::finite:
    case FamilyKind::direct_sum:
      return base == other.base || *base == *other.base;
    default:
      return p == other.p;
  }
}

Family finite_family(BaseTable table) {
  Family f;
  f.kind = FamilyKind::finite;
  f.base = std::make_shared<const BaseTable>(std::move(table));
  return f;
}

Family direct_sum_family(BaseTable base) {
  Family f;
  f.kind = FamilyKind::direct_sum;
  f.base = std::make_shared<const BaseTable>(std::move(base));
  return f;
}

Family poly_heis_family(int p) {
  if (!is_prime(p) || p > 251)
    fail(ErrorCode::schema_error,
         "poly_heis needs a prime characteristic <= 251, got " +
             std::to_string(p));
  Family f;
  f.kind = FamilyKind::poly_heis;
  f.p = p;
  return f;
}

Family finitary_ut_family(int p) {
  if (!is_prime(p) || p > 251)
    fail(ErrorCode::schema_error,
         "finitary_ut needs a prime characteristic <= 251, got " +
             std::to_string(p));
  Family f;
  f.kind = FamilyKind::finitary_ut;
  f.p = p;
  return f;
}

uint64_t ElemHash::hash64(const Elem& e) {
  // FNV-1a over the kind tag and payload bytes
  uint64_t h = 1469598103934665603ull;
  auto eat = [&h](uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  eat(static_cast<uint8_t>(e.kind));
  for (int16_t v : e.data) {
    eat(static_cast<uint8_t>(static_cast<uint16_t>(v) & 0xff));
    eat(static_cast<uint8_t>(static_cast<uint16_t>(v) >> 8));
  }
  return h;
}

bool canonical_less(const Elem& a, const Elem& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.data.size() != b.data.size()) return a.data.size() < b.data.size();
  return std::lexicographical_compare(a.data.begin(), a.data.end(),
                                      b.data.begin(), b.data.end());
}

Elem identity_elem(const Family& fam) {
  Elem e;
  e.kind = fam.kind;
  switch (fam.kind) {
    case FamilyKind::finite: e.data = {0}; break;
    case FamilyKind::direct_sum: break;
    case FamilyKind::poly_heis: e.data = {0, 0, 0}; break;
    case FamilyKind::finitary_ut: break;
  }
  return e;
}

bool is_identity(const Family& fam, const Elem& x) {
  check_kind(fam, x);
  switch (fam.kind) {
    case FamilyKind::finite: return x.data[0] == 0;
    case FamilyKind::direct_sum: return x.data.empty();
    case FamilyKind::poly_heis: return x.data.size() == 3;
    case FamilyKind::finitary_ut: return x.data.empty();
  }
  return false;
}

Elem mul(const Family& fam, const Elem& x, const Elem& y) {
  check_kind(fam, x);
  check_kind(fam, y);
  switch (fam.kind) {
    case FamilyKind::finite: {
      Elem e;
      e.kind = fam.kind;
      e.data = {static_cast<int16_t>(fam.base->at(x.data[0], y.data[0]))};
      return e;
    }
    case FamilyKind::direct_sum: {
      // coordinatewise product via sorted two-pointer merge
      Elem e;
      e.kind = fam.kind;
      e.data.reserve(x.data.size() + y.data.size());
      size_t i = 0, j = 0;
      while (i < x.data.size() || j < y.data.size()) {
        if (j == y.data.size() ||
            (i < x.data.size() && x.data[i] < y.data[j])) {
          e.data.push_back(x.data[i]);
          e.data.push_back(x.data[i + 1]);
          i += 2;
        } else if (i == x.data.size() || y.data[j] < x.data[i]) {
          e.data.push_back(y.data[j]);
          e.data.push_back(y.data[j + 1]);
          j += 2;
        } else {
          int v = fam.base->at(x.data[i + 1], y.data[j + 1]);
          if (v != 0) {
            e.data.push_back(x.data[i]);
            e.data.push_back(static_cast<int16_t>(v));
          }
          i += 2, j += 2;
        }
      }
      return e;
    }
    case FamilyKind::poly_heis: {
      HeisTriple s = heis_unpack(x), t = heis_unpack(y);
      HeisTriple r;
      r.a = poly_add(fam.p, s.a, t.a);
      r.b = poly_add(fam.p, s.b, t.b);
      r.c = poly_add(fam.p, poly_add(fam.p, s.c, t.c),
                     poly_mul(fam.p, s.a, t.b));
      return heis_pack(r);
    }
    case FamilyKind::finitary_ut: {
      // (I + M)(I + M') = I + M + M' + M M'
      UtMat m = ut_unpack(x), n = ut_unpack(y);
      return ut_pack(ut_add(fam.p, ut_add(fam.p, m, n), ut_mul(fam.p, m, n)));
    }
  }
  fail(ErrorCode::family_mismatch, "unreachable");
}

Elem inverse(const Family& fam, const Elem& x) {
  check_kind(fam, x);
  switch (fam.kind) {
    case FamilyKind::finite: {
      Elem e;
      e.kind = fam.kind;
      e.data = {static_cast<int16_t>(fam.base->inv[x.data[0]])};
      return e;
    }
    case FamilyKind::direct_sum: {
      Elem e = x;
      for (size_t i = 1; i < e.data.size(); i += 2)
        e.data[i] = static_cast<int16_t>(fam.base->inv[e.data[i]]);
      return e;
    }
    case FamilyKind::poly_heis: {
      // (a,b,c)^-1 = (-a, -b, a*b - c)
      HeisTriple t = heis_unpack(x);
      HeisTriple r;
      r.a = poly_neg(fam.p, t.a);
      r.b = poly_neg(fam.p, t.b);
      r.c = poly_add(fam.p, poly_mul(fam.p, t.a, t.b), poly_neg(fam.p, t.c));
      return heis_pack(r);
    }
    case FamilyKind::finitary_ut: {
      // (I + M)^-1 = I - M + M^2 - ... ; terminates since M is nilpotent
      UtMat m = ut_unpack(x);
      UtMat acc;      // accumulated inverse payload
      UtMat term = m; // (-1)^k M^k, sign folded into entries
      int sign = -1;
      while (!term.empty()) {
        UtMat signed_term = term;
        if (sign < 0)
          for (UtEntry& e : signed_term) e.v = fam.p - e.v;
        acc = ut_add(fam.p, acc, signed_term);
        term = ut_mul(fam.p, term, m);
        sign = -sign;
      }
      return ut_pack(acc);
    }
  }
  fail(ErrorCode::family_mismatch, "unreachable");
}

Elem pow(const Family& fam, const Elem& x, long long k) {
  Elem base = k < 0 ? inverse(fam, x) : x;
  unsigned long long n =
      k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1ull
            : static_cast<unsigned long long>(k);
  Elem acc = identity_elem(fam);
  while (n > 0) {
    if (n & 1) acc = mul(fam, acc, base);
    base = mul(fam, base, base);
    n >>= 1;
  }
  return acc;
}

uint64_t element_order(const Family& fam, const Elem& x, uint64_t cap) {
  check_kind(fam, x);
  if (fam.kind == FamilyKind::finite)
    return static_cast<uint64_t>(fam.base->elem_order(x.data[0]));
  if (fam.kind == FamilyKind::direct_sum) {
    // lcm of the coordinate orders
    uint64_t result = 1;
    for (size_t i = 1; i < x.data.size(); i += 2) {
      uint64_t o = static_cast<uint64_t>(fam.base->elem_order(x.data[i]));
      result = std::lcm(result, o);
      if (result > cap)
        fail(ErrorCode::order_budget_exceeded,
             "element order exceeds cap " + std::to_string(cap));
    }
    return result;
  }
  Elem cur = x;
  uint64_t n = 1;
  while (!is_identity(fam, cur)) {
    cur = mul(fam, cur, x);
    ++n;
    if (n > cap)
      fail(ErrorCode::order_budget_exceeded,
           "element order exceeds cap " + std::to_string(cap));
  }
  return n;
}

Elem finite_elem(const Family& fam, int index) {
  if (fam.kind != FamilyKind::finite)
    fail(ErrorCode::family_mismatch, "finite_elem on non-finite family");
  if (index < 0 || index >= fam.base->order)
    fail(ErrorCode::schema_error,
         "finite element index " + std::to_string(index) + " out of range");
  Elem e;
  e.kind = fam.kind;
  e.data = {static_cast<int16_t>(index)};
  return e;
}

Elem direct_sum_elem(const Family& fam,
                     std::vector<std::pair<int, int>> support) {
  if (fam.kind != FamilyKind::direct_sum)
    fail(ErrorCode::family_mismatch, "direct_sum_elem on wrong family");
  std::sort(support.begin(), support.end());
  Elem e;
  e.kind = fam.kind;
  for (size_t i = 0; i < support.size(); ++i) {
    auto [idx, v] = support[i];
    if (i > 0 && idx == support[i - 1].first)
      fail(ErrorCode::schema_error,
           "repeated support index " + std::to_string(idx));
    if (v < 0 || v >= fam.base->order)
      fail(ErrorCode::schema_error,
           "support value " + std::to_string(v) + " out of base range");
    if (v == 0) continue;
    e.data.push_back(to_i16(idx, "support index"));
    e.data.push_back(static_cast<int16_t>(v));
  }
  return e;
}

Elem poly_heis_elem(const Family& fam, std::vector<std::pair<int, int>> a,
                    std::vector<std::pair<int, int>> b,
                    std::vector<std::pair<int, int>> c) {
  if (fam.kind != FamilyKind::poly_heis)
    fail(ErrorCode::family_mismatch, "poly_heis_elem on wrong family");
  HeisTriple t;
  t.a = poly_canon(fam.p, std::move(a));
  t.b = poly_canon(fam.p, std::move(b));
  t.c = poly_canon(fam.p, std::move(c));
  return heis_pack(t);
}

Elem finitary_ut_elem(const Family& fam,
                      std::vector<std::array<int, 3>> entries) {
  if (fam.kind != FamilyKind::finitary_ut)
    fail(ErrorCode::family_mismatch, "finitary_ut_elem on wrong family");
  UtMat m;
  m.reserve(entries.size());
  for (const auto& e : entries) {
    if (e[0] < 1 || e[1] <= e[0])
      fail(ErrorCode::schema_error,
           "matrix entry (" + std::to_string(e[0]) + "," +
               std::to_string(e[1]) + ") not strictly upper triangular");
    m.push_back({e[0], e[1], e[2]});
  }
  size_t raw = m.size();
  m = ut_canon(fam.p, std::move(m));
  // catch repeated positions in the input (canon would silently merge them)
  if (raw > m.size()) {
    std::sort(entries.begin(), entries.end());
    for (size_t i = 1; i < entries.size(); ++i)
      if (entries[i][0] == entries[i - 1][0] &&
          entries[i][1] == entries[i - 1][1])
        fail(ErrorCode::schema_error,
             "repeated matrix position (" + std::to_string(entries[i][0]) +
                 "," + std::to_string(entries[i][1]) + ")");
  }
  return ut_pack(m);
}

Elem random_elem(const Family& fam, std::mt19937_64& rng) {
  auto rint = [&rng](int lo, int hi) {
    return static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1)) + lo;
  };
  switch (fam.kind) {
    case FamilyKind::finite:
      return finite_elem(fam, rint(0, fam.base->order - 1));
    case FamilyKind::direct_sum: {
      int size = rint(0, 3);
      std::vector<std::pair<int, int>> sup;
      for (int i = 0; i < size; ++i) {
        int idx = rint(-4, 4);
        bool seen = false;
        for (auto& s : sup) seen = seen || s.first == idx;
        if (!seen) sup.push_back({idx, rint(1, fam.base->order - 1)});
      }
      return direct_sum_elem(fam, std::move(sup));
    }
    case FamilyKind::poly_heis: {
      auto rpoly = [&]() {
        std::vector<std::pair<int, int>> poly;
        int size = rint(0, 2);
        for (int i = 0; i < size; ++i)
          poly.push_back({rint(-3, 3), rint(1, fam.p - 1)});
        return poly;
      };
      return poly_heis_elem(fam, rpoly(), rpoly(), rpoly());
    }
    case FamilyKind::finitary_ut: {
      int size = rint(0, 3);
      std::vector<std::array<int, 3>> entries;
      for (int i = 0; i < size; ++i) {
        int r = rint(1, 4);
        int c = rint(r + 1, 5);
        bool seen = false;
        for (auto& e : entries) seen = seen || (e[0] == r && e[1] == c);
        if (!seen) entries.push_back({r, c, rint(1, fam.p - 1)});
      }
      return finitary_ut_elem(fam, std::move(entries));
    }
  }
  fail(ErrorCode::family_mismatch, "unreachable");
}

}  // namespace entrolab
