#include "entrolab/base_table.hpp"

#include <array>
#include <numeric>

#include "entrolab/errors.hpp"

namespace entrolab {

int BaseTable::elem_order(int a) const {
  int x = a;
  int k = 1;
  while (x != 0) {
    x = at(x, a);
    ++k;
  }
  return k;
}

int BaseTable::exponent() const {
  long long e = 1;
  for (int a = 0; a < order; ++a) {
    e = std::lcm(e, static_cast<long long>(elem_order(a)));
  }
  return static_cast<int>(e);
}

BaseTable make_table(int order, std::vector<int16_t> mul) {
  if (order < 1 || order > BaseTable::kMaxOrder) {
    fail(ErrorCode::invalid_table,
         "order " + std::to_string(order) + " outside [1, 256]");
  }
  if (mul.size() != static_cast<size_t>(order) * order) {
    fail(ErrorCode::invalid_table, "mul table has wrong size");
  }
  for (int16_t v : mul) {
    if (v < 0 || v >= order) {
      fail(ErrorCode::invalid_table, "mul entry out of range");
    }
  }
  BaseTable t;
  t.order = order;
  t.mul = std::move(mul);

  for (int a = 0; a < order; ++a) {
    if (t.at(0, a) != a || t.at(a, 0) != a) {
      fail(ErrorCode::invalid_table, "index 0 is not a two-sided identity");
    }
  }
  t.inv.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      if (t.at(a, b) == 0 && t.at(b, a) == 0) {
        t.inv[a] = static_cast<int16_t>(b);
        break;
      }
    }
    if (t.inv[a] < 0) {
      fail(ErrorCode::invalid_table,
           "element " + std::to_string(a) + " has no two-sided inverse");
    }
  }
  // Full associativity sweep; cubic in the order, hence the 256 cap.
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      int ab = t.at(a, b);
      for (int c = 0; c < order; ++c) {
        if (t.at(ab, c) != t.at(a, t.at(b, c))) {
          fail(ErrorCode::invalid_table, "multiplication is not associative");
        }
      }
    }
  }
  t.abelian = true;
  for (int a = 0; a < order && t.abelian; ++a) {
    for (int b = a + 1; b < order; ++b) {
      if (t.at(a, b) != t.at(b, a)) {
        t.abelian = false;
        break;
      }
    }
  }
  return t;
}

BaseTable cyclic_table(int n) {
  std::vector<int16_t> mul(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      mul[static_cast<size_t>(a) * n + b] = static_cast<int16_t>((a + b) % n);
    }
  }
  return make_table(n, std::move(mul));
}

namespace {

// Permutations of {0,1,2} in lexicographic order; identity lands at index 0.
constexpr std::array<std::array<int, 3>, 6> kS3Perms = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

int s3_index(const std::array<int, 3>& p) {
  for (int i = 0; i < 6; ++i) {
    if (kS3Perms[i] == p) return i;
  }
  return -1;
}

// Strictly upper triangular n x n bit matrices addressed by entry list.
template <int N, int E>
BaseTable ut_f2_table(const std::array<std::pair<int, int>, E>& entries) {
  const int order = 1 << E;
  auto to_matrix = [&](int idx) {
    std::array<std::array<int, N>, N> m{};
    for (int i = 0; i < N; ++i) m[i][i] = 1;
    for (int e = 0; e < E; ++e) {
      if ((idx >> e) & 1) m[entries[e].first][entries[e].second] = 1;
    }
    return m;
  };
  auto to_index = [&](const std::array<std::array<int, N>, N>& m) {
    int idx = 0;
    for (int e = 0; e < E; ++e) {
      if (m[entries[e].first][entries[e].second]) idx |= 1 << e;
    }
    return idx;
  };
  std::vector<int16_t> mul(static_cast<size_t>(order) * order);
  for (int a = 0; a < order; ++a) {
    auto ma = to_matrix(a);
    for (int b = 0; b < order; ++b) {
      auto mb = to_matrix(b);
      std::array<std::array<int, N>, N> mc{};
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
          int s = 0;
          for (int k = 0; k < N; ++k) s ^= ma[i][k] & mb[k][j];
          mc[i][j] = s;
        }
      }
      mul[static_cast<size_t>(a) * order + b] =
          static_cast<int16_t>(to_index(mc));
    }
  }
  return make_table(order, std::move(mul));
}

}  // namespace

BaseTable symmetric3_table() {
  std::vector<int16_t> mul(36);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      // (a*b)(x) = b(a(x)): apply a, then b.
      std::array<int, 3> p{};
      for (int x = 0; x < 3; ++x) p[x] = kS3Perms[b][kS3Perms[a][x]];
      mul[static_cast<size_t>(a) * 6 + b] = static_cast<int16_t>(s3_index(p));
    }
  }
  return make_table(6, std::move(mul));
}

BaseTable ut3_f2_table() {
  constexpr std::array<std::pair<int, int>, 3> entries = {
      {{0, 1}, {1, 2}, {0, 2}}};
  return ut_f2_table<3, 3>(entries);
}

BaseTable ut4_f2_table() {
  constexpr std::array<std::pair<int, int>, 6> entries = {
      {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}, {0, 3}}};
  return ut_f2_table<4, 6>(entries);
}

BaseTable direct_product_table(const BaseTable& a, const BaseTable& b) {
  const int order = a.order * b.order;
  if (order > BaseTable::kMaxOrder) {
    fail(ErrorCode::invalid_table, "direct product exceeds order cap");
  }
  // (x, y) is encoded as x*b.order + y, so (0, 0) stays at index 0.
  std::vector<int16_t> mul(static_cast<size_t>(order) * order);
  for (int x0 = 0; x0 < a.order; ++x0) {
    for (int y0 = 0; y0 < b.order; ++y0) {
      for (int x1 = 0; x1 < a.order; ++x1) {
        for (int y1 = 0; y1 < b.order; ++y1) {
          int lhs = x0 * b.order + y0;
          int rhs = x1 * b.order + y1;
          mul[static_cast<size_t>(lhs) * order + rhs] = static_cast<int16_t>(
              a.at(x0, x1) * b.order + b.at(y0, y1));
        }
      }
    }
  }
  return make_table(order, std::move(mul));
}

}  // namespace entrolab
