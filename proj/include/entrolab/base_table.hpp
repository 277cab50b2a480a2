#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace entrolab {

// A finite group given by its Cayley table. Index 0 is always the identity.
// Tables are validated in full at construction (two-sided identity, two-sided
// inverses, associativity by triple loop), which is why the order is capped.
struct BaseTable {
  static constexpr int kMaxOrder = 256;

  int order = 1;
  std::vector<int16_t> mul;  // order*order, row-major: mul[a*order+b] = a*b
  std::vector<int16_t> inv;  // two-sided inverses
  bool abelian = true;

  int at(int a, int b) const { return mul[static_cast<size_t>(a) * order + b]; }

  // Least k >= 1 with a^k = id. Finite groups only, so always defined.
  int elem_order(int a) const;

  // Smallest n >= 1 with x^n = id for all x.
  int exponent() const;

  bool operator==(const BaseTable& other) const {
    return order == other.order && mul == other.mul;
  }
};

// Validates identity/inverse/associativity axioms; throws invalid_table.
BaseTable make_table(int order, std::vector<int16_t> mul);

BaseTable cyclic_table(int n);
BaseTable symmetric3_table();
// Upper unitriangular 3x3 / 4x4 matrices over F_2 (orders 8 and 64).
BaseTable ut3_f2_table();
BaseTable ut4_f2_table();
BaseTable direct_product_table(const BaseTable& a, const BaseTable& b);

using TablePtr = std::shared_ptr<const BaseTable>;

}  // namespace entrolab
