#pragma once

#include <algorithm>
#include <vector>

#include "entrolab/element.hpp"
#include "entrolab/parallel.hpp"

namespace entrolab {

// Products rows[i] * cols[j] streamed in waves: each wave is computed in
// parallel, then handed to the sink sequentially in (i, j) order, so the
// overall effect is identical to the sequential double loop regardless of
// the worker count. The sink must not mutate `rows` or `cols`.
template <class Sink>
void stream_products(const Family& fam, const std::vector<Elem>& rows,
                     const std::vector<Elem>& cols, Sink&& sink) {
  if (rows.empty() || cols.empty()) return;
  const size_t wave = std::max<size_t>(1, 65536 / cols.size());
  std::vector<Elem> buf;
  for (size_t r0 = 0; r0 < rows.size(); r0 += wave) {
    const size_t r1 = std::min(rows.size(), r0 + wave);
    par::map_indexed((r1 - r0) * cols.size(), buf, [&](size_t i) {
      return mul(fam, rows[r0 + i / cols.size()], cols[i % cols.size()]);
    });
    size_t i = r0, j = 0;
    for (Elem& e : buf) {
      sink(i, j, std::move(e));
      if (++j == cols.size()) {
        j = 0;
        ++i;
      }
    }
  }
}

}  // namespace entrolab
