#include "entrolab/element_set.hpp"

namespace entrolab {

void ElementSet::rehash(size_t new_slots) {
  slots_.assign(new_slots, 0);
  size_t mask = new_slots - 1;
  for (size_t idx = 0; idx < items_.size(); ++idx) {
    size_t i = static_cast<size_t>(hashes_[idx]) & mask;
    while (slots_[i] != 0) i = (i + 1) & mask;
    slots_[i] = static_cast<uint32_t>(idx + 1);
  }
}

void ElementSet::reserve(size_t n) {
  items_.reserve(n);
  hashes_.reserve(n);
  size_t want = 16;
  while (n * 10 >= want * 7) want *= 2;
  if (want > slots_.size()) rehash(want);
}

}  // namespace entrolab
