#pragma once

#include <cstdint>
#include <vector>

#include "entrolab/element.hpp"

namespace entrolab {

// Set of elements that remembers insertion order. Enumeration order is the
// insertion order, so every algorithm built on top of this is deterministic
// regardless of hash values. Lookup goes through an open-addressed index of
// uint32 slots over cached 64-bit hashes.
class ElementSet {
 public:
  ElementSet() { rehash(16); }

  bool insert(Elem e) {
    uint64_t h = ElemHash::hash64(e);
    size_t slot = probe(e, h);
    if (slots_[slot] != 0) return false;
    items_.push_back(std::move(e));
    hashes_.push_back(h);
    slots_[slot] = static_cast<uint32_t>(items_.size());  // index + 1
    if (items_.size() * 10 >= slots_.size() * 7) rehash(slots_.size() * 2);
    return true;
  }

  bool contains(const Elem& e) const {
    return slots_[probe(e, ElemHash::hash64(e))] != 0;
  }

  // insertion index of e, or -1 when absent
  ptrdiff_t index_of(const Elem& e) const {
    uint32_t s = slots_[probe(e, ElemHash::hash64(e))];
    return s == 0 ? -1 : static_cast<ptrdiff_t>(s) - 1;
  }

  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Elem& operator[](size_t i) const { return items_[i]; }
  const std::vector<Elem>& items() const { return items_; }

  std::vector<Elem>::const_iterator begin() const { return items_.begin(); }
  std::vector<Elem>::const_iterator end() const { return items_.end(); }

  void reserve(size_t n);

 private:
  std::vector<Elem> items_;
  std::vector<uint64_t> hashes_;
  std::vector<uint32_t> slots_;  // stores index+1, 0 means empty

  size_t probe(const Elem& e, uint64_t h) const {
    size_t mask = slots_.size() - 1;
    size_t i = static_cast<size_t>(h) & mask;
    while (slots_[i] != 0) {
      uint32_t idx = slots_[i] - 1;
      if (hashes_[idx] == h && items_[idx] == e) return i;
      i = (i + 1) & mask;
    }
    return i;
  }

  void rehash(size_t new_slots);
};

// A finite subgroup presented by its full element list (closed under the
// operation and inverses, identity included) plus the generators it came from.
struct FiniteSubgroup {
  Family family;
  ElementSet elements;
  std::vector<Elem> generators;

  size_t order() const { return elements.size(); }
  bool contains(const Elem& e) const { return elements.contains(e); }
};

}  // namespace entrolab
