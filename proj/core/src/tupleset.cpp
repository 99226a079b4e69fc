#include "backforth/tupleset.hpp"

#include <bit>
#include <cassert>

namespace bf {

std::uint32_t encode_tuple(std::span<const int> tuple, int base) {
  std::uint32_t code = 0;
  for (int v : tuple) {
    code = code * static_cast<std::uint32_t>(base) + static_cast<std::uint32_t>(v);
  }
  return code;
}

std::vector<int> decode_tuple(std::uint32_t code, int arity, int base) {
  std::vector<int> tuple(static_cast<std::size_t>(arity));
  for (int i = arity - 1; i >= 0; --i) {
    tuple[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::uint32_t>(base));
    code /= static_cast<std::uint32_t>(base);
  }
  return tuple;
}

TupleSet::TupleSet(int base, int arity) : base_(base < 1 ? 1 : base), arity_(arity) {
  capacity_ = 1;
  for (int i = 0; i < arity_; ++i) capacity_ *= static_cast<std::uint32_t>(base_);
  words_.assign((capacity_ + 63) / 64, 0);
}

void TupleSet::set(std::uint32_t code) {
  assert(code < capacity_);
  words_[code >> 6] |= (std::uint64_t{1} << (code & 63));
}

bool TupleSet::test(std::uint32_t code) const {
  if (code >= capacity_) return false;
  return (words_[code >> 6] >> (code & 63)) & 1;
}

bool TupleSet::subset_of(const TupleSet& other) const {
  assert(words_.size() == other.words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool TupleSet::empty() const {
  for (auto w : words_) {
    if (w) return false;
  }
  return true;
}

int TupleSet::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::vector<std::uint32_t> TupleSet::codes() const {
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(count()));
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(b)));
      w &= w - 1;
    }
  }
  return out;
}

}  // namespace bf
