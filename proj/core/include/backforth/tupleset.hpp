#ifndef BACKFORTH_TUPLESET_HPP
#define BACKFORTH_TUPLESET_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace bf {

// Tuples over a carrier are stored encoded in a fixed base (the carrier
// size), first component most significant, so that ascending codes give
// lexicographic tuple order.
std::uint32_t encode_tuple(std::span<const int> tuple, int base);
std::vector<int> decode_tuple(std::uint32_t code, int arity, int base);

// A set of encoded tuples of one relation symbol, as a flat bitset of
// base^arity bits.
class TupleSet {
 public:
  TupleSet() = default;
  TupleSet(int base, int arity);

  int base() const { return base_; }
  int arity() const { return arity_; }
  std::uint32_t capacity() const { return capacity_; }

  void set(std::uint32_t code);
  bool test(std::uint32_t code) const;

  bool subset_of(const TupleSet& other) const;
  bool empty() const;
  int count() const;

  // Codes of all members, ascending.
  std::vector<std::uint32_t> codes() const;

  bool operator==(const TupleSet& other) const { return words_ == other.words_; }
  std::strong_ordering operator<=>(const TupleSet& other) const {
    return words_ <=> other.words_;
  }

 private:
  int base_ = 1;
  int arity_ = 0;
  std::uint32_t capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace bf

#endif
