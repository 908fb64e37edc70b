#ifndef STABLESEQ_BITSET_HPP
#define STABLESEQ_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace stableseq {

/// Fixed-width bitset whose width is chosen at runtime.
class DynBitset {
public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  DynBitset() = default;
  explicit DynBitset(std::size_t width)
      : width_(width), words_((width + kWordBits - 1) / kWordBits, 0) {}

  std::size_t width() const { return width_; }

  void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  bool test(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_)
      c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (Word w : words_)
      if (w)
        return true;
    return false;
  }
  bool none() const { return !any(); }

  DynBitset &operator|=(const DynBitset &o) {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] |= o.words_[i];
    return *this;
  }
  DynBitset &operator&=(const DynBitset &o) {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= o.words_[i];
    return *this;
  }
  /// this := this \ o
  DynBitset &subtract(const DynBitset &o) {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= ~o.words_[i];
    return *this;
  }

  /// True iff every member of this set is in o.
  bool is_subset_of(const DynBitset &o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i])
        return false;
    return true;
  }
  bool intersects(const DynBitset &o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i])
        return true;
    return false;
  }

  /// Index of the first set bit at or after `from`, or width() if none.
  std::size_t next(std::size_t from) const {
    if (from >= width_)
      return width_;
    std::size_t wi = from / kWordBits;
    Word w = words_[wi] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (w)
        return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi >= words_.size())
        return width_;
      w = words_[wi];
    }
  }
  std::size_t first() const { return next(0); }

  template <class F> void for_each(F &&f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w) {
        f(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  const std::vector<Word> &words() const { return words_; }

  friend bool operator==(const DynBitset &, const DynBitset &) = default;

private:
  std::size_t width_ = 0;
  std::vector<Word> words_;
};

inline DynBitset operator|(DynBitset a, const DynBitset &b) { return a |= b; }
inline DynBitset operator&(DynBitset a, const DynBitset &b) { return a &= b; }

} // namespace stableseq

#endif // STABLESEQ_BITSET_HPP
