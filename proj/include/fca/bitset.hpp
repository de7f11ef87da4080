#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace fca {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Fixed-width bit vector over a dense index space 0..size()-1.
///
/// The tag parameter keeps attribute sets, object sets and plain element sets
/// from being mixed up by accident; `retag` converts explicitly where the
/// duality of objects and attributes is intended.
template <class Tag>
class BasicBitSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BasicBitSet() = default;
  explicit BasicBitSet(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}
  BasicBitSet(std::size_t size, std::initializer_list<std::size_t> members) : BasicBitSet(size) {
    for (auto i : members) set(i);
  }

  static BasicBitSet full(std::size_t size) {
    BasicBitSet s(size);
    std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
    s.trim();
    return s;
  }

  static BasicBitSet from_indices(std::size_t size, const std::vector<std::size_t>& members) {
    BasicBitSet s(size);
    for (auto i : members) s.set(i);
    return s;
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  bool contains(std::size_t i) const { return i < size_ && test(i); }

  BasicBitSet& set(std::size_t i) {
    words_[i / kWordBits] |= Word{1} << (i % kWordBits);
    return *this;
  }
  BasicBitSet& reset(std::size_t i) {
    words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
    return *this;
  }
  BasicBitSet& assign(std::size_t i, bool v) { return v ? set(i) : reset(i); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }
  bool any() const { return !none(); }
  bool all() const { return count() == size_; }

  /// Smallest member, or npos.
  std::size_t first() const { return next(0); }

  /// Smallest member >= from, or npos.
  std::size_t next(std::size_t from) const {
    if (from >= size_) return npos;
    std::size_t w = from / kWordBits;
    Word cur = words_[w] & (~Word{0} << (from % kWordBits));
    while (true) {
      if (cur != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
      if (++w >= words_.size()) return npos;
      cur = words_[w];
    }
  }

  /// Largest member, or npos.
  std::size_t last() const {
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (words_[w] != 0) return w * kWordBits + (kWordBits - 1 - static_cast<std::size_t>(std::countl_zero(words_[w])));
    }
    return npos;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (auto i = first(); i != npos; i = next(i + 1)) out.push_back(i);
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (auto i = first(); i != npos; i = next(i + 1)) f(i);
  }

  bool is_subset_of(const BasicBitSet& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }
  bool is_proper_subset_of(const BasicBitSet& o) const { return is_subset_of(o) && *this != o; }
  bool intersects(const BasicBitSet& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }

  /// Members strictly below `bound`.
  BasicBitSet prefix(std::size_t bound) const {
    BasicBitSet s = *this;
    for (std::size_t w = 0; w < s.words_.size(); ++w) {
      std::size_t lo = w * kWordBits;
      if (lo >= bound) {
        s.words_[w] = 0;
      } else if (bound - lo < kWordBits) {
        s.words_[w] &= (Word{1} << (bound - lo)) - 1;
      }
    }
    return s;
  }

  /// True if both sets agree on every index strictly below `bound`.
  bool equal_below(const BasicBitSet& o, std::size_t bound) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::size_t lo = w * kWordBits;
      if (lo >= bound) break;
      Word diff = words_[w] ^ o.words_[w];
      if (bound - lo < kWordBits) diff &= (Word{1} << (bound - lo)) - 1;
      if (diff) return false;
    }
    return true;
  }

  BasicBitSet& operator|=(const BasicBitSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  BasicBitSet& operator&=(const BasicBitSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  BasicBitSet& operator-=(const BasicBitSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  BasicBitSet& operator^=(const BasicBitSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  friend BasicBitSet operator|(BasicBitSet a, const BasicBitSet& b) { return a |= b; }
  friend BasicBitSet operator&(BasicBitSet a, const BasicBitSet& b) { return a &= b; }
  friend BasicBitSet operator-(BasicBitSet a, const BasicBitSet& b) { return a -= b; }
  friend BasicBitSet operator^(BasicBitSet a, const BasicBitSet& b) { return a ^= b; }

  BasicBitSet operator~() const {
    BasicBitSet s = *this;
    for (auto& w : s.words_) w = ~w;
    s.trim();
    return s;
  }

  BasicBitSet with(std::size_t i) const {
    BasicBitSet s = *this;
    s.set(i);
    return s;
  }
  BasicBitSet without(std::size_t i) const {
    BasicBitSet s = *this;
    s.reset(i);
    return s;
  }

  friend bool operator==(const BasicBitSet&, const BasicBitSet&) = default;

  /// Lectic order: the smallest index where the sets differ belongs to `b`.
  friend bool lectic_less(const BasicBitSet& a, const BasicBitSet& b) {
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      Word diff = a.words_[w] ^ b.words_[w];
      if (diff) return (b.words_[w] >> std::countr_zero(diff)) & 1U;
    }
    return false;
  }

  template <class Other>
  BasicBitSet<Other> retag() const {
    BasicBitSet<Other> s(size_);
    for_each([&](std::size_t i) { s.set(i); });
    return s;
  }

  /// "0101..." with index 0 first.
  std::string to_string() const {
    std::string s(size_, '0');
    for_each([&](std::size_t i) { s[i] = '1'; });
    return s;
  }

  std::size_t hash() const {
    std::size_t h = size_;
    for (auto w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  void trim() {
    if (size_ % kWordBits != 0 && !words_.empty()) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

struct ElementTag {};
struct AttributeTag {};
struct ObjectTag {};

using ElementSet = BasicBitSet<ElementTag>;
using AttributeSet = BasicBitSet<AttributeTag>;
using ObjectSet = BasicBitSet<ObjectTag>;

struct BitSetHash {
  template <class Tag>
  std::size_t operator()(const BasicBitSet<Tag>& s) const {
    return s.hash();
  }
};

}  // namespace fca
