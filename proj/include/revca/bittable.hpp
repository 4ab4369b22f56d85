// Packed bit sequence of fixed length. Backing store for truth tables and
// CA configurations; all higher-level types index bits through this.
#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace revca {

class BitTable {
 public:
  BitTable() = default;

  explicit BitTable(std::size_t n, bool fill = false)
      : size_(n), words_((n + 63) / 64, fill ? ~0ull : 0ull) {
    trim();
  }

  static BitTable from_word(std::uint64_t bits, std::size_t n) {
    if (n > 64) throw std::invalid_argument("from_word: n > 64");
    BitTable t(n);
    if (n > 0) t.words_[0] = bits & t.tail_mask();
    return t;
  }

  // "0110..." with s[i] giving bit i.
  static BitTable from_string(std::string_view s) {
    BitTable t(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        t.set(i, true);
      else if (s[i] != '0')
        throw std::invalid_argument("from_string: expected only 0/1");
    }
    return t;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

  void set(std::size_t i, bool v) {
    std::uint64_t bit = 1ull << (i % 64);
    if (v)
      words_[i / 64] |= bit;
    else
      words_[i / 64] &= ~bit;
  }

  void flip(std::size_t i) { words_[i / 64] ^= 1ull << (i % 64); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }

  // Bit order reversal: out[i] = in[size-1-i].
  BitTable reversed() const {
    BitTable t(size_);
    for (std::size_t i = 0; i < size_; ++i)
      if (get(i)) t.set(size_ - 1 - i, true);
    return t;
  }

  template <class Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        unsigned b = static_cast<unsigned>(std::countr_zero(w));
        fn(wi * 64 + b);
        w &= w - 1;
      }
    }
  }

  std::uint64_t word(std::size_t i) const { return words_[i]; }
  std::size_t word_count() const { return words_.size(); }
  std::uint64_t& mutable_word(std::size_t i) { return words_[i]; }

  // Value as a single word; only valid for size <= 64.
  std::uint64_t as_word() const {
    if (size_ > 64) throw std::logic_error("as_word: table wider than 64 bits");
    return size_ == 0 ? 0 : words_[0];
  }

  BitTable& operator&=(const BitTable& o) { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a & b; }); }
  BitTable& operator|=(const BitTable& o) { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a | b; }); }
  BitTable& operator^=(const BitTable& o) { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a ^ b; }); }

  void invert() {
    for (auto& w : words_) w = ~w;
    trim();
  }

  friend bool operator==(const BitTable& a, const BitTable& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

  // Lexicographic order on the bit sequence: first differing index decides.
  friend bool operator<(const BitTable& a, const BitTable& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      std::uint64_t x = a.words_[i] ^ b.words_[i];
      if (x) {
        unsigned bit = static_cast<unsigned>(std::countr_zero(x));
        return !((a.words_[i] >> bit) & 1u);
      }
    }
    return false;
  }

  std::string str() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  // Hex with the highest bit index as the most significant digit,
  // zero-padded to ceil(size/4) digits.
  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::size_t ndigits = (size_ + 3) / 4;
    std::string s;
    s.reserve(ndigits);
    for (std::size_t k = ndigits; k-- > 0;) {
      unsigned nib = 0;
      for (unsigned b = 0; b < 4; ++b) {
        std::size_t i = k * 4 + b;
        if (i < size_ && get(i)) nib |= 1u << b;
      }
      s.push_back(digits[nib]);
    }
    return s;
  }

  static BitTable from_hex(std::string_view s, std::size_t n) {
    BitTable t(n);
    std::size_t bit = 0;  // fills from low indices; s is most-significant first
    for (std::size_t k = s.size(); k-- > 0;) {
      char c = s[s.size() - 1 - k];
      unsigned nib;
      if (c >= '0' && c <= '9')
        nib = static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f')
        nib = static_cast<unsigned>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F')
        nib = static_cast<unsigned>(c - 'A' + 10);
      else
        throw std::invalid_argument("from_hex: bad digit");
      for (unsigned b = 0; b < 4; ++b) {
        std::size_t i = k * 4 + b;
        if (nib & (1u << b)) {
          if (i >= n) throw std::invalid_argument("from_hex: value wider than table");
          t.set(i, true);
        }
      }
      ++bit;
    }
    return t;
  }

 private:
  template <class F>
  BitTable& zip(const BitTable& o, F f) {
    if (o.size_ != size_) throw std::invalid_argument("BitTable size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] = f(words_[i], o.words_[i]);
    trim();
    return *this;
  }

  std::uint64_t tail_mask() const {
    unsigned r = size_ % 64;
    return r == 0 ? ~0ull : (~0ull >> (64 - r));
  }

  void trim() {
    if (!words_.empty() && size_ % 64 != 0) words_.back() &= tail_mask();
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace revca
