#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace margulis {

/// Reduced words over a free product of cyclic groups.  A syllable is a
/// generator index with a nonzero exponent; adjacent syllables carry distinct
/// indices, and exponents of finite-order generators are canonicalized into
/// the symmetric range (-m/2, m/2] (ties going positive).

struct Syllable {
  int gen = 0;
  long exp = 0;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Finite orders per generator; disengaged means infinite order.
using Orders = std::vector<std::optional<int>>;

struct Word {
  std::vector<Syllable> syllables;

  bool empty() const { return syllables.empty(); }

  /// Total letter count, i.e. the sum of |exponent| over syllables.
  long length() const;

  friend bool operator==(const Word&, const Word&) = default;
};

long canonical_exponent(long e, const std::optional<int>& order);

/// Free-product normal form: merges adjacent syllables with equal index,
/// reduces exponents modulo finite orders, drops trivial syllables.
/// Idempotent.
Word reduce_word(std::span<const Syllable> raw, const Orders& orders);

Word word_inverse(const Word& w, const Orders& orders);
Word word_concat(const Word& a, const Word& b, const Orders& orders);
Word word_power(const Word& w, long k, const Orders& orders);

/// All nonempty reduced words of letter length at most max_len, grouped by
/// length and ordered lexicographically by syllable key (generator index,
/// then positive exponents before negative, then magnitude).  Deterministic.
std::vector<Word> enumerate_words(int n_gens, const Orders& orders, int max_len);

/// "g1^2.g2^-1" style rendering; exponent 1 is left implicit, the empty word
/// renders as "1".
std::string word_to_string(const Word& w);

Word parse_word(const std::string& text, int n_gens, const Orders& orders);

}  // namespace margulis
