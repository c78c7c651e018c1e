#include "margulis/words.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>

#include "margulis/types.hpp"

namespace margulis {

long Word::length() const {
  long n = 0;
  for (const auto& s : syllables) n += std::labs(s.exp);
  return n;
}

long canonical_exponent(long e, const std::optional<int>& order) {
  if (!order) return e;
  const long m = *order;
  if (m <= 0) throw MalformedInput("canonical_exponent: order must be positive");
  long r = e % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

namespace {

std::optional<int> order_of(const Orders& orders, int gen) {
  if (orders.empty()) return std::nullopt;
  if (gen < 0 || gen >= static_cast<int>(orders.size()))
    throw UnknownGenerator("generator index out of range");
  return orders[static_cast<size_t>(gen)];
}

}  // namespace

Word reduce_word(std::span<const Syllable> raw, const Orders& orders) {
  Word out;
  for (const Syllable& s : raw) {
    if (s.gen < 0) throw UnknownGenerator("negative generator index");
    long e = canonical_exponent(s.exp, order_of(orders, s.gen));
    if (e == 0) continue;
    if (!out.syllables.empty() && out.syllables.back().gen == s.gen) {
      long merged = canonical_exponent(out.syllables.back().exp + e,
                                       order_of(orders, s.gen));
      out.syllables.pop_back();
      if (merged != 0) out.syllables.push_back({s.gen, merged});
    } else {
      out.syllables.push_back({s.gen, e});
    }
  }
  return out;
}

Word word_inverse(const Word& w, const Orders& orders) {
  std::vector<Syllable> rev;
  rev.reserve(w.syllables.size());
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
    rev.push_back({it->gen, -it->exp});
  return reduce_word(rev, orders);
}

Word word_concat(const Word& a, const Word& b, const Orders& orders) {
  std::vector<Syllable> joined = a.syllables;
  joined.insert(joined.end(), b.syllables.begin(), b.syllables.end());
  return reduce_word(joined, orders);
}

Word word_power(const Word& w, long k, const Orders& orders) {
  Word base = k >= 0 ? w : word_inverse(w, orders);
  Word acc;
  for (long i = 0; i < std::labs(k); ++i) acc = word_concat(acc, base, orders);
  return acc;
}

namespace {

// Canonical exponents available to a syllable, in enumeration order:
// +1, +2, ... then -1, -2, ...  Finite orders cap the ranges at the
// symmetric representatives.
void syllable_exponents(const std::optional<int>& order, long budget,
                        std::vector<long>& out) {
  out.clear();
  long pos_max = budget, neg_max = budget;
  if (order) {
    pos_max = std::min<long>(pos_max, *order / 2);
    neg_max = std::min<long>(neg_max, (*order - 1) / 2);
  }
  for (long e = 1; e <= pos_max; ++e) out.push_back(e);
  for (long e = 1; e <= neg_max; ++e) out.push_back(-e);
}

void emit_exact(int n_gens, const Orders& orders, long remaining, int last,
                std::vector<Syllable>& cur, std::vector<Word>& out) {
  if (remaining == 0) {
    out.push_back(Word{cur});
    return;
  }
  std::vector<long> exps;
  for (int g = 0; g < n_gens; ++g) {
    if (g == last) continue;
    syllable_exponents(order_of(orders, g), remaining, exps);
    for (long e : exps) {
      if (std::labs(e) > remaining) continue;
      cur.push_back({g, e});
      emit_exact(n_gens, orders, remaining - std::labs(e), g, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

std::vector<Word> enumerate_words(int n_gens, const Orders& orders, int max_len) {
  if (n_gens <= 0) throw MalformedInput("enumerate_words: need generators");
  if (!orders.empty() && static_cast<int>(orders.size()) != n_gens)
    throw MalformedInput("enumerate_words: orders length mismatch");
  if (max_len < 1) throw MalformedInput("enumerate_words: max_len must be >= 1");
  std::vector<Word> out;
  std::vector<Syllable> cur;
  for (long len = 1; len <= max_len; ++len)
    emit_exact(n_gens, orders, len, -1, cur, out);
  return out;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.syllables.size(); ++i) {
    if (i) s += '.';
    s += 'g';
    s += std::to_string(w.syllables[i].gen + 1);
    if (w.syllables[i].exp != 1) {
      s += '^';
      s += std::to_string(w.syllables[i].exp);
    }
  }
  return s;
}

Word parse_word(const std::string& text, int n_gens, const Orders& orders) {
  if (text == "1" || text.empty()) return Word{};
  std::vector<Syllable> raw;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('.', pos);
    if (end == std::string::npos) end = text.size();
    const std::string_view piece(text.data() + pos, end - pos);
    if (piece.size() < 2 || piece[0] != 'g')
      throw MalformedInput("parse_word: bad syllable '" + std::string(piece) + "'");
    size_t caret = piece.find('^');
    const std::string_view idx = piece.substr(1, caret == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : caret - 1);
    int gen = 0;
    auto res = std::from_chars(idx.data(), idx.data() + idx.size(), gen);
    if (res.ec != std::errc() || res.ptr != idx.data() + idx.size())
      throw MalformedInput("parse_word: bad generator index");
    gen -= 1;
    if (gen < 0 || gen >= n_gens)
      throw UnknownGenerator("parse_word: generator out of range");
    long exp = 1;
    if (caret != std::string_view::npos) {
      const std::string_view es = piece.substr(caret + 1);
      auto r2 = std::from_chars(es.data(), es.data() + es.size(), exp);
      if (r2.ec != std::errc() || r2.ptr != es.data() + es.size())
        throw MalformedInput("parse_word: bad exponent");
    }
    raw.push_back({gen, exp});
    pos = end + 1;
  }
  return reduce_word(raw, orders);
}

}  // namespace margulis
