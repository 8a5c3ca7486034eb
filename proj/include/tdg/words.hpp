#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tdg {

// All failures surface as tdg::error with a stable machine-readable kind
// ("unknown-generator", "invalid-site", ...) plus a human message.
class error : public std::runtime_error {
 public:
  error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// A letter is a signed 1-based generator index: +k is the k-th generator,
// -k its inverse. Words are plain letter sequences; they are not kept
// reduced automatically (free_reduce is an explicit operation), but every
// helper that builds words from other words reduces as it goes.
struct Word {
  std::vector<int16_t> letters;

  Word() = default;
  explicit Word(std::vector<int16_t> ls) : letters(std::move(ls)) {}

  static Word parse(std::string_view text) {
    Word w;
    if (text == "1") return w;
    for (char c : text) {
      if (c >= 'a' && c <= 'z')
        w.letters.push_back(static_cast<int16_t>(c - 'a' + 1));
      else if (c >= 'A' && c <= 'Z')
        w.letters.push_back(static_cast<int16_t>(-(c - 'A' + 1)));
      else
        throw error("unknown-generator",
                    std::string("bad character '") + c + "' in word \"" +
                        std::string(text) + "\"");
    }
    return w;
  }

  std::string str() const {
    if (letters.empty()) return "1";
    std::string s;
    for (int16_t l : letters)
      s += static_cast<char>(l > 0 ? 'a' + l - 1 : 'A' - l - 1);
    return s;
  }

  size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }

  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator!=(const Word& o) const { return letters != o.letters; }

  // Order used wherever a deterministic least representative is needed:
  // shorter first, then letterwise with a < A < b < B < ...
  static int letter_rank(int16_t l) {
    return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1;
  }
  bool operator<(const Word& o) const {
    if (letters.size() != o.letters.size())
      return letters.size() < o.letters.size();
    for (size_t i = 0; i < letters.size(); ++i)
      if (letters[i] != o.letters[i])
        return letter_rank(letters[i]) < letter_rank(o.letters[i]);
    return false;
  }

  Word inverse() const {
    Word w;
    w.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      w.letters.push_back(static_cast<int16_t>(-*it));
    return w;
  }

  // Reduced concatenation.
  Word operator*(const Word& o) const {
    Word w = *this;
    for (int16_t l : o.letters) {
      if (!w.letters.empty() && w.letters.back() == -l)
        w.letters.pop_back();
      else
        w.letters.push_back(l);
    }
    return w;
  }

  Word pow(int n) const {
    Word base = n >= 0 ? *this : inverse();
    Word w;
    for (int i = 0; i < std::abs(n); ++i) w = w * base;
    return w;
  }

  Word reduced() const { return Word() * *this; }

  // Strips matching ends: *this = prefix * core * prefix^-1 with core
  // cyclically reduced (assumes *this already freely reduced).
  Word cyclic_core(Word* prefix = nullptr) const {
    size_t lo = 0, hi = letters.size();
    while (hi - lo >= 2 && letters[lo] == -letters[hi - 1]) {
      ++lo;
      --hi;
    }
    if (prefix) {
      prefix->letters.assign(letters.begin(), letters.begin() + lo);
    }
    Word core;
    core.letters.assign(letters.begin() + lo, letters.begin() + hi);
    return core;
  }

  Word rotated(size_t k) const {
    Word w;
    size_t n = letters.size();
    if (n == 0) return w;
    k %= n;
    w.letters.reserve(n);
    for (size_t i = 0; i < n; ++i) w.letters.push_back(letters[(i + k) % n]);
    return w;
  }

  int max_generator() const {
    int m = 0;
    for (int16_t l : letters) m = std::max(m, static_cast<int>(std::abs(l)));
    return m;
  }
};

inline Word free_reduce(const Word& w) { return w.reduced(); }

}  // namespace tdg
