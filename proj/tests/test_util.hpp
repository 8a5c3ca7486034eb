#pragma once

#include <random>

#include <tdg/surface.hpp>

namespace testutil {

// Random freely reduced word over the presentation's alphabet.
inline tdg::Word random_word(std::mt19937& rng, const tdg::SurfacePresentation& p,
                             int max_len) {
  int r = p.rank();
  tdg::Word w;
  if (r == 0 || max_len == 0) return w;
  std::uniform_int_distribution<int> len_d(0, max_len);
  std::uniform_int_distribution<int> gen_d(1, r);
  std::uniform_int_distribution<int> sign_d(0, 1);
  int len = len_d(rng);
  while (static_cast<int>(w.size()) < len) {
    int16_t l = static_cast<int16_t>(gen_d(rng));
    if (sign_d(rng)) l = static_cast<int16_t>(-l);
    if (!w.letters.empty() && w.letters.back() == -l) continue;
    w.letters.push_back(l);
  }
  return w;
}

}  // namespace testutil
