#pragma once

#include <array>
#include <numeric>
#include <optional>
#include <utility>

#include "words.hpp"

namespace tdg {

enum class Verdict { Equal, NotEqual, Undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "equal";
    case Verdict::NotEqual: return "not-equal";
    default: return "undecided";
  }
}

// Tri-state conjunction: false dominates, then undecided.
inline Verdict both(Verdict a, Verdict b) {
  if (a == Verdict::NotEqual || b == Verdict::NotEqual)
    return Verdict::NotEqual;
  if (a == Verdict::Undecided || b == Verdict::Undecided)
    return Verdict::Undecided;
  return Verdict::Equal;
}

inline Verdict either(Verdict a, Verdict b) {
  if (a == Verdict::Equal || b == Verdict::Equal) return Verdict::Equal;
  if (a == Verdict::Undecided || b == Verdict::Undecided)
    return Verdict::Undecided;
  return Verdict::NotEqual;
}

enum class SurfaceKind {
  Sphere,           // g=0 b=0: trivial group
  Disk,             // g=0 b=1: trivial group
  Free,             // b>0: free of rank 2g+b-1
  Torus,            // g=1 b=0: Z^2
  ClosedHyperbolic  // g>=2 b=0: one-relator, Dehn's algorithm
};

struct SurfacePresentation {
  int genus = 0;
  int boundary = 0;
  std::string alphabet;  // ordered generator symbols, lowercase

  static SurfacePresentation make(int genus, int boundary,
                                  std::string alphabet = "") {
    if (genus < 0 || boundary < 0)
      throw error("bad-surface", "genus/boundary must be non-negative");
    SurfacePresentation p;
    p.genus = genus;
    p.boundary = boundary;
    int r = p.rank();
    if (alphabet.empty()) {
      for (int i = 0; i < r; ++i) alphabet += static_cast<char>('a' + i);
    }
    if (static_cast<int>(alphabet.size()) != r)
      throw error("bad-surface", "alphabet size " +
                                     std::to_string(alphabet.size()) +
                                     " does not match rank " +
                                     std::to_string(r));
    for (size_t i = 0; i < alphabet.size(); ++i) {
      char c = alphabet[i];
      if (c < 'a' || c > 'z')
        throw error("bad-surface", "generators must be lowercase letters");
      if (alphabet.find(c, i + 1) != std::string::npos)
        throw error("bad-surface", "duplicate generator");
    }
    p.alphabet = std::move(alphabet);
    return p;
  }

  SurfaceKind kind() const {
    if (boundary > 0) {
      if (genus == 0 && boundary == 1) return SurfaceKind::Disk;
      return SurfaceKind::Free;
    }
    if (genus == 0) return SurfaceKind::Sphere;
    if (genus == 1) return SurfaceKind::Torus;
    return SurfaceKind::ClosedHyperbolic;
  }

  int rank() const {
    if (boundary > 0) return 2 * genus + boundary - 1;
    return 2 * genus;
  }

  bool trivial_group() const { return rank() == 0; }

  // pi_1 is abelian for the sphere, disk, annulus and torus.
  bool abelian() const {
    SurfaceKind k = kind();
    return k == SurfaceKind::Sphere || k == SurfaceKind::Disk ||
           k == SurfaceKind::Torus || (k == SurfaceKind::Free && rank() <= 1);
  }

  // Parse a word in this presentation's alphabet into internal indices.
  Word parse(std::string_view text) const {
    Word w;
    if (text == "1" || text.empty()) return w;
    for (char c : text) {
      char low = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
      size_t idx = alphabet.find(low);
      if (idx == std::string::npos)
        throw error("unknown-generator", std::string("generator '") + c +
                                             "' not in alphabet \"" +
                                             alphabet + "\"");
      int16_t l = static_cast<int16_t>(idx + 1);
      w.letters.push_back(c == low ? l : static_cast<int16_t>(-l));
    }
    return w;
  }

  std::string render(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (int16_t l : w.letters) {
      int idx = std::abs(l) - 1;
      if (idx >= static_cast<int>(alphabet.size()))
        throw error("unknown-generator", "letter index out of range");
      char c = alphabet[idx];
      s += l > 0 ? c : static_cast<char>(c - 'a' + 'A');
    }
    return s;
  }

  void check_alphabet(const Word& w) const {
    if (w.max_generator() > rank())
      throw error("unknown-generator", "word uses a generator outside the "
                                       "surface presentation");
  }

  // Relator of the closed surface: product of genus commutators.
  Word relator() const {
    if (boundary != 0 || genus < 1)
      throw error("unsupported-presentation", "no relator for this surface");
    Word r;
    for (int i = 0; i < genus; ++i) {
      int16_t a = static_cast<int16_t>(2 * i + 1);
      int16_t b = static_cast<int16_t>(2 * i + 2);
      for (int16_t l : {a, b, static_cast<int16_t>(-a),
                        static_cast<int16_t>(-b)})
        r.letters.push_back(l);
    }
    return r;
  }
};

namespace detail {

// Exponent sums, for abelianization (torus words_equal, H1 separations).
inline std::vector<long> abelianize(const Word& w, int rank) {
  std::vector<long> e(static_cast<size_t>(rank), 0);
  for (int16_t l : w.letters) e[static_cast<size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
  return e;
}

// Dehn's algorithm for the closed genus>=2 surface group: repeatedly
// replace any subword longer than half the relator by the shorter
// complement. The standard relator satisfies C'(1/6), so a freely reduced
// word equals 1 iff this terminates at the empty word.
inline Word dehn_reduce(Word w, const SurfacePresentation& p) {
  Word r = p.relator();
  size_t L = r.size();
  std::vector<Word> rots;
  for (const Word& base : {r, r.inverse()})
    for (size_t k = 0; k < L; ++k) rots.push_back(base.rotated(k));
  w = free_reduce(w);
  bool changed = true;
  while (changed) {
    changed = false;
    size_t half = L / 2;  // need a match strictly longer than L/2
    for (size_t i = 0; i + half < w.size() && !changed; ++i) {
      for (const Word& rho : rots) {
        size_t k = 0;
        while (k < L && i + k < w.size() && w.letters[i + k] == rho.letters[k])
          ++k;
        if (k > half) {
          // rho = matched * tail, matched == tail^-1 in the group.
          Word tail;
          tail.letters.assign(rho.letters.begin() + k, rho.letters.end());
          Word out;
          out.letters.assign(w.letters.begin(), w.letters.begin() + i);
          out = out * tail.inverse();
          Word rest;
          rest.letters.assign(w.letters.begin() + i + k, w.letters.end());
          w = out * rest;
          changed = true;
          break;
        }
      }
    }
  }
  return w;
}

}  // namespace detail

inline Word normal_form(const Word& w, const SurfacePresentation& p) {
  p.check_alphabet(w);
  switch (p.kind()) {
    case SurfaceKind::Sphere:
    case SurfaceKind::Disk:
      return Word();
    case SurfaceKind::Free:
      return free_reduce(w);
    case SurfaceKind::Torus: {
      auto e = detail::abelianize(w, 2);
      Word nf;
      for (int g = 0; g < 2; ++g) {
        int16_t l = static_cast<int16_t>(e[g] > 0 ? g + 1 : -(g + 1));
        for (long i = 0; i < std::abs(e[g]); ++i) nf.letters.push_back(l);
      }
      return nf;
    }
    case SurfaceKind::ClosedHyperbolic:
      return detail::dehn_reduce(w, p);
  }
  throw error("unsupported-presentation", "unreachable");
}

inline Verdict words_equal(const Word& x, const Word& y,
                           const SurfacePresentation& p) {
  p.check_alphabet(x);
  p.check_alphabet(y);
  switch (p.kind()) {
    case SurfaceKind::Sphere:
    case SurfaceKind::Disk:
      return Verdict::Equal;
    case SurfaceKind::Free:
      return free_reduce(x) == free_reduce(y) ? Verdict::Equal
                                              : Verdict::NotEqual;
    case SurfaceKind::Torus:
      return detail::abelianize(x, 2) == detail::abelianize(y, 2)
                 ? Verdict::Equal
                 : Verdict::NotEqual;
    case SurfaceKind::ClosedHyperbolic:
      return detail::dehn_reduce(free_reduce(x) * free_reduce(y).inverse(), p)
                     .empty()
                 ? Verdict::Equal
                 : Verdict::NotEqual;
  }
  throw error("unsupported-presentation", "unreachable");
}

inline bool is_trivial(const Word& w, const SurfacePresentation& p) {
  return words_equal(w, Word(), p) == Verdict::Equal;
}

// Does y equal kappa^n x kappa^-n for some integer n?
// Free groups: complete search over the derived bound. Torus and trivial
// groups: exact. Closed genus>=2: bounded search, Undecided when exhausted
// (an abelianization mismatch still yields a definite NotEqual).
inline Verdict equal_mod_power_conj(const Word& x, const Word& y,
                                    const Word& kappa,
                                    const SurfacePresentation& p,
                                    int bound = 32) {
  p.check_alphabet(x);
  p.check_alphabet(y);
  p.check_alphabet(kappa);
  if (is_trivial(kappa, p)) return words_equal(x, y, p);
  switch (p.kind()) {
    case SurfaceKind::Sphere:
    case SurfaceKind::Disk:
    case SurfaceKind::Torus:
      return words_equal(x, y, p);  // abelian: conjugation is trivial
    case SurfaceKind::Free: {
      Word xr = free_reduce(x), yr = free_reduce(y), k = free_reduce(kappa);
      size_t core = k.cyclic_core().size();
      long B = static_cast<long>((xr.size() + yr.size()) / (2 * core)) + 1;
      Word conj = xr;
      if (conj == yr) return Verdict::Equal;
      Word kin = k.inverse();
      Word pos = xr, neg = xr;
      for (long n = 1; n <= B; ++n) {
        pos = k * pos * kin;
        neg = kin * neg * k;
        if (pos == yr || neg == yr) return Verdict::Equal;
      }
      return Verdict::NotEqual;
    }
    case SurfaceKind::ClosedHyperbolic: {
      if (detail::abelianize(x, p.rank()) != detail::abelianize(y, p.rank()))
        return Verdict::NotEqual;
      Word pos = free_reduce(x), neg = pos;
      Word k = free_reduce(kappa), kin = k.inverse();
      if (words_equal(pos, y, p) == Verdict::Equal) return Verdict::Equal;
      for (int n = 1; n <= bound; ++n) {
        pos = k * pos * kin;
        neg = kin * neg * k;
        if (words_equal(pos, y, p) == Verdict::Equal ||
            words_equal(neg, y, p) == Verdict::Equal)
          return Verdict::Equal;
      }
      return Verdict::Undecided;
    }
  }
  throw error("unsupported-presentation", "unreachable");
}

namespace detail {

// In a free group: the exponent q with kappa^q == m, if any.
// kappa must be freely reduced and nontrivial.
inline std::optional<int> power_exponent(const Word& kappa, const Word& m) {
  if (m.empty()) return 0;
  Word u;
  Word core = kappa.cyclic_core(&u);
  Word inner = free_reduce(u.inverse() * m * u);
  if (inner.empty()) return 0;
  if (inner.size() % core.size() != 0) return std::nullopt;
  int q = static_cast<int>(inner.size() / core.size());
  if (inner == core.pow(q)) return q;
  if (inner == core.pow(-q)) return -q;
  return std::nullopt;
}

// Solve p*u + q*v = w over the integers (u, v, w in Z^n).
inline bool lattice_solve(const std::vector<long>& u,
                          const std::vector<long>& v,
                          const std::vector<long>& w) {
  size_t n = u.size();
  auto zero = [](const std::vector<long>& a) {
    return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
  };
  // Find two coordinates giving an invertible (over Q) 2x2 system.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      long det = u[i] * v[j] - u[j] * v[i];
      if (det == 0) continue;
      long pn = w[i] * v[j] - w[j] * v[i];
      long qn = u[i] * w[j] - u[j] * w[i];
      if (pn % det != 0 || qn % det != 0) return false;
      long pp = pn / det, qq = qn / det;
      for (size_t k = 0; k < n; ++k)
        if (pp * u[k] + qq * v[k] != w[k]) return false;
      return true;
    }
  // u and v collinear (or zero): reduce to one dimension.
  if (zero(u) && zero(v)) return zero(w);
  const std::vector<long>& d = zero(u) ? v : u;
  size_t piv = 0;
  while (d[piv] == 0) ++piv;
  // Express u = alpha*e, v = beta*e, w = gamma*e over a primitive e;
  // then solvability is gcd(alpha, beta) | gamma.
  long g = 0;
  for (long x : d) g = std::gcd(g, std::abs(x));
  std::vector<long> e(n);
  for (size_t k = 0; k < n; ++k) e[k] = d[k] / g;
  size_t ep = piv;
  auto multiple_of = [&](const std::vector<long>& a, long* out) {
    if (a[ep] % e[ep] != 0) return false;
    long m = a[ep] / e[ep];
    for (size_t k = 0; k < n; ++k)
      if (a[k] != m * e[k]) return false;
    *out = m;
    return true;
  };
  long alpha = 0, beta = 0, gamma = 0;
  if (!multiple_of(u, &alpha) || !multiple_of(v, &beta)) return false;
  if (!multiple_of(w, &gamma)) return false;
  long gb = std::gcd(std::abs(alpha), std::abs(beta));
  if (gb == 0) return gamma == 0;
  return gamma % gb == 0;
}

}  // namespace detail

// Does y equal ki^p x kj^q for some integers p, q (double coset test)?
inline Verdict equal_double_coset(const Word& x, const Word& y, const Word& ki,
                                  const Word& kj,
                                  const SurfacePresentation& p,
                                  int bound = 32) {
  p.check_alphabet(x);
  p.check_alphabet(y);
  p.check_alphabet(ki);
  p.check_alphabet(kj);
  bool ti = is_trivial(ki, p), tj = is_trivial(kj, p);
  if (ti && tj) return words_equal(x, y, p);
  switch (p.kind()) {
    case SurfaceKind::Sphere:
    case SurfaceKind::Disk:
      return Verdict::Equal;
    case SurfaceKind::Torus: {
      auto u = detail::abelianize(ki, 2), v = detail::abelianize(kj, 2);
      std::vector<long> w(2);
      auto xe = detail::abelianize(x, 2), ye = detail::abelianize(y, 2);
      for (int k = 0; k < 2; ++k) w[k] = ye[k] - xe[k];
      return detail::lattice_solve(u, v, w) ? Verdict::Equal
                                            : Verdict::NotEqual;
    }
    case SurfaceKind::Free: {
      Word xr = free_reduce(x), yr = free_reduce(y);
      Word kir = free_reduce(ki), kjr = free_reduce(kj);
      if (ti) {
        // y = x kj^q: solve q exactly.
        return detail::power_exponent(kjr, free_reduce(xr.inverse() * yr))
                   ? Verdict::Equal
                   : Verdict::NotEqual;
      }
      if (tj) {
        return detail::power_exponent(kir, free_reduce(yr * xr.inverse()))
                   ? Verdict::Equal
                   : Verdict::NotEqual;
      }
      size_t ci = kir.cyclic_core().size(), cj = kjr.cyclic_core().size();
      long Bp = static_cast<long>((xr.size() + yr.size()) / ci) + 2;
      long Bq = static_cast<long>((xr.size() + yr.size()) / cj) + 2;
      // Sweep p and solve q exactly, then the symmetric sweep.
      for (long pe = -Bp; pe <= Bp; ++pe) {
        Word m = free_reduce(xr.inverse() * kir.pow(-static_cast<int>(pe)) * yr);
        if (detail::power_exponent(kjr, m)) return Verdict::Equal;
      }
      for (long qe = -Bq; qe <= Bq; ++qe) {
        Word m = free_reduce(yr * kjr.pow(-static_cast<int>(qe)) * xr.inverse());
        if (detail::power_exponent(kir, m)) return Verdict::Equal;
      }
      return Verdict::NotEqual;
    }
    case SurfaceKind::ClosedHyperbolic: {
      int r = p.rank();
      auto u = detail::abelianize(free_reduce(ki), r);
      auto v = detail::abelianize(free_reduce(kj), r);
      auto xe = detail::abelianize(free_reduce(x), r);
      auto ye = detail::abelianize(free_reduce(y), r);
      std::vector<long> w(static_cast<size_t>(r));
      for (int k = 0; k < r; ++k) w[static_cast<size_t>(k)] = ye[static_cast<size_t>(k)] - xe[static_cast<size_t>(k)];
      if (!detail::lattice_solve(u, v, w)) return Verdict::NotEqual;
      for (int pe = -bound; pe <= bound; ++pe)
        for (int qe = -bound; qe <= bound; ++qe)
          if (words_equal(free_reduce(ki).pow(pe) * x * free_reduce(kj).pow(qe),
                          y, p) == Verdict::Equal)
            return Verdict::Equal;
      return Verdict::Undecided;
    }
  }
  throw error("unsupported-presentation", "unreachable");
}

// Largest k and root s with kappa == s^k (k >= 1). Errors on trivial kappa.
inline std::pair<Word, int> primitive_root(const Word& kappa,
                                           const SurfacePresentation& p) {
  p.check_alphabet(kappa);
  if (is_trivial(kappa, p))
    throw error("trivial-kappa", "primitive root of the identity");
  switch (p.kind()) {
    case SurfaceKind::Free: {
      Word u;
      Word core = free_reduce(kappa).cyclic_core(&u);
      size_t n = core.size();
      for (size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        Word s;
        s.letters.assign(core.letters.begin(), core.letters.begin() + d);
        if (core == s.pow(static_cast<int>(n / d)))
          return {free_reduce(u * s * u.inverse()),
                  static_cast<int>(n / d)};
      }
      throw error("trivial-kappa", "unreachable");
    }
    case SurfaceKind::Torus: {
      auto e = detail::abelianize(normal_form(kappa, p), 2);
      long g = std::gcd(std::abs(e[0]), std::abs(e[1]));
      Word s;
      for (int gi = 0; gi < 2; ++gi) {
        long c = e[gi] / g;
        int16_t l = static_cast<int16_t>(c > 0 ? gi + 1 : -(gi + 1));
        for (long i = 0; i < std::abs(c); ++i) s.letters.push_back(l);
      }
      return {s, static_cast<int>(g)};
    }
    default:
      throw error("unsupported-presentation",
                  "primitive_root needs a free or torus presentation");
  }
}

inline bool has_square_root(const Word& kappa, const SurfacePresentation& p) {
  p.check_alphabet(kappa);
  if (is_trivial(kappa, p)) return true;
  switch (p.kind()) {
    case SurfaceKind::Free:
      return primitive_root(kappa, p).second % 2 == 0;
    case SurfaceKind::Torus: {
      auto e = detail::abelianize(kappa, 2);
      return e[0] % 2 == 0 && e[1] % 2 == 0;
    }
    default:
      throw error("unsupported-presentation",
                  "has_square_root needs a free or torus presentation");
  }
}

// Canonical representative of the conjugacy class.
inline Word conjugacy_canonical(const Word& w, const SurfacePresentation& p) {
  p.check_alphabet(w);
  switch (p.kind()) {
    case SurfaceKind::Sphere:
    case SurfaceKind::Disk:
      return Word();
    case SurfaceKind::Free: {
      Word core = free_reduce(w).cyclic_core();
      Word best = core;
      for (size_t k = 1; k < core.size(); ++k)
        best = std::min(best, core.rotated(k));
      return best;
    }
    case SurfaceKind::Torus:
      return normal_form(w, p);
    default:
      throw error("unsupported-presentation",
                  "no canonical conjugacy form for closed genus >= 2");
  }
}

}  // namespace tdg
