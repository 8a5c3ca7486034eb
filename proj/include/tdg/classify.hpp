#pragma once

#include <functional>

#include "diagram.hpp"

namespace tdg {

enum class CrossingKind { LongSelf, ClosedSelf, Mixed };

inline const char* to_string(CrossingKind k) {
  switch (k) {
    case CrossingKind::LongSelf: return "long-self";
    case CrossingKind::ClosedSelf: return "closed-self";
    default: return "mixed";
  }
}

inline CrossingKind crossing_kind(const TangleDiagram& d, const std::string& id) {
  const Crossing& x = d.at(id);
  if (!x.self()) return CrossingKind::Mixed;
  return d.comp(x.visit[0].comp).closed ? CrossingKind::ClosedSelf
                                        : CrossingKind::LongSelf;
}

// Classical crossing index: component type, order type (long self only),
// sign, and the homotopy part h together with the quotient data needed to
// compare it (kappa of the over and under components).
struct CrossingIndexValue {
  CrossingKind kind;
  std::pair<int, int> tau;  // (over component, under component)
  int order = 0;
  int sign = 0;
  Word h;
  Word kappa_i, kappa_j;
};

inline CrossingIndexValue classify(const TangleDiagram& d,
                                   const std::string& id) {
  if (d.flat)
    throw error("role-mismatch", "classify needs a classical diagram");
  const Crossing& x = d.at(id);
  CrossingIndexValue v;
  v.kind = crossing_kind(d, id);
  v.tau = component_type(d, id);
  v.sign = x.sign;
  switch (v.kind) {
    case CrossingKind::LongSelf: {
      v.order = order_type(d, id);
      int c = x.visit[0].comp;
      Word P = prefix_to_pass(d, c, x.visit[0].pos);
      Word alpha = detail::words_range(d.comp(c), static_cast<size_t>(x.visit[0].pos) + 1,
                                       static_cast<size_t>(x.visit[1].pos));
      v.h = P * alpha * P.inverse();
      break;
    }
    case CrossingKind::ClosedSelf: {
      auto halves = extract_halves(d, id);
      v.h = halves.delta_plus;
      v.kappa_i = halves.kappa;
      break;
    }
    case CrossingKind::Mixed: {
      const Crossing::Visit& over =
          d.role_at(x.visit[0]) == PassRole::Over ? x.visit[0] : x.visit[1];
      const Crossing::Visit& under =
          d.role_at(x.visit[0]) == PassRole::Over ? x.visit[1] : x.visit[0];
      v.h = prefix_to_pass(d, over.comp, over.pos) *
            prefix_to_pass(d, under.comp, under.pos).inverse();
      v.kappa_i = component_class(d, over.comp);
      v.kappa_j = component_class(d, under.comp);
      break;
    }
  }
  return v;
}

// Compare two classical index values (possibly from different diagrams over
// the same surface with the same component numbering, e.g. across moves).
inline Verdict tribe_equal(const CrossingIndexValue& a,
                           const CrossingIndexValue& b,
                           const SurfacePresentation& p, int bound = 32) {
  if (a.kind != b.kind || a.tau != b.tau) return Verdict::NotEqual;
  switch (a.kind) {
    case CrossingKind::LongSelf:
      if (a.order != b.order) return Verdict::NotEqual;
      return words_equal(a.h, b.h, p);
    case CrossingKind::ClosedSelf:
      return equal_mod_power_conj(a.h, b.h, a.kappa_i, p, bound);
    case CrossingKind::Mixed:
      return equal_double_coset(a.h, b.h, a.kappa_i, a.kappa_j, p, bound);
  }
  return Verdict::Undecided;
}

inline Verdict phratry_equal(const CrossingIndexValue& a,
                             const CrossingIndexValue& b,
                             const SurfacePresentation& p, int bound = 32) {
  if (a.sign != b.sign) return Verdict::NotEqual;
  return tribe_equal(a, b, p, bound);
}

inline Verdict same_tribe(const TangleDiagram& d, const std::string& v,
                          const std::string& w, int bound = 32) {
  return tribe_equal(classify(d, v), classify(d, w), d.surface, bound);
}

inline Verdict same_phratry(const TangleDiagram& d, const std::string& v,
                            const std::string& w, int bound = 32) {
  return phratry_equal(classify(d, v), classify(d, w), d.surface, bound);
}

// Refined flat index (phratry-level data; the coarser tribe-level
// comparison is derived from it). For mixed crossings h is always stored
// relative to the (smaller component, larger component) ordering so values
// with transposed refined component types remain comparable.
struct FlatIndexValue {
  CrossingKind kind;
  std::pair<int, int> tau_f;  // orientation-ordered component pair
  int order_f = 0;            // long self: +1 iff the closed half is the left half
  Word h;                     // delta^l (closed self) / based loop (long) / coset rep
  Word kappa_i, kappa_j;      // quotient data matching h's ordering
};

inline FlatIndexValue flat_classify(const TangleDiagram& d,
                                    const std::string& id) {
  if (!d.flat)
    throw error("role-mismatch", "flat_classify needs a flat diagram");
  const Crossing& x = d.at(id);
  FlatIndexValue v;
  v.kind = crossing_kind(d, id);
  switch (v.kind) {
    case CrossingKind::LongSelf: {
      v.tau_f = {x.visit[0].comp, x.visit[1].comp};
      v.order_f = x.chir == Chirality::Left ? 1 : -1;
      int c = x.visit[0].comp;
      Word P = prefix_to_pass(d, c, x.visit[0].pos);
      Word alpha = detail::words_range(d.comp(c), static_cast<size_t>(x.visit[0].pos) + 1,
                                       static_cast<size_t>(x.visit[1].pos));
      v.h = P * alpha * P.inverse();
      break;
    }
    case CrossingKind::ClosedSelf: {
      v.tau_f = {x.visit[0].comp, x.visit[1].comp};
      auto halves = extract_halves(d, id);
      v.h = halves.delta_left;
      v.kappa_i = halves.kappa;
      break;
    }
    case CrossingKind::Mixed: {
      // Orientation order: chirality Right means the frame (first visit,
      // second visit) is positive, which puts the first-visited component
      // first; Left transposes.
      int c0 = x.visit[0].comp, c1 = x.visit[1].comp;
      v.tau_f = x.chir == Chirality::Right ? std::make_pair(c0, c1)
                                           : std::make_pair(c1, c0);
      const Crossing::Visit& lo = c0 < c1 ? x.visit[0] : x.visit[1];
      const Crossing::Visit& hi = c0 < c1 ? x.visit[1] : x.visit[0];
      v.h = prefix_to_pass(d, lo.comp, lo.pos) *
            prefix_to_pass(d, hi.comp, hi.pos).inverse();
      v.kappa_i = component_class(d, lo.comp);
      v.kappa_j = component_class(d, hi.comp);
      break;
    }
  }
  return v;
}

// Tribe-level flat comparison: unordered component type, homotopy type up
// to the quotient (and, for closed self-crossings, the extra involution
// x -> kappa x^-1 identifying the two halves).
inline Verdict flat_tribe_equal(const FlatIndexValue& a, const FlatIndexValue& b,
                                const SurfacePresentation& p, int bound = 32) {
  if (a.kind != b.kind) return Verdict::NotEqual;
  auto unordered = [](std::pair<int, int> t) {
    return std::make_pair(std::min(t.first, t.second),
                          std::max(t.first, t.second));
  };
  if (unordered(a.tau_f) != unordered(b.tau_f)) return Verdict::NotEqual;
  switch (a.kind) {
    case CrossingKind::LongSelf:
      return words_equal(a.h, b.h, p);
    case CrossingKind::ClosedSelf: {
      Word sigma = free_reduce(a.kappa_i * a.h.inverse());
      return either(equal_mod_power_conj(a.h, b.h, a.kappa_i, p, bound),
                    equal_mod_power_conj(sigma, b.h, a.kappa_i, p, bound));
    }
    case CrossingKind::Mixed:
      return equal_double_coset(a.h, b.h, a.kappa_i, a.kappa_j, p, bound);
  }
  return Verdict::Undecided;
}

inline Verdict flat_phratry_equal(const FlatIndexValue& a,
                                  const FlatIndexValue& b,
                                  const SurfacePresentation& p, int bound = 32) {
  if (a.kind != b.kind || a.tau_f != b.tau_f) return Verdict::NotEqual;
  switch (a.kind) {
    case CrossingKind::LongSelf:
      if (a.order_f != b.order_f) return Verdict::NotEqual;
      return words_equal(a.h, b.h, p);
    case CrossingKind::ClosedSelf:
      return equal_mod_power_conj(a.h, b.h, a.kappa_i, p, bound);
    case CrossingKind::Mixed:
      return equal_double_coset(a.h, b.h, a.kappa_i, a.kappa_j, p, bound);
  }
  return Verdict::Undecided;
}

// Are the two refined types images of one another under the duality
// involution (transposed component pair, negated order, x -> kappa x^-1)?
// Crossings created or cancelled by a second Reidemeister move are dual.
inline Verdict flat_dual_phratry(const FlatIndexValue& a,
                                 const FlatIndexValue& b,
                                 const SurfacePresentation& p, int bound = 32) {
  if (a.kind != b.kind) return Verdict::NotEqual;
  switch (a.kind) {
    case CrossingKind::LongSelf:
      if (a.tau_f != b.tau_f || a.order_f != -b.order_f)
        return Verdict::NotEqual;
      return words_equal(a.h, b.h, p);
    case CrossingKind::ClosedSelf: {
      if (a.tau_f != b.tau_f) return Verdict::NotEqual;
      Word sigma = free_reduce(a.kappa_i * a.h.inverse());
      return equal_mod_power_conj(sigma, b.h, a.kappa_i, p, bound);
    }
    case CrossingKind::Mixed:
      if (std::make_pair(a.tau_f.second, a.tau_f.first) != b.tau_f)
        return Verdict::NotEqual;
      return equal_double_coset(a.h, b.h, a.kappa_i, a.kappa_j, p, bound);
  }
  return Verdict::Undecided;
}

inline Verdict flat_same_tribe(const TangleDiagram& d, const std::string& v,
                               const std::string& w, int bound = 32) {
  return flat_tribe_equal(flat_classify(d, v), flat_classify(d, w), d.surface,
                          bound);
}

inline Verdict flat_same_phratry(const TangleDiagram& d, const std::string& v,
                                 const std::string& w, int bound = 32) {
  return flat_phratry_equal(flat_classify(d, v), flat_classify(d, w), d.surface,
                            bound);
}

// A phratry is self-dual exactly when the left half squares to the
// component class.
inline bool is_self_dual(const TangleDiagram& d, const std::string& id) {
  if (!d.flat)
    throw error("role-mismatch", "self-duality is a flat-diagram notion");
  if (crossing_kind(d, id) != CrossingKind::ClosedSelf) return false;
  auto halves = extract_halves(d, id);
  return words_equal(free_reduce(halves.delta_left * halves.delta_left),
                     halves.kappa, d.surface) == Verdict::Equal;
}

// ---- universal index ------------------------------------------------------

enum class Coarsening { ExactAbelian, ModKappa, ModCentralizer };

inline Coarsening parse_coarsening(const std::string& s) {
  if (s == "exact-abelian") return Coarsening::ExactAbelian;
  if (s == "mod-kappa") return Coarsening::ModKappa;
  if (s == "mod-centralizer") return Coarsening::ModCentralizer;
  throw error("unsupported-coarsening", "unknown coarsening " + s);
}

namespace detail {

inline std::string render_abelian(const std::vector<long>& e) {
  if (e.empty()) return "0";
  if (e.size() == 1) return std::to_string(e[0]);
  std::string s = "(";
  for (size_t i = 0; i < e.size(); ++i)
    s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

// Canonical representative of w modulo the lattice spanned by gens
// (2-dimensional at most here): reduce via the Hermite form of the basis.
inline std::vector<long> lattice_canonical(std::vector<long> w,
                                           std::vector<std::vector<long>> gens) {
  size_t n = w.size();
  // Gaussian elimination over Z (column style): build an upper triangular
  // basis, then reduce w coordinate by coordinate.
  std::vector<std::vector<long>> basis;
  for (auto& g : gens)
    if (std::any_of(g.begin(), g.end(), [](long x) { return x != 0; }))
      basis.push_back(g);
  std::vector<std::vector<long>> rows;  // echelon basis
  for (size_t pivot = 0; pivot < n; ++pivot) {
    // combine all basis vectors with nonzero pivot coordinate via gcd steps
    std::vector<std::vector<long>> rest;
    std::vector<long> lead;
    for (auto& b : basis) {
      if (b[pivot] == 0) {
        rest.push_back(b);
        continue;
      }
      if (lead.empty()) {
        lead = b;
        continue;
      }
      // gcd-combine lead and b in-place
      std::vector<long> x = lead, y = b;
      while (y[pivot] != 0) {
        long q = x[pivot] / y[pivot];
        for (size_t k = 0; k < n; ++k) x[k] -= q * y[k];
        std::swap(x, y);
      }
      lead = x;
      if (std::any_of(y.begin(), y.end(), [](long t) { return t != 0; }))
        rest.push_back(y);
    }
    if (!lead.empty()) {
      if (lead[pivot] < 0)
        for (auto& t : lead) t = -t;
      rows.push_back(lead);
    }
    basis = std::move(rest);
  }
  // reduce w by the echelon rows (each has a unique pivot)
  for (auto& r : rows) {
    size_t pivot = 0;
    while (pivot < n && r[pivot] == 0) ++pivot;
    if (pivot == n) continue;
    long q = w[pivot] >= 0 ? w[pivot] / r[pivot]
                           : -((-w[pivot] + r[pivot] - 1) / r[pivot]);
    for (size_t k = 0; k < n; ++k) w[k] -= q * r[k];
  }
  return w;
}

// Least normal form in the orbit { k^n w k^-n : n in Z } (free or torus).
inline Word conj_orbit_canonical(const Word& w, const Word& kappa,
                                 const SurfacePresentation& p) {
  switch (p.kind()) {
    case SurfaceKind::Sphere:
    case SurfaceKind::Disk:
    case SurfaceKind::Torus:
      return normal_form(w, p);
    case SurfaceKind::Free: {
      Word k = free_reduce(kappa);
      Word wr = free_reduce(w);
      if (k.empty()) return wr;
      long B = static_cast<long>(wr.size() + k.size()) + 8;
      Word best = wr, pos = wr, neg = wr, kin = k.inverse();
      for (long n = 1; n <= B; ++n) {
        pos = k * pos * kin;
        neg = kin * neg * k;
        best = std::min(best, std::min(pos, neg));
      }
      return best;
    }
    default:
      throw error("undecided-key",
                  "no canonical orbit representative on this surface");
  }
}

// Least normal form in { ki^p w kj^q } (free or abelian).
inline Word coset_orbit_canonical(const Word& w, const Word& ki, const Word& kj,
                                  const SurfacePresentation& p) {
  switch (p.kind()) {
    case SurfaceKind::Sphere:
    case SurfaceKind::Disk:
      return Word();
    case SurfaceKind::Torus: {
      auto e = lattice_canonical(abelianize(normal_form(w, p), 2),
                                 {abelianize(ki, 2), abelianize(kj, 2)});
      Word out;
      for (int g = 0; g < 2; ++g) {
        int16_t l = static_cast<int16_t>(e[static_cast<size_t>(g)] > 0 ? g + 1 : -(g + 1));
        for (long i = 0; i < std::labs(e[static_cast<size_t>(g)]); ++i)
          out.letters.push_back(l);
      }
      return out;
    }
    case SurfaceKind::Free: {
      Word a = free_reduce(ki), b = free_reduce(kj), wr = free_reduce(w);
      long Bp = a.empty() ? 0 : static_cast<long>(wr.size() + a.size()) + 6;
      long Bq = b.empty() ? 0 : static_cast<long>(wr.size() + b.size()) + 6;
      Word best = wr;
      for (long pe = -Bp; pe <= Bp; ++pe) {
        Word left = a.pow(static_cast<int>(pe)) * wr;
        for (long qe = -Bq; qe <= Bq; ++qe)
          best = std::min(best, left * b.pow(static_cast<int>(qe)));
      }
      return best;
    }
    default:
      throw error("undecided-key",
                  "no canonical coset representative on this surface");
  }
}

}  // namespace detail

// Canonical printable value of the universal crossing index under the
// requested coarsening. mod-kappa refines the universal index (quotient by
// the component class only); mod-centralizer coarsens it (quotient by the
// full centralizer, enumerated through the primitive root).
inline std::string universal_index(const TangleDiagram& d, const std::string& id,
                                   Coarsening c) {
  const SurfacePresentation& p = d.surface;
  CrossingIndexValue v;
  FlatIndexValue fv;
  CrossingKind kind = crossing_kind(d, id);
  Word h, ki, kj;
  int order = 0;
  if (d.flat) {
    fv = flat_classify(d, id);
    h = fv.h;
    ki = fv.kappa_i;
    kj = fv.kappa_j;
    order = fv.order_f;
  } else {
    v = classify(d, id);
    h = v.h;
    ki = v.kappa_i;
    kj = v.kappa_j;
    order = v.order;
  }
  switch (c) {
    case Coarsening::ExactAbelian: {
      if (!p.abelian())
        throw error("unsupported-coarsening",
                    "exact-abelian needs an abelian fundamental group");
      auto value = [&](const Word& w) {
        return detail::render_abelian(detail::abelianize(normal_form(w, p),
                                                         std::max(1, p.rank())));
      };
      if (kind == CrossingKind::LongSelf)
        return std::string("o=") + (order > 0 ? "+1" : "-1") + " h=" + value(h);
      if (kind == CrossingKind::ClosedSelf) return value(h);
      auto e = detail::lattice_canonical(
          detail::abelianize(normal_form(h, p), std::max(1, p.rank())),
          {detail::abelianize(normal_form(ki, p), std::max(1, p.rank())),
           detail::abelianize(normal_form(kj, p), std::max(1, p.rank()))});
      return detail::render_abelian(e);
    }
    case Coarsening::ModKappa: {
      if (kind == CrossingKind::LongSelf)
        return std::string("o=") + (order > 0 ? "+1" : "-1") +
               " h=" + p.render(normal_form(h, p));
      if (kind == CrossingKind::ClosedSelf)
        return p.render(detail::conj_orbit_canonical(h, ki, p));
      return p.render(detail::coset_orbit_canonical(h, ki, kj, p));
    }
    case Coarsening::ModCentralizer: {
      auto widen = [&](const Word& k) {
        if (is_trivial(k, p)) return std::optional<Word>();  // full group
        return std::optional<Word>(primitive_root(k, p).first);
      };
      if (kind == CrossingKind::LongSelf)
        return std::string("o=") + (order > 0 ? "+1" : "-1") +
               " h=" + p.render(normal_form(h, p));
      if (kind == CrossingKind::ClosedSelf) {
        auto root = widen(ki);
        if (!root) return p.render(conjugacy_canonical(h, p));
        return p.render(detail::conj_orbit_canonical(h, *root, p));
      }
      auto ri = widen(ki), rj = widen(kj);
      if (!ri && !rj) {
        if (p.trivial_group()) return "1";
        // both centralizers are the whole group: double coset of the whole
        // group collapses everything
        return "1";
      }
      return p.render(detail::coset_orbit_canonical(h, ri ? *ri : Word(),
                                                    rj ? *rj : Word(), p));
    }
  }
  throw error("unsupported-coarsening", "unreachable");
}

// ---- index polynomial ------------------------------------------------------

enum class Selector { Universal, HomotopyOnly, ComponentOnly };

inline Selector parse_selector(const std::string& s) {
  if (s == "universal") return Selector::Universal;
  if (s == "homotopy-only") return Selector::HomotopyOnly;
  if (s == "component-only") return Selector::ComponentOnly;
  throw error("undecided-key", "unknown selector " + s);
}

struct IndexPolynomial {
  std::map<std::string, long> terms;

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [k, c] : terms) {
      if (!first) s += "; ";
      first = false;
      s += k + " -> " + (c > 0 ? "+" : "") + std::to_string(c);
    }
    return s + "}";
  }
};

// Crossing ids in first-visit traversal order (the deterministic report
// and labeling order).
inline std::vector<std::string> crossing_order(const TangleDiagram& d) {
  std::vector<std::pair<std::pair<int, int>, std::string>> order;
  for (const auto& [id, x] : d.crossings)
    order.push_back({{x.visit[0].comp, x.visit[0].pos}, id});
  std::sort(order.begin(), order.end());
  std::vector<std::string> ids;
  for (auto& [pos, id] : order) ids.push_back(id);
  return ids;
}

inline IndexPolynomial index_polynomial(const TangleDiagram& d, Selector sel) {
  if (d.flat)
    throw error("role-mismatch", "index_polynomial needs signs (classical)");
  Coarsening c = d.surface.abelian() ? Coarsening::ExactAbelian
                                     : Coarsening::ModKappa;
  IndexPolynomial poly;
  for (const std::string& id : crossing_order(d)) {
    // self-crossings with a trivial index (h = 1 or h = kappa, the two kink
    // values) are excluded; kink moves then never change the polynomial
    CrossingIndexValue v = classify(d, id);
    if (v.kind == CrossingKind::LongSelf &&
        is_trivial(v.h, d.surface))
      continue;
    if (v.kind == CrossingKind::ClosedSelf &&
        (is_trivial(v.h, d.surface) ||
         words_equal(v.h, v.kappa_i, d.surface) == Verdict::Equal))
      continue;
    auto tau = component_type(d, id);
    std::string tag = "(" + d.comp(tau.first).name + "," +
                      d.comp(tau.second).name + ")";
    std::string key;
    switch (sel) {
      case Selector::Universal:
        key = tag + ":" + universal_index(d, id, c);
        break;
      case Selector::HomotopyOnly:
        key = universal_index(d, id, c);
        break;
      case Selector::ComponentOnly:
        key = tag;
        break;
    }
    poly.terms[key] += crossing_sign(d, id);
  }
  std::erase_if(poly.terms, [](const auto& kv) { return kv.second == 0; });
  return poly;
}

// ---- partitions ------------------------------------------------------------

struct Partition {
  std::vector<std::vector<std::string>> classes;
  // pairs whose comparison came back undecided (classes are then a
  // best-effort refinement and are marked in reports)
  std::vector<std::pair<std::string, std::string>> undecided;
};

inline Partition partition_crossings(
    const TangleDiagram& d,
    const std::function<Verdict(const std::string&, const std::string&)>& eq) {
  Partition part;
  for (const std::string& id : crossing_order(d)) {
    bool placed = false;
    for (auto& cls : part.classes) {
      Verdict v = eq(cls.front(), id);
      if (v == Verdict::Equal) {
        cls.push_back(id);
        placed = true;
        break;
      }
      if (v == Verdict::Undecided) part.undecided.push_back({cls.front(), id});
    }
    if (!placed) part.classes.push_back({id});
  }
  return part;
}

inline Partition tribes(const TangleDiagram& d, int bound = 32) {
  if (d.flat)
    return partition_crossings(d, [&](const std::string& a, const std::string& b) {
      return flat_same_tribe(d, a, b, bound);
    });
  return partition_crossings(d, [&](const std::string& a, const std::string& b) {
    return same_tribe(d, a, b, bound);
  });
}

inline Partition phratries(const TangleDiagram& d, int bound = 32) {
  if (d.flat)
    return partition_crossings(d, [&](const std::string& a, const std::string& b) {
      return flat_same_phratry(d, a, b, bound);
    });
  return partition_crossings(d, [&](const std::string& a, const std::string& b) {
    return same_phratry(d, a, b, bound);
  });
}

}  // namespace tdg
