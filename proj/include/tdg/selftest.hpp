#pragma once

#include <chrono>

#include "explore.hpp"

namespace tdg {

// Built-in copies of the example diagrams so the self-test runs without
// any data files; the test suite checks these stay in sync with fixtures/.
inline const std::map<std::string, std::string>& embedded_fixtures() {
  static const std::map<std::string, std::string> m = {
      {"annulus_knot",
       "surface genus=0 boundary=2 generators=t\n"
       "component K closed\n"
       "walk: t x1:over:R t x1:under 1\n"
       "sign x1 +\n"},
      {"flat_annulus",
       "surface genus=0 boundary=2 generators=t\n"
       "component K closed\n"
       "walk: t x1:first:L t x1:second 1 x2:first:L tt x2:second 1\n"},
      {"genus2_flat",
       "surface genus=2 boundary=2 generators=abcde\n"
       "component K closed\n"
       "walk: 1 v1:first:L c v3:first:L 1 v5:first:L 1 v2:first:L 1 "
       "v4:first:L 1 v1:second CAdac v3:second CADace v5:second ECac "
       "v2:second CAADbdac v4:second CADBdacebda\n"},
      {"long_knot_sphere",
       "surface genus=0 boundary=0\n"
       "component L long\n"
       "walk: 1 x1:over:R 1 x1:under 1 x2:under:R 1 x2:over 1\n"
       "sign x1 +\n"
       "sign x2 -\n"},
      {"sphere_trefoil",
       "surface genus=0 boundary=0\n"
       "component K closed\n"
       "walk: 1 x1:over:R 1 x2:under:L 1 x3:over:R 1 x1:under 1 x2:over 1 "
       "x3:under 1\n"
       "sign x1 +\nsign x2 +\nsign x3 +\n"},
      {"torus_knot",
       "surface genus=1 boundary=0\n"
       "component K closed\n"
       "walk: a x1:over:R b x1:under 1\n"
       "sign x1 +\n"},
      {"triangle_flat",
       "surface genus=0 boundary=0\n"
       "component K closed\n"
       "walk: 1 u:first:L 1 v:first:R 1 w:first:L 1 u:second 1 v:second 1 "
       "w:second 1\n"},
      {"two_component_link",
       "surface genus=0 boundary=0\n"
       "component A closed\n"
       "walk: 1 m1:over:R 1 m2:under 1 s1:over:R 1 s1:under 1\n"
       "component B closed\n"
       "walk: 1 m1:under 1 m2:over:L 1\n"
       "sign m1 +\nsign m2 +\nsign s1 +\n"}};
  return m;
}

inline TangleDiagram embedded(const std::string& name) {
  return parse_diagram(embedded_fixtures().at(name));
}

struct CriterionResult {
  std::string name;
  bool passed = true;
  std::string details;
};

namespace selftest_detail {

struct Check {
  CriterionResult r;
  explicit Check(std::string name) { r.name = std::move(name); }
  void require(bool ok, const std::string& what) {
    if (!ok && r.passed) {
      r.passed = false;
      r.details = what;
    }
  }
  void note(const std::string& what) {
    if (r.passed) r.details = what;
  }
};

inline Word random_word(std::mt19937_64& rng, int rank, int max_len) {
  Word w;
  int len = static_cast<int>(rng() % static_cast<std::uint64_t>(max_len + 1));
  while (static_cast<int>(w.size()) < len) {
    int g = static_cast<int>(rng() % static_cast<std::uint64_t>(rank)) + 1;
    int16_t l = static_cast<int16_t>(rng() % 2 ? g : -g);
    if (!w.letters.empty() && w.letters.back() == -l) continue;
    w.letters.push_back(l);
  }
  return w;
}

inline TangleDiagram unknot(int genus, int boundary, const std::string& gens) {
  std::string text = "surface genus=" + std::to_string(genus) +
                     " boundary=" + std::to_string(boundary);
  if (!gens.empty()) text += " generators=" + gens;
  text += "\ncomponent K closed\nwalk: 1\n";
  return parse_diagram(text);
}

// exponent sums straight off the walk, bypassing the half-extraction code
inline std::vector<long> walk_exponents(const TangleDiagram& d, int comp,
                                        int from, int to, int rank) {
  std::vector<long> e(static_cast<size_t>(rank), 0);
  const Component& c = d.comp(comp);
  for (int k = from; k <= to; ++k)
    for (int16_t l : c.words[static_cast<size_t>(k)].letters)
      e[static_cast<size_t>(std::abs(l)) - 1] += l > 0 ? 1 : -1;
  return e;
}

inline Word apply_substitution(const Word& w,
                               const std::map<int, Word>& images) {
  Word out;
  for (int16_t l : w.letters) {
    Word g = images.at(std::abs(l));
    out = out * (l > 0 ? g : g.inverse());
  }
  return out;
}

}  // namespace selftest_detail

// 1. Random classical knots on simply-connected surfaces always classify
//    into a single tribe, quickly.
inline CriterionResult check_single_tribe_knots() {
  using namespace selftest_detail;
  Check c("simply-connected-knots-single-tribe");
  int nontrivial = 0;
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    TangleDiagram seed = i % 2 ? unknot(0, 1, "") : unknot(0, 0, "");
    auto walk = random_walk(seed, 40, 1000 + static_cast<std::uint64_t>(i), 10);
    const TangleDiagram& d = walk.after;
    if (d.crossings.size() >= 2) ++nontrivial;
    auto t0 = std::chrono::steady_clock::now();
    Partition t = tribes(d);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
    worst = std::max(worst, dt);
    c.require(dt < 1.0, "classification exceeded 1s");
    c.require(t.undecided.empty(), "undecided pair on a trivial group");
    if (!d.crossings.empty())
      c.require(t.classes.size() == 1,
                "knot " + std::to_string(i) + " split into " +
                    std::to_string(t.classes.size()) + " tribes");
  }
  c.require(nontrivial >= 5, "random generator produced too few crossings");
  c.note("20 diagrams, worst classification " + std::to_string(worst) + "s");
  return c.r;
}

// 2. Component and order types separate tribes, and the separation is
//    stable across long random move sequences.
inline CriterionResult check_type_separation() {
  using namespace selftest_detail;
  Check c("type-separation-stability");
  TangleDiagram lk = embedded("long_knot_sphere");
  c.require(same_tribe(lk, "x1", "x2") == Verdict::NotEqual,
            "opposite order types were not separated");
  TangleDiagram link = embedded("two_component_link");
  c.require(same_tribe(link, "m1", "m2") == Verdict::NotEqual,
            "transposed component types were not separated");
  c.require(same_tribe(link, "m1", "s1") == Verdict::NotEqual,
            "mixed and self crossings were not separated");
  int steps_done = 0;
  TangleDiagram cur = link;
  std::mt19937_64 rng(42);
  while (steps_done < 1000) {
    auto walk = random_walk(cur, 50, rng(), 6);
    TangleDiagram prev = cur;
    for (const auto& step : walk.steps) {
      ++steps_done;
      std::vector<std::string> survivors;
      for (const auto& [id, x] : step.after.crossings)
        if (prev.crossings.count(id)) survivors.push_back(id);
      for (size_t i = 0; i < survivors.size(); ++i)
        for (size_t j = i + 1; j < survivors.size(); ++j) {
          Verdict before = same_phratry(prev, survivors[i], survivors[j]);
          Verdict after =
              same_phratry(step.after, survivors[i], survivors[j]);
          c.require(before == after, "phratry relation of " + survivors[i] +
                                         "," + survivors[j] +
                                         " changed across a move");
        }
      prev = step.after;
    }
    cur = embedded("two_component_link");  // fresh run, fresh seed
  }
  c.note(std::to_string(steps_done) + " move steps checked");
  return c.r;
}

// 3. On abelian surfaces the universal index equals an independently
//    computed exponent-sum value.
inline CriterionResult check_abelian_winding_oracle() {
  using namespace selftest_detail;
  Check c("abelian-winding-oracle");
  int checked = 0;
  for (const char* name : {"annulus_knot", "torus_knot"}) {
    std::mt19937_64 rng(name[0]);
    while (checked < (name[0] == 'a' ? 500 : 1000)) {
      TangleDiagram base = embedded(name);
      auto walk = random_walk(base, 25, rng(), 6);
      const TangleDiagram& d = walk.after;
      int rank = d.surface.rank();
      for (const auto& [id, x] : d.crossings) {
        if (!x.self()) continue;
        ++checked;
        auto alpha = walk_exponents(d, x.visit[0].comp, x.visit[0].pos + 1,
                                    x.visit[1].pos, rank);
        auto kappa = walk_exponents(
            d, x.visit[0].comp, 0,
            static_cast<int>(d.comp(x.visit[0].comp).passes.size()), rank);
        bool over_first = d.role_at(x.visit[0]) == PassRole::Over;
        std::vector<long> expect(static_cast<size_t>(rank));
        for (int g = 0; g < rank; ++g)
          expect[static_cast<size_t>(g)] =
              over_first ? kappa[static_cast<size_t>(g)] -
                               alpha[static_cast<size_t>(g)]
                         : alpha[static_cast<size_t>(g)];
        std::string got = universal_index(d, id, Coarsening::ExactAbelian);
        c.require(got == detail::render_abelian(expect),
                  "universal index " + got + " disagrees with exponent sums");
      }
    }
  }
  c.note(std::to_string(checked) + " crossings verified");
  return c.r;
}

// 4. Index values of surviving crossings and the index polynomial are
//    invariant across moves, on every supported surface family.
inline CriterionResult check_move_invariance() {
  using namespace selftest_detail;
  Check c("move-invariance");
  struct Family {
    std::string label;
    TangleDiagram start;
  };
  std::vector<Family> fams = {
      {"sphere", embedded("sphere_trefoil")},
      {"annulus", embedded("annulus_knot")},
      {"torus", embedded("torus_knot")},
      {"genus2-boundary", lift(embedded("genus2_flat"))},
  };
  int total = 0;
  for (auto& f : fams) {
    std::string poly0 = index_polynomial(f.start, Selector::Universal).str();
    std::mt19937_64 rng(std::hash<std::string>{}(f.label));
    int steps_done = 0;
    while (steps_done < 1000) {
      TangleDiagram cur = f.start;
      auto walk = random_walk(cur, 60, rng(), 8);
      for (const auto& step : walk.steps) {
        ++steps_done;
        for (const auto& [id, x] : step.after.crossings) {
          if (!cur.crossings.count(id)) continue;
          c.require(phratry_equal(classify(cur, id), classify(step.after, id),
                                  cur.surface) == Verdict::Equal,
                    f.label + ": index of " + id + " changed across a move");
        }
        c.require(
            index_polynomial(step.after, Selector::Universal).str() == poly0,
            f.label + ": index polynomial changed across a move");
        cur = step.after;
      }
    }
    total += steps_done;
  }
  c.note(std::to_string(total) + " move steps across 4 families");
  return c.r;
}

// 5. Crossing changes transform the index the prescribed way.
inline CriterionResult check_crossing_change_law() {
  using namespace selftest_detail;
  Check c("crossing-change-law");
  int checked = 0;
  for (const char* name :
       {"two_component_link", "torus_knot", "long_knot_sphere",
        "sphere_trefoil"}) {
    std::mt19937_64 rng(name[0] * 131);
    int target = checked + 125;  // all three crossing kinds get covered
    while (checked < target) {
      auto walk = random_walk(embedded(name), 20, rng(), 6);
      const TangleDiagram& d = walk.after;
      if (d.crossings.empty()) continue;
      for (const auto& [id, x] : d.crossings) {
        ++checked;
        CrossingIndexValue before = classify(d, id);
        CrossingIndexValue after = classify(crossing_change(d, id), id);
        c.require(after.sign == -before.sign, "sign did not flip");
        c.require(after.tau == std::make_pair(before.tau.second,
                                              before.tau.first),
                  "component type did not transpose");
        switch (before.kind) {
          case CrossingKind::ClosedSelf:
            // the two sides of the law differ by one kappa conjugation
            c.require(equal_mod_power_conj(
                          after.h,
                          free_reduce(before.kappa_i * before.h.inverse()),
                          before.kappa_i, d.surface) == Verdict::Equal,
                      "closed self index not mapped to kappa h^-1");
            break;
          case CrossingKind::Mixed:
            c.require(after.h == before.h.inverse(),
                      "mixed index not inverted");
            break;
          case CrossingKind::LongSelf:
            c.require(after.h == before.h && after.order == -before.order,
                      "long self index law violated");
            break;
        }
      }
    }
  }
  c.note(std::to_string(checked) + " crossing changes verified");
  return c.r;
}

// 6. The exhaustive small flat move oracle on the sphere agrees with the
//    classifier, including the forced self-dual class of the trefoil shadow.
inline CriterionResult check_flat_oracle() {
  using namespace selftest_detail;
  Check c("flat-move-oracle");
  Budget b;
  b.max_crossings = 3;
  b.max_states = 200000;
  b.max_word_len = 4;
  TangleDiagram kink = parse_diagram(
      "surface genus=0 boundary=0\ncomponent K closed\n"
      "walk: 1 u:first:L 1 u:second 1\n");
  TangleDiagram mixed = parse_diagram(
      "surface genus=0 boundary=0\ncomponent A closed\nwalk: 1 m:first:L 1\n"
      "component B closed\nwalk: 1 m:second 1\n");
  int states = 0;
  for (const TangleDiagram& seed :
       {kink, embedded("triangle_flat"), mixed}) {
    OracleReport rep = compare_with_classifier(seed, b);
    states += rep.states;
    c.require(rep.complete, "exploration budget was exhausted");
    c.require(rep.ok, rep.mismatches.empty() ? "oracle mismatch"
                                             : rep.mismatches.front());
  }
  PhratryGraph g = build_phratry_graph(kink, b);
  c.require(g.self_dual.count("u") == 1,
            "moves failed to prove the kink self-dual");
  PhratryGraph t = build_phratry_graph(embedded("triangle_flat"), b);
  c.require(t.same.size() == 1 && t.self_dual.size() == 3,
            "trefoil shadow did not collapse to one self-dual class");
  c.note(std::to_string(states) + " states explored");
  return c.r;
}

// 7. The genus-2 example: left halves, component class, and the
//    automorphism chain carrying each half to the next.
inline CriterionResult check_genus2_chain() {
  using namespace selftest_detail;
  Check c("genus2-automorphism-chain");
  TangleDiagram d = embedded("genus2_flat");
  const SurfacePresentation& p = d.surface;
  auto h = [&](const std::string& id) { return flat_classify(d, id).h; };
  Word kappa = component_class(d, 0);
  c.require(p.render(kappa) == "cebda", "component class mismatch");
  c.require(p.render(h("v1")) == "c" && p.render(h("v2")) == "a" &&
                p.render(h("v3")) == "Ada" && p.render(h("v4")) == "ADbda" &&
                p.render(h("v5")) == "ceC",
            "left-half indices mismatch");
  // substitution induced by sliding the basepoint one crossing forward
  std::map<int, Word> phi = {{1, p.parse("Ada")},
                             {2, p.parse("Aea")},
                             {3, p.parse("a")},
                             {4, p.parse("Aba")},
                             {5, p.parse("Aca")}};
  auto F = [&](const Word& w) { return apply_substitution(w, phi); };
  c.require(F(h("v1")) == h("v2"), "chain step v1 -> v2 failed");
  c.require(F(h("v2")) == h("v3"), "chain step v2 -> v3 failed");
  c.require(F(h("v3")) == h("v4"), "chain step v3 -> v4 failed");
  c.require(free_reduce(kappa * F(h("v4")) * kappa.inverse()) == h("v5"),
            "chain step v4 -> v5 failed");
  c.require(equal_mod_power_conj(F(h("v4")), h("v5"), kappa, p) ==
                Verdict::Equal,
            "quotient predicate missed the conjugated chain step");
  c.require(F(h("v5")) == h("v1"), "chain step v5 -> v1 failed");
  // the five halves are pairwise distinct in the quotient
  const char* ids[] = {"v1", "v2", "v3", "v4", "v5"};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      c.require(flat_same_tribe(d, ids[i], ids[j]) == Verdict::NotEqual,
                std::string(ids[i]) + " and " + ids[j] + " not separated");
  return c.r;
}

// 8. Quotient predicates agree with brute-force enumeration on random
//    free-group instances, and primitive roots are exact on short words.
inline CriterionResult check_quotient_predicates() {
  using namespace selftest_detail;
  Check c("quotient-predicates-randomized");
  SurfacePresentation p = SurfacePresentation::make(2, 2, "abcde");
  std::mt19937_64 rng(271828);
  for (int i = 0; i < 10000; ++i) {
    Word x = random_word(rng, 5, 8);
    Word kappa = random_word(rng, 5, 5);
    Word y;
    if (rng() % 2) {
      int n = static_cast<int>(rng() % 9) - 4;
      y = free_reduce(kappa.pow(n) * x * kappa.pow(-n));
    } else {
      y = random_word(rng, 5, 8);
    }
    Verdict fast = equal_mod_power_conj(x, y, kappa, p);
    // oracle: scan a window three times wider than the proven bound
    long base = kappa.empty()
                    ? 0
                    : static_cast<long>(x.size() + y.size()) /
                              (2 * std::max<size_t>(
                                       kappa.cyclic_core(nullptr).size(), 1)) +
                          1;
    long window = 3 * base + 3;
    bool slow = false;
    for (long n = -window; n <= window && !slow; ++n)
      slow = free_reduce(kappa.pow(static_cast<int>(n)) * x *
                         kappa.pow(static_cast<int>(-n))) == free_reduce(y);
    c.require((fast == Verdict::Equal) == slow,
              "power-conjugation predicate disagrees with brute force");
  }
  // primitive roots, exhaustively on short rank-2 words
  SurfacePresentation f2 = SurfacePresentation::make(0, 3, "ab");
  std::vector<Word> words = {Word()};
  for (int len = 1; len <= 8; ++len) {
    std::vector<Word> next;
    for (const Word& w : words)
      if (static_cast<int>(w.size()) == len - 1)
        for (int16_t l : {int16_t(1), int16_t(-1), int16_t(2), int16_t(-2)}) {
          if (!w.letters.empty() && w.letters.back() == -l) continue;
          Word v = w;
          v.letters.push_back(l);
          next.push_back(v);
        }
    for (const Word& w : next) {
      auto [root, n] = primitive_root(w, f2);
      c.require(root.pow(n) == w, "primitive root does not reproduce word");
      c.require(primitive_root(root, f2).second == 1,
                "primitive root is itself a proper power");
    }
    words.insert(words.end(), next.begin(), next.end());
  }
  c.note("10000 random instances plus exhaustive roots to length 8");
  return c.r;
}

// 9. Whenever a crossing is detected self-dual its component class has a
//    square root.
inline CriterionResult check_square_root_witness() {
  using namespace selftest_detail;
  Check c("self-dual-square-root");
  int found = 0;
  std::mt19937_64 rng(99);
  for (int i = 0; i < 60; ++i) {
    auto walk = random_walk(embedded("flat_annulus"), 15, rng(), 6);
    const TangleDiagram& d = walk.after;
    for (const auto& [id, x] : d.crossings) {
      if (crossing_kind(d, id) != CrossingKind::ClosedSelf) continue;
      if (is_self_dual(d, id)) {
        ++found;
        auto halves = extract_halves(d, id);
        c.require(has_square_root(halves.kappa, d.surface),
                  "self-dual crossing with no square root of kappa");
      }
    }
  }
  TangleDiagram fa = embedded("flat_annulus");
  c.require(is_self_dual(fa, "x2"), "winding-2 crossing should be self-dual");
  c.require(found > 0, "no self-dual crossings encountered");
  c.note(std::to_string(found) + " self-dual crossings witnessed");
  return c.r;
}

inline std::vector<CriterionResult> run_selftest() {
  return {check_single_tribe_knots(),   check_type_separation(),
          check_abelian_winding_oracle(), check_move_invariance(),
          check_crossing_change_law(),  check_flat_oracle(),
          check_genus2_chain(),         check_quotient_predicates(),
          check_square_root_witness()};
}

}  // namespace tdg
