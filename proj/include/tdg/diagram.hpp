#pragma once

#include <map>
#include <sstream>

#include "surface.hpp"

namespace tdg {

enum class PassRole { Over, Under, First, Second };
enum class Chirality { Left, Right };

inline const char* to_string(PassRole r) {
  switch (r) {
    case PassRole::Over: return "over";
    case PassRole::Under: return "under";
    case PassRole::First: return "first";
    default: return "second";
  }
}

struct ParseViolation {
  int line;
  std::string message;
};

class parse_error : public error {
 public:
  explicit parse_error(std::vector<ParseViolation> vs)
      : error("parse-error", summary(vs)), violations(std::move(vs)) {}
  std::vector<ParseViolation> violations;

 private:
  static std::string summary(const std::vector<ParseViolation>& vs) {
    std::ostringstream os;
    for (const auto& v : vs) os << "line " << v.line << ": " << v.message << "; ";
    return os.str();
  }
};

struct Pass {
  std::string crossing;
  PassRole role;
};

struct Component {
  std::string name;
  bool closed = true;
  std::vector<Word> words;   // words.size() == passes.size() + 1
  std::vector<Pass> passes;  // pass k sits after segment word k
};

// Derived per-crossing record. Visits are in traversal order (component
// index, then pass position); chirality is recorded relative to the frame
// (direction of first visit, direction of second visit): Right = positive.
struct Crossing {
  Chirality chir = Chirality::Right;
  int sign = 0;  // +1 / -1 for classical diagrams, 0 for flat
  struct Visit {
    int comp = -1;
    int pos = -1;
  };
  Visit visit[2];

  bool self() const { return visit[0].comp == visit[1].comp; }
};

struct TangleDiagram {
  SurfacePresentation surface;
  std::vector<Component> components;
  std::map<std::string, Crossing> crossings;
  bool flat = false;

  const Component& comp(int i) const { return components[static_cast<size_t>(i)]; }
  const Crossing& at(const std::string& id) const {
    auto it = crossings.find(id);
    if (it == crossings.end())
      throw error("unknown-crossing", "no crossing named " + id);
    return it->second;
  }
  PassRole role_at(const Crossing::Visit& v) const {
    return components[static_cast<size_t>(v.comp)].passes[static_cast<size_t>(v.pos)].role;
  }
};

namespace detail {

// Rebuild the crossing table from the walks: locate the two visits of each
// crossing in traversal order, check role patterns, reduce words, classify
// the diagram as classical or flat, and derive/check signs.
inline void revalidate(TangleDiagram& d, std::vector<ParseViolation>* out = nullptr,
                       bool keep_annotations = true) {
  std::vector<ParseViolation> local;
  auto fail = [&](const std::string& m) {
    if (out)
      out->push_back({0, m});
    else
      local.push_back({0, m});
  };

  std::map<std::string, std::vector<Crossing::Visit>> seen;
  bool any_classical = false, any_flat = false;
  for (size_t c = 0; c < d.components.size(); ++c) {
    Component& comp = d.components[c];
    if (comp.words.size() != comp.passes.size() + 1) {
      fail("component " + comp.name + " has " + std::to_string(comp.words.size()) +
           " words for " + std::to_string(comp.passes.size()) + " passes");
      continue;
    }
    for (Word& w : comp.words) {
      d.surface.check_alphabet(w);
      w = free_reduce(w);
    }
    for (size_t p = 0; p < comp.passes.size(); ++p) {
      const Pass& ps = comp.passes[p];
      seen[ps.crossing].push_back({static_cast<int>(c), static_cast<int>(p)});
      if (ps.role == PassRole::Over || ps.role == PassRole::Under)
        any_classical = true;
      else
        any_flat = true;
    }
  }
  if (any_classical && any_flat)
    fail("diagram mixes classical (over/under) and flat (first/second) roles");
  d.flat = any_flat && !any_classical;

  std::map<std::string, Crossing> table;
  for (auto& [id, visits] : seen) {
    if (visits.size() != 2) {
      fail("crossing " + id + " appears " + std::to_string(visits.size()) +
           " times (expected 2)");
      continue;
    }
    Crossing x;
    auto old = d.crossings.find(id);
    if (keep_annotations && old != d.crossings.end()) {
      x.chir = old->second.chir;
      x.sign = old->second.sign;
    }
    x.visit[0] = visits[0];
    x.visit[1] = visits[1];
    PassRole r0 = d.role_at(x.visit[0]), r1 = d.role_at(x.visit[1]);
    if (d.flat) {
      if (r0 != PassRole::First || r1 != PassRole::Second)
        fail("crossing " + id +
             ": flat roles must be first at the earlier visit, second at the "
             "later visit");
      if (x.sign != 0) fail("crossing " + id + ": sign given on a flat diagram");
    } else {
      if (!((r0 == PassRole::Over && r1 == PassRole::Under) ||
            (r0 == PassRole::Under && r1 == PassRole::Over)))
        fail("crossing " + id + ": classical roles must be one over, one under");
      int derived = ((x.chir == Chirality::Right) == (r0 == PassRole::Over)) ? 1 : -1;
      if (x.sign == 0)
        x.sign = derived;
      else if (x.sign != derived)
        fail("crossing " + id + ": inconsistent-sign (declared " +
             (x.sign > 0 ? std::string("+") : std::string("-")) +
             ", chirality and roles derive " + (derived > 0 ? "+" : "-") + ")");
    }
    table[id] = x;
  }
  d.crossings = std::move(table);
  if (!local.empty()) throw parse_error(local);
}

}  // namespace detail

// ---- .tdg parsing -------------------------------------------------------

inline TangleDiagram parse_diagram(const std::string& text) {
  std::vector<ParseViolation> errs;
  TangleDiagram d;
  bool have_surface = false;
  std::map<std::string, Chirality> chir_notes;
  std::map<std::string, int> sign_notes;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "surface") {
      int g = -1, b = -1;
      std::string gens;
      std::string kv;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
          errs.push_back({lineno, "expected key=value, got " + kv});
          continue;
        }
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        try {
          if (key == "genus")
            g = std::stoi(val);
          else if (key == "boundary")
            b = std::stoi(val);
          else if (key == "generators")
            gens = val;
          else
            errs.push_back({lineno, "unknown surface attribute " + key});
        } catch (const std::exception&) {
          errs.push_back({lineno, "bad value for " + key});
        }
      }
      if (g < 0 || b < 0) {
        errs.push_back({lineno, "surface line needs genus= and boundary="});
        continue;
      }
      try {
        d.surface = SurfacePresentation::make(g, b, gens);
        have_surface = true;
      } catch (const error& e) {
        errs.push_back({lineno, e.what()});
      }
    } else if (tok == "component") {
      Component c;
      std::string kind;
      if (!(ls >> c.name >> kind) || (kind != "closed" && kind != "long")) {
        errs.push_back({lineno, "expected: component <name> <closed|long>"});
        continue;
      }
      c.closed = kind == "closed";
      d.components.push_back(std::move(c));
    } else if (tok == "walk:") {
      if (d.components.empty()) {
        errs.push_back({lineno, "walk before any component"});
        continue;
      }
      Component& c = d.components.back();
      if (!c.words.empty()) {
        errs.push_back({lineno, "component " + c.name + " has two walks"});
        continue;
      }
      bool expect_word = true;
      std::string t;
      while (ls >> t) {
        if (expect_word) {
          try {
            c.words.push_back(have_surface ? d.surface.parse(t) : Word::parse(t));
          } catch (const error& e) {
            errs.push_back({lineno, e.what()});
            c.words.push_back(Word());
          }
          expect_word = false;
        } else {
          // pass token: id:role[:L|R]
          std::vector<std::string> parts;
          size_t start = 0;
          while (start <= t.size()) {
            size_t colon = t.find(':', start);
            if (colon == std::string::npos) {
              parts.push_back(t.substr(start));
              break;
            }
            parts.push_back(t.substr(start, colon - start));
            start = colon + 1;
          }
          if (parts.size() < 2 || parts.size() > 3 || parts[0].empty()) {
            errs.push_back({lineno, "bad pass token " + t});
            expect_word = true;
            continue;
          }
          Pass p;
          p.crossing = parts[0];
          if (parts[1] == "over")
            p.role = PassRole::Over;
          else if (parts[1] == "under")
            p.role = PassRole::Under;
          else if (parts[1] == "first")
            p.role = PassRole::First;
          else if (parts[1] == "second")
            p.role = PassRole::Second;
          else {
            errs.push_back({lineno, "bad role in " + t});
            expect_word = true;
            continue;
          }
          if (parts.size() == 3) {
            Chirality ch;
            if (parts[2] == "L")
              ch = Chirality::Left;
            else if (parts[2] == "R")
              ch = Chirality::Right;
            else {
              errs.push_back({lineno, "bad chirality in " + t});
              expect_word = true;
              continue;
            }
            auto it = chir_notes.find(p.crossing);
            if (it != chir_notes.end() && it->second != ch)
              errs.push_back({lineno, "conflicting chirality for " + p.crossing});
            chir_notes[p.crossing] = ch;
          }
          c.passes.push_back(p);
          expect_word = true;
        }
      }
      if (c.words.size() != c.passes.size() + 1)
        errs.push_back({lineno, "walk must alternate words and passes, "
                                "starting and ending with a word"});
    } else if (tok == "sign") {
      std::string id, s;
      if (!(ls >> id >> s) || (s != "+" && s != "-")) {
        errs.push_back({lineno, "expected: sign <xid> <+|->"});
        continue;
      }
      sign_notes[id] = s == "+" ? 1 : -1;
    } else {
      errs.push_back({lineno, "unknown directive " + tok});
    }
  }
  if (!have_surface) errs.push_back({0, "missing surface line"});
  if (d.components.empty()) errs.push_back({0, "no components"});
  if (!errs.empty()) throw parse_error(errs);

  // Seed crossing annotations, then let revalidate derive and check.
  for (auto& [id, ch] : chir_notes) d.crossings[id].chir = ch;
  for (auto& [id, sg] : sign_notes) {
    auto it = d.crossings.find(id);
    bool have_chir = it != d.crossings.end();
    d.crossings[id].sign = sg;
    if (!have_chir) d.crossings[id].chir = Chirality::Right;  // fixed below
  }
  std::vector<ParseViolation> post;
  // For classical crossings with a sign but no chirality note, derive the
  // chirality from the sign before validation.
  {
    std::map<std::string, std::vector<Crossing::Visit>> seen;
    for (size_t c = 0; c < d.components.size(); ++c)
      for (size_t p = 0; p < d.components[c].passes.size(); ++p)
        seen[d.components[c].passes[p].crossing].push_back(
            {static_cast<int>(c), static_cast<int>(p)});
    for (auto& [id, sg] : sign_notes) {
      if (chir_notes.count(id)) continue;
      auto it = seen.find(id);
      if (it == seen.end() || it->second.size() != 2) continue;
      PassRole r0 = d.role_at(it->second[0]);
      if (r0 != PassRole::Over && r0 != PassRole::Under) continue;
      d.crossings[id].chir = ((sg > 0) == (r0 == PassRole::Over))
                                 ? Chirality::Right
                                 : Chirality::Left;
    }
  }
  detail::revalidate(d, &post);
  if (!post.empty()) throw parse_error(post);
  return d;
}

inline std::string serialize(const TangleDiagram& d) {
  std::ostringstream os;
  os << "surface genus=" << d.surface.genus << " boundary=" << d.surface.boundary;
  std::string def;
  for (int i = 0; i < d.surface.rank(); ++i) def += static_cast<char>('a' + i);
  if (d.surface.alphabet != def) os << " generators=" << d.surface.alphabet;
  os << "\n";
  for (size_t ci = 0; ci < d.components.size(); ++ci) {
    const Component& c = d.components[ci];
    os << "component " << c.name << " " << (c.closed ? "closed" : "long") << "\n";
    os << "walk:";
    for (size_t k = 0; k <= c.passes.size(); ++k) {
      os << " " << d.surface.render(c.words[k]);
      if (k < c.passes.size()) {
        const Pass& p = c.passes[k];
        const Crossing& x = d.at(p.crossing);
        bool first_visit = x.visit[0].comp == static_cast<int>(ci) &&
                           x.visit[0].pos == static_cast<int>(k);
        os << " " << p.crossing << ":" << to_string(p.role);
        if (first_visit)
          os << ":" << (x.chir == Chirality::Right ? "R" : "L");
      }
    }
    os << "\n";
  }
  if (!d.flat) {
    // crossings in first-visit traversal order
    std::vector<std::pair<std::pair<int, int>, std::string>> order;
    for (const auto& [id, x] : d.crossings)
      order.push_back({{x.visit[0].comp, x.visit[0].pos}, id});
    std::sort(order.begin(), order.end());
    for (const auto& [pos, id] : order)
      os << "sign " << id << " " << (d.at(id).sign > 0 ? "+" : "-") << "\n";
  }
  return os.str();
}

// ---- walk path algebra ---------------------------------------------------

namespace detail {

// Product of segment words [from, to] inclusive.
inline Word words_range(const Component& c, size_t from, size_t to) {
  Word w;
  for (size_t k = from; k <= to && k < c.words.size(); ++k) w = w * c.words[k];
  return w;
}

}  // namespace detail

// Path class from the component's start point to the given pass.
inline Word prefix_to_pass(const TangleDiagram& d, int comp, int pos) {
  return detail::words_range(d.comp(comp), 0, static_cast<size_t>(pos));
}

// Path class from the given pass to the component's end point.
inline Word suffix_from_pass(const TangleDiagram& d, int comp, int pos) {
  const Component& c = d.comp(comp);
  return detail::words_range(c, static_cast<size_t>(pos) + 1, c.passes.size());
}

// Class of the full component loop (identity for long components).
inline Word component_class(const TangleDiagram& d, int comp) {
  const Component& c = d.comp(comp);
  if (!c.closed) return Word();
  return detail::words_range(c, 0, c.passes.size());
}

inline Word component_class(const TangleDiagram& d, const std::string& name) {
  for (size_t i = 0; i < d.components.size(); ++i)
    if (d.components[i].name == name) return component_class(d, static_cast<int>(i));
  throw error("unknown-component", "no component named " + name);
}

// ---- crossing attribute accessors ---------------------------------------

// Ordered component type (over component, under component); classical only.
inline std::pair<int, int> component_type(const TangleDiagram& d,
                                          const std::string& id) {
  if (d.flat)
    throw error("role-mismatch", "component_type needs a classical diagram");
  const Crossing& x = d.at(id);
  bool over_first = d.role_at(x.visit[0]) == PassRole::Over;
  int c0 = x.visit[0].comp, c1 = x.visit[1].comp;
  return over_first ? std::make_pair(c0, c1) : std::make_pair(c1, c0);
}

// Order type of a self-crossing of a long component: +1 when the
// overcrossing is met first, -1 when the undercrossing is met first.
inline int order_type(const TangleDiagram& d, const std::string& id) {
  if (d.flat) throw error("role-mismatch", "order_type needs a classical diagram");
  const Crossing& x = d.at(id);
  if (!x.self() || d.comp(x.visit[0].comp).closed)
    throw error("role-mismatch",
                "order_type is defined for self-crossings of long components");
  return d.role_at(x.visit[0]) == PassRole::Over ? 1 : -1;
}

inline int crossing_sign(const TangleDiagram& d, const std::string& id) {
  if (d.flat) throw error("role-mismatch", "crossing_sign needs a classical diagram");
  return d.at(id).sign;
}

// ---- halves of a self-crossing -------------------------------------------

// For a self-crossing v of a closed component, the curve splits at v into
// two loops: alpha (from the first visit to the second) and beta (the wrap
// through the component's start). Based representatives use pass-avoiding
// tails: alpha takes the walk prefix of the first visit, beta runs
// backwards from the start point. With these tails delta^- delta^+ (or the
// swapped product, depending on which half holds the start point) equals
// the component class exactly, not just up to conjugation.
struct HalfExtraction {
  Word delta_plus, delta_minus;  // classical only
  Word delta_left, delta_right;
  Word kappa;
  bool z_in_d_plus = false;  // start point lies on the D+ half
  bool z_in_d_left = false;
};

inline HalfExtraction extract_halves(const TangleDiagram& d,
                                     const std::string& id) {
  const Crossing& x = d.at(id);
  if (!x.self())
    throw error("role-mismatch", "extract_halves needs a self-crossing");
  int ci = x.visit[0].comp;
  const Component& c = d.comp(ci);
  if (!c.closed)
    throw error("role-mismatch",
                "extract_halves needs a closed component (long self-crossings "
                "have a single loop half)");
  int j = x.visit[0].pos, k = x.visit[1].pos;
  Word Pj = prefix_to_pass(d, ci, j);
  Word alpha = detail::words_range(c, static_cast<size_t>(j) + 1, static_cast<size_t>(k));
  Word suf = suffix_from_pass(d, ci, k);
  HalfExtraction h;
  Word based_alpha = Pj * alpha * Pj.inverse();
  Word based_beta = Pj * suf;  // = suf^-1 (suf Pj) suf, the back-based wrap
  h.kappa = component_class(d, ci);
  bool left_is_alpha = x.chir == Chirality::Left;
  h.delta_left = left_is_alpha ? based_alpha : based_beta;
  h.delta_right = left_is_alpha ? based_beta : based_alpha;
  h.z_in_d_left = !left_is_alpha;
  if (!d.flat) {
    bool over_first = d.role_at(x.visit[0]) == PassRole::Over;
    // D+ runs from the undercrossing to the overcrossing.
    h.delta_plus = over_first ? based_beta : based_alpha;
    h.delta_minus = over_first ? based_alpha : based_beta;
    h.z_in_d_plus = over_first;
  }
  return h;
}

// ---- diagram surgeries ----------------------------------------------------

inline TangleDiagram crossing_change(const TangleDiagram& d,
                                     const std::string& id) {
  if (d.flat)
    throw error("role-mismatch", "crossing_change needs a classical diagram");
  TangleDiagram out = d;
  const Crossing& x = out.at(id);
  for (int v = 0; v < 2; ++v) {
    Pass& p = out.components[static_cast<size_t>(x.visit[v].comp)]
                  .passes[static_cast<size_t>(x.visit[v].pos)];
    p.role = p.role == PassRole::Over ? PassRole::Under : PassRole::Over;
  }
  out.crossings[id].sign = -out.crossings[id].sign;
  detail::revalidate(out);
  return out;
}

inline TangleDiagram flatten(const TangleDiagram& d) {
  TangleDiagram out = d;
  for (auto& [id, x] : out.crossings) {
    x.sign = 0;
    out.components[static_cast<size_t>(x.visit[0].comp)]
        .passes[static_cast<size_t>(x.visit[0].pos)].role = PassRole::First;
    out.components[static_cast<size_t>(x.visit[1].comp)]
        .passes[static_cast<size_t>(x.visit[1].pos)].role = PassRole::Second;
  }
  detail::revalidate(out);
  return out;
}

// Lift a flat diagram to a classical one; over_first[id] picks which visit
// of each crossing becomes the overcrossing (default: the first visit).
inline TangleDiagram lift(const TangleDiagram& d,
                          const std::map<std::string, bool>& over_first = {}) {
  if (!d.flat) throw error("role-mismatch", "lift needs a flat diagram");
  TangleDiagram out = d;
  for (auto& [id, x] : out.crossings) {
    auto it = over_first.find(id);
    bool of = it == over_first.end() ? true : it->second;
    out.components[static_cast<size_t>(x.visit[0].comp)]
        .passes[static_cast<size_t>(x.visit[0].pos)].role =
        of ? PassRole::Over : PassRole::Under;
    out.components[static_cast<size_t>(x.visit[1].comp)]
        .passes[static_cast<size_t>(x.visit[1].pos)].role =
        of ? PassRole::Under : PassRole::Over;
    x.sign = 0;  // rederive from chirality
  }
  detail::revalidate(out);
  return out;
}

// Move the start point of a closed component so that pass r becomes the
// first pass. Pure re-basing: all classifier invariants are unchanged (they
// compare through conjugation/coset predicates). Chirality letters of
// self-crossings whose visit order swaps are flipped, since chirality is
// recorded relative to the visit order; derived signs stay fixed.
inline TangleDiagram rotate_basepoint(const TangleDiagram& d, int comp, int r) {
  const Component& c = d.comp(comp);
  if (!c.closed)
    throw error("invalid-site", "cannot rotate a long component");
  size_t m = c.passes.size();
  if (m == 0 || r == 0) return d;
  TangleDiagram out = d;
  Component& oc = out.components[static_cast<size_t>(comp)];
  oc.passes.clear();
  oc.words.clear();
  // Cyclic arc words: arc i leads into pass i; the arc into pass 0 is the
  // old wrap through the start point.
  std::vector<Word> arc(m);
  arc[0] = c.words[m] * c.words[0];
  for (size_t i = 1; i < m; ++i) arc[i] = c.words[i];
  oc.words.push_back(Word());  // start point sits right before pass r
  for (size_t i = 0; i < m; ++i) {
    size_t src = (static_cast<size_t>(r) + i) % m;
    oc.passes.push_back(c.passes[src]);
    if (i + 1 < m) oc.words.push_back(arc[(src + 1) % m]);
  }
  oc.words.push_back(arc[static_cast<size_t>(r) % m]);
  // Flip chirality where the visit order of a self-crossing swapped.
  for (auto& [id, x] : out.crossings) {
    if (!x.self() || x.visit[0].comp != comp) continue;
    int a = x.visit[0].pos, b = x.visit[1].pos;
    auto newpos = [&](int p) { return (p - r + static_cast<int>(m)) % static_cast<int>(m); };
    if ((newpos(a) < newpos(b)) != (a < b))
      x.chir = x.chir == Chirality::Left ? Chirality::Right : Chirality::Left;
  }
  // Flat roles follow the visit order.
  if (out.flat) {
    std::map<std::string, int> seen;
    for (auto& component : out.components)
      for (auto& p : component.passes)
        p.role = seen[p.crossing]++ == 0 ? PassRole::First : PassRole::Second;
  }
  detail::revalidate(out);
  return out;
}

}  // namespace tdg
