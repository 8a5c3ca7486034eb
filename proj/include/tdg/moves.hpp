#pragma once

#include <array>
#include <random>

#include "classify.hpp"

namespace tdg {

enum class MoveKind { R1Add, R1Remove, R2Add, R2Remove, R3 };

// Insertion point inside a walk: component, segment word index, and how
// many letters of that (reduced) segment word precede the insertion.
struct MoveSite {
  int comp = -1;
  int seg = -1;
  int cut = 0;

  auto operator<=>(const MoveSite&) const = default;
};

struct Move {
  MoveKind kind{};
  MoveSite a, b;                       // insertion sites (adds)
  Chirality chir = Chirality::Right;   // adds: chirality of the first new crossing
  bool reversed = false;               // R2 add: second strand traversed oppositely
  int over = 0;                        // adds, classical: +1 first strand over, -1 under
  std::string x, y, z;                 // crossing ids (removals, slides)

  std::string str(const TangleDiagram& d) const {
    std::ostringstream os;
    auto site = [&](const MoveSite& s) {
      os << " " << d.comp(s.comp).name << " " << s.seg << " " << s.cut;
    };
    auto flags = [&]() {
      os << " " << (chir == Chirality::Left ? "L" : "R");
      if (kind == MoveKind::R2Add) os << " " << (reversed ? "rev" : "fwd");
      os << " " << (over > 0 ? "over" : over < 0 ? "under" : "flat");
    };
    switch (kind) {
      case MoveKind::R1Add: os << "r1add"; site(a); flags(); break;
      case MoveKind::R1Remove: os << "r1rem " << x; break;
      case MoveKind::R2Add: os << "r2add"; site(a); site(b); flags(); break;
      case MoveKind::R2Remove: os << "r2rem " << x << " " << y; break;
      case MoveKind::R3: os << "r3 " << x << " " << y << " " << z; break;
    }
    return os.str();
  }
};

inline int find_component(const TangleDiagram& d, const std::string& name) {
  for (size_t i = 0; i < d.components.size(); ++i)
    if (d.components[i].name == name) return static_cast<int>(i);
  throw error("unknown-component", "no component named " + name);
}

inline Move parse_move(const TangleDiagram& d, const std::string& line) {
  std::istringstream is(line);
  std::string op;
  if (!(is >> op)) throw error("illegal-move", "empty move line");
  Move m;
  auto site = [&](MoveSite& s) {
    std::string name;
    if (!(is >> name >> s.seg >> s.cut))
      throw error("illegal-move", "bad site in move: " + line);
    s.comp = find_component(d, name);
  };
  auto flags = [&](bool rev_flag) {
    std::string c, o, r;
    if (!(is >> c)) throw error("illegal-move", "missing chirality: " + line);
    m.chir = c == "L" ? Chirality::Left : Chirality::Right;
    if (rev_flag) {
      if (!(is >> r)) throw error("illegal-move", "missing fwd/rev: " + line);
      m.reversed = r == "rev";
    }
    if (!(is >> o)) throw error("illegal-move", "missing over/under/flat: " + line);
    m.over = o == "over" ? 1 : o == "under" ? -1 : 0;
  };
  if (op == "r1add") {
    m.kind = MoveKind::R1Add;
    site(m.a);
    flags(false);
  } else if (op == "r1rem") {
    m.kind = MoveKind::R1Remove;
    if (!(is >> m.x)) throw error("illegal-move", "r1rem needs a crossing id");
  } else if (op == "r2add") {
    m.kind = MoveKind::R2Add;
    site(m.a);
    site(m.b);
    flags(true);
  } else if (op == "r2rem") {
    m.kind = MoveKind::R2Remove;
    if (!(is >> m.x >> m.y)) throw error("illegal-move", "r2rem needs two ids");
  } else if (op == "r3") {
    m.kind = MoveKind::R3;
    if (!(is >> m.x >> m.y >> m.z)) throw error("illegal-move", "r3 needs three ids");
  } else {
    throw error("illegal-move", "unknown move " + op);
  }
  return m;
}

struct MoveStep {
  TangleDiagram after;
  std::vector<std::string> created, removed;
  std::vector<std::pair<std::string, std::string>> dual_pairs;
};

namespace detail {

inline std::vector<std::string> fresh_ids(const TangleDiagram& d, int n) {
  std::vector<std::string> out;
  int k = 1;
  while (static_cast<int>(out.size()) < n) {
    std::string id = "c" + std::to_string(k++);
    if (!d.crossings.count(id)) out.push_back(id);
  }
  return out;
}

inline void assign_flat_roles(TangleDiagram& d) {
  if (!d.flat) return;
  std::map<std::string, int> seen;
  for (auto& c : d.components)
    for (auto& p : c.passes)
      p.role = seen[p.crossing]++ ? PassRole::Second : PassRole::First;
}

// Insert passes (with trivial interior words) into a walk at (seg, cut).
inline void splice(Component& c, int seg, int cut, const std::vector<Pass>& ps) {
  if (seg < 0 || seg > static_cast<int>(c.passes.size()))
    throw error("invalid-site", "segment index out of range");
  Word& w = c.words[static_cast<size_t>(seg)];
  if (cut < 0 || cut > static_cast<int>(w.size()))
    throw error("invalid-site", "cut position out of range");
  Word head, tail;
  head.letters.assign(w.letters.begin(), w.letters.begin() + cut);
  tail.letters.assign(w.letters.begin() + cut, w.letters.end());
  w = head;
  std::vector<Word> mids(ps.size());
  mids.back() = tail;
  c.words.insert(c.words.begin() + seg + 1, mids.begin(), mids.end());
  c.passes.insert(c.passes.begin() + seg, ps.begin(), ps.end());
}

// Remove the adjacent passes at positions i and i+1, merging segment words.
inline void erase_pass_pair(Component& c, int i) {
  size_t k = static_cast<size_t>(i);
  c.words[k] = c.words[k] * c.words[k + 1] * c.words[k + 2];
  c.words.erase(c.words.begin() + i + 1, c.words.begin() + i + 3);
  c.passes.erase(c.passes.begin() + i, c.passes.begin() + i + 2);
}

// Two passes adjacent along a strand: consecutive, or around the start
// point of a closed component, with an interior path that is trivial in
// the fundamental group.
struct PairSite {
  int comp = -1;
  int pos1 = -1, pos2 = -1;  // strand order: pos1 then pos2
  bool wrap = false;

  bool contains(const Crossing::Visit& v) const {
    return v.comp == comp && (v.pos == pos1 || v.pos == pos2);
  }
};

inline std::optional<PairSite> adjacent(const TangleDiagram& d,
                                        const Crossing::Visit& u,
                                        const Crossing::Visit& v) {
  if (u.comp != v.comp) return std::nullopt;
  const Component& c = d.comp(u.comp);
  int m = static_cast<int>(c.passes.size());
  auto trivially = [&](const Word& w) {
    return is_trivial(w, d.surface);
  };
  auto ordered = [&](int a, int b) -> std::optional<PairSite> {
    if (b == a + 1 && trivially(c.words[static_cast<size_t>(b)]))
      return PairSite{u.comp, a, b, false};
    if (c.closed && a == m - 1 && b == 0 &&
        trivially(c.words[static_cast<size_t>(m)] * c.words[0]))
      return PairSite{u.comp, a, b, true};
    return std::nullopt;
  };
  if (auto s = ordered(u.pos, v.pos)) return s;
  return ordered(v.pos, u.pos);
}

inline bool chir_bool(Chirality c) { return c == Chirality::Left; }

// Bigon frame test: chirality of v as seen from the pair-1 strand.
inline bool bigon_frame(const Crossing& v, const PairSite& pair1) {
  bool first_on_pair1 = pair1.contains(v.visit[0]);
  return chir_bool(v.chir) != !first_on_pair1;
}

struct R2Site {
  PairSite p1, p2;
};

// Legality of cancelling crossings x and y through a bigon.
inline std::optional<R2Site> r2_remove_site(const TangleDiagram& d,
                                            const std::string& xid,
                                            const std::string& yid) {
  if (xid == yid) return std::nullopt;
  const Crossing& x = d.at(xid);
  const Crossing& y = d.at(yid);
  for (int perm = 0; perm < 2; ++perm) {
    const Crossing::Visit& b1 = y.visit[perm];
    const Crossing::Visit& b2 = y.visit[1 - perm];
    auto s1 = adjacent(d, x.visit[0], b1);
    auto s2 = adjacent(d, x.visit[1], b2);
    if (!s1 || !s2) continue;
    if (s1->comp == s2->comp &&
        (s1->pos1 == s2->pos1 || s1->pos1 == s2->pos2 ||
         s1->pos2 == s2->pos1 || s1->pos2 == s2->pos2))
      continue;  // pairs must be disjoint strand intervals
    if (!d.flat) {
      // one strand runs over both crossings, the other under both
      if (d.role_at(x.visit[0]) != d.role_at(b1)) continue;
      if (d.role_at(x.visit[1]) != d.role_at(b2)) continue;
    }
    if (bigon_frame(x, *s1) == bigon_frame(y, *s1)) continue;
    return R2Site{*s1, *s2};
  }
  return std::nullopt;
}

struct R3Site {
  PairSite pxy, pyz, pzx;
};

inline std::optional<R3Site> r3_site(const TangleDiagram& d,
                                     const std::string& xid,
                                     const std::string& yid,
                                     const std::string& zid) {
  if (xid == yid || yid == zid || xid == zid) return std::nullopt;
  const Crossing& x = d.at(xid);
  const Crossing& y = d.at(yid);
  const Crossing& z = d.at(zid);
  // each crossing lends one pass to each of its two triangle edges
  for (int px = 0; px < 2; ++px)
    for (int py = 0; py < 2; ++py)
      for (int pz = 0; pz < 2; ++pz) {
        auto exy = adjacent(d, x.visit[px], y.visit[py]);
        auto eyz = adjacent(d, y.visit[1 - py], z.visit[pz]);
        auto ezx = adjacent(d, z.visit[1 - pz], x.visit[1 - px]);
        if (!exy || !eyz || !ezx) continue;
        // the three edges must be disjoint strand intervals
        auto clash = [&](const PairSite& a, const PairSite& b) {
          return a.comp == b.comp &&
                 (a.pos1 == b.pos1 || a.pos1 == b.pos2 || a.pos2 == b.pos1 ||
                  a.pos2 == b.pos2);
        };
        if (clash(*exy, *eyz) || clash(*eyz, *ezx) || clash(*ezx, *exy))
          continue;
        if (!d.flat) {
          // over-relation between the three strands must be acyclic:
          // edge A "beats" edge B when their shared crossing runs over
          // along A
          auto beats = [&](const PairSite& e, const Crossing& v) {
            return d.role_at(e.contains(v.visit[0]) ? v.visit[0] : v.visit[1]) ==
                   PassRole::Over;
          };
          bool xy_beats = beats(*exy, y);   // at crossing y: edge xy vs yz
          bool yz_beats = beats(*eyz, z);   // at crossing z: edge yz vs zx
          bool zx_beats = beats(*ezx, x);   // at crossing x: edge zx vs xy
          if (xy_beats == yz_beats && yz_beats == zx_beats) continue;  // cycle
        }
        return R3Site{*exy, *eyz, *ezx};
      }
  return std::nullopt;
}

// Remove the pair wrapping around the start point (passes m-1 and 0),
// keeping the start point and its based words in place.
inline void erase_wrap_pair(Component& c) {
  size_t m = c.passes.size();
  std::vector<Word> nw;
  if (m == 2) {
    nw = {c.words[0] * c.words[1] * c.words[2]};
  } else {
    nw.push_back(c.words[0] * c.words[1]);
    for (size_t k = 2; k + 2 <= m; ++k) nw.push_back(c.words[k]);
    nw.push_back(c.words[m - 1] * c.words[m]);
  }
  c.passes.erase(c.passes.begin() + static_cast<long>(m) - 1);
  c.passes.erase(c.passes.begin());
  c.words = std::move(nw);
}

inline void erase_pair_site(Component& c, const PairSite& s) {
  if (s.wrap)
    erase_wrap_pair(c);
  else
    erase_pass_pair(c, s.pos1);
}

}  // namespace detail

inline MoveStep apply_move(const TangleDiagram& d, const Move& m);

namespace detail {

// Kink removal site: the two visits are consecutive along the strand with
// a trivial interior path.
inline std::optional<PairSite> r1_remove_site(const TangleDiagram& d,
                                              const std::string& id) {
  const Crossing& x = d.at(id);
  if (!x.self()) return std::nullopt;
  return adjacent(d, x.visit[0], x.visit[1]);
}

}  // namespace detail

inline MoveStep apply_move(const TangleDiagram& d, const Move& m) {
  MoveStep step;
  switch (m.kind) {
    case MoveKind::R1Add: {
      TangleDiagram out = d;
      std::string id = detail::fresh_ids(d, 1)[0];
      PassRole r1 = PassRole::First, r2 = PassRole::Second;
      if (!d.flat) {
        r1 = m.over >= 0 ? PassRole::Over : PassRole::Under;
        r2 = m.over >= 0 ? PassRole::Under : PassRole::Over;
      }
      detail::splice(out.components[static_cast<size_t>(m.a.comp)], m.a.seg,
                     m.a.cut, {{id, r1}, {id, r2}});
      out.crossings[id].chir = m.chir;
      out.crossings[id].sign = 0;
      detail::assign_flat_roles(out);
      detail::revalidate(out);
      step.after = std::move(out);
      step.created = {id};
      return step;
    }
    case MoveKind::R1Remove: {
      auto site = detail::r1_remove_site(d, m.x);
      if (!site) throw error("illegal-move", "no kink at " + m.x);
      TangleDiagram out = d;
      out.crossings.erase(m.x);
      detail::erase_pair_site(out.components[static_cast<size_t>(site->comp)],
                              *site);
      detail::assign_flat_roles(out);
      detail::revalidate(out);
      step.after = std::move(out);
      step.removed = {m.x};
      return step;
    }
    case MoveKind::R2Add: {
      if (m.a.comp < 0 || m.b.comp < 0)
        throw error("invalid-site", "r2add needs two sites");
      bool tongue = m.a == m.b;
      if (tongue && !m.reversed)
        throw error("invalid-site",
                    "a same-point pair must fold back (use rev)");
      auto ids = detail::fresh_ids(d, 2);
      const std::string& nx = ids[0];
      const std::string& ny = ids[1];
      PassRole ra = PassRole::First, rb = PassRole::First;
      if (!d.flat) {
        ra = m.over >= 0 ? PassRole::Over : PassRole::Under;
        rb = m.over >= 0 ? PassRole::Under : PassRole::Over;
      }
      TangleDiagram out = d;
      std::pair<int, int> ax, ay, bx, by;  // final (comp, pass pos) of each pass
      if (tongue) {
        detail::splice(out.components[static_cast<size_t>(m.a.comp)], m.a.seg,
                       m.a.cut,
                       {{nx, ra}, {ny, ra}, {ny, rb}, {nx, rb}});
        ax = {m.a.comp, m.a.seg};
        ay = {m.a.comp, m.a.seg + 1};
        by = {m.a.comp, m.a.seg + 2};
        bx = {m.a.comp, m.a.seg + 3};
      } else {
        MoveSite lo = m.a, hi = m.b;
        bool a_is_lo = std::tie(m.a.comp, m.a.seg, m.a.cut) <
                       std::tie(m.b.comp, m.b.seg, m.b.cut);
        if (!a_is_lo) std::swap(lo, hi);
        std::vector<Pass> apass = {{nx, ra}, {ny, ra}};
        std::vector<Pass> bpass = m.reversed
                                      ? std::vector<Pass>{{ny, rb}, {nx, rb}}
                                      : std::vector<Pass>{{nx, rb}, {ny, rb}};
        // splice the later site first so positions stay valid
        detail::splice(out.components[static_cast<size_t>(hi.comp)], hi.seg,
                       hi.cut, a_is_lo ? bpass : apass);
        detail::splice(out.components[static_cast<size_t>(lo.comp)], lo.seg,
                       lo.cut, a_is_lo ? apass : bpass);
        int shift = lo.comp == hi.comp ? 2 : 0;
        auto place = [&](const MoveSite& s, int off, bool later) {
          return std::make_pair(s.comp, s.seg + off + (later ? shift : 0));
        };
        ax = place(a_is_lo ? lo : hi, 0, !a_is_lo);
        ay = place(a_is_lo ? lo : hi, 1, !a_is_lo);
        bx = place(a_is_lo ? hi : lo, m.reversed ? 1 : 0, a_is_lo);
        by = place(a_is_lo ? hi : lo, m.reversed ? 0 : 1, a_is_lo);
      }
      // chirality of the partner follows the bigon frame rule: passes whose
      // first visits sit on the same strand get opposite chirality letters
      bool x_first_on_a = ax < bx;
      bool y_first_on_a = ay < by;
      Chirality cy = x_first_on_a == y_first_on_a
                         ? (m.chir == Chirality::Left ? Chirality::Right
                                                      : Chirality::Left)
                         : m.chir;
      out.crossings[nx].chir = m.chir;
      out.crossings[nx].sign = 0;
      out.crossings[ny].chir = cy;
      out.crossings[ny].sign = 0;
      detail::assign_flat_roles(out);
      detail::revalidate(out);
      step.after = std::move(out);
      step.created = {nx, ny};
      step.dual_pairs = {{nx, ny}};
      return step;
    }
    case MoveKind::R2Remove: {
      auto site = detail::r2_remove_site(d, m.x, m.y);
      if (!site)
        throw error("illegal-move", "no bigon between " + m.x + " and " + m.y);
      TangleDiagram out = d;
      out.crossings.erase(m.x);
      out.crossings.erase(m.y);
      auto e1 = site->p1, e2 = site->p2;
      // erase the later interval first so the earlier one keeps its indices;
      // a wrapping interval is erased last (it touches both ends)
      if (e1.comp == e2.comp && (e1.wrap || (!e2.wrap && e1.pos1 < e2.pos1)))
        std::swap(e1, e2);
      detail::erase_pair_site(out.components[static_cast<size_t>(e1.comp)], e1);
      detail::erase_pair_site(out.components[static_cast<size_t>(e2.comp)], e2);
      detail::assign_flat_roles(out);
      detail::revalidate(out);
      step.after = std::move(out);
      step.removed = {m.x, m.y};
      step.dual_pairs = {{m.x, m.y}};
      return step;
    }
    case MoveKind::R3: {
      auto site = detail::r3_site(d, m.x, m.y, m.z);
      if (!site)
        throw error("illegal-move",
                    "no slide triangle on " + m.x + " " + m.y + " " + m.z);
      TangleDiagram out = d;
      for (const detail::PairSite& e : {site->pxy, site->pyz, site->pzx}) {
        Component& c = out.components[static_cast<size_t>(e.comp)];
        std::swap(c.passes[static_cast<size_t>(e.pos1)],
                  c.passes[static_cast<size_t>(e.pos2)]);
      }
      // A wrapping edge moves a pass across the start point, which can swap
      // the visit order of a self-crossing; its chirality letter is recorded
      // relative to the visit order and flips with it.
      {
        auto moved = [&](Crossing::Visit v) {
          for (const detail::PairSite& e : {site->pxy, site->pyz, site->pzx}) {
            if (e.comp != v.comp) continue;
            if (v.pos == e.pos1) return std::make_pair(v.comp, e.pos2);
            if (v.pos == e.pos2) return std::make_pair(v.comp, e.pos1);
          }
          return std::make_pair(v.comp, v.pos);
        };
        for (auto& [id, x] : out.crossings)
          if ((moved(x.visit[0]) < moved(x.visit[1])) !=
              (std::make_pair(x.visit[0].comp, x.visit[0].pos) <
               std::make_pair(x.visit[1].comp, x.visit[1].pos)))
            x.chir =
                x.chir == Chirality::Left ? Chirality::Right : Chirality::Left;
      }
      detail::assign_flat_roles(out);
      detail::revalidate(out);
      step.after = std::move(out);
      return step;
    }
  }
  throw error("illegal-move", "unreachable");
}

// All legal moves from d whose result stays within max_crossings.
inline std::vector<Move> enumerate_moves(const TangleDiagram& d,
                                         int max_crossings,
                                         bool include_adds = true) {
  std::vector<Move> out;
  std::vector<std::string> ids = crossing_order(d);
  for (const std::string& id : ids)
    if (detail::r1_remove_site(d, id)) {
      Move m;
      m.kind = MoveKind::R1Remove;
      m.x = id;
      out.push_back(m);
    }
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i + 1; j < ids.size(); ++j)
      if (detail::r2_remove_site(d, ids[i], ids[j])) {
        Move m;
        m.kind = MoveKind::R2Remove;
        m.x = ids[i];
        m.y = ids[j];
        out.push_back(m);
      }
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i + 1; j < ids.size(); ++j)
      for (size_t k = j + 1; k < ids.size(); ++k)
        if (detail::r3_site(d, ids[i], ids[j], ids[k])) {
          Move m;
          m.kind = MoveKind::R3;
          m.x = ids[i];
          m.y = ids[j];
          m.z = ids[k];
          out.push_back(m);
        }
  if (!include_adds) return out;
  int n = static_cast<int>(d.crossings.size());
  std::vector<MoveSite> sites;
  for (size_t c = 0; c < d.components.size(); ++c)
    for (size_t seg = 0; seg < d.comp(static_cast<int>(c)).words.size(); ++seg)
      for (size_t cut = 0;
           cut <= d.comp(static_cast<int>(c)).words[seg].size(); ++cut)
        sites.push_back({static_cast<int>(c), static_cast<int>(seg),
                         static_cast<int>(cut)});
  std::vector<int> overs = d.flat ? std::vector<int>{0} : std::vector<int>{1, -1};
  if (n + 1 <= max_crossings)
    for (const MoveSite& s : sites)
      for (Chirality ch : {Chirality::Left, Chirality::Right})
        for (int ov : overs) {
          Move m;
          m.kind = MoveKind::R1Add;
          m.a = s;
          m.chir = ch;
          m.over = ov;
          out.push_back(m);
        }
  if (n + 2 <= max_crossings)
    for (size_t i = 0; i < sites.size(); ++i)
      for (size_t j = i; j < sites.size(); ++j)
        for (Chirality ch : {Chirality::Left, Chirality::Right})
          for (bool rev : {false, true})
            for (int ov : overs) {
              if (i == j && !rev) continue;
              Move m;
              m.kind = MoveKind::R2Add;
              m.a = sites[i];
              m.b = sites[j];
              m.chir = ch;
              m.reversed = rev;
              m.over = ov;
              out.push_back(m);
            }
  return out;
}

// ---- finger slides ---------------------------------------------------------

struct MoveTrace {
  TangleDiagram after;
  std::vector<Move> moves;
};

// Push a tongue of the strand across itself at a single point; the new
// crossing pair is dual by construction.
inline MoveTrace pull_sprout(const TangleDiagram& d, int comp, int seg, int cut,
                             Chirality chir, int over = 1) {
  Move m;
  m.kind = MoveKind::R2Add;
  m.a = m.b = {comp, seg, cut};
  m.chir = chir;
  m.reversed = true;
  m.over = d.flat ? 0 : over;
  MoveTrace t;
  t.after = apply_move(d, m).after;
  t.moves = {m};
  return t;
}

// Slide the pass at (comp, pos) past the next pass along the strand, by a
// crossing addition followed by a triangle slide. Needs a trivial path
// between the two passes; otherwise the crossing cannot be carried along.
inline MoveTrace pull_pass(const TangleDiagram& d, int comp, int pos) {
  const Component& c = d.comp(comp);
  if (pos < 0 || pos + 1 >= static_cast<int>(c.passes.size()))
    throw error("invalid-site", "no next pass to slide past");
  if (!is_trivial(c.words[static_cast<size_t>(pos) + 1], d.surface))
    throw error("path-not-pullable",
                "nontrivial path between the passes blocks the slide");
  const std::string vid = c.passes[static_cast<size_t>(pos)].crossing;
  const std::string wid = c.passes[static_cast<size_t>(pos) + 1].crossing;
  const Crossing& v = d.at(vid);
  const Crossing& w = d.at(wid);
  // other-strand endpoints of the two crossings
  auto other = [&](const Crossing& x, int p) {
    return x.visit[0].comp == comp && x.visit[0].pos == p ? x.visit[1]
                                                          : x.visit[0];
  };
  Crossing::Visit vp = other(v, pos);
  Crossing::Visit wp = other(w, pos + 1);
  std::vector<int> overs = d.flat ? std::vector<int>{0} : std::vector<int>{1, -1};
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb)
      for (bool rev : {false, true})
        for (Chirality ch : {Chirality::Left, Chirality::Right})
          for (int ov : overs) {
            Move add;
            add.kind = MoveKind::R2Add;
            // just before or just after the far pass of each crossing
            add.a = sa ? MoveSite{vp.comp, vp.pos + 1, 0}
                       : MoveSite{vp.comp, vp.pos,
                                  static_cast<int>(d.comp(vp.comp)
                                                       .words[static_cast<size_t>(vp.pos)]
                                                       .size())};
            add.b = sb ? MoveSite{wp.comp, wp.pos + 1, 0}
                       : MoveSite{wp.comp, wp.pos,
                                  static_cast<int>(d.comp(wp.comp)
                                                       .words[static_cast<size_t>(wp.pos)]
                                                       .size())};
            if (add.a == add.b) continue;
            add.chir = ch;
            add.reversed = rev;
            add.over = ov;
            MoveStep added;
            try {
              added = apply_move(d, add);
            } catch (const error&) {
              continue;
            }
            for (const std::string& nid : added.created) {
              Move tri;
              tri.kind = MoveKind::R3;
              tri.x = vid;
              tri.y = wid;
              tri.z = nid;
              MoveStep slid;
              try {
                slid = apply_move(added.after, tri);
              } catch (const error&) {
                continue;
              }
              // postcondition: the two passes swapped on the base strand
              const Component& nc = slid.after.comp(comp);
              if (nc.passes[static_cast<size_t>(pos)].crossing == wid &&
                  nc.passes[static_cast<size_t>(pos) + 1].crossing == vid) {
                MoveTrace t;
                t.after = std::move(slid.after);
                t.moves = {add, tri};
                return t;
              }
            }
          }
  throw error("path-not-pullable",
              "no crossing addition makes the triangle slide legal");
}

// Slide the pass `steps` positions forward along its strand.
inline MoveTrace pull_crossing(const TangleDiagram& d, int comp, int pos,
                               int steps) {
  MoveTrace t;
  t.after = d;
  for (int s = 0; s < steps; ++s) {
    MoveTrace one = pull_pass(t.after, comp, pos + s);
    t.after = std::move(one.after);
    t.moves.insert(t.moves.end(), one.moves.begin(), one.moves.end());
  }
  return t;
}

// ---- random walks ----------------------------------------------------------

struct WalkResult {
  TangleDiagram after;
  std::vector<Move> moves;
  std::vector<MoveStep> steps;  // steps[i].after mirrors the trajectory
};

inline WalkResult random_walk(const TangleDiagram& d, int steps,
                              std::uint64_t seed, int max_crossings) {
  std::mt19937_64 rng(seed);
  WalkResult r;
  r.after = d;
  for (int s = 0; s < steps; ++s) {
    std::vector<Move> moves = enumerate_moves(r.after, max_crossings);
    if (moves.empty()) break;
    Move m = moves[rng() % moves.size()];
    MoveStep step = apply_move(r.after, m);
    r.after = step.after;
    r.moves.push_back(m);
    r.steps.push_back(std::move(step));
  }
  return r;
}

}  // namespace tdg
