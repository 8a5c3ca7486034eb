#pragma once

#include <deque>
#include <set>

#include "moves.hpp"

namespace tdg {

struct Budget {
  int max_crossings = 4;
  int max_word_len = 16;
  int max_depth = 1 << 20;
  int max_states = 20000;
};

namespace detail {

// Canonical representative of a diagram up to basepoint rotation and
// crossing renaming: minimize the serialization over all rotation choices,
// renaming crossings to k1, k2, ... in first-visit order.
struct CanonicalForm {
  std::string key;
  TangleDiagram diagram;
  std::map<std::string, std::string> rename;  // original id -> canonical id
};

inline std::pair<TangleDiagram, std::map<std::string, std::string>> renamed(
    const TangleDiagram& d) {
  std::map<std::string, std::string> ren;
  int n = 0;
  for (const std::string& id : crossing_order(d))
    ren[id] = "k" + std::to_string(++n);
  TangleDiagram out = d;
  std::map<std::string, Crossing> xs;
  for (const auto& [id, x] : d.crossings) xs[ren.at(id)] = x;
  out.crossings = std::move(xs);
  for (auto& c : out.components)
    for (auto& p : c.passes) p.crossing = ren.at(p.crossing);
  return {std::move(out), std::move(ren)};
}

inline CanonicalForm canonicalize(const TangleDiagram& d,
                                  int max_rotations = 4096) {
  long combos = 1;
  for (const auto& c : d.components)
    if (c.closed && !c.passes.empty())
      combos *= static_cast<long>(c.passes.size());
  CanonicalForm best;
  auto consider = [&](const TangleDiagram& cand) {
    auto [ren_d, ren] = renamed(cand);
    std::string key = serialize(ren_d);
    if (best.key.empty() || key < best.key)
      best = {std::move(key), std::move(ren_d), std::move(ren)};
  };
  if (combos > max_rotations || combos <= 1) {
    consider(d);
    return best;
  }
  std::vector<size_t> sizes;
  for (const auto& c : d.components)
    sizes.push_back(c.closed ? std::max<size_t>(c.passes.size(), 1) : 1);
  std::vector<size_t> rot(sizes.size(), 0);
  for (;;) {
    TangleDiagram cand = d;
    for (size_t i = 0; i < rot.size(); ++i)
      if (rot[i])
        cand = rotate_basepoint(cand, static_cast<int>(i),
                                static_cast<int>(rot[i]));
    consider(cand);
    size_t i = 0;
    while (i < rot.size() && ++rot[i] == sizes[i]) rot[i++] = 0;
    if (i == rot.size()) break;
  }
  return best;
}

// Union-find with parity: each relation says two crossing slots are in the
// same phratry (parity 0) or dual phratries (parity 1). A node related to
// itself with odd parity marks the whole class as self-dual.
struct ParityUF {
  std::vector<int> parent;
  std::vector<char> parity;       // parity of path to parent
  std::vector<char> contradictory;

  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    parity.push_back(0);
    contradictory.push_back(0);
    return parent.back();
  }
  std::pair<int, int> find(int a) {
    if (parent[static_cast<size_t>(a)] == a) return {a, 0};
    auto [r, p] = find(parent[static_cast<size_t>(a)]);
    parent[static_cast<size_t>(a)] = r;
    parity[static_cast<size_t>(a)] =
        static_cast<char>((parity[static_cast<size_t>(a)] + p) % 2);
    return {r, parity[static_cast<size_t>(a)]};
  }
  void unite(int a, int b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if ((pa + pb) % 2 != rel) contradictory[static_cast<size_t>(ra)] = 1;
      return;
    }
    parent[static_cast<size_t>(rb)] = ra;
    parity[static_cast<size_t>(rb)] = static_cast<char>((pa + pb + rel) % 2);
    contradictory[static_cast<size_t>(ra)] = static_cast<char>(
        contradictory[static_cast<size_t>(ra)] |
        contradictory[static_cast<size_t>(rb)]);
  }
};

}  // namespace detail

// Move-exploration oracle: relations between the root diagram's crossings
// derived purely from Reidemeister moves. Crossings joined with even parity
// provably share a phratry; odd parity marks dual phratries; an odd cycle
// proves the whole class self-dual.
struct PhratryGraph {
  bool complete = true;  // false when states were dropped for budget reasons
  int states = 0;
  std::vector<std::vector<std::string>> same;  // even-parity classes
  std::vector<std::pair<std::string, std::string>> dual;  // odd-parity pairs
  std::set<std::string> self_dual;
};

inline PhratryGraph build_phratry_graph(const TangleDiagram& root,
                                        const Budget& budget) {
  struct State {
    TangleDiagram d;
    int depth = 0;
    int node_base = 0;  // first union-find node of this state's crossings
    std::vector<std::string> ids;
  };
  detail::ParityUF uf;
  std::vector<State> states;
  std::map<std::string, int> index_of;
  auto add_state = [&](const detail::CanonicalForm& cf, int depth) {
    State s;
    s.d = cf.diagram;
    s.depth = depth;
    s.ids = crossing_order(s.d);
    s.node_base = static_cast<int>(uf.parent.size());
    for (size_t i = 0; i < s.ids.size(); ++i) uf.add();
    states.push_back(std::move(s));
    index_of[cf.key] = static_cast<int>(states.size()) - 1;
    return static_cast<int>(states.size()) - 1;
  };
  auto node = [&](int state, const std::string& id) {
    const State& s = states[static_cast<size_t>(state)];
    for (size_t i = 0; i < s.ids.size(); ++i)
      if (s.ids[i] == id) return s.node_base + static_cast<int>(i);
    throw error("unknown-crossing", "oracle lost track of " + id);
  };

  detail::CanonicalForm root_cf = detail::canonicalize(root);
  int root_state = add_state(root_cf, 0);

  PhratryGraph g;
  std::deque<int> queue = {root_state};
  while (!queue.empty()) {
    int si = queue.front();
    queue.pop_front();
    // copy what we need: states may reallocate while we append
    TangleDiagram cur = states[static_cast<size_t>(si)].d;
    int depth = states[static_cast<size_t>(si)].depth;
    if (depth >= budget.max_depth) {
      g.complete = false;
      continue;
    }
    for (const Move& m : enumerate_moves(cur, budget.max_crossings)) {
      MoveStep step;
      try {
        step = apply_move(cur, m);
      } catch (const error&) {
        continue;
      }
      bool too_long = false;
      for (const auto& c : step.after.components)
        for (const auto& w : c.words)
          too_long |= static_cast<int>(w.size()) > budget.max_word_len;
      if (too_long) {
        g.complete = false;
        continue;
      }
      detail::CanonicalForm cf = detail::canonicalize(step.after);
      auto it = index_of.find(cf.key);
      int ti;
      if (it != index_of.end()) {
        ti = it->second;
      } else if (static_cast<int>(states.size()) < budget.max_states) {
        ti = add_state(cf, depth + 1);
        queue.push_back(ti);
      } else {
        g.complete = false;
        continue;
      }
      // surviving crossings keep their phratries across the move
      for (const std::string& id : states[static_cast<size_t>(si)].ids)
        if (step.after.crossings.count(id))
          uf.unite(node(si, id), node(ti, cf.rename.at(id)), 0);
      for (const auto& [a, b] : step.dual_pairs) {
        if (step.after.crossings.count(a))  // created pair lives in target
          uf.unite(node(ti, cf.rename.at(a)), node(ti, cf.rename.at(b)), 1);
        else  // removed pair lives in source
          uf.unite(node(si, a), node(si, b), 1);
      }
    }
  }
  g.states = static_cast<int>(states.size());

  // project relations onto the root diagram's original crossing ids
  std::vector<std::string> root_ids = crossing_order(root);
  auto root_node = [&](const std::string& id) {
    return node(root_state, root_cf.rename.at(id));
  };
  std::map<std::pair<int, int>, std::vector<std::string>> classes;
  for (const std::string& id : root_ids) {
    auto [r, p] = uf.find(root_node(id));
    // in a self-dual class the parity distinction collapses
    if (uf.contradictory[static_cast<size_t>(r)]) {
      g.self_dual.insert(id);
      p = 0;
    }
    classes[{r, p}].push_back(id);
  }
  for (auto& [r, ids] : classes) g.same.push_back(ids);
  for (size_t i = 0; i < root_ids.size(); ++i)
    for (size_t j = i + 1; j < root_ids.size(); ++j) {
      auto [ri, pi] = uf.find(root_node(root_ids[i]));
      auto [rj, pj] = uf.find(root_node(root_ids[j]));
      if (ri == rj && (pi + pj) % 2 == 1)
        g.dual.push_back({root_ids[i], root_ids[j]});
    }
  return g;
}

// Soundness comparison: every relation the move oracle proves must be
// accepted (or at worst left undecided) by the direct classifier.
struct OracleReport {
  bool ok = true;
  bool complete = true;
  int states = 0;
  std::vector<std::string> mismatches;
};

inline OracleReport compare_with_classifier(const TangleDiagram& root,
                                            const Budget& budget) {
  PhratryGraph g = build_phratry_graph(root, budget);
  OracleReport rep;
  rep.complete = g.complete;
  rep.states = g.states;
  auto flag = [&](const std::string& msg) {
    rep.ok = false;
    rep.mismatches.push_back(msg);
  };
  auto same_pred = [&](const std::string& a, const std::string& b) {
    return root.flat ? flat_same_phratry(root, a, b)
                     : same_phratry(root, a, b);
  };
  for (const auto& cls : g.same)
    for (size_t i = 0; i + 1 < cls.size(); ++i)
      for (size_t j = i + 1; j < cls.size(); ++j)
        if (same_pred(cls[i], cls[j]) == Verdict::NotEqual)
          flag("moves join " + cls[i] + " and " + cls[j] +
               " but the classifier separates them");
  if (root.flat) {
    for (const auto& [a, b] : g.dual)
      if (flat_dual_phratry(flat_classify(root, a), flat_classify(root, b),
                            root.surface) == Verdict::NotEqual)
        flag("moves pair " + a + " and " + b +
             " as duals but the classifier disagrees");
    for (const std::string& id : g.self_dual)
      if (crossing_kind(root, id) == CrossingKind::ClosedSelf &&
          !is_self_dual(root, id))
        flag("moves prove " + id + " self-dual but the classifier disagrees");
  }
  return rep;
}

}  // namespace tdg
