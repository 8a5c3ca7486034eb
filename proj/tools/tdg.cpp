// tdg: batch interface for .tdg tangle-diagram files. Every subcommand
// emits deterministic text; --machine switches to one key=value record per
// line for diff-based pipelines.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdg/explore.hpp"
#include "tdg/moves.hpp"
#include "tdg/selftest.hpp"

namespace {

bool use_color() {
  const char* c = std::getenv("TDG_COLOR");
  return c != nullptr && *c != '\0';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tdg::error("io-error", "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

tdg::TangleDiagram load(const std::string& path) {
  return tdg::parse_diagram(read_file(path));
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

tdg::Coarsening pick_coarsening(const tdg::TangleDiagram& d,
                                const std::string& flag) {
  if (!flag.empty()) return tdg::parse_coarsening(flag);
  return d.surface.abelian() ? tdg::Coarsening::ExactAbelian
                             : tdg::Coarsening::ModKappa;
}

int cmd_validate(const std::vector<std::string>& paths, bool machine) {
  int bad = 0;
  for (const std::string& path : paths) {
    try {
      tdg::TangleDiagram d = load(path);
      if (machine)
        std::cout << "diagram path=" << path << " status=ok components="
                  << d.components.size() << " crossings=" << d.crossings.size()
                  << " flat=" << (d.flat ? 1 : 0) << "\n";
      else
        std::cout << path << ": ok components=" << d.components.size()
                  << " crossings=" << d.crossings.size() << " "
                  << (d.flat ? "flat" : "classical") << "\n";
    } catch (const tdg::parse_error& e) {
      ++bad;
      for (const auto& v : e.violations) {
        if (machine)
          std::cout << "violation path=" << path << " line=" << v.line
                    << " message=" << v.message << "\n";
        else
          std::cout << path << ": line " << v.line << ": " << v.message << "\n";
      }
      if (machine)
        std::cout << "diagram path=" << path << " status=invalid violations="
                  << e.violations.size() << "\n";
      else
        std::cout << path << ": invalid\n";
    }
  }
  return bad == 0 ? 0 : 1;
}

int cmd_classify(const std::string& path, const std::string& coarsening,
                 bool machine) {
  tdg::TangleDiagram d = load(path);
  tdg::Coarsening c = pick_coarsening(d, coarsening);
  const tdg::SurfacePresentation& p = d.surface;
  auto comp_pair = [&](std::pair<int, int> t) {
    return "(" + d.comp(t.first).name + "," + d.comp(t.second).name + ")";
  };
  for (const std::string& id : tdg::crossing_order(d)) {
    std::ostringstream os;
    tdg::CrossingKind kind = tdg::crossing_kind(d, id);
    os << "kind=" << tdg::to_string(kind);
    if (d.flat) {
      tdg::FlatIndexValue v = tdg::flat_classify(d, id);
      os << " tau=" << comp_pair(v.tau_f);
      if (kind == tdg::CrossingKind::LongSelf)
        os << " order=" << (v.order_f > 0 ? "+1" : "-1");
      os << " h=" << p.render(v.h);
      if (kind == tdg::CrossingKind::Mixed)
        os << " kappa_i=" << p.render(v.kappa_i)
           << " kappa_j=" << p.render(v.kappa_j);
      else if (kind == tdg::CrossingKind::ClosedSelf)
        os << " kappa=" << p.render(v.kappa_i);
      if (kind == tdg::CrossingKind::ClosedSelf)
        os << " self_dual=" << (tdg::is_self_dual(d, id) ? 1 : 0);
    } else {
      tdg::CrossingIndexValue v = tdg::classify(d, id);
      os << " tau=" << comp_pair(v.tau);
      if (kind == tdg::CrossingKind::LongSelf)
        os << " order=" << (v.order > 0 ? "+1" : "-1");
      os << " sign=" << (v.sign > 0 ? "+1" : "-1") << " h=" << p.render(v.h);
      if (kind == tdg::CrossingKind::Mixed)
        os << " kappa_i=" << p.render(v.kappa_i)
           << " kappa_j=" << p.render(v.kappa_j);
      else if (kind == tdg::CrossingKind::ClosedSelf)
        os << " kappa=" << p.render(v.kappa_i);
    }
    std::string index;
    try {
      index = tdg::universal_index(d, id, c);
    } catch (const tdg::error& e) {
      if (e.kind() != "undecided-key") throw;
      index = "undecided";
    }
    os << " index=" << index;
    if (machine)
      std::cout << "crossing id=" << id << " " << os.str() << "\n";
    else
      std::cout << id << ": " << os.str() << "\n";
  }
  return 0;
}

int cmd_partition(const std::string& path, bool refined, int bound,
                  bool machine) {
  tdg::TangleDiagram d = load(path);
  tdg::Partition part =
      refined ? tdg::phratries(d, bound) : tdg::tribes(d, bound);
  const char* label = refined ? "p" : "t";
  const char* record = refined ? "phratry" : "tribe";
  for (size_t i = 0; i < part.classes.size(); ++i) {
    const auto& cls = part.classes[i];
    bool self_dual = false;
    if (d.flat)
      for (const std::string& id : cls)
        if (tdg::is_self_dual(d, id)) self_dual = true;
    if (machine)
      std::cout << record << " id=" << label << i + 1
                << " self_dual=" << (self_dual ? 1 : 0)
                << " members=" << join(cls, ",") << "\n";
    else
      std::cout << label << i + 1 << ": " << join(cls, " ")
                << (self_dual ? " (self-dual)" : "") << "\n";
  }
  for (const auto& [a, b] : part.undecided) {
    if (machine)
      std::cout << "undecided a=" << a << " b=" << b << "\n";
    else
      std::cout << "undecided: " << a << " " << b << "\n";
  }
  return 0;
}

int cmd_poly(const std::string& path, const std::string& selector,
             bool machine) {
  tdg::TangleDiagram d = load(path);
  tdg::IndexPolynomial poly =
      tdg::index_polynomial(d, tdg::parse_selector(selector));
  if (machine)
    std::cout << "poly selector=" << selector << " terms=" << poly.str()
              << "\n";
  else
    std::cout << poly.str() << "\n";
  return 0;
}

// Invariance check shared by replay and randomwalk: surviving crossings
// keep their phratry value across the step and created/cancelled pairs are
// opposite-sign same-tribe (classical) / dual phratries (flat).
void check_step(const tdg::TangleDiagram& before, const tdg::MoveStep& st,
                int stepno, int bound, std::vector<std::string>& violations) {
  const tdg::SurfacePresentation& p = before.surface;
  auto note = [&](const std::string& what, const std::string& who) {
    violations.push_back("step " + std::to_string(stepno) + ": " + what + " " +
                         who);
  };
  for (const auto& [id, x] : before.crossings) {
    (void)x;
    if (!st.after.crossings.count(id)) continue;
    tdg::Verdict v;
    if (before.flat)
      v = tdg::flat_phratry_equal(tdg::flat_classify(before, id),
                                  tdg::flat_classify(st.after, id), p, bound);
    else
      v = tdg::phratry_equal(tdg::classify(before, id),
                             tdg::classify(st.after, id), p, bound);
    if (v == tdg::Verdict::NotEqual) note("phratry changed for", id);
  }
  for (const auto& [a, b] : st.dual_pairs) {
    const tdg::TangleDiagram& home =
        st.after.crossings.count(a) ? st.after : before;
    if (home.flat) {
      if (tdg::flat_dual_phratry(tdg::flat_classify(home, a),
                                 tdg::flat_classify(home, b), p, bound) ==
          tdg::Verdict::NotEqual)
        note("pair not dual:", a + " " + b);
    } else {
      tdg::CrossingIndexValue va = tdg::classify(home, a);
      tdg::CrossingIndexValue vb = tdg::classify(home, b);
      if (va.sign + vb.sign != 0) note("pair signs not opposite:", a + " " + b);
      if (tdg::tribe_equal(va, vb, p, bound) == tdg::Verdict::NotEqual)
        note("pair not same tribe:", a + " " + b);
    }
  }
}

int report_trajectory(const tdg::TangleDiagram& final_diagram, int steps,
                      const std::vector<std::string>& violations,
                      bool machine) {
  std::cout << tdg::serialize(final_diagram);
  for (const std::string& v : violations) {
    if (machine)
      std::cout << "violation message=" << v << "\n";
    else
      std::cout << "violation: " << v << "\n";
  }
  if (machine)
    std::cout << "check ok=" << (violations.empty() ? 1 : 0)
              << " steps=" << steps << " violations=" << violations.size()
              << "\n";
  else
    std::cout << "check: " << (violations.empty() ? "ok" : "FAILED")
              << " steps=" << steps << "\n";
  return violations.empty() ? 0 : 1;
}

int cmd_replay(const std::string& path, const std::string& trace_path,
               int bound, bool machine) {
  tdg::TangleDiagram d = load(path);
  std::istringstream trace(read_file(trace_path));
  std::vector<std::string> violations;
  std::string line;
  int steps = 0;
  while (std::getline(trace, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r'))
      line.pop_back();
    if (line.empty()) continue;
    tdg::Move m = tdg::parse_move(d, line);
    tdg::MoveStep st = tdg::apply_move(d, m);
    ++steps;
    if (machine)
      std::cout << "move n=" << steps << " text=" << m.str(d) << "\n";
    else
      std::cout << "applied " << m.str(d) << "\n";
    check_step(d, st, steps, bound, violations);
    d = st.after;
  }
  return report_trajectory(d, steps, violations, machine);
}

int cmd_randomwalk(const std::string& path, int steps, std::uint64_t seed,
                   int max_crossings, int bound, bool machine) {
  tdg::TangleDiagram d = load(path);
  tdg::WalkResult wr = tdg::random_walk(d, steps, seed, max_crossings);
  std::vector<std::string> violations;
  const tdg::TangleDiagram* prev = &d;
  for (size_t i = 0; i < wr.moves.size(); ++i) {
    if (machine)
      std::cout << "move n=" << i + 1 << " text=" << wr.moves[i].str(*prev)
                << "\n";
    else
      std::cout << "applied " << wr.moves[i].str(*prev) << "\n";
    check_step(*prev, wr.steps[i], static_cast<int>(i) + 1, bound, violations);
    prev = &wr.steps[i].after;
  }
  return report_trajectory(wr.after, static_cast<int>(wr.moves.size()),
                           violations, machine);
}

int cmd_explore(const std::string& path, const tdg::Budget& budget,
                bool machine) {
  tdg::TangleDiagram d = load(path);
  tdg::PhratryGraph g = tdg::build_phratry_graph(d, budget);
  if (machine)
    std::cout << "graph states=" << g.states
              << " complete=" << (g.complete ? 1 : 0) << "\n";
  else
    std::cout << "states=" << g.states
              << " complete=" << (g.complete ? "yes" : "no") << "\n";
  for (const auto& cls : g.same) {
    if (machine)
      std::cout << "same members=" << join(cls, ",") << "\n";
    else
      std::cout << "same: " << join(cls, " ") << "\n";
  }
  for (const auto& [a, b] : g.dual) {
    if (machine)
      std::cout << "dual a=" << a << " b=" << b << "\n";
    else
      std::cout << "dual: " << a << " " << b << "\n";
  }
  for (const std::string& id : g.self_dual) {
    if (machine)
      std::cout << "selfdual id=" << id << "\n";
    else
      std::cout << "self-dual: " << id << "\n";
  }
  tdg::OracleReport rep = tdg::compare_with_classifier(d, budget);
  for (const std::string& m : rep.mismatches) {
    if (machine)
      std::cout << "mismatch message=" << m << "\n";
    else
      std::cout << "mismatch: " << m << "\n";
  }
  if (machine)
    std::cout << "check ok=" << (rep.ok ? 1 : 0)
              << " mismatches=" << rep.mismatches.size() << "\n";
  else
    std::cout << "classifier-check: " << (rep.ok ? "ok" : "FAILED") << "\n";
  return rep.ok ? 0 : 1;
}

int cmd_selftest(bool machine) {
  bool color = use_color() && !machine;
  int failures = 0;
  for (const tdg::CriterionResult& r : tdg::run_selftest()) {
    if (!r.passed) ++failures;
    if (machine) {
      std::cout << "criterion name=" << r.name
                << " status=" << (r.passed ? "pass" : "fail")
                << " details=" << r.details << "\n";
      continue;
    }
    std::string mark = r.passed ? "PASS" : "FAIL";
    if (color)
      mark = (r.passed ? "\x1b[32m" : "\x1b[31m") + mark + "\x1b[0m";
    std::ostringstream os;
    os.setf(std::ios::left);
    os.width(34);
    os << r.name;
    std::cout << mark << "  " << os.str() << " " << r.details << "\n";
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tangle diagram crossing classifier"};
  app.require_subcommand(1);

  bool machine = false;
  std::string path, coarsening, selector = "universal", trace_path;
  std::vector<std::string> paths;
  int bound = 32, steps = 0, max_crossings = 12;
  std::uint64_t seed = 0;
  tdg::Budget budget;

  auto common = [&](CLI::App* sub, bool wants_bound = false) {
    sub->add_flag("--machine", machine, "one key=value record per line");
    if (wants_bound)
      sub->add_option("--bound", bound,
                      "search bound for undecidable word comparisons");
    return sub;
  };

  CLI::App* validate =
      common(app.add_subcommand("validate", "parse and check .tdg files"));
  validate->add_option("paths", paths, "diagram files")->required();

  CLI::App* classify = common(
      app.add_subcommand("classify", "per-crossing index report"), true);
  classify->add_option("path", path, "diagram file")->required();
  classify->add_option("--coarsening", coarsening,
                       "exact-abelian | mod-kappa | mod-centralizer "
                       "(default: exact-abelian on abelian surfaces, "
                       "mod-kappa otherwise)");

  CLI::App* tribes_cmd =
      common(app.add_subcommand("tribes", "partition crossings into tribes"),
             true);
  tribes_cmd->add_option("path", path, "diagram file")->required();

  CLI::App* phratries_cmd = common(
      app.add_subcommand("phratries", "partition crossings into phratries"),
      true);
  phratries_cmd->add_option("path", path, "diagram file")->required();

  CLI::App* poly =
      common(app.add_subcommand("poly", "index polynomial"));
  poly->add_option("path", path, "diagram file")->required();
  poly->add_option("--selector", selector,
                   "universal | homotopy-only | component-only");

  CLI::App* replay = common(
      app.add_subcommand("replay", "apply a move trace and verify it"), true);
  replay->add_option("path", path, "diagram file")->required();
  replay->add_option("trace", trace_path, "move trace, one move per line")
      ->required();

  CLI::App* randomwalk = common(
      app.add_subcommand("randomwalk", "random legal moves, verified"), true);
  randomwalk->add_option("path", path, "diagram file")->required();
  randomwalk->add_option("--steps", steps, "number of moves")->required();
  randomwalk->add_option("--seed", seed, "random seed")->required();
  randomwalk->add_option("--budget-crossings", max_crossings,
                         "crossing cap during the walk");

  CLI::App* explore = common(
      app.add_subcommand("explore", "move-exploration oracle vs classifier"));
  explore->add_option("path", path, "diagram file")->required();
  explore->add_option("--budget-crossings", budget.max_crossings,
                      "crossing cap for explored states");
  explore->add_option("--budget-word", budget.max_word_len,
                      "segment word length cap");
  explore->add_option("--depth", budget.max_depth, "search depth cap");

  CLI::App* selftest = common(
      app.add_subcommand("selftest", "run all bundled acceptance checks"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(paths, machine);
    if (classify->parsed()) return cmd_classify(path, coarsening, machine);
    if (tribes_cmd->parsed())
      return cmd_partition(path, false, bound, machine);
    if (phratries_cmd->parsed())
      return cmd_partition(path, true, bound, machine);
    if (poly->parsed()) return cmd_poly(path, selector, machine);
    if (replay->parsed()) return cmd_replay(path, trace_path, bound, machine);
    if (randomwalk->parsed())
      return cmd_randomwalk(path, steps, seed, max_crossings, bound, machine);
    if (explore->parsed()) return cmd_explore(path, budget, machine);
    if (selftest->parsed()) return cmd_selftest(machine);
  } catch (const tdg::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
