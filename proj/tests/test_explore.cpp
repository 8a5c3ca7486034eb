#include <doctest.h>

#include <fstream>
#include <tdg/explore.hpp>

using tdg::Budget;
using tdg::TangleDiagram;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(TDG_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TangleDiagram fixture(const std::string& name) {
  return tdg::parse_diagram(slurp(name));
}

}  // namespace

TEST_CASE("canonical forms ignore basepoint and crossing names") {
  TangleDiagram d = fixture("triangle_flat.tdg");
  auto c1 = tdg::detail::canonicalize(d);
  auto c2 = tdg::detail::canonicalize(tdg::rotate_basepoint(d, 0, 2));
  CHECK(c1.key == c2.key);
  CHECK(c1.rename.size() == 3);
}

TEST_CASE("triangle shadow forces a self-dual class") {
  TangleDiagram d = fixture("triangle_flat.tdg");
  Budget b;
  b.max_crossings = 3;
  auto g = tdg::build_phratry_graph(d, b);
  CHECK(g.complete);
  // all three crossings in one even class; each identified with its own dual
  CHECK(g.same.size() == 1);
  CHECK(g.same.front().size() == 3);
  CHECK(g.self_dual.size() == 3);
  auto rep = tdg::compare_with_classifier(d, b);
  CHECK(rep.ok);
}

TEST_CASE("a plain kink is self-dual on the sphere") {
  TangleDiagram kink = tdg::parse_diagram(
      "surface genus=0 boundary=0\n"
      "component K closed\n"
      "walk: 1 u:first:L 1 u:second 1\n");
  Budget b;
  b.max_crossings = 3;
  auto g = tdg::build_phratry_graph(kink, b);
  CHECK(g.complete);
  CHECK(g.self_dual.count("u") == 1);
  CHECK(tdg::is_self_dual(kink, "u"));
}

TEST_CASE("oracle and classifier agree on the flat annulus") {
  TangleDiagram d = fixture("flat_annulus.tdg");
  Budget b;
  b.max_crossings = 4;
  b.max_states = 800;
  auto g = tdg::build_phratry_graph(d, b);
  // distinct windings must never be joined
  for (const auto& cls : g.same)
    CHECK(cls.size() == 1);
  auto rep = tdg::compare_with_classifier(d, b);
  CHECK(rep.ok);
}

TEST_CASE("oracle stays sound under a tight budget") {
  TangleDiagram d = fixture("genus2_flat.tdg");
  Budget b;
  b.max_crossings = 6;
  b.max_states = 40;
  b.max_word_len = 12;
  auto rep = tdg::compare_with_classifier(d, b);
  CHECK(rep.ok);
  CHECK_FALSE(rep.complete);
}

TEST_CASE("classical exploration is sound on the trefoil") {
  TangleDiagram d = fixture("sphere_trefoil.tdg");
  Budget b;
  b.max_crossings = 4;
  b.max_states = 400;
  auto rep = tdg::compare_with_classifier(d, b);
  CHECK(rep.ok);
}

TEST_CASE("exploration is deterministic") {
  TangleDiagram d = fixture("triangle_flat.tdg");
  Budget b;
  b.max_crossings = 3;
  auto g1 = tdg::build_phratry_graph(d, b);
  auto g2 = tdg::build_phratry_graph(d, b);
  CHECK(g1.states == g2.states);
  CHECK(g1.same == g2.same);
  CHECK(g1.dual == g2.dual);
}
