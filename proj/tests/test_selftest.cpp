#include <doctest.h>

#include <fstream>
#include <tdg/selftest.hpp>

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(TDG_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("embedded diagrams stay in sync with the fixture files") {
  for (const auto& [name, text] : tdg::embedded_fixtures()) {
    CAPTURE(name);
    tdg::TangleDiagram file = tdg::parse_diagram(slurp(name + ".tdg"));
    tdg::TangleDiagram built_in = tdg::parse_diagram(text);
    CHECK(tdg::serialize(file) == tdg::serialize(built_in));
  }
}
