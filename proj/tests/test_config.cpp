#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "esdg/config.hpp"

using namespace esdg;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("all keys parse") {
  const auto c = parse(R"(# vortex run
[discretization]
N = 4
Ngeo = 2
option = 3
[mesh]
element_kind = quad
nx = 12
ny=6
domain = 0, 10, -5, 5
alpha = 0.125
[time]
cfl = 0.25
T = 2.5   # final time
flux = ec
gamma = 1.3
out_dir = results/run1
threads = 2
seed = 42
)");
  CHECK(c.N == 4);
  CHECK(c.Ngeo == 2);
  CHECK(c.option == 3);
  CHECK(c.element_kind == MeshKind::Quadrilateral);
  CHECK(c.nx == 12);
  CHECK(c.ny == 6);
  CHECK(c.domain.x1 == 10);
  CHECK(c.domain.y0 == -5);
  CHECK(c.alpha == 0.125);
  CHECK(c.cfl == 0.25);
  CHECK(c.T == 2.5);
  CHECK(c.flux == FluxMode::EntropyConservative);
  CHECK(c.gamma == 1.3);
  CHECK(c.out_dir == "results/run1");
  CHECK(c.threads == 2);
  CHECK(c.seed == 42);
}

TEST_CASE("section prefixes on keys") {
  const auto c = parse("mesh.nx = 7\ntime.flux = es\n");
  CHECK(c.nx == 7);
  CHECK(c.flux == FluxMode::EntropyStable);
}

TEST_CASE("malformed input reports the line") {
  CHECK(error_line("N = 3\nnx 4\n") == 2);
  CHECK(error_line("N = 3\n\n# c\nbogus = 1\n") == 4);
  CHECK(error_line("N = three\n") == 1);
  CHECK(error_line("N = 0\n") == 1);
  CHECK(error_line("option = 4\n") == 1);
  CHECK(error_line("flux = upwind\n") == 1);
  CHECK(error_line("domain = 0,1,2\n") == 1);
  CHECK(error_line("domain = 1,0,0,1\n") == 1);
  CHECK(error_line("cfl = -1\n") == 1);
  CHECK(error_line("[mesh\n") == 1);
  CHECK(error_line(" = 3\n") == 1);
  CHECK(error_line("element_kind = hex\n") == 1);
  try {
    parse("N = 2\nT = x\n");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("test.cfg:2:", 0) == 0);
  }
}

TEST_CASE("format round trip") {
  RunConfig c;
  c.N = 5;
  c.alpha = 1.0 / 8;
  c.domain = {0, 15, -0.5, 0.5};
  c.flux = FluxMode::EntropyConservative;
  c.element_kind = MeshKind::Triangle;
  const auto d = parse(format_config(c));
  CHECK(format_config(d) == format_config(c));
  CHECK(d.alpha == c.alpha);
}
