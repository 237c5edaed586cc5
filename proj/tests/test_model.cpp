#include <doctest.h>

#include "hierenv/model.hpp"

using namespace hierenv;

namespace {

ModelParams fig2_params() {
  ModelParams p;
  p.kappa0 = 0.2;
  p.kappa = 1.0;
  p.omega_c = 0.5;
  p.env = Memoryless{1.0};
  p.tau = 4.0;
  return p;
}

}  // namespace

TEST_CASE("validate accepts physical parameters") {
  CHECK_NOTHROW(validate(fig2_params()));
}

TEST_CASE("validate rejects negative rates naming the field") {
  ModelParams p = fig2_params();
  p.kappa0 = -0.1;
  try {
    validate(p);
    FAIL("expected NonPhysicalParameter");
  } catch (const NonPhysicalParameter& e) {
    CHECK(e.field() == "kappa0");
  }
}

TEST_CASE("validate requires finite correlation time") {
  ModelParams p = fig2_params();
  p.env = MemoryKeeping{1.0, 1.0, 0.0, 0.1};
  try {
    validate(p);
    FAIL("expected NonPhysicalParameter");
  } catch (const NonPhysicalParameter& e) {
    CHECK(e.field() == "lambda1");
  }
}

TEST_CASE("validate rejects non-positive tau") {
  ModelParams p = fig2_params();
  p.tau = 0.0;
  CHECK_THROWS_AS(validate(p), NonPhysicalParameter);
}

TEST_CASE("regime classification threshold at gamma0/4") {
  ModelParams p = fig2_params();
  p.kappa0 = 0.2;
  CHECK(classify_regime(p) == RegimeLabel::Weak);
  p.kappa0 = 0.25;
  CHECK(classify_regime(p) == RegimeLabel::Boundary);
  p.kappa0 = 0.5;
  CHECK(classify_regime(p) == RegimeLabel::Strong);
}

TEST_CASE("memoryless generator structure") {
  ModelParams p = fig2_params();
  const GeneratorMatrix gen = build_generator(p);
  REQUIRE(gen.dim() == 4);
  CHECK(gen.tracked == 4);
  CHECK(gen.basis_labels == std::vector<std::string>{"a", "c0", "c1", "c2"});

  // No direct qubit decay term.
  CHECK(gen.entries(0, 0) == Complex(0.0, 0.0));
  // Diagonal real parts are the per-mode half loss rates.
  CHECK(gen.entries(1, 1).real() == doctest::Approx(-0.5));
  CHECK(gen.entries(2, 2).real() == doctest::Approx(-0.5));
  CHECK(gen.entries(3, 3).real() == doctest::Approx(-0.5));
  for (int i = 0; i < 4; ++i) CHECK(gen.entries(i, i).real() <= 0.0);
}

TEST_CASE("zero-coupling memoryless generator decouples c1, c2") {
  ModelParams p = fig2_params();
  p.kappa = 0.0;
  p.omega_c = 0.0;
  const GeneratorMatrix gen = build_generator(p);
  // Damped-JC block on (a, c0).
  CHECK(gen.entries(0, 1) == Complex(0.0, -0.2));
  CHECK(gen.entries(1, 0) == Complex(0.0, -0.2));
  // c1 and c2 rows reduce to pure decay.
  for (int r : {2, 3})
    for (int c = 0; c < 4; ++c)
      if (r != c) CHECK(gen.entries(r, c) == Complex(0.0, 0.0));
}

TEST_CASE("memory-keeping auxiliary rows encode the exponential kernel") {
  ModelParams p = fig2_params();
  p.env = MemoryKeeping{1.0, 0.7, 0.1, 0.3};
  const GeneratorMatrix gen = build_generator(p);
  REQUIRE(gen.dim() == 6);
  CHECK(gen.tracked == 4);
  CHECK(gen.entries(4, 2) == Complex(0.05, 0.0));   // upsilon1*lambda1/2
  CHECK(gen.entries(4, 4) == Complex(-0.1, 0.0));   // -lambda1
  CHECK(gen.entries(5, 3) == Complex(0.105, 0.0));  // upsilon2*lambda2/2
  CHECK(gen.entries(5, 5) == Complex(-0.3, 0.0));
  // c1, c2 carry no local loss in this variant.
  CHECK(gen.entries(2, 2) == Complex(0.0, 0.0));
  CHECK(gen.entries(3, 3) == Complex(0.0, 0.0));
}

TEST_CASE("swapping the second-layer branches permutes the generator") {
  ModelParams p = fig2_params();
  p.env = MemoryKeeping{1.0, 0.4, 0.2, 0.9};
  ModelParams q = p;
  q.env = MemoryKeeping{0.4, 1.0, 0.9, 0.2};

  const Eigen::MatrixXcd mp = build_generator(p).entries;
  const Eigen::MatrixXcd mq = build_generator(q).entries;

  // Permutation c1<->c2, z1<->z2.
  Eigen::MatrixXcd perm = Eigen::MatrixXcd::Zero(6, 6);
  perm(0, 0) = perm(1, 1) = 1.0;
  perm(2, 3) = perm(3, 2) = 1.0;
  perm(4, 5) = perm(5, 4) = 1.0;
  CHECK(((perm * mp * perm.transpose()) - mq).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_generator is deterministic") {
  const ModelParams p = fig2_params();
  const GeneratorMatrix g1 = build_generator(p);
  const GeneratorMatrix g2 = build_generator(p);
  REQUIRE(g1.dim() == g2.dim());
  for (int i = 0; i < g1.dim(); ++i)
    for (int j = 0; j < g1.dim(); ++j) CHECK(g1.entries(i, j) == g2.entries(i, j));
}
