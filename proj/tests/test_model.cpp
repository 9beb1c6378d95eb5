#include <catch2/catch_amalgamated.hpp>

#include "latticecond/model.hpp"

using namespace latticecond;

TEST_CASE("derive_geometry reproduces the production geometry") {
  const Geometry g = derive_geometry(101, 1.0, 10);
  CHECK(g.L == Catch::Approx(25.0663).margin(1e-4));
  CHECK(g.a == Catch::Approx(25.0663 / 10.0).margin(1e-4));
  CHECK(g.q_max == 50);
}

TEST_CASE("derive_geometry trivial case") {
  const Geometry g = derive_geometry(3, 2.0 * pi, 2);
  CHECK(g.L == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(g.q_max == 1);
}

TEST_CASE("geometry round trip: lambda L^2 / (4 pi) recovers q_max") {
  for (int Q : {3, 9, 21, 101})
    for (double lambda : {0.5, 1.0, 2.0, 7.3}) {
      const Geometry g = derive_geometry(Q, lambda, 10);
      const double back = lambda * g.L * g.L / (4.0 * pi);
      CHECK(back == Catch::Approx(double(g.q_max)).epsilon(1e-12));
      CHECK(g.a * 10 == Catch::Approx(g.L).epsilon(1e-14));
    }
}

TEST_CASE("derive_geometry rejects invalid input") {
  CHECK_THROWS_AS(derive_geometry(100, 1.0, 10), InvalidParameterError);
  CHECK_THROWS_AS(derive_geometry(101, 1.0, 9), InvalidParameterError);
  CHECK_THROWS_AS(derive_geometry(101, 0.0, 10), InvalidParameterError);
  CHECK_THROWS_AS(derive_geometry(101, -1.0, 10), InvalidParameterError);
}

TEST_CASE("validate accepts production parameters and reports the size") {
  ModelParams p;
  p.m = 1.0;
  p.e = 1.0;
  p.lambda = 1.0;
  p.Ux = p.Uy = 1e3;
  p.N = 10;
  p.Q = 101;
  p.J = 201;
  const ValidationReport r = validate(p);
  CHECK(r.valid());
  CHECK(r.dim == 20301);
  CHECK(r.matrix_bytes == Catch::Approx(20301.0 * 20301.0 * 8.0));
}

TEST_CASE("validate reports violations without throwing") {
  ModelParams p;
  p.Q = 100;
  p.lambda = 1.0;
  auto r = validate(p);
  REQUIRE_FALSE(r.valid());
  CHECK(r.violations[0].find("Q must be odd") != std::string::npos);

  p.Q = 101;
  p.lambda = 0.0;
  r = validate(p);
  REQUIRE_FALSE(r.valid());
  CHECK(r.violations[0].find("lambda must be positive") != std::string::npos);
}

TEST_CASE("D = Q*J for valid parameter sets") {
  ModelParams p;
  for (int Q : {3, 5, 101})
    for (int J : {3, 7, 201}) {
      p.Q = Q;
      p.J = J;
      CHECK(p.dim() == std::int64_t(Q) * J);
    }
}
