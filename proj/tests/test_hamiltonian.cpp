#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <set>

#include "latticecond/hamiltonian.hpp"

using namespace latticecond;

namespace {

ModelParams desk_params() {
  ModelParams p;
  p.m = 1.0;
  p.e = 1.0;
  p.lambda = 1.0;
  p.Ux = p.Uy = 10.0;
  p.N = 2;
  p.Q = 5;
  p.J = 5;
  return p;
}

}  // namespace

TEST_CASE("f kernel golden values") {
  CHECK(f_kernel(3, 3) == Catch::Approx(pi * pi / 6.0).epsilon(1e-15));
  CHECK(f_kernel(2, 4) == 0.25);
  CHECK(f_kernel(0, 1) == -1.0);
}

TEST_CASE("g kernel golden values") {
  CHECK(g_kernel(5, 5) == 0.0);
  CHECK(g_kernel(1, 2) == 1.0);
  CHECK(g_kernel(2, 1) == -1.0);
}

TEST_CASE("f symmetric and g antisymmetric over [-20, 20]") {
  for (int n = -20; n <= 20; ++n)
    for (int n2 = -20; n2 <= 20; ++n2) {
      CHECK(f_kernel(n, n2) == f_kernel(n2, n));
      CHECK(g_kernel(n, n2) == -g_kernel(n2, n));
    }
}

TEST_CASE("basis flattening is a bijection and j = N n - q") {
  const ModelParams p = desk_params();
  std::set<std::int64_t> rows;
  for (int n = -p.n_max(); n <= p.n_max(); ++n)
    for (int q = -p.q_max(); q <= p.q_max(); ++q) {
      const BasisIndex b = basis_index(p, n, q);
      CHECK(b.j == p.N * n - q);
      CHECK(b.row >= 0);
      CHECK(b.row < p.dim());
      rows.insert(b.row);
      const BasisIndex back = basis_at(p, b.row);
      CHECK(back.n == n);
      CHECK(back.q == q);
    }
  CHECK(std::int64_t(rows.size()) == p.dim());
  CHECK_THROWS_AS(basis_index(p, p.n_max() + 1, 0), IndexError);
  CHECK_THROWS_AS(basis_at(p, p.dim()), IndexError);
}

TEST_CASE("diagonal element at the basis origin") {
  ModelParams p = desk_params();
  p.Efield = 0.0;
  const BasisIndex o = basis_index(p, 0, 0);
  const double L = p.L();
  const double expected =
      (p.lambda * p.lambda * L * L / (4.0 * pi * pi * p.m)) * (pi * pi / 3.0) + p.Uy;
  CHECK(matrix_element(p, 0.0, o, o) == Catch::Approx(expected).epsilon(1e-14));
}

TEST_CASE("Ux hopping element between n and n+1 at fixed q") {
  ModelParams p = desk_params();
  p.Ux = 1000.0;
  const BasisIndex r = basis_index(p, 1, 0);  // j = N
  const BasisIndex c = basis_index(p, 0, 0);  // j = 0
  // q = q' so the g.g cross term vanishes; besides the hopping only the
  // confinement f(j, j') block contributes
  const double L = p.L();
  const double fterm =
      p.lambda * p.lambda * L * L / (4.0 * pi * pi * p.m) * f_kernel(c.j, r.j);
  CHECK(matrix_element(p, 0.0, r, c) == Catch::Approx(500.0 + fterm).epsilon(1e-14));
}

TEST_CASE("only the field term depends on E, linearly") {
  ModelParams p0 = desk_params();
  ModelParams p1 = desk_params();
  p0.Efield = 0.0;
  p1.Efield = 1.0;
  const BasisIndex b = basis_index(p0, 0, 1);
  const double diff = matrix_element(p1, 0.0, b, b) - matrix_element(p0, 0.0, b, b);
  CHECK(diff == Catch::Approx(-p0.e * 2.0 * pi / (p0.lambda * p0.L())).epsilon(1e-14));
}

TEST_CASE("matrix element is exactly symmetric") {
  ModelParams p = desk_params();
  p.Efield = 0.7;
  const double k = 2.0 * pi / p.L();
  for (std::int64_t r = 0; r < p.dim(); ++r)
    for (std::int64_t c = 0; c < p.dim(); ++c)
      CHECK(matrix_element(p, k, basis_at(p, r), basis_at(p, c)) ==
            matrix_element(p, k, basis_at(p, c), basis_at(p, r)));
}

TEST_CASE("index reflection with k -> -k at E = 0") {
  ModelParams p = desk_params();
  p.Efield = 0.0;
  const double k = 2.0 * pi / p.L();
  for (std::int64_t r = 0; r < p.dim(); ++r)
    for (std::int64_t c = 0; c < p.dim(); ++c) {
      const BasisIndex br = basis_at(p, r), bc = basis_at(p, c);
      const BasisIndex mr = basis_index(p, -br.n, -br.q);
      const BasisIndex mc = basis_index(p, -bc.n, -bc.q);
      CHECK(matrix_element(p, -k, mr, mc) ==
            Catch::Approx(matrix_element(p, k, br, bc)).margin(1e-12));
    }
}

TEST_CASE("build produces a finite symmetric matrix matching the elements") {
  ModelParams p;
  p.Q = 3;
  p.J = 3;
  p.N = 2;
  p.lambda = 1.5;
  p.Ux = p.Uy = 4.0;
  const HamiltonianMatrix H = build_hamiltonian(p, 0.3);
  REQUIRE(H.dim == 9);
  CHECK((H.entries - H.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(H.entries.allFinite());
  for (std::int64_t r = 0; r < 9; ++r)
    for (std::int64_t c = 0; c < 9; ++c)
      CHECK(H.entries(r, c) ==
            matrix_element(p, 0.3, basis_at(p, r), basis_at(p, c)));
}

TEST_CASE("builds at different fields differ only on the diagonal") {
  ModelParams p0 = desk_params(), p1 = desk_params();
  p0.Efield = 0.0;
  p1.Efield = 1.0;
  const Eigen::MatrixXd diff =
      build_hamiltonian(p1, 0.0).entries - build_hamiltonian(p0, 0.0).entries;
  for (std::int64_t r = 0; r < p0.dim(); ++r) {
    const int q = basis_at(p0, r).q;
    CHECK(diff(r, r) ==
          Catch::Approx(-p0.e * 2.0 * pi * q / (p0.lambda * p0.L())).margin(1e-13));
    for (std::int64_t c = 0; c < p0.dim(); ++c)
      if (c != r) CHECK(diff(r, c) == 0.0);
  }
}

TEST_CASE("matrix dump round trip") {
  ModelParams p = desk_params();
  const HamiltonianMatrix H = build_hamiltonian(p, 0.25);
  const auto path =
      (std::filesystem::temp_directory_path() / "lch_roundtrip.bin").string();
  dump_matrix(H, path);
  const HamiltonianMatrix back = load_matrix(path);
  CHECK(back.dim == H.dim);
  CHECK(back.k == H.k);
  CHECK(back.spin == H.spin);
  CHECK((back.entries - H.entries).cwiseAbs().maxCoeff() == 0.0);
  std::filesystem::remove(path);
}
