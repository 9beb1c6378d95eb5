#ifndef LATTICECOND_HAMILTONIAN_HPP
#define LATTICECOND_HAMILTONIAN_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "latticecond/model.hpp"

namespace latticecond {

/// Double index (n, q) of the symmetry-adapted basis. The momentum integer is
/// j = N n - q; the flat matrix row is (n + n_max) Q + (q + q_max).
struct BasisIndex {
  int n;
  int q;
  int j;
  std::int64_t row;
};

inline BasisIndex basis_index(const ModelParams& p, int n, int q) {
  if (n < -p.n_max() || n > p.n_max())
    throw IndexError("n = " + std::to_string(n) + " outside [-n_max, n_max]");
  if (q < -p.q_max() || q > p.q_max())
    throw IndexError("q = " + std::to_string(q) + " outside [-q_max, q_max]");
  BasisIndex b;
  b.n = n;
  b.q = q;
  b.j = p.N * n - q;
  b.row = std::int64_t(n + p.n_max()) * p.Q + (q + p.q_max());
  return b;
}

inline BasisIndex basis_at(const ModelParams& p, std::int64_t row) {
  if (row < 0 || row >= p.dim())
    throw IndexError("row " + std::to_string(row) + " outside [0, D)");
  const int n = int(row / p.Q) - p.n_max();
  const int q = int(row % p.Q) - p.q_max();
  return basis_index(p, n, q);
}

/// pi^2/6 on the diagonal, (-1)^(n-n2)/(n-n2)^2 off it. Symmetric.
inline double f_kernel(int n, int n2) {
  if (n == n2) return pi * pi / 6.0;
  const int d = n - n2;
  const double sign = (d % 2 == 0) ? 1.0 : -1.0;
  return sign / (double(d) * double(d));
}

/// 0 on the diagonal, (-1)^(n-n2)/(n-n2) off it. Antisymmetric.
inline double g_kernel(int n, int n2) {
  if (n == n2) return 0.0;
  const int d = n - n2;
  const double sign = (d % 2 == 0) ? 1.0 : -1.0;
  return sign / double(d);
}

/// Closed-form matrix element <r| H_k |c> in the (j, q) basis.
///
/// Spin enters as lambda -> spin*lambda in the two terms linear in the
/// spin-orbit coupling (the x p_y cross term and the y (p_x + k) term); the
/// lambda^2 confinement terms and the potential/field diagonals are
/// spin-independent.
inline double matrix_element(const ModelParams& p, double k, const BasisIndex& r,
                             const BasisIndex& c) {
  if (r.row < 0 || r.row >= p.dim() || c.row < 0 || c.row >= p.dim())
    throw IndexError("basis index out of range for these parameters");
  const double L = p.L();
  const double s = double(p.spin);
  double v = 0.0;

  if (r.q == c.q && r.j == c.j) {
    const double pj = 2.0 * pi * c.j / L + k;
    v += pj * pj / (2.0 * p.m);                                  // kinetic x
    v -= s * (2.0 * pi * c.q / (p.m * L)) * pj;                  // -lambda sigma_z y (p_x + k)
    v += p.Uy * std::cos(4.0 * pi * pi * c.q / (p.a() * p.lambda * L));
    v -= p.e * p.Efield * 2.0 * pi * c.q / (p.lambda * L);
  }

  const double pref = p.lambda * p.lambda * L * L / (4.0 * pi * pi * p.m);
  if (r.j == c.j) v += pref * f_kernel(c.q, r.q);                // p_y^2 block
  if (r.q == c.q) v += pref * f_kernel(c.j, r.j);                // lambda^2 x^2 block
  v += s * pref * g_kernel(c.q, r.q) * g_kernel(c.j, r.j);       // x p_y cross term

  if (r.q == c.q && (c.j - r.j == p.N || c.j - r.j == -p.N))
    v += p.Ux / 2.0;                                             // lattice hopping in x

  return v;
}

/// Dense real symmetric matrix of H_k for one k and one spin sector.
struct HamiltonianMatrix {
  double k = 0.0;
  int spin = +1;
  std::int64_t dim = 0;
  Eigen::MatrixXd entries;
};

/// Assembles the full D x D matrix; every entry is evaluated independently
/// from the symmetric closed form (both triangles), so the result is
/// deterministic and schedule-independent.
inline HamiltonianMatrix build_hamiltonian(const ModelParams& p, double k) {
  ensure_valid(p);
  const std::int64_t D = p.dim();
  HamiltonianMatrix H;
  H.k = k;
  H.spin = p.spin;
  H.dim = D;
  try {
    H.entries.resize(D, D);
  } catch (const std::bad_alloc&) {
    throw ResourceError("failed to allocate " + std::to_string(D) + "x" +
                        std::to_string(D) + " Hamiltonian (" +
                        std::to_string(double(D) * D * sizeof(double) / 1e9) + " GB)");
  }
  std::vector<BasisIndex> idx(size_t(D), BasisIndex{});
  for (std::int64_t r = 0; r < D; ++r) idx[size_t(r)] = basis_at(p, r);
  for (std::int64_t r = 0; r < D; ++r)
    for (std::int64_t c = 0; c < D; ++c)
      H.entries(r, c) = matrix_element(p, k, idx[size_t(r)], idx[size_t(c)]);
  return H;
}

/// Debug dump: magic "LCH1", dim (int32 LE), k (float64 LE), spin (int32 LE),
/// then the entries row-major as float64.
inline void dump_matrix(const HamiltonianMatrix& H, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot open " + path + " for writing");
  out.write("LCH1", 4);
  const std::int32_t dim32 = std::int32_t(H.dim);
  out.write(reinterpret_cast<const char*>(&dim32), 4);
  out.write(reinterpret_cast<const char*>(&H.k), 8);
  const std::int32_t spin32 = H.spin;
  out.write(reinterpret_cast<const char*>(&spin32), 4);
  for (std::int64_t r = 0; r < H.dim; ++r)
    for (std::int64_t c = 0; c < H.dim; ++c) {
      const double v = H.entries(r, c);
      out.write(reinterpret_cast<const char*>(&v), 8);
    }
  if (!out) throw ResourceError("write failed for " + path);
}

inline HamiltonianMatrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "LCH1", 4) != 0)
    throw ResourceError(path + ": bad magic");
  std::int32_t dim32 = 0, spin32 = 0;
  double k = 0.0;
  in.read(reinterpret_cast<char*>(&dim32), 4);
  in.read(reinterpret_cast<char*>(&k), 8);
  in.read(reinterpret_cast<char*>(&spin32), 4);
  HamiltonianMatrix H;
  H.dim = dim32;
  H.k = k;
  H.spin = spin32;
  H.entries.resize(dim32, dim32);
  for (std::int64_t r = 0; r < H.dim; ++r)
    for (std::int64_t c = 0; c < H.dim; ++c) {
      double v;
      in.read(reinterpret_cast<char*>(&v), 8);
      H.entries(r, c) = v;
    }
  if (!in) throw ResourceError(path + ": truncated matrix dump");
  return H;
}

}  // namespace latticecond

#endif
