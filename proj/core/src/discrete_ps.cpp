// Copyright 2026 The coorbit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coorbit/discrete_ps.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

namespace coorbit::dps {

namespace {

void require_positive(int N, const char* what) {
  if (N <= 0) throw DomainError(std::string(what) + ": N must be positive");
}

long long mod(long long a, long long n) {
  const long long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

cplx root_of_unity(long long k, long long n) {
  const long long r = mod(k, n);
  if (r == 0) return 1.0;
  if (2 * r == n) return -1.0;
  if (4 * r == n) return {0.0, 1.0};
  if (4 * r == 3 * n) return {0.0, -1.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

Operator shift_q(int N, long long m) {
  require_positive(N, "shift_q");
  Matrix out = Matrix::Zero(N, N);
  for (int n = 0; n < N; ++n) out(mod(n + m, N), n) = 1.0;
  return Operator(std::move(out));
}

Operator shift_v(int N, long long m) {
  require_positive(N, "shift_v");
  Matrix out = Matrix::Zero(N, N);
  for (int n = 0; n < N; ++n) out(n, n) = root_of_unity(m * n, N);
  return Operator(std::move(out));
}

Operator parity(int N) {
  require_positive(N, "parity");
  Matrix out = Matrix::Zero(N, N);
  for (int n = 0; n < N; ++n) out(mod(-n, N), n) = 1.0;
  return Operator(std::move(out));
}

Operator displacement(int N, long long q, long long p) {
  require_positive(N, "displacement");
  // (Q^q V^p)|n> = e^{2 pi i p n / N} |n + q>
  Matrix out = Matrix::Zero(N, N);
  const cplx phase = root_of_unity(p * q, 2LL * N);
  for (int n = 0; n < N; ++n) out(mod(n + q, N), n) = phase * root_of_unity(p * n, N);
  return Operator(std::move(out));
}

Operator point_operator(int N, int q, int p, PointRoute route) {
  require_positive(N, "point_operator");
  const int L = 2 * N;
  if (q < 0 || p < 0 || q >= L || p >= L) {
    throw DomainError("point_operator: (q, p) must lie on the 2N x 2N lattice");
  }
  if (route == PointRoute::parity) {
    Operator a = shift_q(N, q) * parity(N) * shift_v(N, -p);
    a *= root_of_unity(static_cast<long long>(p) * q, L) / static_cast<double>(L);
    return a;
  }
  CompensatedSum acc(N);
  for (int m = 0; m < L; ++m) {
    for (int k = 0; k < L; ++k) {
      const long long e = -(static_cast<long long>(k) * q - static_cast<long long>(m) * p);
      acc.add(root_of_unity(e, L), displacement(N, m, k).matrix());
    }
  }
  return Operator(acc.result() / static_cast<double>(L * L));
}

WignerGrid wigner(const DensityMatrix& rho) {
  const int N = static_cast<int>(rho.dim());
  const int L = 2 * N;
  WignerGrid out;
  out.values.resize(L, L);
  CompensatedScalar total;
  for (int q = 0; q < L; ++q) {
    for (int p = 0; p < L; ++p) {
      const cplx w = (point_operator(N, q, p).matrix() * rho.matrix()).trace();
      out.values(q, p) = w.real();
      out.max_imag = std::max(out.max_imag, std::abs(w.imag()));
      total.add(w.real());
    }
  }
  out.lattice_sum = total.result().real();
  return out;
}

Operator reconstruct_displacement(const Operator& rho) {
  const int N = static_cast<int>(rho.dim());
  CompensatedSum acc(N);
  for (int q = 0; q < N; ++q) {
    for (int p = 0; p < N; ++p) {
      const Operator u = displacement(N, q, p);
      acc.add(hs_inner(u, rho), u.matrix());
    }
  }
  return Operator(acc.result() / static_cast<double>(N));
}

Operator reconstruct_point(const Operator& rho) {
  const int N = static_cast<int>(rho.dim());
  CompensatedSum acc(N);
  for (int q = 0; q < N; ++q) {
    for (int p = 0; p < N; ++p) {
      const Operator a = point_operator(N, q, p);
      acc.add((rho.matrix() * a.matrix()).trace(), a.matrix());
    }
  }
  return Operator(acc.result() * static_cast<double>(4 * N));
}

TomographicSystem heisenberg_system(int N) {
  if (N < 2) throw DomainError("heisenberg_system: N must be at least 2");
  std::vector<std::vector<double>> nodes;
  for (int q = 0; q < N; ++q) {
    for (int p = 0; p < N; ++p) nodes.push_back({double(q), double(p)});
  }
  std::vector<double> weights(nodes.size(), 1.0 / N);
  IndexGrid grid("dps/N=" + std::to_string(N), nodes, std::move(weights));

  auto family = std::make_shared<CachedFamily>(nodes.size(), [&](std::size_t i) {
    return displacement(N, std::llround(nodes[i][0]), std::llround(nodes[i][1]));
  });
  TomographicSystem::Parts parts;
  parts.name = "dps";
  parts.grid = std::move(grid);
  parts.analysis = family;
  parts.synthesis = family;
  parts.act = [N](std::span<const double> x, const Operator& o) {
    return displacement(N, std::llround(x[0]), std::llround(x[1])) * o;
  };
  parts.action_kind = ActionKind::left;
  parts.vacuum = Operator::identity(N);
  parts.test_functional = Operator::identity(N);
  parts.normalization = 1.0;
  return TomographicSystem(std::move(parts));
}

}  // namespace coorbit::dps
