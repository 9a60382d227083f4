// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "phclust/rng.hpp"

using namespace phclust;

TEST_CASE("identical seeds yield identical streams") {
  Rng a(0), b(0);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("different seeds yield different streams") {
  Rng a(0), b(1);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    if (a.next_u64() != b.next_u64()) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("seed 42 golden stream") {
  // frozen at first build; any change here breaks every golden file
  static constexpr std::uint64_t kGolden[8] = {
      0xd0764d4f4476689full, 0x519e4174576f3791ull, 0xfbe07cfb0c24ed8cull,
      0xb37d9f600cd835b8ull, 0xcb231c3874846a73ull, 0x968d9f004e50de7dull,
      0x201718ff221a3556ull, 0x9ae94e070ed8cb46ull,
  };
  Rng r(42);
  for (std::uint64_t expected : kGolden) {
    CHECK(r.next_u64() == expected);
  }

  static constexpr double kGoldenUniform[4] = {
      0.81430514512290986, 0.31882104006166112, 0.98389416817748876,
      0.70113559813475557,
  };
  Rng u(42);
  for (double expected : kGoldenUniform) {
    CHECK(u.uniform() == expected);  // bit-exact by construction
  }
}

TEST_CASE("uniform stays in range and normal has sane moments") {
  Rng r(7);
  double sum = 0.0, sum2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double g = r.normal();
    sum += g;
    sum2 += g * g;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sum2 / n - 1.0) < 0.03);
}
