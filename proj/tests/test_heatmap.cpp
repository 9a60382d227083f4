// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "phclust/heatmap.hpp"
#include "phclust/rng.hpp"
#include "phclust/synth.hpp"

using namespace phclust;

namespace {

GridConfig small_bev() {
  GridConfig cfg;
  cfg.bev_cell = 0.2f;
  cfg.bev_extent = 6.4f;  // 64 x 64 grid
  cfg.maxpool_window = 5;
  cfg.min_center_score = 1;
  return cfg;
}

// brute-force strict-local-argmax oracle with the same row-major tie-break
CenterSet center_oracle(const Heatmap& hm, int window, std::uint32_t min_score) {
  const int n = hm.size;
  const int rad = window / 2;
  CenterSet out;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const std::uint32_t s = hm.at(r, c);
      if (s < min_score) continue;
      bool ok = true;
      for (int dr = -rad; dr <= rad && ok; ++dr) {
        for (int dc = -rad; dc <= rad; ++dc) {
          const int rr = r + dr, cc = c + dc;
          if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
          const std::uint32_t t = hm.at(rr, cc);
          if (t > s || (t == s && (rr < r || (rr == r && cc < c)))) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        out.push_back({r, c, s,
                       {(c + 0.5f) * hm.cell - hm.extent, (r + 0.5f) * hm.cell - hm.extent}});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Center& a, const Center& b) { return a.score > b.score; });
  return out;
}

bool same_centers(const CenterSet& a, const CenterSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].row != b[i].row || a[i].col != b[i].col || a[i].score != b[i].score) {
      return false;
    }
  }
  return true;
}

Heatmap random_heatmap(int n, std::uint64_t seed, const GridConfig& cfg) {
  Heatmap hm;
  hm.size = n;
  hm.cell = cfg.bev_cell;
  hm.extent = cfg.bev_extent;
  hm.scores.resize(std::size_t(n) * n);
  Rng rng(seed);
  for (auto& s : hm.scores) {
    // sparse: most cells zero, occasional small counts
    const double u = rng.uniform();
    s = u < 0.85 ? 0 : std::uint32_t(1 + rng.uniform_index(9));
  }
  return hm;
}

}  // namespace

TEST_CASE("pseudo image basics") {
  const GridConfig cfg = small_bev();
  const ClassTable table = default_class_table();

  SUBCASE("one voxel at the origin gives a single count") {
    const PseudoImage img = build_pseudo_image({{0.f, 0.f}}, {10}, table, cfg);
    CHECK(img.total_count() == 1);
    CHECK(img.overflow == 0);
    CHECK(img.at(32, 32, table.channel_of(10)) == 1);
  }
  SUBCASE("ten voxels in one cell accumulate in one channel") {
    std::vector<Vec2> pts(10, Vec2{1.01f, -2.02f});
    const PseudoImage img = build_pseudo_image(pts, std::vector<std::uint16_t>(10, 11),
                                               table, cfg);
    const int col = int(std::floor((1.01f + cfg.bev_extent) / cfg.bev_cell));
    const int row = int(std::floor((-2.02f + cfg.bev_extent) / cfg.bev_cell));
    CHECK(img.at(row, col, table.channel_of(11)) == 10);
    CHECK(img.total_count() == 10);
  }
  SUBCASE("out-of-extent voxels go to the overflow tally") {
    const PseudoImage img =
        build_pseudo_image({{100.f, 0.f}, {0.f, 0.f}}, {10, 10}, table, cfg);
    CHECK(img.overflow == 1);
    CHECK(img.total_count() == 1);
  }
}

TEST_CASE("pseudo image counts match a 2D histogram oracle") {
  const GridConfig cfg = small_bev();
  const ClassTable table = default_class_table();
  Rng rng(17);
  const int m = 10000;
  std::vector<Vec2> pts(m);
  std::vector<std::uint16_t> cls(m);
  const std::vector<std::uint16_t> choices = {10, 11, 12};
  for (int i = 0; i < m; ++i) {
    pts[i] = {float(rng.uniform(-7.0, 7.0)), float(rng.uniform(-7.0, 7.0))};
    cls[i] = choices[rng.uniform_index(3)];
  }
  const PseudoImage img = build_pseudo_image(pts, cls, table, cfg);

  std::map<std::tuple<int, int, int>, std::uint32_t> hist;
  std::uint64_t overflow = 0;
  for (int i = 0; i < m; ++i) {
    const int col = int(std::floor((pts[i].x + cfg.bev_extent) / cfg.bev_cell));
    const int row = int(std::floor((pts[i].y + cfg.bev_extent) / cfg.bev_cell));
    if (row < 0 || row >= img.size || col < 0 || col >= img.size) {
      ++overflow;
      continue;
    }
    ++hist[{row, col, table.channel_of(cls[i])}];
  }
  CHECK(img.overflow == overflow);
  CHECK(img.total_count() + img.overflow == std::uint64_t(m));  // conservation
  for (int r = 0; r < img.size; ++r) {
    for (int c = 0; c < img.size; ++c) {
      for (int ch = 0; ch < img.channels; ++ch) {
        const auto it = hist.find({r, c, ch});
        CHECK(img.at(r, c, ch) == (it == hist.end() ? 0u : it->second));
      }
    }
  }
}

TEST_CASE("class_agnostic sums channels") {
  const GridConfig cfg = small_bev();
  const ClassTable table = default_class_table();

  SUBCASE("all-zero image gives all-zero heatmap") {
    const PseudoImage img = build_pseudo_image({}, {}, table, cfg);
    const Heatmap hm = class_agnostic(img);
    for (auto s : hm.scores) CHECK(s == 0);
  }
  SUBCASE("random image matches per-cell summation") {
    Rng rng(23);
    std::vector<Vec2> pts;
    std::vector<std::uint16_t> cls;
    for (int i = 0; i < 3000; ++i) {
      pts.push_back({float(rng.uniform(-6.0, 6.0)), float(rng.uniform(-6.0, 6.0))});
      cls.push_back(std::uint16_t(10 + rng.uniform_index(3)));
    }
    const PseudoImage img = build_pseudo_image(pts, cls, table, cfg);
    const Heatmap hm = class_agnostic(img);
    for (int r = 0; r < img.size; ++r) {
      for (int c = 0; c < img.size; ++c) {
        std::uint32_t sum = 0;
        for (int ch = 0; ch < img.channels; ++ch) sum += img.at(r, c, ch);
        CHECK(hm.at(r, c) == sum);
      }
    }
  }
}

TEST_CASE("extract_centers basics") {
  GridConfig cfg = small_bev();

  Heatmap hm;
  hm.size = 64;
  hm.cell = cfg.bev_cell;
  hm.extent = cfg.bev_extent;
  hm.scores.assign(64 * 64, 0);

  SUBCASE("single nonzero cell is the only center") {
    hm.scores[10 * 64 + 20] = 3;
    const CenterSet centers = extract_centers(hm, cfg);
    REQUIRE(centers.size() == 1);
    CHECK(centers[0].row == 10);
    CHECK(centers[0].col == 20);
    CHECK(centers[0].score == 3);
  }
  SUBCASE("equal adjacent scores keep only the row-major smaller") {
    hm.scores[10 * 64 + 20] = 5;
    hm.scores[10 * 64 + 22] = 5;  // within window 5
    const CenterSet centers = extract_centers(hm, cfg);
    REQUIRE(centers.size() == 1);
    CHECK(centers[0].col == 20);
  }
  SUBCASE("boundary cell can be a center (shrunken window)") {
    hm.scores[0] = 2;
    const CenterSet centers = extract_centers(hm, cfg);
    REQUIRE(centers.size() == 1);
    CHECK(centers[0].row == 0);
    CHECK(centers[0].col == 0);
  }
}

TEST_CASE("extract_centers matches the brute-force oracle on 200 heatmaps") {
  GridConfig cfg = small_bev();
  for (int window : {3, 5, 7}) {
    cfg.maxpool_window = window;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Heatmap hm = random_heatmap(64, seed * 31 + window, cfg);
      const CenterSet got = extract_centers(hm, cfg);
      const CenterSet expected = center_oracle(hm, window, cfg.min_center_score);
      CHECK(same_centers(got, expected));
    }
  }
}

TEST_CASE("isolated clusters each yield exactly one center") {
  const GridConfig cfg = small_bev();
  const ClassTable table = default_class_table();
  // three clusters farther apart than the window radius
  std::vector<Vec2> pts;
  std::vector<std::uint16_t> cls;
  Rng rng(5);
  const Vec2 anchors[3] = {{-4.f, -4.f}, {0.f, 3.f}, {4.f, -2.f}};
  for (const Vec2& a : anchors) {
    for (int i = 0; i < 20; ++i) {
      pts.push_back({a.x + float(rng.uniform(-0.05, 0.05)),
                     a.y + float(rng.uniform(-0.05, 0.05))});
      cls.push_back(10);
    }
  }
  const Heatmap hm = class_agnostic(build_pseudo_image(pts, cls, table, cfg));
  CHECK(extract_centers(hm, cfg).size() == 3);
}

TEST_CASE("extract_centers is translation-equivariant modulo the boundary") {
  GridConfig cfg = small_bev();
  const Heatmap hm = random_heatmap(64, 321, cfg);
  // shift everything by (2, 3), leaving a safety band so nothing crosses edges
  Heatmap shifted = hm;
  shifted.scores.assign(hm.scores.size(), 0);
  for (int r = 0; r < 64 - 2; ++r) {
    for (int c = 0; c < 64 - 3; ++c) {
      shifted.scores[std::size_t(r + 2) * 64 + (c + 3)] = hm.at(r, c);
    }
  }
  const CenterSet a = extract_centers(hm, cfg);
  const CenterSet b = extract_centers(shifted, cfg);
  const int rad = cfg.maxpool_window / 2;
  // compare centers that stay clear of both boundaries
  std::vector<std::pair<int, int>> a_in, b_in;
  for (const Center& ctr : a) {
    if (ctr.row >= rad && ctr.row < 64 - 2 - rad && ctr.col >= rad &&
        ctr.col < 64 - 3 - rad) {
      a_in.push_back({ctr.row + 2, ctr.col + 3});
    }
  }
  for (const Center& ctr : b) {
    if (ctr.row >= rad + 2 && ctr.row < 64 - rad && ctr.col >= rad + 3 &&
        ctr.col < 64 - rad) {
      b_in.push_back({ctr.row, ctr.col});
    }
  }
  std::sort(a_in.begin(), a_in.end());
  std::sort(b_in.begin(), b_in.end());
  CHECK(a_in == b_in);
}
