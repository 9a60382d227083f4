// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "phclust/assignment.hpp"
#include "phclust/rng.hpp"
#include "phclust/synth.hpp"

using namespace phclust;

namespace {

Center center_at(float x, float y, std::uint32_t score = 1) {
  return {0, 0, score, {x, y}};
}

CenterGroups singleton_groups(const CenterSet& centers, std::uint16_t cls = 10) {
  CenterGroups g;
  for (std::int32_t i = 0; i < std::int32_t(centers.size()); ++i) {
    g.group_of.push_back(i);
    g.representative.push_back(i);
    g.center_class.push_back(cls);
  }
  return g;
}

}  // namespace

TEST_CASE("assign_instances basics") {
  SUBCASE("one center claims everything") {
    const CenterSet centers = {center_at(0.f, 0.f)};
    const auto asg = assign_instances({{5.f, 5.f}, {-3.f, 2.f}}, centers,
                                      singleton_groups(centers));
    CHECK(asg.instance == std::vector<std::uint32_t>{1, 1});
    CHECK(asg.unassigned == 0);
  }
  SUBCASE("two centers split the plane") {
    const CenterSet centers = {center_at(-2.f, 0.f), center_at(2.f, 0.f)};
    const auto asg = assign_instances({{-1.9f, 0.3f}, {2.1f, -0.4f}}, centers,
                                      singleton_groups(centers));
    CHECK(asg.instance == std::vector<std::uint32_t>{1, 2});
  }
  SUBCASE("equidistant point goes to the smaller group id") {
    const CenterSet centers = {center_at(-1.f, 0.f), center_at(1.f, 0.f)};
    const auto asg =
        assign_instances({{0.f, 0.f}}, centers, singleton_groups(centers));
    CHECK(asg.instance[0] == 1);
  }
  SUBCASE("grouped centers share one instance id") {
    const CenterSet centers = {center_at(-1.f, 0.f), center_at(1.f, 0.f)};
    CenterGroups g;
    g.group_of = {0, 0};
    g.representative = {0};
    g.center_class = {10, 10};
    const auto asg = assign_instances({{-1.f, 0.f}, {1.f, 0.f}}, centers, g);
    CHECK(asg.instance == std::vector<std::uint32_t>{1, 1});
  }
  SUBCASE("no centers leaves everything unassigned") {
    const auto asg = assign_instances({{0.f, 0.f}, {1.f, 1.f}}, {}, CenterGroups{});
    CHECK(asg.instance == std::vector<std::uint32_t>{0, 0});
    CHECK(asg.unassigned == 2);
  }
}

TEST_CASE("assign_instances matches brute-force nearest search") {
  Rng rng(77);
  CenterSet centers;
  for (int i = 0; i < 50; ++i) {
    centers.push_back(center_at(float(rng.uniform(-40.0, 40.0)),
                                float(rng.uniform(-40.0, 40.0)),
                                std::uint32_t(1 + rng.uniform_index(9))));
  }
  // a mix of singleton and merged groups
  CenterGroups groups;
  std::int32_t next = 0;
  for (int i = 0; i < 50; ++i) {
    if (i > 0 && rng.uniform() < 0.2) {
      groups.group_of.push_back(groups.group_of[i - 1]);
    } else {
      groups.group_of.push_back(next);
      groups.representative.push_back(i);
      ++next;
    }
    groups.center_class.push_back(10);
  }

  std::vector<Vec2> pts(10000);
  for (Vec2& p : pts) {
    p = {float(rng.uniform(-45.0, 45.0)), float(rng.uniform(-45.0, 45.0))};
  }
  const auto asg = assign_instances(pts, centers, groups);
  REQUIRE(asg.instance.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = 1e300;
    std::int32_t best_group = -1;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double d = std::hypot(double(pts[i].x) - centers[c].xy.x,
                                  double(pts[i].y) - centers[c].xy.y);
      if (d < best || (d == best && groups.group_of[c] < best_group)) {
        best = d;
        best_group = groups.group_of[c];
      }
    }
    CHECK(asg.instance[i] == std::uint32_t(best_group + 1));
  }
}

TEST_CASE("fuse_panoptic majority voting") {
  const ClassTable table = default_class_table();

  SUBCASE("car majority overrides a stray bus label") {
    std::vector<std::uint16_t> sem(10, 10);
    sem[3] = 12;
    const std::vector<std::uint32_t> inst(10, 1);
    const PanopticLabeling fused = fuse_panoptic(sem, inst, table);
    for (std::size_t i = 0; i < 10; ++i) {
      CHECK(fused.semantic[i] == 10);
      CHECK(fused.instance[i] == 1);
    }
  }
  SUBCASE("class ties go to the smaller class id") {
    const std::vector<std::uint16_t> sem = {10, 10, 12, 12};
    const std::vector<std::uint32_t> inst = {1, 1, 1, 1};
    const PanopticLabeling fused = fuse_panoptic(sem, inst, table);
    CHECK(fused.semantic[0] == 10);
    CHECK(fused.semantic[2] == 10);
  }
  SUBCASE("stuff-majority instances are cleared") {
    const std::vector<std::uint16_t> sem = {1, 1, 1, 10};
    const std::vector<std::uint32_t> inst = {4, 4, 4, 4};
    const PanopticLabeling fused = fuse_panoptic(sem, inst, table);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(fused.semantic[i] == 1);
      CHECK(fused.instance[i] == kNoInstance);
    }
  }
  SUBCASE("pure stuff input passes through unchanged") {
    const std::vector<std::uint16_t> sem = {1, 2, 3, 2};
    const std::vector<std::uint32_t> inst(4, kNoInstance);
    const PanopticLabeling fused = fuse_panoptic(sem, inst, table);
    CHECK(fused.semantic == sem);
    CHECK(fused.instance == inst);
  }
  SUBCASE("instances vote independently") {
    const std::vector<std::uint16_t> sem = {10, 10, 11, 12, 12, 12};
    const std::vector<std::uint32_t> inst = {1, 1, 1, 2, 2, 2};
    const PanopticLabeling fused = fuse_panoptic(sem, inst, table);
    CHECK(fused.semantic == std::vector<std::uint16_t>{10, 10, 10, 12, 12, 12});
  }
}

TEST_CASE("fuse_panoptic matches a counting oracle and is idempotent") {
  const ClassTable table = default_class_table();
  Rng rng(91);
  const std::uint16_t pool[6] = {1, 2, 3, 10, 11, 12};
  for (int trial = 0; trial < 40; ++trial) {
    const int n = int(10 + rng.uniform_index(200));
    std::vector<std::uint16_t> sem(n);
    std::vector<std::uint32_t> inst(n);
    for (int i = 0; i < n; ++i) {
      sem[i] = pool[rng.uniform_index(6)];
      inst[i] = std::uint32_t(rng.uniform_index(6));  // 0 = none
      if (inst[i] != 0 && !table.is_thing(sem[i]) && rng.uniform() < 0.5) {
        sem[i] = pool[3 + rng.uniform_index(3)];
      }
    }
    const PanopticLabeling fused = fuse_panoptic(sem, inst, table);

    // per-instance majority oracle
    std::map<std::uint32_t, std::map<std::uint16_t, int>> votes;
    for (int i = 0; i < n; ++i) {
      if (inst[i] != 0) ++votes[inst[i]][sem[i]];
    }
    for (int i = 0; i < n; ++i) {
      if (inst[i] == 0) {
        CHECK(fused.semantic[i] == sem[i]);
        CHECK(fused.instance[i] == 0);
        continue;
      }
      std::uint16_t win = 0;
      int best = -1;
      for (const auto& [cls, cnt] : votes[inst[i]]) {
        if (cnt > best) {
          best = cnt;
          win = cls;  // map iterates ascending, ties keep the smaller id
        }
      }
      CHECK(fused.semantic[i] == win);
      if (table.is_thing(win)) {
        CHECK(fused.instance[i] == inst[i]);
      } else {
        CHECK(fused.instance[i] == kNoInstance);
      }
    }
    // class purity per fused instance
    std::map<std::uint32_t, std::uint16_t> inst_class;
    for (int i = 0; i < n; ++i) {
      if (fused.instance[i] == 0) continue;
      const auto it = inst_class.find(fused.instance[i]);
      if (it == inst_class.end()) {
        inst_class[fused.instance[i]] = fused.semantic[i];
      } else {
        CHECK(it->second == fused.semantic[i]);
      }
    }
    // idempotence
    const PanopticLabeling again = fuse_panoptic(fused.semantic, fused.instance, table);
    CHECK(again.semantic == fused.semantic);
    CHECK(again.instance == fused.instance);
    table.validate_labeling(fused);
  }
}
