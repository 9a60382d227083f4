// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "phclust/io.hpp"
#include "phclust/rng.hpp"

using namespace phclust;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/phclust_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

void write_raw(const std::string& path, const void* data, std::size_t bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(static_cast<const char*>(data), std::streamsize(bytes));
}

}  // namespace

TEST_CASE("label word layout: low half class, high half instance") {
  TempFile f("labels.bin");
  const std::uint32_t words[3] = {0x00010001u, 0x0000000au, 0x002a000bu};
  write_raw(f.path, words, sizeof(words));
  const PanopticLabeling lab = read_label_file(f.path);
  REQUIRE(lab.size() == 3);
  CHECK(lab.semantic[0] == 1);
  CHECK(lab.instance[0] == 1);
  CHECK(lab.semantic[1] == 10);
  CHECK(lab.instance[1] == 0);
  CHECK(lab.semantic[2] == 11);
  CHECK(lab.instance[2] == 42);
}

TEST_CASE("label file round trip") {
  TempFile f("labels_rt.bin");
  PanopticLabeling lab;
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    lab.semantic.push_back(std::uint16_t(rng.uniform_index(20)));
    lab.instance.push_back(std::uint32_t(rng.uniform_index(0x10000)));
  }
  write_label_file(f.path, lab);
  const PanopticLabeling back = read_label_file(f.path);
  CHECK(back.semantic == lab.semantic);
  CHECK(back.instance == lab.instance);
}

TEST_CASE("label file edge cases") {
  TempFile f("labels_edge.bin");
  SUBCASE("empty file reads as empty labeling") {
    write_raw(f.path, nullptr, 0);
    CHECK(read_label_file(f.path).size() == 0);
  }
  SUBCASE("truncated length throws") {
    const char junk[6] = {0};
    write_raw(f.path, junk, 6);
    CHECK_THROWS(read_label_file(f.path));
  }
  SUBCASE("missing file throws") {
    CHECK_THROWS(read_label_file("/tmp/phclust_does_not_exist.bin"));
  }
  SUBCASE("oversized instance id is rejected on write") {
    PanopticLabeling lab;
    lab.semantic = {10};
    lab.instance = {0x10000};
    CHECK_THROWS(write_label_file(f.path, lab));
  }
}

TEST_CASE("point file round trip keeps xyz and intensity") {
  TempFile f("points.bin");
  Rng rng(2);
  std::vector<Vec3> xyz;
  std::vector<float> intensity;
  for (int i = 0; i < 500; ++i) {
    xyz.push_back({float(rng.uniform(-50.0, 50.0)), float(rng.uniform(-50.0, 50.0)),
                   float(rng.uniform(-3.0, 1.0))});
    intensity.push_back(float(rng.uniform()));
  }
  write_point_file(f.path, PointCloud(xyz, intensity));
  const PointCloud back = read_point_file(f.path);
  REQUIRE(back.size() == 500);
  for (int i = 0; i < 500; ++i) {
    CHECK(back.xyz()[i].x == xyz[i].x);
    CHECK(back.xyz()[i].y == xyz[i].y);
    CHECK(back.xyz()[i].z == xyz[i].z);
    CHECK(back.intensity()[i] == intensity[i]);
  }
}

TEST_CASE("point file rejects NaN coordinates and bad lengths") {
  TempFile f("points_bad.bin");
  SUBCASE("NaN coordinate") {
    const float vals[4] = {0.f, std::numeric_limits<float>::quiet_NaN(), 0.f, 0.f};
    write_raw(f.path, vals, sizeof(vals));
    CHECK_THROWS(read_point_file(f.path));
  }
  SUBCASE("length not a multiple of 16") {
    const char junk[20] = {0};
    write_raw(f.path, junk, 20);
    CHECK_THROWS(read_point_file(f.path));
  }
}

TEST_CASE("offset file round trip and validation") {
  TempFile f("offsets.bin");
  Offsets off;
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    off.push_back({float(rng.uniform(-2.0, 2.0)), float(rng.uniform(-2.0, 2.0))});
  }
  write_offset_file(f.path, off);
  const Offsets back = read_offset_file(f.path);
  REQUIRE(back.size() == off.size());
  for (std::size_t i = 0; i < off.size(); ++i) {
    CHECK(back[i].x == off[i].x);
    CHECK(back[i].y == off[i].y);
  }

  const float bad[2] = {std::numeric_limits<float>::infinity(), 0.f};
  write_raw(f.path, bad, sizeof(bad));
  CHECK_THROWS(read_offset_file(f.path));
  const char junk[12] = {0};
  write_raw(f.path, junk, 12);
  CHECK_THROWS(read_offset_file(f.path));
}

TEST_CASE("pgm16 header and big-endian payload") {
  TempFile f("hm.pgm");
  Heatmap hm;
  hm.size = 2;
  hm.cell = 0.2f;
  hm.extent = 0.2f;
  hm.scores = {0, 1, 0x1234, 70000};  // last saturates
  write_pgm16(f.path, hm);

  std::ifstream in(f.path, std::ios::binary);
  std::string magic;
  int w, h, maxval;
  in >> magic >> w >> h >> maxval;
  CHECK(magic == "P5");
  CHECK(w == 2);
  CHECK(h == 2);
  CHECK(maxval == 65535);
  in.get();  // single whitespace after maxval
  unsigned char px[8];
  in.read(reinterpret_cast<char*>(px), 8);
  CHECK(px[0] == 0x00);
  CHECK(px[1] == 0x00);
  CHECK(px[2] == 0x00);
  CHECK(px[3] == 0x01);
  CHECK(px[4] == 0x12);
  CHECK(px[5] == 0x34);
  CHECK(px[6] == 0xff);
  CHECK(px[7] == 0xff);
}

TEST_CASE("weight blob round trip is bit-exact") {
  TempFile f("weights.bin");
  Rng rng(4);
  const AttentionWeights w = random_weights(32, 32, 64, 4, rng);
  write_weights(f.path, w);
  const AttentionWeights back = read_weights(f.path);
  CHECK(back.heads == w.heads);
  CHECK(back.w_q == w.w_q);
  CHECK(back.w_k == w.w_k);
  CHECK(back.w_v == w.w_v);
  CHECK(back.w_o == w.w_o);
  CHECK(back.w_ff1 == w.w_ff1);
  CHECK(back.w_ff2 == w.w_ff2);
}

TEST_CASE("weight blob rejects truncation and trailing bytes") {
  TempFile f("weights_bad.bin");
  Rng rng(5);
  const AttentionWeights w = random_weights(8, 8, 16, 2, rng);
  write_weights(f.path, w);

  std::ifstream in(f.path, std::ios::binary | std::ios::ate);
  const std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<char> buf(static_cast<std::size_t>(size), '\0');
  in.read(buf.data(), size);

  SUBCASE("truncated") {
    write_raw(f.path, buf.data(), buf.size() - 8);
    CHECK_THROWS(read_weights(f.path));
  }
  SUBCASE("trailing bytes") {
    buf.push_back('x');
    write_raw(f.path, buf.data(), buf.size());
    CHECK_THROWS(read_weights(f.path));
  }
  SUBCASE("no header line") {
    const char raw[16] = {0};
    write_raw(f.path, raw, 16);
    CHECK_THROWS(read_weights(f.path));
  }
}
