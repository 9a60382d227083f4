// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace phclust {

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts need byte swaps");

namespace {

std::vector<char> read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  const std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<char> buf(static_cast<std::size_t>(size));
  if (size > 0 && !in.read(buf.data(), size)) {
    throw std::runtime_error("read failed: " + path);
  }
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  return out;
}

}  // namespace

PanopticLabeling read_label_file(const std::string& path) {
  const std::vector<char> buf = read_all(path);
  if (buf.size() % 4 != 0) {
    throw std::runtime_error("label file " + path + " truncated: " +
                             std::to_string(buf.size()) + " bytes is not a multiple of 4");
  }
  const std::size_t n = buf.size() / 4;
  PanopticLabeling out;
  out.semantic.resize(n);
  out.instance.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t word;
    std::memcpy(&word, buf.data() + i * 4, 4);
    out.semantic[i] = static_cast<std::uint16_t>(word & 0xffffu);
    out.instance[i] = word >> 16;
  }
  return out;
}

void write_label_file(const std::string& path, const PanopticLabeling& labels) {
  labels.validate();
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels.instance[i] > 0xffffu) {
      throw std::runtime_error("write_label_file: instance id " +
                               std::to_string(labels.instance[i]) +
                               " does not fit in 16 bits");
    }
    const std::uint32_t word =
        (labels.instance[i] << 16) | static_cast<std::uint32_t>(labels.semantic[i]);
    out.write(reinterpret_cast<const char*>(&word), 4);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

PointCloud read_point_file(const std::string& path) {
  const std::vector<char> buf = read_all(path);
  if (buf.size() % 16 != 0) {
    throw std::runtime_error("point file " + path + " malformed: " +
                             std::to_string(buf.size()) + " bytes is not a multiple of 16");
  }
  const std::size_t n = buf.size() / 16;
  std::vector<Vec3> xyz(n);
  std::vector<float> intensity(n);
  for (std::size_t i = 0; i < n; ++i) {
    float vals[4];
    std::memcpy(vals, buf.data() + i * 16, 16);
    xyz[i] = {vals[0], vals[1], vals[2]};
    intensity[i] = vals[3];
  }
  return PointCloud(std::move(xyz), std::move(intensity));  // rejects NaN/Inf
}

void write_point_file(const std::string& path, const PointCloud& cloud) {
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.xyz()[i];
    const float vals[4] = {p.x, p.y, p.z,
                           cloud.has_intensity() ? cloud.intensity()[i] : 0.f};
    out.write(reinterpret_cast<const char*>(vals), 16);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Offsets read_offset_file(const std::string& path) {
  const std::vector<char> buf = read_all(path);
  if (buf.size() % 8 != 0) {
    throw std::runtime_error("offset file " + path + " malformed: " +
                             std::to_string(buf.size()) + " bytes is not a multiple of 8");
  }
  const std::size_t n = buf.size() / 8;
  Offsets out(n);
  for (std::size_t i = 0; i < n; ++i) {
    float vals[2];
    std::memcpy(vals, buf.data() + i * 8, 8);
    out[i] = {vals[0], vals[1]};
  }
  validate_offsets(out);
  return out;
}

void write_offset_file(const std::string& path, const Offsets& off) {
  std::ofstream out = open_out(path);
  for (const Vec2& v : off) {
    const float vals[2] = {v.x, v.y};
    out.write(reinterpret_cast<const char*>(vals), 8);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_pgm16(const std::string& path, const Heatmap& hm) {
  std::ofstream out = open_out(path);
  out << "P5\n" << hm.size << " " << hm.size << "\n65535\n";
  for (std::uint32_t s : hm.scores) {
    const std::uint16_t v = static_cast<std::uint16_t>(std::min<std::uint32_t>(s, 65535));
    // PGM is big-endian by definition
    const char bytes[2] = {static_cast<char>(v >> 8), static_cast<char>(v & 0xff)};
    out.write(bytes, 2);
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

void write_matrix(std::ofstream& out, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double v = m(r, c);
      out.write(reinterpret_cast<const char*>(&v), 8);
    }
  }
}

Matrix read_matrix(const char*& ptr, const char* end, int rows, int cols) {
  const std::size_t bytes = static_cast<std::size_t>(rows) * cols * 8;
  if (ptr + bytes > end) throw std::runtime_error("weight blob truncated");
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double v;
      std::memcpy(&v, ptr, 8);
      ptr += 8;
      m(r, c) = v;
    }
  }
  return m;
}

}  // namespace

void write_weights(const std::string& path, const AttentionWeights& w) {
  w.validate();
  nlohmann::json header;
  header["channels"] = w.in_channels();
  header["proj_channels"] = w.proj_channels();
  header["ff_channels"] = w.ff_channels();
  header["heads"] = w.heads;
  header["dtype"] = "float64le";
  header["order"] = "row_major";
  header["matrices"] = {"w_q", "w_k", "w_v", "w_o", "w_ff1", "w_ff2"};

  std::ofstream out = open_out(path);
  out << header.dump() << "\n";
  write_matrix(out, w.w_q);
  write_matrix(out, w.w_k);
  write_matrix(out, w.w_v);
  write_matrix(out, w.w_o);
  write_matrix(out, w.w_ff1);
  write_matrix(out, w.w_ff2);
  if (!out) throw std::runtime_error("write failed: " + path);
}

AttentionWeights read_weights(const std::string& path) {
  const std::vector<char> buf = read_all(path);
  const auto nl = std::find(buf.begin(), buf.end(), '\n');
  if (nl == buf.end()) throw std::runtime_error("weight blob missing JSON header line");
  const nlohmann::json header = nlohmann::json::parse(std::string(buf.begin(), nl));
  const int c = header.at("channels").get<int>();
  const int cp = header.at("proj_channels").get<int>();
  const int ff = header.at("ff_channels").get<int>();

  AttentionWeights w;
  w.heads = header.at("heads").get<int>();
  const char* ptr = buf.data() + (nl - buf.begin()) + 1;
  const char* end = buf.data() + buf.size();
  w.w_q = read_matrix(ptr, end, c, cp);
  w.w_k = read_matrix(ptr, end, c, cp);
  w.w_v = read_matrix(ptr, end, c, cp);
  w.w_o = read_matrix(ptr, end, cp, c);
  w.w_ff1 = read_matrix(ptr, end, c, ff);
  w.w_ff2 = read_matrix(ptr, end, ff, c);
  if (ptr != end) throw std::runtime_error("weight blob has trailing bytes");
  w.validate();
  return w;
}

}  // namespace phclust
