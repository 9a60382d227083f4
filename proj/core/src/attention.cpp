// Copyright 2026 the phclust authors
// SPDX-License-Identifier: Apache-2.0

#include "phclust/attention.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace phclust {

void ThingFeatures::validate() const {
  if (static_cast<std::size_t>(features.rows()) != positions.size()) {
    throw std::invalid_argument("ThingFeatures: features/positions row mismatch");
  }
  if (!features.allFinite()) {
    throw std::invalid_argument("ThingFeatures: non-finite feature entry");
  }
  for (const Vec3& p : positions) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw std::invalid_argument("ThingFeatures: non-finite position");
    }
  }
}

void AttentionWeights::validate() const {
  const auto c = w_q.rows();
  const auto cp = w_q.cols();
  if (w_k.rows() != c || w_k.cols() != cp || w_v.rows() != c || w_v.cols() != cp) {
    throw std::invalid_argument("AttentionWeights: Q/K/V projection shapes disagree");
  }
  if (w_o.rows() != cp || w_o.cols() != c) {
    throw std::invalid_argument("AttentionWeights: output projection must be C' x C");
  }
  if (w_ff1.rows() != c || w_ff2.cols() != c || w_ff1.cols() != w_ff2.rows()) {
    throw std::invalid_argument("AttentionWeights: feed-forward shapes inconsistent");
  }
  if (heads < 1 || cp % heads != 0) {
    throw std::invalid_argument("AttentionWeights: head count must divide C'");
  }
  if (!w_q.allFinite() || !w_k.allFinite() || !w_v.allFinite() || !w_o.allFinite() ||
      !w_ff1.allFinite() || !w_ff2.allFinite()) {
    throw std::invalid_argument("AttentionWeights: non-finite entry");
  }
}

AttentionWeights random_weights(int channels, int proj_channels, int ff_channels,
                                int heads, Rng& rng) {
  const double sigma = 1.0 / std::sqrt(static_cast<double>(channels));
  auto fill = [&](Matrix& m, int r, int c) {
    m.resize(r, c);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) {
        m(i, j) = rng.normal(0.0, sigma);
      }
    }
  };
  AttentionWeights w;
  w.heads = heads;
  fill(w.w_q, channels, proj_channels);
  fill(w.w_k, channels, proj_channels);
  fill(w.w_v, channels, proj_channels);
  fill(w.w_o, proj_channels, channels);
  fill(w.w_ff1, channels, ff_channels);
  fill(w.w_ff2, ff_channels, channels);
  w.validate();
  return w;
}

Matrix attention_forward(const ThingFeatures& feat,
                         const std::vector<std::vector<std::int32_t>>& idx,
                         const AttentionWeights& w) {
  feat.validate();
  w.validate();
  const std::int64_t m = feat.count();
  if (static_cast<std::int64_t>(idx.size()) != m) {
    throw std::invalid_argument("attention_forward: index rows != M");
  }
  if (feat.features.cols() != w.in_channels()) {
    throw std::invalid_argument("attention_forward: feature channels != weight C");
  }
  const int cp = w.proj_channels();
  const int h = w.heads;
  const int d = cp / h;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));

  const Matrix q = feat.features * w.w_q;  // M x C'
  const Matrix km = feat.features * w.w_k;
  const Matrix vm = feat.features * w.w_v;

  Matrix attn(m, cp);
  std::vector<double> logits;
  for (std::int64_t i = 0; i < m; ++i) {
    const auto& nbrs = idx[i];
    const int k = static_cast<int>(nbrs.size());
    if (k == 0) {
      throw std::invalid_argument("attention_forward: empty neighbor row");
    }
    for (const std::int32_t j : nbrs) {
      if (j < 0 || j >= m) {
        throw std::invalid_argument("attention_forward: neighbor index out of range");
      }
    }
    logits.resize(k);
    for (int head = 0; head < h; ++head) {
      const int off = head * d;
      double max_logit = -std::numeric_limits<double>::infinity();
      for (int n = 0; n < k; ++n) {
        double dot = 0.0;
        for (int c = 0; c < d; ++c) {
          dot += q(i, off + c) * km(nbrs[n], off + c);
        }
        logits[n] = dot * scale;
        max_logit = std::max(max_logit, logits[n]);
      }
      double denom = 0.0;
      for (int n = 0; n < k; ++n) {
        logits[n] = std::exp(logits[n] - max_logit);
        denom += logits[n];
      }
      for (int c = 0; c < d; ++c) {
        double acc = 0.0;
        for (int n = 0; n < k; ++n) {
          acc += logits[n] * vm(nbrs[n], off + c);
        }
        attn(i, off + c) = acc / denom;
      }
    }
  }

  Matrix out = feat.features + attn * w.w_o;           // residual after projection
  out += (out * w.w_ff1).cwiseMax(0.0) * w.w_ff2;      // ReLU feed-forward, residual
  if (!out.allFinite()) {
    throw std::runtime_error("attention_forward: non-finite output (bad weights?)");
  }
  return out;
}

Matrix dense_attention_reference(const ThingFeatures& feat, const AttentionWeights& w) {
  feat.validate();
  w.validate();
  const std::int64_t m = feat.count();
  const int cp = w.proj_channels();
  const int h = w.heads;
  const int d = cp / h;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));

  const Matrix q = feat.features * w.w_q;
  const Matrix km = feat.features * w.w_k;
  const Matrix vm = feat.features * w.w_v;

  Matrix attn(m, cp);
  for (int head = 0; head < h; ++head) {
    const Matrix qh = q.middleCols(head * d, d);
    const Matrix kh = km.middleCols(head * d, d);
    const Matrix vh = vm.middleCols(head * d, d);
    Matrix logits = qh * kh.transpose() * scale;  // M x M
    const Eigen::VectorXd row_max = logits.rowwise().maxCoeff();
    logits.colwise() -= row_max;
    logits = logits.array().exp();
    const Eigen::VectorXd denom = logits.rowwise().sum();
    attn.middleCols(head * d, d) = denom.cwiseInverse().asDiagonal() * (logits * vh);
  }
  Matrix out = feat.features + attn * w.w_o;
  out += (out * w.w_ff1).cwiseMax(0.0) * w.w_ff2;
  return out;
}

std::uint64_t attention_flop_count(std::int64_t m, int k, int proj_channels) {
  if (m <= 0 || k <= 0 || proj_channels <= 0) {
    throw std::invalid_argument("attention_flop_count: arguments must be positive");
  }
  return 2ull * static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(k) *
         static_cast<std::uint64_t>(proj_channels);
}

}  // namespace phclust
