#pragma once

#include "avsum/nn/layers.hpp"

namespace avsum::nn {

// Scaled dot-product multi-head attention over frame-major inputs:
//   head_h = softmax(Q Wq_h (K Wk_h)^T / sqrt(scale_dim)) V Wv_h
//   out    = Wo * concat(head_1..head_H)          (Wo is rows x rows of Q)
// Wq/Wk/Wv are stored stacked (S x S); head h owns the column block
// [h*S/H, (h+1)*S/H). The divisor defaults to the temporal length of Q when
// scale_dim is left at 0.
class MultiHeadAttention final : public Layer {
 public:
  MultiHeadAttention(std::string name, Eigen::Index model_dim, Eigen::Index heads,
                     Eigen::Index q_rows, double scale_dim = 0.0);

  // Q, K and V as distinct operands. Returns the attended matrix; input
  // gradients come back through the out parameters of backward_qkv.
  Mat forward_qkv(const Mat& q, const Mat& k, const Mat& v);
  void backward_qkv(const Mat& dout, Mat& dq, Mat& dk, Mat& dv);

  // Self-attention (Q = K = V = x); Layer interface.
  Mat forward(const Mat& x) override;
  Mat backward(const Mat& dy) override;

  void init(Rng& rng) override;
  void collect(std::vector<Param*>& out) override;

  Eigen::Index heads() const { return heads_; }
  Eigen::Index head_dim() const { return model_dim_ / heads_; }
  // per-head projection block, shape S x S/H
  Eigen::Block<Mat> head_q(Eigen::Index h) { return head_block(wq_.value, h); }
  Eigen::Block<Mat> head_k(Eigen::Index h) { return head_block(wk_.value, h); }
  Eigen::Block<Mat> head_v(Eigen::Index h) { return head_block(wv_.value, h); }
  Param& output_projection() { return wo_; }
  // post-softmax score matrices from the last forward, one per head
  const std::vector<Mat>& last_scores() const { return scores_; }

 private:
  Eigen::Block<Mat> head_block(Mat& m, Eigen::Index h) {
    return m.block(0, h * head_dim(), m.rows(), head_dim());
  }

  Eigen::Index model_dim_, heads_, q_rows_;
  double scale_dim_;
  Param wq_, wk_, wv_, wo_;

  Mat q_in_, k_in_, v_in_;
  std::vector<Mat> qh_, kh_, vh_, scores_;
  Mat concat_;
};

}  // namespace avsum::nn
