#include "avsum/nn/attention.hpp"

#include <cmath>

namespace avsum::nn {

MultiHeadAttention::MultiHeadAttention(std::string name, Eigen::Index model_dim,
                                       Eigen::Index heads, Eigen::Index q_rows,
                                       double scale_dim)
    : model_dim_(model_dim),
      heads_(heads),
      q_rows_(q_rows),
      scale_dim_(scale_dim),
      wq_(name + "/wq", model_dim, model_dim),
      wk_(name + "/wk", model_dim, model_dim),
      wv_(name + "/wv", model_dim, model_dim),
      wo_(name + "/wo", q_rows, q_rows) {
  require(heads >= 1, "mha: head count must be >= 1");
  require(model_dim % heads == 0, "mha: model dim must be divisible by head count");
}

Mat MultiHeadAttention::forward_qkv(const Mat& q, const Mat& k, const Mat& v) {
  require(q.cols() == model_dim_ && k.cols() == model_dim_ && v.cols() == model_dim_,
          "mha: Q/K/V width mismatch");
  require(k.rows() == v.rows(), "mha: K and V must have the same number of rows");
  require(q.rows() == q_rows_, "mha: Q row count differs from configured output projection");

  q_in_ = q;
  k_in_ = k;
  v_in_ = v;
  const Eigen::Index hd = head_dim();
  const double divisor =
      std::sqrt(scale_dim_ > 0.0 ? scale_dim_ : static_cast<double>(q.rows()));

  qh_.assign(static_cast<size_t>(heads_), Mat());
  kh_.assign(static_cast<size_t>(heads_), Mat());
  vh_.assign(static_cast<size_t>(heads_), Mat());
  scores_.assign(static_cast<size_t>(heads_), Mat());
  concat_.resize(q.rows(), model_dim_);

  for (Eigen::Index h = 0; h < heads_; ++h) {
    auto& qh = qh_[static_cast<size_t>(h)];
    auto& kh = kh_[static_cast<size_t>(h)];
    auto& vh = vh_[static_cast<size_t>(h)];
    qh.noalias() = q * wq_.value.middleCols(h * hd, hd);
    kh.noalias() = k * wk_.value.middleCols(h * hd, hd);
    vh.noalias() = v * wv_.value.middleCols(h * hd, hd);
    scores_[static_cast<size_t>(h)] = softmax_rows((qh * kh.transpose()) / divisor);
    concat_.middleCols(h * hd, hd).noalias() = scores_[static_cast<size_t>(h)] * vh;
  }
  return wo_.value * concat_;
}

void MultiHeadAttention::backward_qkv(const Mat& dout, Mat& dq, Mat& dk, Mat& dv) {
  const Eigen::Index hd = head_dim();
  const double divisor =
      std::sqrt(scale_dim_ > 0.0 ? scale_dim_ : static_cast<double>(q_in_.rows()));

  wo_.grad.noalias() += dout * concat_.transpose();
  const Mat dconcat = wo_.value.transpose() * dout;

  dq = Mat::Zero(q_in_.rows(), model_dim_);
  dk = Mat::Zero(k_in_.rows(), model_dim_);
  dv = Mat::Zero(v_in_.rows(), model_dim_);

  for (Eigen::Index h = 0; h < heads_; ++h) {
    const auto& qh = qh_[static_cast<size_t>(h)];
    const auto& kh = kh_[static_cast<size_t>(h)];
    const auto& vh = vh_[static_cast<size_t>(h)];
    const auto& a = scores_[static_cast<size_t>(h)];
    const Mat dhead = dconcat.middleCols(h * hd, hd);

    const Mat da = dhead * vh.transpose();
    const Mat dvh = a.transpose() * dhead;
    const Mat dlogits = softmax_rows_backward(a, da) / divisor;
    const Mat dqh = dlogits * kh;
    const Mat dkh = dlogits.transpose() * qh;

    wq_.grad.middleCols(h * hd, hd).noalias() += q_in_.transpose() * dqh;
    wk_.grad.middleCols(h * hd, hd).noalias() += k_in_.transpose() * dkh;
    wv_.grad.middleCols(h * hd, hd).noalias() += v_in_.transpose() * dvh;
    dq.noalias() += dqh * wq_.value.middleCols(h * hd, hd).transpose();
    dk.noalias() += dkh * wk_.value.middleCols(h * hd, hd).transpose();
    dv.noalias() += dvh * wv_.value.middleCols(h * hd, hd).transpose();
  }
}

Mat MultiHeadAttention::forward(const Mat& x) { return forward_qkv(x, x, x); }

Mat MultiHeadAttention::backward(const Mat& dy) {
  Mat dq, dk, dv;
  backward_qkv(dy, dq, dk, dv);
  return dq + dk + dv;
}

void MultiHeadAttention::init(Rng& rng) {
  init_fan_in_uniform(rng, wq_.value, model_dim_);
  init_fan_in_uniform(rng, wk_.value, model_dim_);
  init_fan_in_uniform(rng, wv_.value, model_dim_);
  init_fan_in_uniform(rng, wo_.value, q_rows_);
}

void MultiHeadAttention::collect(std::vector<Param*>& out) {
  for (Param* p : {&wq_, &wk_, &wv_, &wo_}) out.push_back(p);
}

}  // namespace avsum::nn
