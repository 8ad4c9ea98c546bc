#include "avsum/nn/layers.hpp"

#include <algorithm>
#include <cmath>

namespace avsum::nn {

void init_fan_in_uniform(Rng& rng, Mat& m, Eigen::Index fan_in) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(std::max<Eigen::Index>(fan_in, 1)));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.uniform(-bound, bound);
}

void init_scaled_normal(Rng& rng, Mat& m, double scale) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = scale * rng.normal();
}

void zero_grads(const std::vector<Param*>& params) {
  for (Param* p : params) p->grad.setZero();
}

// ---------------------------------------------------------------------------
// Conv1d

Conv1d::Conv1d(std::string name, Eigen::Index in, Eigen::Index out, Eigen::Index kernel)
    : in_(in),
      out_(out),
      kernel_(kernel),
      w_(name + "/w", kernel * in, out),
      b_(name + "/b", 1, out) {
  require(in >= 1 && out >= 1, "conv1d: channel counts must be >= 1");
  require(kernel >= 1 && kernel % 2 == 1, "conv1d: kernel must be odd");
}

Mat Conv1d::forward(const Mat& x) {
  require(x.cols() == in_, "conv1d: input channel mismatch");
  const Eigen::Index t = x.rows();
  const Eigen::Index pad = (kernel_ - 1) / 2;
  require(kernel_ <= t + 2 * pad, "conv1d: kernel larger than padded input");
  x_ = x;

  Mat y = b_.value.replicate(t, 1);
  for (Eigen::Index r = 0; r < kernel_; ++r) {
    const Eigen::Index s = r - pad;
    const Eigen::Index ys = std::max<Eigen::Index>(0, -s);
    const Eigen::Index xs = std::max<Eigen::Index>(0, s);
    const Eigen::Index len = std::min(t, t - s) - ys;
    if (len <= 0) continue;
    y.middleRows(ys, len).noalias() += x.middleRows(xs, len) * w_.value.middleRows(r * in_, in_);
  }
  return y;
}

Mat Conv1d::backward(const Mat& dy) {
  const Eigen::Index t = x_.rows();
  const Eigen::Index pad = (kernel_ - 1) / 2;
  Mat dx = Mat::Zero(t, in_);
  for (Eigen::Index r = 0; r < kernel_; ++r) {
    const Eigen::Index s = r - pad;
    const Eigen::Index ys = std::max<Eigen::Index>(0, -s);
    const Eigen::Index xs = std::max<Eigen::Index>(0, s);
    const Eigen::Index len = std::min(t, t - s) - ys;
    if (len <= 0) continue;
    dx.middleRows(xs, len).noalias() +=
        dy.middleRows(ys, len) * w_.value.middleRows(r * in_, in_).transpose();
    w_.grad.middleRows(r * in_, in_).noalias() +=
        x_.middleRows(xs, len).transpose() * dy.middleRows(ys, len);
  }
  b_.grad.noalias() += dy.colwise().sum();
  return dx;
}

void Conv1d::init(Rng& rng) {
  init_fan_in_uniform(rng, w_.value, kernel_ * in_);
  b_.value.setZero();
}

void Conv1d::collect(std::vector<Param*>& out) {
  out.push_back(&w_);
  out.push_back(&b_);
}

// ---------------------------------------------------------------------------
// Deconv1d

Deconv1d::Deconv1d(std::string name, Eigen::Index in, Eigen::Index out, Eigen::Index factor)
    : in_(in),
      out_(out),
      factor_(factor),
      w_(name + "/w", factor * in, out),
      b_(name + "/b", 1, out) {
  require(factor >= 1, "deconv1d: factor must be >= 1");
}

Mat Deconv1d::forward(const Mat& x) {
  require(x.cols() == in_, "deconv1d: input channel mismatch");
  x_ = x;
  const Eigen::Index t = x.rows();
  Mat y(t * factor_, out_);
  for (Eigen::Index r = 0; r < factor_; ++r) {
    const Mat phase = x * w_.value.middleRows(r * in_, in_);
    for (Eigen::Index i = 0; i < t; ++i) y.row(i * factor_ + r) = phase.row(i) + b_.value;
  }
  return y;
}

Mat Deconv1d::backward(const Mat& dy) {
  const Eigen::Index t = x_.rows();
  Mat dx = Mat::Zero(t, in_);
  Mat phase(t, out_);
  for (Eigen::Index r = 0; r < factor_; ++r) {
    for (Eigen::Index i = 0; i < t; ++i) phase.row(i) = dy.row(i * factor_ + r);
    dx.noalias() += phase * w_.value.middleRows(r * in_, in_).transpose();
    w_.grad.middleRows(r * in_, in_).noalias() += x_.transpose() * phase;
  }
  b_.grad.noalias() += dy.colwise().sum();
  return dx;
}

void Deconv1d::init(Rng& rng) {
  init_fan_in_uniform(rng, w_.value, in_);
  b_.value.setZero();
}

void Deconv1d::collect(std::vector<Param*>& out) {
  out.push_back(&w_);
  out.push_back(&b_);
}

// ---------------------------------------------------------------------------
// MaxPoolTime

MaxPoolTime::MaxPoolTime(Eigen::Index factor) : factor_(factor) {
  require(factor >= 1, "maxpool: factor must be >= 1");
}

Mat MaxPoolTime::forward(const Mat& x) {
  require(x.rows() % factor_ == 0, "maxpool: time length not divisible by pooling factor");
  in_rows_ = x.rows();
  const Eigen::Index t_out = x.rows() / factor_;
  Mat y(t_out, x.cols());
  argmax_.resize(t_out, x.cols());
  for (Eigen::Index o = 0; o < t_out; ++o) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      Eigen::Index best = o * factor_;
      double best_v = x(best, c);
      for (Eigen::Index k = 1; k < factor_; ++k) {
        const double v = x(o * factor_ + k, c);
        if (v > best_v) {
          best_v = v;
          best = o * factor_ + k;
        }
      }
      y(o, c) = best_v;
      argmax_(o, c) = best;
    }
  }
  return y;
}

Mat MaxPoolTime::backward(const Mat& dy) {
  Mat dx = Mat::Zero(in_rows_, dy.cols());
  for (Eigen::Index o = 0; o < dy.rows(); ++o)
    for (Eigen::Index c = 0; c < dy.cols(); ++c) dx(argmax_(o, c), c) += dy(o, c);
  return dx;
}

// ---------------------------------------------------------------------------
// Relu

Mat Relu::forward(const Mat& x) {
  x_ = x;
  return x.cwiseMax(0.0);
}

Mat Relu::backward(const Mat& dy) {
  return (x_.array() > 0.0).cast<double>().matrix().cwiseProduct(dy);
}

// ---------------------------------------------------------------------------
// Dense

Dense::Dense(std::string name, Eigen::Index in, Eigen::Index out)
    : in_(in), out_(out), w_(name + "/w", in, out), b_(name + "/b", 1, out) {}

Mat Dense::forward(const Mat& x) {
  require(x.cols() == in_, "dense: input width mismatch");
  x_ = x;
  Mat y = x * w_.value;
  y.rowwise() += b_.value.row(0);
  return y;
}

Mat Dense::backward(const Mat& dy) {
  w_.grad.noalias() += x_.transpose() * dy;
  b_.grad.noalias() += dy.colwise().sum();
  return dy * w_.value.transpose();
}

void Dense::init(Rng& rng) {
  init_fan_in_uniform(rng, w_.value, in_);
  b_.value.setZero();
}

void Dense::collect(std::vector<Param*>& out) {
  out.push_back(&w_);
  out.push_back(&b_);
}

// ---------------------------------------------------------------------------
// Softmax

Mat softmax_rows(const Mat& x) {
  Mat y(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double m = x.row(i).maxCoeff();
    Eigen::RowVectorXd e = (x.row(i).array() - m).exp();
    y.row(i) = e / e.sum();
  }
  return y;
}

Mat softmax_rows_backward(const Mat& y, const Mat& dy) {
  Mat dx(y.rows(), y.cols());
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    const double dot = y.row(i).dot(dy.row(i));
    dx.row(i) = y.row(i).cwiseProduct(dy.row(i).array() - dot);
  }
  return dx;
}

Mat SoftmaxRows::forward(const Mat& x) {
  y_ = softmax_rows(x);
  return y_;
}

Mat SoftmaxRows::backward(const Mat& dy) { return softmax_rows_backward(y_, dy); }

// ---------------------------------------------------------------------------
// Gru

namespace {
inline Eigen::RowVectorXd sigmoid(const Eigen::RowVectorXd& x) {
  return (1.0 / (1.0 + (-x.array()).exp())).matrix();
}
}  // namespace

Gru::Gru(std::string name, Eigen::Index in, Eigen::Index hidden)
    : in_(in),
      hidden_(hidden),
      wz_(name + "/wz", in, hidden),
      wr_(name + "/wr", in, hidden),
      wn_(name + "/wn", in, hidden),
      uz_(name + "/uz", hidden, hidden),
      ur_(name + "/ur", hidden, hidden),
      un_(name + "/un", hidden, hidden),
      bz_(name + "/bz", 1, hidden),
      br_(name + "/br", 1, hidden),
      bn_(name + "/bn", 1, hidden) {}

Mat Gru::forward(const Mat& x) {
  require(x.cols() == in_, "gru: input width mismatch");
  const Eigen::Index t = x.rows();
  Mat outputs(t, hidden_);
  steps_.clear();
  steps_.resize(static_cast<size_t>(t));

  Eigen::RowVectorXd h = Eigen::RowVectorXd::Zero(hidden_);
  for (Eigen::Index i = 0; i < t; ++i) {
    auto& s = steps_[static_cast<size_t>(i)];
    s.x = x.row(i);
    s.h_prev = h;
    s.z = sigmoid(s.x * wz_.value + h * uz_.value + bz_.value.row(0));
    s.r = sigmoid(s.x * wr_.value + h * ur_.value + br_.value.row(0));
    s.hun = h * un_.value;
    s.n = (s.x * wn_.value + s.r.cwiseProduct(s.hun) + bn_.value.row(0)).array().tanh();
    h = (1.0 - s.z.array()) * s.n.array() + s.z.array() * s.h_prev.array();
    outputs.row(i) = h;
  }
  return outputs;
}

Mat Gru::backward(const Mat& dy) {
  const auto t = static_cast<Eigen::Index>(steps_.size());
  Mat dx = Mat::Zero(t, in_);
  Eigen::RowVectorXd dh = Eigen::RowVectorXd::Zero(hidden_);

  for (Eigen::Index i = t - 1; i >= 0; --i) {
    const auto& s = steps_[static_cast<size_t>(i)];
    dh += dy.row(i);

    const Eigen::RowVectorXd dn = dh.cwiseProduct((1.0 - s.z.array()).matrix());
    const Eigen::RowVectorXd dz = dh.cwiseProduct(s.h_prev - s.n);
    Eigen::RowVectorXd dh_prev = dh.cwiseProduct(s.z);

    const Eigen::RowVectorXd dpre_n =
        dn.array() * (1.0 - s.n.array().square());
    const Eigen::RowVectorXd dr = dpre_n.cwiseProduct(s.hun);
    const Eigen::RowVectorXd dhun = dpre_n.cwiseProduct(s.r);
    const Eigen::RowVectorXd dpre_r = dr.array() * s.r.array() * (1.0 - s.r.array());
    const Eigen::RowVectorXd dpre_z = dz.array() * s.z.array() * (1.0 - s.z.array());

    wn_.grad.noalias() += s.x.transpose() * dpre_n;
    un_.grad.noalias() += s.h_prev.transpose() * dhun;
    bn_.grad.row(0) += dpre_n;
    wr_.grad.noalias() += s.x.transpose() * dpre_r;
    ur_.grad.noalias() += s.h_prev.transpose() * dpre_r;
    br_.grad.row(0) += dpre_r;
    wz_.grad.noalias() += s.x.transpose() * dpre_z;
    uz_.grad.noalias() += s.h_prev.transpose() * dpre_z;
    bz_.grad.row(0) += dpre_z;

    dx.row(i) = dpre_n * wn_.value.transpose() + dpre_r * wr_.value.transpose() +
                dpre_z * wz_.value.transpose();
    dh_prev += dhun * un_.value.transpose() + dpre_r * ur_.value.transpose() +
               dpre_z * uz_.value.transpose();
    dh = dh_prev;
  }
  return dx;
}

void Gru::init(Rng& rng) {
  init_fan_in_uniform(rng, wz_.value, in_);
  init_fan_in_uniform(rng, wr_.value, in_);
  init_fan_in_uniform(rng, wn_.value, in_);
  const double scale = 1.0 / std::sqrt(static_cast<double>(hidden_));
  init_scaled_normal(rng, uz_.value, scale);
  init_scaled_normal(rng, ur_.value, scale);
  init_scaled_normal(rng, un_.value, scale);
  bz_.value.setZero();
  br_.value.setZero();
  bn_.value.setZero();
}

void Gru::collect(std::vector<Param*>& out) {
  for (Param* p : {&wz_, &wr_, &wn_, &uz_, &ur_, &un_, &bz_, &br_, &bn_}) out.push_back(p);
}

// ---------------------------------------------------------------------------
// Sequential

Mat Sequential::forward(const Mat& x) {
  Mat y = x;
  for (auto& layer : layers_) y = layer->forward(y);
  return y;
}

Mat Sequential::backward(const Mat& dy) {
  Mat d = dy;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) d = (*it)->backward(d);
  return d;
}

void Sequential::init(Rng& rng) {
  for (auto& layer : layers_) layer->init(rng);
}

void Sequential::collect(std::vector<Param*>& out) {
  for (auto& layer : layers_) layer->collect(out);
}

}  // namespace avsum::nn
