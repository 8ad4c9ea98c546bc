#pragma once

#include <memory>
#include <string>
#include <vector>

#include "avsum/common.hpp"
#include "avsum/rng.hpp"

namespace avsum::nn {

// One trainable tensor. Gradients accumulate until zero_grad().
struct Param {
  std::string name;
  Mat value;
  Mat grad;

  Param(std::string n, Eigen::Index rows, Eigen::Index cols)
      : name(std::move(n)), value(Mat::Zero(rows, cols)), grad(Mat::Zero(rows, cols)) {}
};

// fan-in scaled uniform, U(-1/sqrt(fan), 1/sqrt(fan))
void init_fan_in_uniform(Rng& rng, Mat& m, Eigen::Index fan_in);
// N(0, scale^2), used for recurrent matrices
void init_scaled_normal(Rng& rng, Mat& m, double scale);

// Layers operate on frame-major matrices (time x channels). forward()
// caches whatever backward() needs; backward() returns the input gradient
// and accumulates parameter gradients.
class Layer {
 public:
  virtual ~Layer() = default;
  virtual Mat forward(const Mat& x) = 0;
  virtual Mat backward(const Mat& dy) = 0;
  virtual void init(Rng& rng) {}
  virtual void collect(std::vector<Param*>& out) {}
};

// Temporal convolution, stride 1, zero-padded so output length equals input
// length. Kernel size must be odd. Weight block r (rows [r*in, (r+1)*in))
// is the projection applied at tap offset r - (k-1)/2.
class Conv1d final : public Layer {
 public:
  Conv1d(std::string name, Eigen::Index in, Eigen::Index out, Eigen::Index kernel);

  Mat forward(const Mat& x) override;
  Mat backward(const Mat& dy) override;
  void init(Rng& rng) override;
  void collect(std::vector<Param*>& out) override;

  Param& weight() { return w_; }
  Param& bias() { return b_; }

 private:
  Eigen::Index in_, out_, kernel_;
  Param w_, b_;
  Mat x_;
};

// Temporal upsampling by an integer factor: output frame t*factor + r is
// x.row(t) * W_r + b. This is the adjoint of a stride-`factor` convolution
// with kernel size `factor` and the same weights.
class Deconv1d final : public Layer {
 public:
  Deconv1d(std::string name, Eigen::Index in, Eigen::Index out, Eigen::Index factor);

  Mat forward(const Mat& x) override;
  Mat backward(const Mat& dy) override;
  void init(Rng& rng) override;
  void collect(std::vector<Param*>& out) override;

  Param& weight() { return w_; }
  Param& bias() { return b_; }

 private:
  Eigen::Index in_, out_, factor_;
  Param w_, b_;
  Mat x_;
};

// Non-overlapping temporal max pooling; time must divide evenly. Ties route
// the subgradient to the first index in the window.
class MaxPoolTime final : public Layer {
 public:
  explicit MaxPoolTime(Eigen::Index factor);

  Mat forward(const Mat& x) override;
  Mat backward(const Mat& dy) override;

 private:
  Eigen::Index factor_;
  Eigen::Index in_rows_ = 0;
  Eigen::MatrixX<Eigen::Index> argmax_;
};

class Relu final : public Layer {
 public:
  Mat forward(const Mat& x) override;
  Mat backward(const Mat& dy) override;

 private:
  Mat x_;
};

class Dense final : public Layer {
 public:
  Dense(std::string name, Eigen::Index in, Eigen::Index out);

  Mat forward(const Mat& x) override;
  Mat backward(const Mat& dy) override;
  void init(Rng& rng) override;
  void collect(std::vector<Param*>& out) override;

  Param& weight() { return w_; }
  Param& bias() { return b_; }

 private:
  Eigen::Index in_, out_;
  Param w_, b_;
  Mat x_;
};

// Row-wise softmax.
class SoftmaxRows final : public Layer {
 public:
  Mat forward(const Mat& x) override;
  Mat backward(const Mat& dy) override;

 private:
  Mat y_;
};

Mat softmax_rows(const Mat& x);
// dL/dx given the softmax output y and dL/dy
Mat softmax_rows_backward(const Mat& y, const Mat& dy);

// Single-direction GRU over the time axis, zero initial state:
//   z_t = sigmoid(x_t Wz + h_{t-1} Uz + bz)
//   r_t = sigmoid(x_t Wr + h_{t-1} Ur + br)
//   n_t = tanh(x_t Wn + r_t .* (h_{t-1} Un) + bn)
//   h_t = (1 - z_t) .* n_t + z_t .* h_{t-1}
// forward() returns all hidden states (time x hidden); the final state is
// the last row.
class Gru final : public Layer {
 public:
  Gru(std::string name, Eigen::Index in, Eigen::Index hidden);

  Mat forward(const Mat& x) override;
  Mat backward(const Mat& dy) override;
  void init(Rng& rng) override;
  void collect(std::vector<Param*>& out) override;

  Eigen::Index hidden() const { return hidden_; }

 private:
  Eigen::Index in_, hidden_;
  Param wz_, wr_, wn_, uz_, ur_, un_, bz_, br_, bn_;
  struct StepCache {
    Eigen::RowVectorXd x, h_prev, z, r, n, hun;
  };
  std::vector<StepCache> steps_;
};

// Layers applied strictly in order.
class Sequential final : public Layer {
 public:
  Sequential() = default;

  template <typename L, typename... Args>
  L* emplace(Args&&... args) {
    auto layer = std::make_unique<L>(std::forward<Args>(args)...);
    L* raw = layer.get();
    layers_.push_back(std::move(layer));
    return raw;
  }

  Mat forward(const Mat& x) override;
  Mat backward(const Mat& dy) override;
  void init(Rng& rng) override;
  void collect(std::vector<Param*>& out) override;

 private:
  std::vector<std::unique_ptr<Layer>> layers_;
};

void zero_grads(const std::vector<Param*>& params);

}  // namespace avsum::nn
