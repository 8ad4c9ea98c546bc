#pragma once

#include <vector>

#include "avsum/nn/layers.hpp"

namespace avsum::nn {

class Adam {
 public:
  explicit Adam(std::vector<Param*> params, double lr, double beta1 = 0.9,
                double beta2 = 0.999, double eps = 1e-8)
      : params_(std::move(params)), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {
    for (Param* p : params_) {
      m_.emplace_back(Mat::Zero(p->value.rows(), p->value.cols()));
      v_.emplace_back(Mat::Zero(p->value.rows(), p->value.cols()));
    }
  }

  void step() {
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1_, t_);
    const double bc2 = 1.0 - std::pow(beta2_, t_);
    for (size_t i = 0; i < params_.size(); ++i) {
      Param& p = *params_[i];
      m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * p.grad;
      v_[i] = beta2_ * v_[i].array().matrix() +
              (1.0 - beta2_) * p.grad.cwiseProduct(p.grad);
      p.value.array() -=
          lr_ * (m_[i].array() / bc1) / ((v_[i].array() / bc2).sqrt() + eps_);
    }
  }

  double lr() const { return lr_; }

 private:
  std::vector<Param*> params_;
  std::vector<Mat> m_, v_;
  double lr_, beta1_, beta2_, eps_;
  int t_ = 0;
};

}  // namespace avsum::nn
