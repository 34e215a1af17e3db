// Copyright 2026 The newsrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "newsrec/numerics.h"

#include <cmath>
#include <vector>

#include "newsrec/errors.h"

namespace newsrec {
namespace num {
namespace {

[[noreturn]] void Mismatch(const char* op, const std::string& a,
                           const std::string& b) {
  throw DimensionError(std::string(op) + ": incompatible shapes " + a +
                       " and " + b);
}

}  // namespace

std::string Shape(const Matrix& m) {
  return "[" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + "]";
}

std::string Shape(const Vector& v) {
  return "[" + std::to_string(v.size()) + "]";
}

Vector MatVec(const Matrix& m, const Vector& x) {
  if (m.cols() != x.size()) Mismatch("matvec", Shape(m), Shape(x));
  return m * x;
}

Matrix MatMul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) Mismatch("matmul", Shape(a), Shape(b));
  return a * b;
}

Matrix Outer(const Vector& a, const Vector& b) { return a * b.transpose(); }

Vector Concat(const Vector& a, const Vector& b) {
  Vector out(a.size() + b.size());
  out << a, b;
  return out;
}

double Dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) Mismatch("dot", Shape(a), Shape(b));
  return a.dot(b);
}

Vector Softmax(const Vector& x) {
  if (x.size() == 0) throw EmptyInputError("softmax of an empty vector");
  const Vector e = (x.array() - x.maxCoeff()).exp();
  return e / e.sum();
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Vector Sigmoid(const Vector& x) { return x.unaryExpr([](double v) { return Sigmoid(v); }); }

Vector Tanh(const Vector& x) { return x.array().tanh(); }

Vector Relu(const Vector& x) { return x.cwiseMax(0.0); }

double Softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

MatVecGrad MatVecBackward(const Matrix& m, const Vector& x, const Vector& dy) {
  if (m.cols() != x.size()) Mismatch("matvec_backward", Shape(m), Shape(x));
  if (m.rows() != dy.size()) Mismatch("matvec_backward", Shape(m), Shape(dy));
  return {dy * x.transpose(), m.transpose() * dy};
}

MatMulGrad MatMulBackward(const Matrix& a, const Matrix& b, const Matrix& dy) {
  if (a.cols() != b.rows()) Mismatch("matmul_backward", Shape(a), Shape(b));
  if (dy.rows() != a.rows() || dy.cols() != b.cols()) {
    Mismatch("matmul_backward", Shape(dy),
             "[" + std::to_string(a.rows()) + "x" + std::to_string(b.cols()) + "]");
  }
  return {dy * b.transpose(), a.transpose() * dy};
}

std::pair<Vector, Vector> OuterBackward(const Vector& a, const Vector& b,
                                        const Matrix& dy) {
  if (dy.rows() != a.size() || dy.cols() != b.size()) {
    Mismatch("outer_backward", Shape(dy),
             "[" + std::to_string(a.size()) + "x" + std::to_string(b.size()) + "]");
  }
  return {dy * b, dy.transpose() * a};
}

std::pair<Vector, Vector> ConcatBackward(const Vector& dy, Eigen::Index first) {
  if (first < 0 || first > dy.size()) {
    Mismatch("concat_backward", Shape(dy), "split at " + std::to_string(first));
  }
  return {dy.head(first), dy.tail(dy.size() - first)};
}

Vector SoftmaxBackward(const Vector& y, const Vector& dy) {
  if (y.size() != dy.size()) Mismatch("softmax_backward", Shape(y), Shape(dy));
  return (y.array() * (dy.array() - y.dot(dy))).matrix();
}

Vector SigmoidBackward(const Vector& y, const Vector& dy) {
  if (y.size() != dy.size()) Mismatch("sigmoid_backward", Shape(y), Shape(dy));
  return (dy.array() * y.array() * (1.0 - y.array())).matrix();
}

Vector TanhBackward(const Vector& y, const Vector& dy) {
  if (y.size() != dy.size()) Mismatch("tanh_backward", Shape(y), Shape(dy));
  return (dy.array() * (1.0 - y.array().square())).matrix();
}

Vector ReluBackward(const Vector& x, const Vector& dy) {
  if (x.size() != dy.size()) Mismatch("relu_backward", Shape(x), Shape(dy));
  return (x.array() > 0.0).select(dy, 0.0);
}

}  // namespace num

std::string_view ActivationName(Activation a) {
  return a == Activation::kRelu ? "relu" : "tanh";
}

Activation ParseActivation(std::string_view name, const std::string& field) {
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  throw ConfigError(field, "expected relu|tanh, got '" + std::string(name) + "'");
}

Vector Activate(Activation a, const Vector& z) {
  return a == Activation::kRelu ? num::Relu(z) : num::Tanh(z);
}

Vector ActivateBackward(Activation a, const Vector& z, const Vector& y,
                        const Vector& dy) {
  return a == Activation::kRelu ? num::ReluBackward(z, dy)
                                : num::TanhBackward(y, dy);
}

Matrix GlorotUniform(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Matrix m(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      m(r, c) = (2.0 * UniformUnit(rng) - 1.0) * limit;
    }
  }
  return m;
}

GradCheckResult FiniteDiffCheck(const ValueAndGradient& f,
                                std::span<const double> x, double h) {
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> analytic(point.size(), 0.0);
  f(point, analytic);

  GradCheckResult result;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double saved = point[i];
    point[i] = saved + h;
    const double plus = f(point, {});
    point[i] = saved - h;
    const double minus = f(point, {});
    point[i] = saved;
    const double numeric = (plus - minus) / (2.0 * h);
    const double err = std::abs(analytic[i] - numeric) /
                       std::max(1e-8, std::abs(analytic[i]) + std::abs(numeric));
    if (i == 0 || err > result.max_rel_error) {
      result = {err, i, analytic[i], numeric};
    }
  }
  return result;
}

}  // namespace newsrec
