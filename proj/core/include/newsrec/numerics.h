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

#ifndef NEWSREC_NUMERICS_H_
#define NEWSREC_NUMERICS_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "newsrec/random.h"

namespace newsrec {

// All training math runs in double precision.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

namespace num {

std::string Shape(const Matrix& m);
std::string Shape(const Vector& v);

// Forward ops. Every op validates shapes and throws DimensionError naming
// both operand shapes.
Vector MatVec(const Matrix& m, const Vector& x);
Matrix MatMul(const Matrix& a, const Matrix& b);
Matrix Outer(const Vector& a, const Vector& b);
Vector Concat(const Vector& a, const Vector& b);
double Dot(const Vector& a, const Vector& b);

// Max-subtracted, so large equal inputs do not overflow.
Vector Softmax(const Vector& x);
double Sigmoid(double x);
Vector Sigmoid(const Vector& x);
Vector Tanh(const Vector& x);
Vector Relu(const Vector& x);
// log(1 + e^x) without overflow.
double Softplus(double x);

// Backward ops: given the upstream gradient `dy` of y = op(...), return the
// gradients of the inputs.
struct MatVecGrad {
  Matrix dm;
  Vector dx;
};
MatVecGrad MatVecBackward(const Matrix& m, const Vector& x, const Vector& dy);

struct MatMulGrad {
  Matrix da;
  Matrix db;
};
MatMulGrad MatMulBackward(const Matrix& a, const Matrix& b, const Matrix& dy);

std::pair<Vector, Vector> OuterBackward(const Vector& a, const Vector& b,
                                        const Matrix& dy);
std::pair<Vector, Vector> ConcatBackward(const Vector& dy, Eigen::Index first);

// These take the forward output y (softmax, sigmoid, tanh) or input x (relu).
Vector SoftmaxBackward(const Vector& y, const Vector& dy);
Vector SigmoidBackward(const Vector& y, const Vector& dy);
Vector TanhBackward(const Vector& y, const Vector& dy);
Vector ReluBackward(const Vector& x, const Vector& dy);

}  // namespace num

enum class Activation { kRelu, kTanh };

std::string_view ActivationName(Activation a);
Activation ParseActivation(std::string_view name, const std::string& field);

Vector Activate(Activation a, const Vector& z);
// Gradient through the activation, given its input z and output y = a(z).
Vector ActivateBackward(Activation a, const Vector& z, const Vector& y,
                        const Vector& dy);

// Uniform in +-sqrt(6 / (fan_in + fan_out)); fan_in = cols, fan_out = rows.
Matrix GlorotUniform(Eigen::Index rows, Eigen::Index cols, Rng& rng);

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t worst_index = 0;
  double analytic = 0.0;  // at worst_index
  double numeric = 0.0;
};

// Objective with an optional gradient: fills `grad` (same size as x) when it
// is non-empty, and always returns the value.
using ValueAndGradient =
    std::function<double(std::span<const double> x, std::span<double> grad)>;

// Central differences (f(x+h e_i) - f(x-h e_i)) / 2h against the analytic
// gradient, coordinate by coordinate. The per-coordinate error is
// |a - n| / max(1e-8, |a| + |n|).
GradCheckResult FiniteDiffCheck(const ValueAndGradient& f,
                                std::span<const double> x, double h = 1e-4);

}  // namespace newsrec

#endif  // NEWSREC_NUMERICS_H_
