#pragma once

#include <vector>

#include "gliomil/tensor.hpp"

// Differentiable op suite. Free functions; every op validates shapes, checks
// the result for non-finite values, and records a backprop closure when
// tracing is enabled. Broadcasting is limited to scalar operands; the only
// structured exception is add_rowwise, which has its own gradient rule.
namespace gliomil::ag {

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& x);
Tensor reshape(const Tensor& x, Dims dims);

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor add_scalar(const Tensor& x, Scalar c);
Tensor scale(const Tensor& x, Scalar c);

Tensor relu(const Tensor& x);
Tensor leaky_relu(const Tensor& x, Scalar negative_slope);
Tensor sigmoid(const Tensor& x);
Tensor tanh(const Tensor& x);

// Normalizes slices along `axis` (rows: axis=1, columns: axis=0; rank-1
// tensors use axis 0). Max-subtracted for stability; each slice sums to 1.
Tensor softmax(const Tensor& x, int axis = 0);

Tensor sum(const Tensor& x);
Tensor mean(const Tensor& x);
Tensor dot(const Tensor& u, const Tensor& v);

Tensor mse(const Tensor& a, const Tensor& b);

// -log softmax(logits)[target]; logits is rank-1.
Tensor cross_entropy(const Tensor& logits, Eigen::Index target);

// Cosine of two rank-1 tensors; throws DegenerateInputError on zero norms.
Tensor cosine_similarity(const Tensor& u, const Tensor& v);

Tensor slice_cols(const Tensor& x, Eigen::Index start, Eigen::Index n);
Tensor slice_rows(const Tensor& x, Eigen::Index start, Eigen::Index n);
Tensor row(const Tensor& x, Eigen::Index i); // rank-1 copy of one row
Tensor concat_cols(const std::vector<Tensor>& parts);
Tensor concat(const std::vector<Tensor>& parts);     // rank-1 concat
Tensor stack_rows(const std::vector<Tensor>& rows);  // rank-1 rows -> rank-2

// x[N x d] + bias[d] added to every row.
Tensor add_rowwise(const Tensor& x, const Tensor& bias);

// Per-row layer normalization with learnable gain/bias of width d.
Tensor layer_norm(const Tensor& x, const Tensor& gain, const Tensor& bias, Scalar eps = 1e-5);

inline Tensor operator+(const Tensor& a, const Tensor& b) { return add(a, b); }
inline Tensor operator-(const Tensor& a, const Tensor& b) { return sub(a, b); }
inline Tensor operator*(const Tensor& a, const Tensor& b) { return mul(a, b); }
inline Tensor operator*(Scalar c, const Tensor& x) { return scale(x, c); }
inline Tensor operator*(const Tensor& x, Scalar c) { return scale(x, c); }

} // namespace gliomil::ag
