#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <vector>

#include "gliomil/errors.hpp"

namespace gliomil::ag {

using Scalar = double;
using Array = Eigen::ArrayXd;
using MatrixRM = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<MatrixRM>;
using ConstMatMap = Eigen::Map<const MatrixRM>;
using VecMap = Eigen::Map<Eigen::VectorXd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;
using Dims = std::vector<Eigen::Index>;

// Whether ops currently record the trace needed for backward().
bool grad_enabled();

// RAII scope that disables trace recording, for evaluation passes.
class NoGradGuard {
public:
    NoGradGuard();
    ~NoGradGuard();
    NoGradGuard(const NoGradGuard&) = delete;
    NoGradGuard& operator=(const NoGradGuard&) = delete;
};

struct Node;
using NodePtr = std::shared_ptr<Node>;

// One recorded value in the dynamic trace. Interior nodes carry a backprop
// closure that scatters this node's gradient into its parents; leaves do not.
struct Node {
    Dims dims;
    Array value;
    Array grad; // empty until a backward pass touches this node
    bool requires_grad = false;
    std::vector<NodePtr> parents;
    std::function<void(Node&)> backprop;

    void accumulate(const Array& g);
    bool has_grad() const { return grad.size() > 0 && grad.size() == value.size(); }
};

// Value-semantic handle to a trace node. All data is 64-bit, row-major.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(NodePtr n) : node_(std::move(n)) {}

    static Tensor zeros(Dims dims, bool requires_grad = false);
    static Tensor full(Dims dims, Scalar v, bool requires_grad = false);
    static Tensor scalar(Scalar v, bool requires_grad = false);
    static Tensor from_data(Dims dims, Array data, bool requires_grad = false);
    static Tensor from_vector(const Eigen::VectorXd& v, bool requires_grad = false);
    static Tensor from_matrix(const Eigen::Ref<const MatrixRM>& m, bool requires_grad = false);

    bool defined() const { return node_ != nullptr; }
    const Dims& shape() const { return node_->dims; }
    int rank() const { return static_cast<int>(node_->dims.size()); }
    Eigen::Index numel() const { return node_->value.size(); }
    Eigen::Index rows() const;
    Eigen::Index cols() const;

    bool requires_grad() const { return node_->requires_grad; }
    void set_requires_grad(bool b) { node_->requires_grad = b; }

    const Array& values() const { return node_->value; }
    // Mutable access for optimizer updates on leaf parameters. Must not be
    // used while a recorded trace still references this node.
    Array& values_mut() { return node_->value; }

    bool has_grad() const { return node_->has_grad(); }
    const Array& grad() const;
    void zero_grad();

    Scalar item() const;

    ConstMatMap mat() const; // rank-2 view
    ConstVecMap vec() const; // rank-1 view

    const NodePtr& node() const { return node_; }

private:
    explicit Tensor(NodePtr n) : node_(std::move(n)) {}
    NodePtr node_;

    friend Tensor make_op(Dims dims, Array value, std::vector<Tensor> parents,
                          std::function<void(Node&)> backprop);
};

inline Eigen::Index numel_of(const Dims& d) {
    Eigen::Index n = 1;
    for (auto v : d) n *= v;
    return n;
}

// Records an op result. Parents and the backprop closure are dropped when
// tracing is off or no parent requires a gradient. Throws NumericError if
// the value contains NaN/Inf.
Tensor make_op(Dims dims, Array value, std::vector<Tensor> parents,
               std::function<void(Node&)> backprop);

// Reverse-mode sweep from a scalar loss. Visits the recorded trace once in
// reverse topological order, accumulates gradients into every reachable
// requires_grad leaf, and returns those leaves. The trace is consumed.
std::vector<Tensor> backward(const Tensor& loss);

} // namespace gliomil::ag
