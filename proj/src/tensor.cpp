#include "gliomil/tensor.hpp"

#include <unordered_set>
#include <utility>

namespace gliomil::ag {

namespace {
thread_local int g_no_grad_depth = 0;
}

bool grad_enabled() { return g_no_grad_depth == 0; }

NoGradGuard::NoGradGuard() { ++g_no_grad_depth; }
NoGradGuard::~NoGradGuard() { --g_no_grad_depth; }

void Node::accumulate(const Array& g) {
    if (grad.size() != value.size()) grad = Array::Zero(value.size());
    grad += g;
}

Tensor Tensor::zeros(Dims dims, bool requires_grad) {
    return from_data(std::move(dims), Array(), requires_grad);
}

Tensor Tensor::full(Dims dims, Scalar v, bool requires_grad) {
    Array a = Array::Constant(numel_of(dims), v);
    return from_data(std::move(dims), std::move(a), requires_grad);
}

Tensor Tensor::scalar(Scalar v, bool requires_grad) {
    return from_data({}, Array::Constant(1, v), requires_grad);
}

Tensor Tensor::from_data(Dims dims, Array data, bool requires_grad) {
    const Eigen::Index n = numel_of(dims);
    if (data.size() == 0) data = Array::Zero(n);
    if (data.size() != n) throw ContractError("Tensor: data length does not match shape");
    auto node = std::make_shared<Node>();
    node->dims = std::move(dims);
    node->value = std::move(data);
    node->requires_grad = requires_grad;
    return Tensor(std::move(node));
}

Tensor Tensor::from_vector(const Eigen::VectorXd& v, bool requires_grad) {
    return from_data({v.size()}, v.array(), requires_grad);
}

Tensor Tensor::from_matrix(const Eigen::Ref<const MatrixRM>& m, bool requires_grad) {
    MatrixRM copy = m;
    Array flat = Eigen::Map<const Array>(copy.data(), copy.size());
    return from_data({m.rows(), m.cols()}, std::move(flat), requires_grad);
}

Eigen::Index Tensor::rows() const {
    if (rank() != 2) throw ContractError("Tensor::rows: rank-2 tensor required");
    return node_->dims[0];
}

Eigen::Index Tensor::cols() const {
    if (rank() != 2) throw ContractError("Tensor::cols: rank-2 tensor required");
    return node_->dims[1];
}

const Array& Tensor::grad() const {
    if (!node_->has_grad()) throw ContractError("Tensor::grad: no gradient; run backward() first");
    return node_->grad;
}

void Tensor::zero_grad() { node_->grad.resize(0); }

Scalar Tensor::item() const {
    if (numel() != 1) throw ContractError("Tensor::item: tensor is not scalar");
    return node_->value[0];
}

ConstMatMap Tensor::mat() const {
    if (rank() != 2) throw ContractError("Tensor::mat: rank-2 tensor required");
    return ConstMatMap(node_->value.data(), node_->dims[0], node_->dims[1]);
}

ConstVecMap Tensor::vec() const {
    if (rank() != 1) throw ContractError("Tensor::vec: rank-1 tensor required");
    return ConstVecMap(node_->value.data(), node_->dims[0]);
}

Tensor make_op(Dims dims, Array value, std::vector<Tensor> parents,
               std::function<void(Node&)> backprop) {
    if (value.size() != numel_of(dims)) throw ContractError("make_op: value length does not match shape");
    if (!value.isFinite().all()) throw NumericError("op produced a non-finite value");
    auto node = std::make_shared<Node>();
    node->dims = std::move(dims);
    node->value = std::move(value);
    bool track = false;
    if (grad_enabled()) {
        for (const auto& p : parents)
            if (p.node()->requires_grad) track = true;
    }
    if (track) {
        node->requires_grad = true;
        node->parents.reserve(parents.size());
        for (auto& p : parents) node->parents.push_back(p.node());
        node->backprop = std::move(backprop);
    }
    return Tensor(std::move(node));
}

std::vector<Tensor> backward(const Tensor& loss) {
    if (!loss.defined() || loss.numel() != 1)
        throw ContractError("backward: loss must be a defined scalar tensor");

    // Leaf-only loss (constant or bare parameter): no trace to walk.
    Node* root = loss.node().get();
    if (!root->backprop && !root->requires_grad) return {};

    // Iterative post-order DFS for the topological order.
    std::vector<NodePtr> topo;
    std::unordered_set<Node*> visited;
    std::vector<std::pair<NodePtr, std::size_t>> stack;
    stack.emplace_back(loss.node(), 0);
    visited.insert(root);
    while (!stack.empty()) {
        auto& [node, next_child] = stack.back();
        if (next_child < node->parents.size()) {
            NodePtr child = node->parents[next_child++];
            if (visited.insert(child.get()).second) stack.emplace_back(std::move(child), 0);
        } else {
            topo.push_back(node);
            stack.pop_back();
        }
    }

    for (const auto& n : topo) n->grad.resize(0);
    root->accumulate(Array::Constant(1, 1.0));

    std::vector<Tensor> leaves;
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        Node& n = **it;
        if (n.backprop && n.has_grad()) n.backprop(n);
    }
    for (const auto& n : topo) {
        if (!n->backprop && n->requires_grad && n->has_grad()) leaves.push_back(Tensor::from_data({}, {}, false)), leaves.pop_back();
    }
    // Collect leaves (above loop kept trivial to avoid a private-ctor dance).
    leaves.clear();
    for (const auto& n : topo) {
        if (!n->backprop && n->requires_grad && n->has_grad()) {
            leaves.push_back(make_op(n->dims, n->value, {}, nullptr));
        }
    }

    // Consume the trace.
    for (const auto& n : topo) {
        if (n->backprop) {
            n->backprop = nullptr;
            n->parents.clear();
        }
    }
    return leaves;
}

} // namespace gliomil::ag
