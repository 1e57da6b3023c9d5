#pragma once

// Reverse-mode autodiff over rank-1/2 Tensors. Graphs are built per forward
// pass and discarded; leaves carry gradients after backward(). Every op
// validates its output for NaN/Inf and names itself in the error.

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "eagle/tensor.hpp"

namespace eagle::ag {

struct Node;
using NodeRef = std::shared_ptr<Node>;

struct Node {
  Tensor value;
  Tensor grad;  // allocated on first accumulation
  std::vector<NodeRef> parents;
  std::function<void(Node&)> backward_step;
  bool requires_grad = false;
  const char* op = "";

  bool has_grad() const { return !grad.empty(); }
  // gradient as a tensor (zeros if the node never received one)
  Tensor grad_or_zero() const { return has_grad() ? grad : Tensor::zeros(value.shape()); }
};

NodeRef constant(Tensor v, const char* op = "const");
NodeRef leaf(Tensor v);

// Accumulate `delta` into n's grad if it participates in differentiation.
void accumulate(Node& n, const Tensor& delta);

// Runs reverse-mode accumulation from a scalar root (numel == 1).
void backward(const NodeRef& root);

// ---- op vocabulary ----
NodeRef add(const NodeRef& a, const NodeRef& b);   // same-shape | b row-vector | b scalar
NodeRef sub(const NodeRef& a, const NodeRef& b);   // same shape
NodeRef mul(const NodeRef& a, const NodeRef& b);   // same-shape | b scalar
NodeRef scale(const NodeRef& a, double s);
NodeRef neg(const NodeRef& a);
NodeRef matmul(const NodeRef& a, const NodeRef& b);
// matmul with order-independent accumulation (attention · V path)
NodeRef matmul_osum(const NodeRef& a, const NodeRef& b);
NodeRef transpose(const NodeRef& a);
NodeRef softmax_rows(const NodeRef& x);
NodeRef layer_norm_rows(const NodeRef& x, const NodeRef& gamma, const NodeRef& beta);
NodeRef gelu(const NodeRef& x);
NodeRef sigmoid(const NodeRef& x);
NodeRef log(const NodeRef& x);
NodeRef exp(const NodeRef& x);
NodeRef sum_all(const NodeRef& x);
NodeRef mean_all(const NodeRef& x);
NodeRef mean_axis0(const NodeRef& x);  // [m,n] -> [1,n]
NodeRef slice_rows(const NodeRef& x, std::size_t r0, std::size_t r1);
NodeRef gather_rows(const NodeRef& x, std::vector<std::size_t> idx);
NodeRef slice_cols(const NodeRef& x, std::size_t c0, std::size_t c1);
NodeRef concat_rows(const std::vector<NodeRef>& parts);
NodeRef concat_cols(const std::vector<NodeRef>& parts);
NodeRef l2_normalize_rows(const NodeRef& x);
NodeRef clamp(const NodeRef& x, double lo, double hi);
NodeRef add_n(const std::vector<NodeRef>& parts);  // elementwise sum of same-shape nodes

inline constexpr double kLayerNormEps = 1e-12;
inline constexpr double kL2NormFloor = 1e-12;

// ---- named parameter plumbing ----
using ParamStore = std::map<std::string, Tensor>;

struct LeafMap {
  std::map<std::string, NodeRef> nodes;
  const NodeRef& at(const std::string& name) const;
};

// Leaves for every param; names in `frozen` become constants (no gradient).
LeafMap make_leaves(const ParamStore& params, const std::set<std::string>& frozen = {});

// Gradients of every differentiable leaf (zeros where a leaf was unused).
ParamStore collect_grads(const LeafMap& leaves);

}  // namespace eagle::ag
