#include "eagle/tensor.hpp"

#include <cmath>
#include <sstream>

#include "eagle/kernels.hpp"

namespace eagle {

std::size_t shape_numel(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) {
    if (d == 0) throw numeric_error("tensor shape has zero dimension");
    n *= d;
  }
  return n;
}

Tensor::Tensor(std::vector<std::size_t> shape)
    : shape_(std::move(shape)), data_(shape_numel(shape_), 0.0) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != shape_numel(shape_))
    throw numeric_error("tensor data length " + std::to_string(data_.size()) +
                        " does not match shape " + shape_str());
}

Tensor Tensor::full(std::vector<std::size_t> shape, double v) {
  Tensor t(std::move(shape));
  t.fill(v);
  return t;
}

bool Tensor::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double Tensor::item() const {
  if (numel() != 1) throw numeric_error("item() on tensor of shape " + shape_str());
  return data_[0];
}

void Tensor::fill(double v) {
  for (double& x : data_) x = v;
}

void Tensor::add_(const Tensor& o) {
  if (!same_shape(o)) throw numeric_error("add_: shape mismatch " + shape_str() + " vs " + o.shape_str());
  kernels::vadd(data(), o.data(), data(), numel());
}

void Tensor::axpy_(double a, const Tensor& o) {
  if (!same_shape(o)) throw numeric_error("axpy_: shape mismatch " + shape_str() + " vs " + o.shape_str());
  kernels::vaxpy(a, o.data(), data(), numel());
}

void Tensor::scale_(double s) { kernels::vscale(data(), s, data(), numel()); }

std::string Tensor::shape_str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    if (i) os << 'x';
    os << shape_[i];
  }
  os << ']';
  return os.str();
}

void require_finite(const Tensor& t, const std::string& where) {
  if (!t.all_finite()) throw numeric_error("non-finite values in " + where);
}

}  // namespace eagle
