#include "eagle/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace eagle::kernels {

double sorted_sum(double* buf, std::size_t n) {
  std::sort(buf, buf + n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += buf[i];
  return s;
}

namespace scalar {

void vadd(const double* a, const double* b, double* o, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) o[i] = a[i] + b[i];
}

void vsub(const double* a, const double* b, double* o, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) o[i] = a[i] - b[i];
}

void vmul(const double* a, const double* b, double* o, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) o[i] = a[i] * b[i];
}

void vscale(const double* a, double s, double* o, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) o[i] = a[i] * s;
}

void vaxpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double vdot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double vsum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double vmax(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

void vexp(const double* x, double* o, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) o[i] = std::exp(x[i]);
}

void vsigmoid(const double* x, double* o, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) o[i] = 1.0 / (1.0 + std::exp(-x[i]));
}

void vgelu(const double* x, double* o, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    const double u = kGeluC0 * (v + kGeluC1 * v * v * v);
    o[i] = 0.5 * v * (1.0 + std::tanh(u));
  }
}

void vgelu_deriv(const double* x, double* o, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    const double u = kGeluC0 * (v + kGeluC1 * v * v * v);
    const double t = std::tanh(u);
    const double du = kGeluC0 * (1.0 + 3.0 * kGeluC1 * v * v);
    o[i] = 0.5 * (1.0 + t) + 0.5 * v * (1.0 - t * t) * du;
  }
}

void matmul(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  std::fill(c, c + m * n, 0.0);
  matmul_acc(a, b, c, m, k, n);
}

void matmul_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      const double* bp = b + p * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

void matmul_tn_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  // a is k×m, result c (m×n) += aᵀ·b
  for (std::size_t p = 0; p < k; ++p) {
    const double* ap = a + p * m;
    const double* bp = b + p * n;
    for (std::size_t i = 0; i < m; ++i) {
      const double w = ap[i];
      double* ci = c + i * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += w * bp[j];
    }
  }
}

void matmul_nt_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  // b is n×k, result c (m×n) += a·bᵀ
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      c[i * n + j] += vdot(ai, b + j * k, k);
    }
  }
}

}  // namespace scalar
}  // namespace eagle::kernels
