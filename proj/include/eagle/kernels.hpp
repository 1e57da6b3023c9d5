#pragma once

// Data-parallel inner loops used by the tensor/autodiff layer.
//
// Every kernel exists as a scalar reference implementation and (on x86-64
// with AVX2) a vectorized variant. The backend is chosen once at startup
// from CPUID and can be forced with EAGLE_KERNELS=scalar|avx2. Elementwise
// kernels are bit-identical across backends (same per-element arithmetic,
// no FMA contraction); reductions and transcendentals may differ in the
// last ulps and are equivalence-tested against the scalar reference.

#include <cstddef>

namespace eagle::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name();
// Test hook. Forcing avx2 on a machine without it is an error.
void force_backend(Backend b);

// GELU tanh-approximation coefficients, fixed for reproducibility.
inline constexpr double kGeluC0 = 0.7978845608;
inline constexpr double kGeluC1 = 0.044715;

struct KernelTable {
  void (*vadd)(const double*, const double*, double*, std::size_t);
  void (*vsub)(const double*, const double*, double*, std::size_t);
  void (*vmul)(const double*, const double*, double*, std::size_t);
  void (*vscale)(const double*, double, double*, std::size_t);
  void (*vaxpy)(double, const double*, double*, std::size_t);  // y += a*x
  double (*vdot)(const double*, const double*, std::size_t);
  double (*vsum)(const double*, std::size_t);
  double (*vmax)(const double*, std::size_t);
  void (*vexp)(const double*, double*, std::size_t);
  void (*vsigmoid)(const double*, double*, std::size_t);
  void (*vgelu)(const double*, double*, std::size_t);
  void (*vgelu_deriv)(const double*, double*, std::size_t);
  // C (m×n) = A (m×k) · B (k×n), overwrite
  void (*matmul)(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
  // C += A · B
  void (*matmul_acc)(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
  // C (m×n) += Aᵀ·B with A stored k×m, B k×n
  void (*matmul_tn_acc)(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
  // C (m×n) += A·Bᵀ with A m×k, B stored n×k
  void (*matmul_nt_acc)(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
};

const KernelTable& table();

inline void vadd(const double* a, const double* b, double* o, std::size_t n) { table().vadd(a, b, o, n); }
inline void vsub(const double* a, const double* b, double* o, std::size_t n) { table().vsub(a, b, o, n); }
inline void vmul(const double* a, const double* b, double* o, std::size_t n) { table().vmul(a, b, o, n); }
inline void vscale(const double* a, double s, double* o, std::size_t n) { table().vscale(a, s, o, n); }
inline void vaxpy(double a, const double* x, double* y, std::size_t n) { table().vaxpy(a, x, y, n); }
inline double vdot(const double* a, const double* b, std::size_t n) { return table().vdot(a, b, n); }
inline double vsum(const double* x, std::size_t n) { return table().vsum(x, n); }
inline double vmax(const double* x, std::size_t n) { return table().vmax(x, n); }
inline void vexp(const double* x, double* o, std::size_t n) { table().vexp(x, o, n); }
inline void vsigmoid(const double* x, double* o, std::size_t n) { table().vsigmoid(x, o, n); }
inline void vgelu(const double* x, double* o, std::size_t n) { table().vgelu(x, o, n); }
inline void vgelu_deriv(const double* x, double* o, std::size_t n) { table().vgelu_deriv(x, o, n); }
inline void matmul(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  table().matmul(a, b, c, m, k, n);
}
inline void matmul_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  table().matmul_acc(a, b, c, m, k, n);
}
inline void matmul_tn_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  table().matmul_tn_acc(a, b, c, m, k, n);
}
inline void matmul_nt_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  table().matmul_nt_acc(a, b, c, m, k, n);
}

// Order-independent summation: the result depends only on the multiset of
// addends, not their order. Used where bit-exact permutation invariance is
// required (attention reductions). Sorts in place.
double sorted_sum(double* buf, std::size_t n);

namespace scalar {
void vadd(const double*, const double*, double*, std::size_t);
void vsub(const double*, const double*, double*, std::size_t);
void vmul(const double*, const double*, double*, std::size_t);
void vscale(const double*, double, double*, std::size_t);
void vaxpy(double, const double*, double*, std::size_t);
double vdot(const double*, const double*, std::size_t);
double vsum(const double*, std::size_t);
double vmax(const double*, std::size_t);
void vexp(const double*, double*, std::size_t);
void vsigmoid(const double*, double*, std::size_t);
void vgelu(const double*, double*, std::size_t);
void vgelu_deriv(const double*, double*, std::size_t);
void matmul(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
void matmul_acc(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
void matmul_tn_acc(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
void matmul_nt_acc(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
}  // namespace scalar

#ifdef EAGLE_BUILD_AVX2
namespace avx2 {
void vadd(const double*, const double*, double*, std::size_t);
void vsub(const double*, const double*, double*, std::size_t);
void vmul(const double*, const double*, double*, std::size_t);
void vscale(const double*, double, double*, std::size_t);
void vaxpy(double, const double*, double*, std::size_t);
double vdot(const double*, const double*, std::size_t);
double vsum(const double*, std::size_t);
double vmax(const double*, std::size_t);
void vexp(const double*, double*, std::size_t);
void vsigmoid(const double*, double*, std::size_t);
void vgelu(const double*, double*, std::size_t);
void vgelu_deriv(const double*, double*, std::size_t);
void matmul(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
void matmul_acc(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
void matmul_tn_acc(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
void matmul_nt_acc(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
}  // namespace avx2
#endif

}  // namespace eagle::kernels
