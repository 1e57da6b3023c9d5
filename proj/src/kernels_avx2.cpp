#include "eagle/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace eagle::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d s = _mm_add_sd(lo, _mm_unpackhi_pd(lo, lo));
  return _mm_cvtsd_f64(s);
}

// doubles holding small integral values -> i64 lanes (AVX2 has no cvtpd_epi64)
inline __m256i cvt_small_i64(__m256d v) {
  __m128i i32 = _mm256_cvtpd_epi32(v);
  return _mm256_cvtepi32_epi64(i32);
}

// exp(x) on 4 lanes, Cephes-style: range-reduce by ln 2, rational
// approximation on the reduced argument, scale by 2^n through the
// exponent field. Inputs are clamped to [-708, 709]; accuracy ~1-2 ulp.
inline __m256d exp4(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);

  x = _mm256_max_pd(_mm256_set1_pd(-708.0), _mm256_min_pd(_mm256_set1_pd(709.0), x));

  __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(n, c1));
  r = _mm256_sub_pd(r, _mm256_mul_pd(n, c2));

  __m256d r2 = _mm256_mul_pd(r, r);
  __m256d p = _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(p0, r2), p1), r2), p2), r);
  __m256d q = _mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(q0, r2), q1), r2), q2), r2), q3);
  __m256d e = _mm256_add_pd(one, _mm256_div_pd(_mm256_mul_pd(two, p), _mm256_sub_pd(q, p)));

  // scale by 2^n in two halves so |n| up to ~1024 stays in range
  __m256d nh = _mm256_round_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d nl = _mm256_sub_pd(n, nh);
  const __m256i bias = _mm256_set1_epi64x(1023);
  __m256i ih = _mm256_slli_epi64(_mm256_add_epi64(cvt_small_i64(nh), bias), 52);
  __m256i il = _mm256_slli_epi64(_mm256_add_epi64(cvt_small_i64(nl), bias), 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(ih));
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(il));
  return e;
}

}  // namespace

void vadd(const double* a, const double* b, double* o, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(o + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) o[i] = a[i] + b[i];
}

void vsub(const double* a, const double* b, double* o, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(o + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) o[i] = a[i] - b[i];
}

void vmul(const double* a, const double* b, double* o, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(o + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) o[i] = a[i] * b[i];
}

void vscale(const double* a, double s, double* o, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(o + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
  for (; i < n; ++i) o[i] = a[i] * s;
}

void vaxpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i))));
  for (; i < n; ++i) y[i] += a * x[i];
}

double vdot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double vsum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

double vmax(const double* x, std::size_t n) {
  if (n < 8) return scalar::vmax(x, n);
  __m256d m = _mm256_loadu_pd(x);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_loadu_pd(x + i));
  __m128d lo = _mm256_castpd256_pd128(m);
  __m128d hi = _mm256_extractf128_pd(m, 1);
  lo = _mm_max_pd(lo, hi);
  double s = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) s = std::max(s, x[i]);
  return s;
}

void vexp(const double* x, double* o, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(o + i, exp4(_mm256_loadu_pd(x + i)));
  if (i < n) {
    double tmp_in[4] = {0, 0, 0, 0}, tmp_out[4];
    for (std::size_t j = i; j < n; ++j) tmp_in[j - i] = x[j];
    _mm256_storeu_pd(tmp_out, exp4(_mm256_loadu_pd(tmp_in)));
    for (std::size_t j = i; j < n; ++j) o[j] = tmp_out[j - i];
  }
}

void vsigmoid(const double* x, double* o, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d e = exp4(_mm256_sub_pd(zero, v));
    _mm256_storeu_pd(o + i, _mm256_div_pd(one, _mm256_add_pd(one, e)));
  }
  for (; i < n; ++i) o[i] = 1.0 / (1.0 + std::exp(-x[i]));
}

namespace {

// tanh(u) = 1 - 2/(exp(2u)+1)
inline __m256d tanh4(__m256d u) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  __m256d e = exp4(_mm256_mul_pd(two, u));
  return _mm256_sub_pd(one, _mm256_div_pd(two, _mm256_add_pd(e, one)));
}

}  // namespace

void vgelu(const double* x, double* o, std::size_t n) {
  const __m256d c0 = _mm256_set1_pd(kGeluC0);
  const __m256d c1 = _mm256_set1_pd(kGeluC1);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d v3 = _mm256_mul_pd(v, _mm256_mul_pd(v, v));
    __m256d u = _mm256_mul_pd(c0, _mm256_add_pd(v, _mm256_mul_pd(c1, v3)));
    __m256d t = tanh4(u);
    _mm256_storeu_pd(o + i, _mm256_mul_pd(_mm256_mul_pd(half, v), _mm256_add_pd(one, t)));
  }
  if (i < n) scalar::vgelu(x + i, o + i, n - i);
}

void vgelu_deriv(const double* x, double* o, std::size_t n) {
  const __m256d c0 = _mm256_set1_pd(kGeluC0);
  const __m256d c1 = _mm256_set1_pd(kGeluC1);
  const __m256d c13 = _mm256_set1_pd(3.0 * kGeluC1);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d v2 = _mm256_mul_pd(v, v);
    __m256d u = _mm256_mul_pd(c0, _mm256_add_pd(v, _mm256_mul_pd(c1, _mm256_mul_pd(v2, v))));
    __m256d t = tanh4(u);
    __m256d du = _mm256_mul_pd(c0, _mm256_add_pd(one, _mm256_mul_pd(c13, v2)));
    __m256d sech2 = _mm256_sub_pd(one, _mm256_mul_pd(t, t));
    __m256d r = _mm256_add_pd(_mm256_mul_pd(half, _mm256_add_pd(one, t)),
                              _mm256_mul_pd(_mm256_mul_pd(half, v), _mm256_mul_pd(sech2, du)));
    _mm256_storeu_pd(o + i, r);
  }
  if (i < n) scalar::vgelu_deriv(x + i, o + i, n - i);
}

void matmul_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  // j-vectorized with the same per-element accumulation order as the
  // scalar reference, so results are bit-identical to it.
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const __m256d aip = _mm256_set1_pd(a[i * k + p]);
      const double* bp = b + p * n;
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        __m256d cj = _mm256_loadu_pd(ci + j);
        cj = _mm256_add_pd(cj, _mm256_mul_pd(aip, _mm256_loadu_pd(bp + j)));
        _mm256_storeu_pd(ci + j, cj);
      }
      const double av = a[i * k + p];
      for (; j < n; ++j) ci[j] += av * bp[j];
    }
  }
}

void matmul(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  std::fill(c, c + m * n, 0.0);
  matmul_acc(a, b, c, m, k, n);
}

void matmul_tn_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t p = 0; p < k; ++p) {
    const double* ap = a + p * m;
    const double* bp = b + p * n;
    for (std::size_t i = 0; i < m; ++i) {
      const __m256d w = _mm256_set1_pd(ap[i]);
      double* ci = c + i * n;
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        __m256d cj = _mm256_loadu_pd(ci + j);
        cj = _mm256_add_pd(cj, _mm256_mul_pd(w, _mm256_loadu_pd(bp + j)));
        _mm256_storeu_pd(ci + j, cj);
      }
      for (; j < n; ++j) ci[j] += ap[i] * bp[j];
    }
  }
}

void matmul_nt_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      c[i * n + j] += vdot(ai, b + j * k, k);
    }
  }
}

}  // namespace eagle::kernels::avx2
