// Copyright 2026 The swipt-capacity Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <cstdint>

#include "swipt/kernels/kernels.hpp"

namespace swipt::kernels {
namespace {

// exp: Cody-Waite reduction x = n ln2 + r, |r| <= ln2/2, then the Cephes
// (3,4) Pade form e^r = 1 + 2 r P(r^2) / (Q(r^2) - r P(r^2)).
inline __m256d exp4(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-708.39);
  const __m256d hi = _mm256_set1_pd(709.78);
  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634074)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
  x = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d px = _mm256_fmadd_pd(_mm256_set1_pd(1.26177193074810590878E-4), xx,
                               _mm256_set1_pd(3.02994407707441961300E-2));
  px = _mm256_fmadd_pd(px, xx, _mm256_set1_pd(9.99999999999999999910E-1));
  px = _mm256_mul_pd(px, x);
  __m256d qx = _mm256_fmadd_pd(_mm256_set1_pd(3.00198505138664455042E-6), xx,
                               _mm256_set1_pd(2.52448340349684104192E-3));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.27265548208155028766E-1));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d r = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, _mm256_set1_pd(1.0));

  // 2^n applied in two halves so n = 1024 does not overflow the exponent.
  const __m256d n1 = _mm256_floor_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)));
  const __m256d n2 = _mm256_sub_pd(n, n1);
  auto pow2 = [](__m256d k) {
    const __m256i k64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
    return _mm256_castsi256_pd(
        _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52));
  };
  r = _mm256_mul_pd(_mm256_mul_pd(r, pow2(n1)), pow2(n2));
  return _mm256_blendv_pd(r, _mm256_setzero_pd(), underflow);
}

// log for positive normal x: frexp-style split x = m 2^e with m in
// [sqrt(1/2), sqrt(2)), then the Cephes rational approximation of log(1+t).
inline __m256d log4(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i expo = _mm256_srli_epi64(bits, 52);
  const __m256d two52 = _mm256_castsi256_pd(_mm256_set1_epi64x(0x4330000000000000LL));
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(expo, _mm256_castpd_si256(two52))), two52);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1022.0));

  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                      _mm256_set1_epi64x(0x3FE0000000000000LL)));
  const __m256d small = _mm256_cmp_pd(m, _mm256_set1_pd(0.70710678118654752440), _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(small, _mm256_set1_pd(1.0)));
  m = _mm256_sub_pd(_mm256_add_pd(m, _mm256_and_pd(small, m)), _mm256_set1_pd(1.0));

  const __m256d z = _mm256_mul_pd(m, m);
  __m256d p = _mm256_set1_pd(1.01875663804580931796E-4);
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(4.97494994976747001425E-1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(4.70579119878881725854E0));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(1.44989225341610930846E1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(1.79368678507819816313E1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(7.70838733755885391666E0));
  __m256d q = _mm256_add_pd(m, _mm256_set1_pd(1.12873587189167450590E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(4.52279145837532221105E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(8.29875266912776603211E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(7.11544750618563894466E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(2.31251620126765340583E1));

  __m256d y = _mm256_mul_pd(m, _mm256_div_pd(_mm256_mul_pd(z, p), q));
  y = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, y);
  __m256d r = _mm256_add_pd(m, y);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), r);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Loads up to four lanes; missing lanes are filled with `fill`.
inline __m256d load_partial(const double* p, std::size_t count, double fill) {
  std::array<double, 4> buf{fill, fill, fill, fill};
  std::copy_n(p, count, buf.begin());
  return _mm256_loadu_pd(buf.data());
}

inline void store_partial(double* p, std::size_t count, __m256d v) {
  std::array<double, 4> buf{};
  _mm256_storeu_pd(buf.data(), v);
  std::copy_n(buf.begin(), count, p);
}

void exp_affine(std::span<const double> y, double logc, double rate,
                std::span<const double> w, std::span<double> out) {
  const __m256d vc = _mm256_set1_pd(logc);
  const __m256d vr = _mm256_set1_pd(rate);
  const std::size_t n = y.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d v = exp4(_mm256_fnmadd_pd(vr, _mm256_loadu_pd(y.data() + k), vc));
    if (!w.empty()) v = _mm256_mul_pd(v, _mm256_loadu_pd(w.data() + k));
    _mm256_storeu_pd(out.data() + k, v);
  }
  if (k < n) {
    const std::size_t rest = n - k;
    __m256d v = exp4(_mm256_fnmadd_pd(vr, load_partial(y.data() + k, rest, 0.0), vc));
    if (!w.empty()) v = _mm256_mul_pd(v, load_partial(w.data() + k, rest, 0.0));
    store_partial(out.data() + k, rest, v);
  }
}

inline __m256d lse4(__m256d vy, std::span<const double> logc, std::span<const double> rate) {
  const std::size_t m = logc.size();
  __m256d peak = _mm256_set1_pd(-1.0e308);
  for (std::size_t s = 0; s < m; ++s) {
    const __m256d a = _mm256_fnmadd_pd(_mm256_set1_pd(rate[s]), vy, _mm256_set1_pd(logc[s]));
    peak = _mm256_max_pd(peak, a);
  }
  __m256d sum = _mm256_setzero_pd();
  for (std::size_t s = 0; s < m; ++s) {
    const __m256d a = _mm256_fnmadd_pd(_mm256_set1_pd(rate[s]), vy, _mm256_set1_pd(logc[s]));
    sum = _mm256_add_pd(sum, exp4(_mm256_sub_pd(a, peak)));
  }
  return _mm256_add_pd(peak, log4(sum));
}

void log_sum_exp(std::span<const double> y, std::span<const double> logc,
                 std::span<const double> rate, std::span<double> out) {
  const std::size_t n = y.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(out.data() + k, lse4(_mm256_loadu_pd(y.data() + k), logc, rate));
  }
  if (k < n) {
    const std::size_t rest = n - k;
    store_partial(out.data() + k, rest, lse4(load_partial(y.data() + k, rest, 0.0), logc, rate));
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + k), _mm256_loadu_pd(b.data() + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + k + 4), _mm256_loadu_pd(b.data() + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + k), _mm256_loadu_pd(b.data() + k), acc0);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) sum += a[k] * b[k];
  return sum;
}

double weighted_exp_sum(std::span<const double> w, std::span<const double> arg) {
  const std::size_t n = w.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w.data() + k), exp4(_mm256_loadu_pd(arg.data() + k)), acc);
  }
  if (k < n) {
    const std::size_t rest = n - k;
    acc = _mm256_fmadd_pd(load_partial(w.data() + k, rest, 0.0),
                          exp4(load_partial(arg.data() + k, rest, 0.0)), acc);
  }
  return hsum(acc);
}

void vexp(std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) _mm256_storeu_pd(out.data() + k, exp4(_mm256_loadu_pd(x.data() + k)));
  if (k < n) store_partial(out.data() + k, n - k, exp4(load_partial(x.data() + k, n - k, 0.0)));
}

void vlog(std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) _mm256_storeu_pd(out.data() + k, log4(_mm256_loadu_pd(x.data() + k)));
  if (k < n) store_partial(out.data() + k, n - k, log4(load_partial(x.data() + k, n - k, 1.0)));
}

constexpr KernelTable kAvx2{"avx2", exp_affine, log_sum_exp, dot, weighted_exp_sum, vexp, vlog};

}  // namespace

const KernelTable& avx2_table_unchecked() { return kAvx2; }

}  // namespace swipt::kernels
