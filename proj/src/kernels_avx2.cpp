#include "soccer/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace soccer::kern {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d h = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, h));
}

void matvec_avx2(const double* W, const double* x, const double* b, double* y,
                 int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* row = W + static_cast<size_t>(r) * cols;
        __m256d acc = _mm256_setzero_pd();
        int c = 0;
        for (; c + 4 <= cols; c += 4) {
            acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + c),
                                  _mm256_loadu_pd(x + c), acc);
        }
        double s = hsum(acc);
        for (; c < cols; ++c) s += row[c] * x[c];
        y[r] = s + (b ? b[r] : 0.0);
    }
}

void matvec_t_acc_avx2(const double* W, const double* dy, double* dx,
                       int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* row = W + static_cast<size_t>(r) * cols;
        __m256d d = _mm256_set1_pd(dy[r]);
        int c = 0;
        for (; c + 4 <= cols; c += 4) {
            __m256d v = _mm256_fmadd_pd(_mm256_loadu_pd(row + c), d,
                                        _mm256_loadu_pd(dx + c));
            _mm256_storeu_pd(dx + c, v);
        }
        for (; c < cols; ++c) dx[c] += row[c] * dy[r];
    }
}

void outer_acc_avx2(const double* dy, const double* x, double* dW,
                    int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* row = dW + static_cast<size_t>(r) * cols;
        __m256d d = _mm256_set1_pd(dy[r]);
        int c = 0;
        for (; c + 4 <= cols; c += 4) {
            __m256d v = _mm256_fmadd_pd(d, _mm256_loadu_pd(x + c),
                                        _mm256_loadu_pd(row + c));
            _mm256_storeu_pd(row + c, v);
        }
        for (; c < cols; ++c) row[c] += dy[r] * x[c];
    }
}

void axpy_avx2(double a, const double* x, double* y, int n) {
    __m256d av = _mm256_set1_pd(a);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i),
                                    _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, v);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double dot_avx2(const double* x, const double* y, int n) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                              acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void elu_avx2(const double* x, double* y, int n) {
    // Vector path for non-negative lanes; expm1 lanes fall back to libm so the
    // result matches the scalar reference bit for bit.
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        __m256d mask = _mm256_cmp_pd(v, _mm256_setzero_pd(), _CMP_GT_OQ);
        if (_mm256_movemask_pd(mask) == 0xf) {
            _mm256_storeu_pd(y + i, v);
        } else {
            for (int k = 0; k < 4; ++k)
                y[i + k] = x[i + k] > 0.0 ? x[i + k] : std::expm1(x[i + k]);
        }
    }
    for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : std::expm1(x[i]);
}

void elu_grad_avx2(const double* y, const double* dy, double* dx, int n) {
    __m256d one = _mm256_set1_pd(1.0);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        __m256d mask = _mm256_cmp_pd(yv, _mm256_setzero_pd(), _CMP_GT_OQ);
        __m256d slope = _mm256_blendv_pd(_mm256_add_pd(yv, one), one, mask);
        _mm256_storeu_pd(dx + i, _mm256_mul_pd(_mm256_loadu_pd(dy + i), slope));
    }
    for (; i < n; ++i) dx[i] = dy[i] * (y[i] > 0.0 ? 1.0 : y[i] + 1.0);
}

void ewise_max_avx2(const double* x, double* y, int n) {
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(
            y + i, _mm256_max_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) y[i] = std::max(y[i], x[i]);
}

void adam_step_avx2(double* p, double* m, double* v, const double* g, int n,
                    double lr, double beta1, double beta2, double eps,
                    double bc1, double bc2) {
    __m256d b1 = _mm256_set1_pd(beta1), ob1 = _mm256_set1_pd(1.0 - beta1);
    __m256d b2 = _mm256_set1_pd(beta2), ob2 = _mm256_set1_pd(1.0 - beta2);
    __m256d lrv = _mm256_set1_pd(lr), epsv = _mm256_set1_pd(eps);
    __m256d ibc1 = _mm256_set1_pd(1.0 / bc1), ibc2 = _mm256_set1_pd(1.0 / bc2);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d gv = _mm256_loadu_pd(g + i);
        __m256d mv = _mm256_fmadd_pd(ob1, gv, _mm256_mul_pd(b1, _mm256_loadu_pd(m + i)));
        __m256d vv = _mm256_fmadd_pd(ob2, _mm256_mul_pd(gv, gv),
                                     _mm256_mul_pd(b2, _mm256_loadu_pd(v + i)));
        _mm256_storeu_pd(m + i, mv);
        _mm256_storeu_pd(v + i, vv);
        __m256d mh = _mm256_mul_pd(mv, ibc1);
        __m256d vh = _mm256_mul_pd(vv, ibc2);
        __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(vh), epsv);
        __m256d upd = _mm256_div_pd(_mm256_mul_pd(lrv, mh), denom);
        _mm256_storeu_pd(p + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), upd));
    }
    for (; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        p[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
    }
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{matvec_avx2, matvec_t_acc_avx2, outer_acc_avx2,
                         axpy_avx2,   dot_avx2,          elu_avx2,
                         elu_grad_avx2, ewise_max_avx2,  adam_step_avx2,
                         "avx2"};
    return ops;
}

}  // namespace soccer::kern
