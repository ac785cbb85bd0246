#pragma once

#include <cstddef>

namespace soccer::kern {

// Dense math kernels behind the network code. Each operation has a scalar
// reference implementation and an AVX2 variant selected at runtime; the two
// are equivalence-tested against each other.
struct Ops {
    // y = W x + b, W is rows x cols row-major.
    void (*matvec)(const double* W, const double* x, const double* b, double* y,
                   int rows, int cols);
    // dx += W^T dy
    void (*matvec_t_acc)(const double* W, const double* dy, double* dx,
                         int rows, int cols);
    // dW += dy x^T
    void (*outer_acc)(const double* dy, const double* x, double* dW,
                      int rows, int cols);
    // y += a * x
    void (*axpy)(double a, const double* x, double* y, int n);
    double (*dot)(const double* x, const double* y, int n);
    // y = elu(x)
    void (*elu)(const double* x, double* y, int n);
    // dx = dy * elu'(x), computed from y = elu(x)
    void (*elu_grad_from_output)(const double* y, const double* dy, double* dx,
                                 int n);
    // y[i] = max(y[i], x[i])
    void (*ewise_max)(const double* x, double* y, int n);
    // Adam step: p -= lr_t * m_hat / (sqrt(v_hat) + eps) with in-place moment
    // update; bc1/bc2 are the bias-correction factors 1 - beta^t.
    void (*adam_step)(double* p, double* m, double* v, const double* g, int n,
                      double lr, double beta1, double beta2, double eps,
                      double bc1, double bc2);

    const char* name;
};

const Ops& scalar_ops();
#if defined(SOCCER_HAVE_AVX2_BUILD)
const Ops& avx2_ops();
#endif

bool avx2_supported();

// Runtime-selected backend (AVX2 when the CPU supports it, scalar otherwise).
const Ops& ops();

// Test hook: force the scalar backend for the rest of the process.
void force_scalar_backend(bool on);

}  // namespace soccer::kern
