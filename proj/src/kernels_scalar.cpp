#include "soccer/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace soccer::kern {
namespace {

void matvec_scalar(const double* W, const double* x, const double* b, double* y,
                   int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* row = W + static_cast<size_t>(r) * cols;
        double acc = b ? b[r] : 0.0;
        for (int c = 0; c < cols; ++c) acc += row[c] * x[c];
        y[r] = acc;
    }
}

void matvec_t_acc_scalar(const double* W, const double* dy, double* dx,
                         int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        const double* row = W + static_cast<size_t>(r) * cols;
        double d = dy[r];
        for (int c = 0; c < cols; ++c) dx[c] += row[c] * d;
    }
}

void outer_acc_scalar(const double* dy, const double* x, double* dW,
                      int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* row = dW + static_cast<size_t>(r) * cols;
        double d = dy[r];
        for (int c = 0; c < cols; ++c) row[c] += d * x[c];
    }
}

void axpy_scalar(double a, const double* x, double* y, int n) {
    for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(const double* x, const double* y, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void elu_scalar(const double* x, double* y, int n) {
    for (int i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : std::expm1(x[i]);
}

void elu_grad_scalar(const double* y, const double* dy, double* dx, int n) {
    // For x <= 0, y = e^x - 1 so elu'(x) = y + 1; for x > 0, y = x > 0.
    for (int i = 0; i < n; ++i) dx[i] = dy[i] * (y[i] > 0.0 ? 1.0 : y[i] + 1.0);
}

void ewise_max_scalar(const double* x, double* y, int n) {
    for (int i = 0; i < n; ++i) y[i] = std::max(y[i], x[i]);
}

void adam_step_scalar(double* p, double* m, double* v, const double* g, int n,
                      double lr, double beta1, double beta2, double eps,
                      double bc1, double bc2) {
    for (int i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        double mh = m[i] / bc1;
        double vh = v[i] / bc2;
        p[i] -= lr * mh / (std::sqrt(vh) + eps);
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{matvec_scalar, matvec_t_acc_scalar, outer_acc_scalar,
                         axpy_scalar,   dot_scalar,          elu_scalar,
                         elu_grad_scalar, ewise_max_scalar,  adam_step_scalar,
                         "scalar"};
    return ops;
}

}  // namespace soccer::kern
