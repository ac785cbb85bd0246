#include "soccer/mlp.hpp"

#include <cassert>
#include <cmath>

#include "soccer/kernels.hpp"

namespace soccer {

Mlp::Mlp(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    assert(sizes_.size() >= 2);
    for (size_t i = 0; i + 1 < sizes_.size(); ++i) {
        weights_.emplace_back(sizes_[i + 1], sizes_[i]);
        biases_.emplace_back(sizes_[i + 1], 1);
    }
}

void Mlp::init(Rng& rng, double hidden_gain, double final_gain) {
    for (size_t l = 0; l < weights_.size(); ++l) {
        Tensor& w = weights_[l];
        for (double& v : w.data) v = rng.normal();
        // Gram-Schmidt over rows: orthonormalize first (the projection step
        // needs unit-norm previous rows), then apply the gain. Rows beyond
        // the column count just get normalized.
        double gain = (l + 1 == weights_.size()) ? final_gain : hidden_gain;
        for (int r = 0; r < w.rows; ++r) {
            double* row = w.ptr() + static_cast<size_t>(r) * w.cols;
            for (int p = 0; p < r && p < w.cols; ++p) {
                const double* prev = w.ptr() + static_cast<size_t>(p) * w.cols;
                double proj = kern::scalar_ops().dot(row, prev, w.cols);
                kern::scalar_ops().axpy(-proj, prev, row, w.cols);
            }
            double norm = std::sqrt(kern::scalar_ops().dot(row, row, w.cols));
            double scale = norm > 1e-12 ? 1.0 / norm : 0.0;
            for (int c = 0; c < w.cols; ++c) row[c] *= scale;
        }
        for (double& v : w.data) v *= gain;
        biases_[l].zero();
    }
}

void Mlp::forward(const double* x, double* out, Cache* cache) const {
    const kern::Ops& k = kern::ops();
    if (cache) {
        cache->act.resize(sizes_.size());
        cache->act[0].assign(x, x + sizes_[0]);
    }
    std::vector<double> cur(x, x + sizes_[0]);
    std::vector<double> next;
    for (size_t l = 0; l < weights_.size(); ++l) {
        next.assign(sizes_[l + 1], 0.0);
        k.matvec(weights_[l].ptr(), cur.data(), biases_[l].ptr(), next.data(),
                 sizes_[l + 1], sizes_[l]);
        if (l + 1 < weights_.size())
            k.elu(next.data(), next.data(), sizes_[l + 1]);
        if (cache) cache->act[l + 1] = next;
        cur.swap(next);
    }
    std::copy(cur.begin(), cur.end(), out);
}

Mlp::Grads Mlp::make_grads() const {
    Grads g;
    for (size_t l = 0; l < weights_.size(); ++l) {
        g.w.emplace_back(weights_[l].rows, weights_[l].cols);
        g.b.emplace_back(biases_[l].rows, 1);
    }
    return g;
}

void Mlp::Grads::zero() {
    for (auto& t : w) t.zero();
    for (auto& t : b) t.zero();
}

void Mlp::backward(const Cache& cache, const double* dout, Grads& grads,
                   double* dx) const {
    const kern::Ops& k = kern::ops();
    std::vector<double> delta(dout, dout + sizes_.back());
    std::vector<double> dprev;
    for (size_t l = weights_.size(); l-- > 0;) {
        // delta holds d(loss)/d(pre-activation) of layer l output here: for
        // the linear output layer that is dout directly; for hidden layers the
        // ELU factor is applied before arriving at this point.
        k.outer_acc(delta.data(), cache.act[l].data(), grads.w[l].ptr(),
                    sizes_[l + 1], sizes_[l]);
        k.axpy(1.0, delta.data(), grads.b[l].ptr(), sizes_[l + 1]);
        if (l > 0 || dx) {
            dprev.assign(sizes_[l], 0.0);
            k.matvec_t_acc(weights_[l].ptr(), delta.data(), dprev.data(),
                           sizes_[l + 1], sizes_[l]);
            if (l > 0) {
                k.elu_grad_from_output(cache.act[l].data(), dprev.data(),
                                       dprev.data(), sizes_[l]);
            }
            delta.swap(dprev);
        }
    }
    if (dx) std::copy(delta.begin(), delta.end(), dx);
}

size_t Mlp::n_params() const {
    size_t n = 0;
    for (size_t l = 0; l < weights_.size(); ++l)
        n += weights_[l].size() + biases_[l].size();
    return n;
}

void Mlp::visit(const std::function<void(const std::string&, Tensor&)>& fn,
                const std::string& prefix) {
    for (size_t l = 0; l < weights_.size(); ++l) {
        fn(prefix + ".w" + std::to_string(l), weights_[l]);
        fn(prefix + ".b" + std::to_string(l), biases_[l]);
    }
}

}  // namespace soccer
