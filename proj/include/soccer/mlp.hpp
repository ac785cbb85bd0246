#pragma once

#include <functional>
#include <string>
#include <vector>

#include "soccer/rng.hpp"

namespace soccer {

struct Tensor {
    int rows = 0;
    int cols = 1;
    std::vector<double> data;

    Tensor() = default;
    Tensor(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

    int size() const { return rows * cols; }
    double* ptr() { return data.data(); }
    const double* ptr() const { return data.data(); }
    void zero() { std::fill(data.begin(), data.end(), 0.0); }
};

// Fully connected network with ELU hidden activations and a linear output
// layer. Forward caches post-activation values for the analytic backward pass.
class Mlp {
public:
    Mlp() = default;
    explicit Mlp(std::vector<int> sizes);

    // Orthogonal-style init: Gram-Schmidt rows of a Gaussian draw, scaled by
    // `hidden_gain` for hidden layers and `final_gain` for the output layer.
    void init(Rng& rng, double hidden_gain, double final_gain);

    struct Cache {
        // act[0] is the input, act[i] the post-activation output of layer i.
        std::vector<std::vector<double>> act;
    };

    // Returns the output (size sizes.back()). Cache may be null when no
    // backward pass is needed.
    void forward(const double* x, double* out, Cache* cache) const;

    struct Grads {
        std::vector<Tensor> w;
        std::vector<Tensor> b;
        void zero();
    };
    Grads make_grads() const;

    // Accumulates parameter gradients given d(loss)/d(output); optionally
    // produces d(loss)/d(input) into dx (size sizes.front()).
    void backward(const Cache& cache, const double* dout, Grads& grads,
                  double* dx) const;

    int input_dim() const { return sizes_.front(); }
    int output_dim() const { return sizes_.back(); }
    const std::vector<int>& sizes() const { return sizes_; }
    size_t n_layers() const { return weights_.size(); }
    size_t n_params() const;

    std::vector<Tensor>& weights() { return weights_; }
    std::vector<Tensor>& biases() { return biases_; }
    const std::vector<Tensor>& weights() const { return weights_; }
    const std::vector<Tensor>& biases() const { return biases_; }

    // Visits all parameter tensors in declared order (w0, b0, w1, b1, ...).
    void visit(const std::function<void(const std::string&, Tensor&)>& fn,
               const std::string& prefix);

private:
    std::vector<int> sizes_;
    std::vector<Tensor> weights_;  // layer i: sizes[i+1] x sizes[i]
    std::vector<Tensor> biases_;
};

}  // namespace soccer
