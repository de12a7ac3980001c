#ifndef HELIOS_OPERATOR_NET_HPP
#define HELIOS_OPERATOR_NET_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "helios/dataset.hpp"
#include "helios/forward.hpp"

// Branch-trunk neural operator for sparse-to-dense trace reconstruction:
// forward evaluation, exact backpropagation, AdamW with decoupled weight
// decay, cosine annealing with warm restarts, and the offline training loop.

namespace helios {

// Dense layers, tanh on hidden layers, identity on the output layer.
struct Mlp {
    std::vector<int> dims;
    std::vector<Eigen::MatrixXd> weights; // weights[l]: dims[l+1] x dims[l]
    std::vector<Eigen::VectorXd> biases;

    int input_dim() const { return dims.front(); }
    int output_dim() const { return dims.back(); }
    std::size_t layer_count() const { return weights.size(); }
};

// Glorot-uniform weights (+-sqrt(6/(fan_in+fan_out))), zero biases, seeded.
Mlp make_mlp(const std::vector<int>& dims, std::uint64_t seed, std::uint64_t stream);

// Branch consumes the 2M-vector (re u_1, im u_1, ..., re u_M, im u_M) and
// emits 2q coefficients: the first q pair with the shared trunk basis for
// the real part, the last q for the imaginary part. The trunk consumes the
// query angle mapped affinely from [-half_angle, half_angle] to [-1, 1].
struct DeepOnetModel {
    Mlp branch;
    Mlp trunk;
    int q = 256;
    int sensor_count = 10;
    double half_angle = 1.5707963267948966;
};

// Paper-shaped model: branch (2M - hidden - 2q), trunk (1 - hidden - hidden - q).
DeepOnetModel make_deeponet(int sensor_count, double half_angle, int hidden = 256, int q = 256,
                            std::uint64_t seed = 0);

struct TrainConfig {
    double lr_max = 1e-3;
    double weight_decay = 1e-4;
    int t0 = 1000;
    int t_mult = 2;
    double lr_min = 1e-6;
    int batch_size = 50000;
    int max_iters = 10000;
    std::uint64_t seed = 0;
};

Complex predict(const DeepOnetModel& model, const std::vector<Complex>& u_sen, double phi);

std::vector<TraceSample> predict_dense(const DeepOnetModel& model,
                                       const std::vector<Complex>& u_sen,
                                       const std::vector<double>& angles);

// Mean over the batch of |prediction - target|^2.
double loss(const DeepOnetModel& model, const std::vector<Triplet>& batch);

struct Gradients {
    std::vector<Eigen::MatrixXd> branch_w, trunk_w;
    std::vector<Eigen::VectorXd> branch_b, trunk_b;
};

Gradients grad(const DeepOnetModel& model, const std::vector<Triplet>& batch);

struct AdamWState {
    Gradients m, v; // first and second moments, parameter-shaped
    long step = 0;
    double beta1 = 0.9, beta2 = 0.999, epsilon = 1e-8, weight_decay = 0.0;
};

AdamWState make_adamw_state(const DeepOnetModel& model, double weight_decay);

// theta <- theta - lr * (m_hat / (sqrt(v_hat) + eps) + wd * theta)
void adamw_step(DeepOnetModel& model, AdamWState& state, const Gradients& grads, double lr);

// Warm-restart schedule: periods t0, t0*t_mult, t0*t_mult^2, ...
double cosine_lr(long iter, const TrainConfig& cfg);

struct TrainResult {
    DeepOnetModel model;
    std::vector<double> loss_history; // one entry per iteration
};

// Runs max_iters iterations of AdamW on uniformly sampled mini-batches
// (with replacement across iterations). Throws on divergence (NaN loss),
// reporting the iteration index.
TrainResult train(const Dataset& dataset, const TrainConfig& cfg, DeepOnetModel model);

// Convenience: paper-shaped model inferred from the dataset header.
TrainResult train(const Dataset& dataset, const TrainConfig& cfg,
                  int hidden = 256, int q = 256);

// Binary model file, magic "DONX", little-endian.
void save_model(const DeepOnetModel& model, const std::filesystem::path& path);
DeepOnetModel load_model(const std::filesystem::path& path);

// Header summary for the model-info CLI subcommand.
std::string model_info(const std::filesystem::path& path);

} // namespace helios

#endif
