#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "inbench/augment.hpp"
#include "inbench/collect.hpp"
#include "inbench/model_net.hpp"

namespace inbench {

// Trained regressor: tensors plus the fixed normalization scales baked in at
// training time (needed to reproduce forward() standalone).
struct ModelParams {
    net::Tensors<float> t;
    std::array<double, 5> label_scale{10e-3, 10e-3, 0.17453292519943295, 0.17453292519943295,
                                      0.17453292519943295};
    std::array<double, 2> wrench_scale{10.0, 1.0}; // (f_unit [N], m_unit [N*m])
};

struct TrainConfig {
    int batch_size = 64;
    int steps = 10000;
    double lr = 1e-3, beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    std::array<double, 5> label_scale{10e-3, 10e-3, 0.17453292519943295, 0.17453292519943295,
                                      0.17453292519943295}; // (b0, b0, c0, c0, c0)
    double f_unit = 10.0, m_unit = 1.0;
    uint64_t rng_seed = 21;

    void validate() const;
};

// He-uniform conv/fc weights for the leaky-ReLU stack; the head starts at
// zero so an untrained policy outputs the zero action.
ModelParams init_params(const net::NetDims& dims, const TrainConfig& cfg);

// Normalized 5-vector from the stored scales.
std::array<double, 5> normalize_label(const ModelParams& p, const CorrectiveAction& d);
CorrectiveAction denormalize_label(const ModelParams& p, const std::array<double, 5>& y);

// Deterministic, pure. Throws ShapeMismatch when the image dimensions differ
// from the trained ones.
CorrectiveAction forward(const ModelParams& p, const ImageTensor& img, const WrenchReading& w);

// Mean squared error over the batch in normalized label space, with
// backpropagated gradients (same shapes as the parameters).
std::pair<double, net::Tensors<float>> loss_and_grad(const ModelParams& p,
                                                     const std::vector<Sample>& batch);

struct TrainResult {
    ModelParams params;
    std::vector<double> loss_curve; // per-step training loss
};

// Adam on batches drawn with replacement, augmented on the fly.
// Throws EmptyDataset.
TrainResult train(const Dataset& data, const AugmentConfig& aug, const TrainConfig& cfg);
// Fine-tuning entry: same loop, warm-started from `start`.
TrainResult train_from(const ModelParams& start, const Dataset& data, const AugmentConfig& aug,
                       const TrainConfig& cfg);

// File format: "INBP" | u16 version=1 | 12 x u16 dims | 7 x f64 scales |
// f32 tensors in declaration order.
void save_params(const ModelParams& p, const std::string& path);
ModelParams load_params(const std::string& path);

} // namespace inbench
