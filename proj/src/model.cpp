#include "inbench/model.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "inbench/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "parameter format is little-endian; byte-swapped hosts are unsupported");

namespace inbench {

using net::NetDims;
using net::Tensors;
using net::Workspace;

void TrainConfig::validate() const {
    if (batch_size <= 0) throw ConfigError("train.batch_size must be > 0");
    if (steps < 0) throw ConfigError("train.steps must be >= 0");
    if (lr <= 0.0) throw ConfigError("train.lr must be > 0");
    for (double s : label_scale)
        if (s <= 0.0) throw ConfigError("train.label_scale entries must be > 0");
    if (f_unit <= 0.0 || m_unit <= 0.0) throw ConfigError("train wrench scales must be > 0");
}

ModelParams init_params(const net::NetDims& dims, const TrainConfig& cfg) {
    ModelParams p;
    p.t.resize(dims);
    p.label_scale = cfg.label_scale;
    p.wrench_scale = {cfg.f_unit, cfg.m_unit};

    Rng rng(mix_seed(cfg.rng_seed, 0x1417));
    const double gain = std::sqrt(2.0 / (1.0 + net::kLeakySlope * net::kLeakySlope));
    auto he_uniform = [&](std::vector<float>& w, int fan_in) {
        const double bound = gain * std::sqrt(3.0 / fan_in);
        for (float& v : w) v = static_cast<float>(rng.uniform(-bound, bound));
    };
    he_uniform(p.t.conv1_w, dims.in_c * 9);
    he_uniform(p.t.conv2_w, dims.c1 * 9);
    he_uniform(p.t.conv3_w, dims.c2 * 9);
    he_uniform(p.t.fci_w, dims.flat());
    he_uniform(p.t.wr1_w, dims.wr_in);
    he_uniform(p.t.wr2_w, dims.wr1);
    he_uniform(p.t.fuse_w, dims.fuse_in());
    // head stays zero
    return p;
}

std::array<double, 5> normalize_label(const ModelParams& p, const CorrectiveAction& d) {
    const auto a = d.as_array();
    std::array<double, 5> out{};
    for (int i = 0; i < 5; ++i) out[i] = a[i] / p.label_scale[i];
    return out;
}

CorrectiveAction denormalize_label(const ModelParams& p, const std::array<double, 5>& y) {
    std::array<double, 5> out{};
    for (int i = 0; i < 5; ++i) out[i] = y[i] * p.label_scale[i];
    return CorrectiveAction::from_array(out);
}

namespace {

void load_inputs(const ModelParams& p, const ImageTensor& img, const WrenchReading& w,
                 Workspace<float>& ws) {
    const NetDims& d = p.t.dims;
    if (img.height != d.in_h || img.width != d.in_w || img.channels != d.in_c)
        throw ShapeMismatch("image dimensions do not match the trained model");
    // channel-last raster -> channel-first planes
    for (int c = 0; c < d.in_c; ++c) {
        float* plane = ws.img.data() + static_cast<size_t>(c) * d.in_h * d.in_w;
        for (int r = 0; r < d.in_h; ++r)
            for (int col = 0; col < d.in_w; ++col)
                plane[r * d.in_w + col] = img.at(r, col, c);
    }
    const double fu = p.wrench_scale[0], mu = p.wrench_scale[1];
    ws.wr[0] = static_cast<float>(w.f.x / fu);
    ws.wr[1] = static_cast<float>(w.f.y / fu);
    ws.wr[2] = static_cast<float>(w.f.z / fu);
    ws.wr[3] = static_cast<float>(w.m.x / mu);
    ws.wr[4] = static_cast<float>(w.m.y / mu);
    ws.wr[5] = static_cast<float>(w.m.z / mu);
}

} // namespace

CorrectiveAction forward(const ModelParams& p, const ImageTensor& img, const WrenchReading& w) {
    Workspace<float> ws;
    ws.resize(p.t.dims);
    load_inputs(p, img, w, ws);
    net::forward_pass(p.t, ws);
    std::array<double, 5> y{};
    for (int i = 0; i < 5; ++i) y[i] = ws.y[i];
    return denormalize_label(p, y);
}

std::pair<double, Tensors<float>> loss_and_grad(const ModelParams& p,
                                                const std::vector<Sample>& batch) {
    if (batch.empty()) throw EmptyDataset("loss_and_grad: empty batch");
    Tensors<float> grads;
    grads.resize(p.t.dims);
    Workspace<float> ws;
    ws.resize(p.t.dims);

    double loss = 0.0;
    const float inv_b = 1.0f / static_cast<float>(batch.size());
    for (const Sample& s : batch) {
        load_inputs(p, s.image, s.wrench, ws);
        net::forward_pass(p.t, ws);
        const auto d = normalize_label(p, s.label);
        for (int i = 0; i < 5; ++i) {
            const float e = ws.y[i] - static_cast<float>(d[i]);
            loss += static_cast<double>(e) * e;
            ws.dy[i] = 2.0f * e * inv_b;
        }
        net::backward_pass(p.t, ws, grads);
    }
    return {loss / static_cast<double>(batch.size()), std::move(grads)};
}

namespace {

struct Adam {
    Tensors<float> m, v;
    double beta1, beta2, eps, lr;
    int t = 0;

    Adam(const NetDims& dims, const TrainConfig& cfg)
        : beta1(cfg.beta1), beta2(cfg.beta2), eps(cfg.eps), lr(cfg.lr) {
        m.resize(dims);
        v.resize(dims);
    }

    void step(Tensors<float>& params, Tensors<float>& grads) {
        ++t;
        const double bc1 = 1.0 - std::pow(beta1, t);
        const double bc2 = 1.0 - std::pow(beta2, t);
        auto update = [&](std::vector<float>& p, std::vector<float>& g, std::vector<float>& mm,
                          std::vector<float>& vv) {
            for (size_t i = 0; i < p.size(); ++i) {
                mm[i] = static_cast<float>(beta1 * mm[i] + (1.0 - beta1) * g[i]);
                vv[i] = static_cast<float>(beta2 * vv[i] + (1.0 - beta2) * g[i] * g[i]);
                const double mhat = mm[i] / bc1;
                const double vhat = vv[i] / bc2;
                p[i] -= static_cast<float>(lr * mhat / (std::sqrt(vhat) + eps));
            }
        };
        update(params.conv1_w, grads.conv1_w, m.conv1_w, v.conv1_w);
        update(params.conv1_b, grads.conv1_b, m.conv1_b, v.conv1_b);
        update(params.conv2_w, grads.conv2_w, m.conv2_w, v.conv2_w);
        update(params.conv2_b, grads.conv2_b, m.conv2_b, v.conv2_b);
        update(params.conv3_w, grads.conv3_w, m.conv3_w, v.conv3_w);
        update(params.conv3_b, grads.conv3_b, m.conv3_b, v.conv3_b);
        update(params.fci_w, grads.fci_w, m.fci_w, v.fci_w);
        update(params.fci_b, grads.fci_b, m.fci_b, v.fci_b);
        update(params.wr1_w, grads.wr1_w, m.wr1_w, v.wr1_w);
        update(params.wr1_b, grads.wr1_b, m.wr1_b, v.wr1_b);
        update(params.wr2_w, grads.wr2_w, m.wr2_w, v.wr2_w);
        update(params.wr2_b, grads.wr2_b, m.wr2_b, v.wr2_b);
        update(params.fuse_w, grads.fuse_w, m.fuse_w, v.fuse_w);
        update(params.fuse_b, grads.fuse_b, m.fuse_b, v.fuse_b);
        update(params.head_w, grads.head_w, m.head_w, v.head_w);
        update(params.head_b, grads.head_b, m.head_b, v.head_b);
    }
};

TrainResult run_training(ModelParams params, const Dataset& data, const AugmentConfig& aug,
                         const TrainConfig& cfg) {
    cfg.validate();
    aug.validate();
    if (data.records.empty()) throw EmptyDataset("train: dataset has no records");

    TrainResult result;
    Adam adam(params.t.dims, cfg);
    Tensors<float> grads;
    grads.resize(params.t.dims);
    Workspace<float> ws;
    ws.resize(params.t.dims);
    Rng draw_rng(mix_seed(cfg.rng_seed, 0xBA7C4));

    result.loss_curve.reserve(cfg.steps);
    for (int step = 0; step < cfg.steps; ++step) {
        grads.for_each([](const char*, std::vector<float>& g) {
            std::fill(g.begin(), g.end(), 0.0f);
        });
        double loss = 0.0;
        const float inv_b = 1.0f / static_cast<float>(cfg.batch_size);
        for (int slot = 0; slot < cfg.batch_size; ++slot) {
            const size_t idx = draw_rng.uniform_index(data.records.size());
            Rng aug_rng(mix_seed(mix_seed(aug.rng_seed, static_cast<uint64_t>(step)),
                                 static_cast<uint64_t>(slot)));
            const Sample s = augment_sample(data.records[idx], aug, aug_rng);
            load_inputs(params, s.image, s.wrench, ws);
            net::forward_pass(params.t, ws);
            const auto d = normalize_label(params, s.label);
            for (int i = 0; i < 5; ++i) {
                const float e = ws.y[i] - static_cast<float>(d[i]);
                loss += static_cast<double>(e) * e;
                ws.dy[i] = 2.0f * e * inv_b;
            }
            net::backward_pass(params.t, ws, grads);
        }
        adam.step(params.t, grads);
        result.loss_curve.push_back(loss / cfg.batch_size);
    }
    result.params = std::move(params);
    return result;
}

} // namespace

TrainResult train(const Dataset& data, const AugmentConfig& aug, const TrainConfig& cfg) {
    net::NetDims dims;
    dims.in_h = data.height;
    dims.in_w = data.width;
    dims.in_c = data.channels;
    return run_training(init_params(dims, cfg), data, aug, cfg);
}

TrainResult train_from(const ModelParams& start, const Dataset& data, const AugmentConfig& aug,
                       const TrainConfig& cfg) {
    return run_training(start, data, aug, cfg);
}

// ---------------------------------------------------------------------------
// parameter files

namespace {
constexpr char kParamsMagic[4] = {'I', 'N', 'B', 'P'};
constexpr uint16_t kParamsVersion = 1;
} // namespace

void save_params(const ModelParams& p, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f.write(kParamsMagic, 4);
    auto put_u16 = [&](uint16_t v) { f.write(reinterpret_cast<const char*>(&v), 2); };
    auto put_f64 = [&](double v) { f.write(reinterpret_cast<const char*>(&v), 8); };
    put_u16(kParamsVersion);
    const NetDims& d = p.t.dims;
    for (int v : {d.in_h, d.in_w, d.in_c, d.c1, d.c2, d.c3, d.fci, d.wr_in, d.wr1, d.wr2, d.fuse,
                  d.out})
        put_u16(static_cast<uint16_t>(v));
    for (double v : p.label_scale) put_f64(v);
    for (double v : p.wrench_scale) put_f64(v);
    p.t.for_each([&](const char*, const std::vector<float>& t) {
        f.write(reinterpret_cast<const char*>(t.data()),
                static_cast<std::streamsize>(t.size() * 4));
    });
    if (!f) throw IoError("short write: " + path);
}

ModelParams load_params(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    char magic[4];
    if (!f.read(magic, 4)) throw TruncatedFile(path + ": missing header");
    if (std::memcmp(magic, kParamsMagic, 4) != 0) throw FormatError(path + ": bad magic");
    auto get_u16 = [&]() {
        uint16_t v = 0;
        if (!f.read(reinterpret_cast<char*>(&v), 2)) throw TruncatedFile(path + ": header");
        return v;
    };
    auto get_f64 = [&]() {
        double v = 0;
        if (!f.read(reinterpret_cast<char*>(&v), 8)) throw TruncatedFile(path + ": header");
        return v;
    };
    if (get_u16() != kParamsVersion) throw FormatError(path + ": unsupported version");
    NetDims d;
    d.in_h = get_u16(); d.in_w = get_u16(); d.in_c = get_u16();
    d.c1 = get_u16(); d.c2 = get_u16(); d.c3 = get_u16();
    d.fci = get_u16(); d.wr_in = get_u16(); d.wr1 = get_u16(); d.wr2 = get_u16();
    d.fuse = get_u16(); d.out = get_u16();
    ModelParams p;
    p.t.resize(d);
    for (double& v : p.label_scale) v = get_f64();
    for (double& v : p.wrench_scale) v = get_f64();
    p.t.for_each([&](const char* name, std::vector<float>& t) {
        if (!f.read(reinterpret_cast<char*>(t.data()), static_cast<std::streamsize>(t.size() * 4)))
            throw TruncatedFile(path + ": tensor " + name);
    });
    return p;
}

} // namespace inbench
