#include "inbench/augment.hpp"

#include <algorithm>
#include <cmath>

#include "inbench/errors.hpp"

namespace inbench {

void AugmentConfig::validate() const {
    if (pad < 0) throw ConfigError("augment.pad must be >= 0");
    if (crop_min_fraction <= 0.0 || crop_min_fraction > 1.0)
        throw ConfigError("augment.crop_min_fraction must be in (0, 1]");
    const double psum = p_jitter + p_gray + p_randconv;
    if (std::abs(psum - 1.0) > 1e-9) throw ConfigError("color mode probabilities must sum to 1");
}

ColorMode pick_color_mode(const AugmentConfig& cfg, Rng& rng) {
    const double u = rng.uniform01();
    if (u < cfg.p_jitter) return ColorMode::jitter;
    if (u < cfg.p_jitter + cfg.p_gray) return ColorMode::gray;
    return ColorMode::randconv;
}

ImageTensor convolve_renorm(const ImageTensor& img, const std::array<float, 81>& kernel) {
    if (img.channels != 3) throw ShapeMismatch("convolve_renorm needs 3 channels");
    const int h = img.height, w = img.width;
    ImageTensor out = ImageTensor::filled(h, w, 3);
    float lo = std::numeric_limits<float>::infinity();
    float hi = -lo;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            for (int oc = 0; oc < 3; ++oc) {
                float acc = 0.0f;
                for (int ic = 0; ic < 3; ++ic) {
                    for (int ky = -1; ky <= 1; ++ky) {
                        const int rr = std::clamp(r + ky, 0, h - 1);
                        for (int kx = -1; kx <= 1; ++kx) {
                            const int cc = std::clamp(c + kx, 0, w - 1);
                            acc += kernel[((oc * 3 + ic) * 3 + (ky + 1)) * 3 + (kx + 1)] *
                                   img.at(rr, cc, ic);
                        }
                    }
                }
                out.at(r, c, oc) = acc;
                lo = std::min(lo, acc);
                hi = std::max(hi, acc);
            }
        }
    }
    const float range = hi - lo;
    if (range < 1e-12f) {
        for (float& v : out.data) v = std::clamp(v, 0.0f, 1.0f);
    } else {
        for (float& v : out.data) v = (v - lo) / range;
    }
    return out;
}

ImageTensor random_convolution(const ImageTensor& img, const AugmentConfig& cfg, Rng& rng) {
    std::array<float, 81> k{};
    for (float& v : k) v = static_cast<float>(rng.normal(0.0, cfg.randconv_std));
    return convolve_renorm(img, k);
}

std::array<double, 3> rgb_to_hsv(double r, double g, double b) {
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double d = mx - mn;
    double h = 0.0;
    if (d > 0.0) {
        if (mx == r) h = std::fmod((g - b) / d, 6.0);
        else if (mx == g) h = (b - r) / d + 2.0;
        else h = (r - g) / d + 4.0;
        h /= 6.0;
        if (h < 0.0) h += 1.0;
    }
    const double s = mx > 0.0 ? d / mx : 0.0;
    return {h, s, mx};
}

std::array<double, 3> hsv_to_rgb(double h, double s, double v) {
    h = h - std::floor(h);
    const double c = v * s;
    const double hp = h * 6.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    if (hp < 1) { r = c; g = x; }
    else if (hp < 2) { r = x; g = c; }
    else if (hp < 3) { g = c; b = x; }
    else if (hp < 4) { g = x; b = c; }
    else if (hp < 5) { r = x; b = c; }
    else { r = c; b = x; }
    const double m = v - c;
    return {r + m, g + m, b + m};
}

ImageTensor color_jitter(const ImageTensor& img, const AugmentConfig& cfg, Rng& rng) {
    if (img.channels != 3) throw ShapeMismatch("color_jitter needs 3 channels");
    const double dh = rng.uniform(-cfg.jitter_h, cfg.jitter_h);
    const double ds = rng.uniform(-cfg.jitter_s, cfg.jitter_s);
    const double dv = rng.uniform(-cfg.jitter_v, cfg.jitter_v);
    ImageTensor out = img;
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            auto hsv = rgb_to_hsv(img.at(r, c, 0), img.at(r, c, 1), img.at(r, c, 2));
            hsv[0] += dh; // wraps inside hsv_to_rgb
            hsv[1] = std::clamp(hsv[1] + ds, 0.0, 1.0);
            hsv[2] = std::clamp(hsv[2] + dv, 0.0, 1.0);
            const auto rgb = hsv_to_rgb(hsv[0], hsv[1], hsv[2]);
            out.at(r, c, 0) = static_cast<float>(std::clamp(rgb[0], 0.0, 1.0));
            out.at(r, c, 1) = static_cast<float>(std::clamp(rgb[1], 0.0, 1.0));
            out.at(r, c, 2) = static_cast<float>(std::clamp(rgb[2], 0.0, 1.0));
        }
    }
    return out;
}

ImageTensor gray_scale(const ImageTensor& img) {
    if (img.channels != 3) throw ShapeMismatch("gray_scale needs 3 channels");
    ImageTensor out = img;
    for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
            const float y = 0.299f * img.at(r, c, 0) + 0.587f * img.at(r, c, 1) +
                            0.114f * img.at(r, c, 2);
            out.at(r, c, 0) = y;
            out.at(r, c, 1) = y;
            out.at(r, c, 2) = y;
        }
    }
    return out;
}

ImageTensor translate_and_crop(const ImageTensor& img, const AugmentConfig& cfg, Rng& rng) {
    const int h = img.height, w = img.width, ch = img.channels;
    const int fh = h + 2 * cfg.pad, fw = w + 2 * cfg.pad;

    // draw order: embed row/col, crop side, crop row/col
    const int er = cfg.pad > 0 ? static_cast<int>(rng.uniform_index(2 * cfg.pad + 1)) : 0;
    const int ec = cfg.pad > 0 ? static_cast<int>(rng.uniform_index(2 * cfg.pad + 1)) : 0;
    const int smin = std::max(1, static_cast<int>(std::ceil(cfg.crop_min_fraction * h)));
    const int side = smin + static_cast<int>(rng.uniform_index(static_cast<uint64_t>(h - smin + 1)));
    const int cr = static_cast<int>(rng.uniform_index(static_cast<uint64_t>(fh - side + 1)));
    const int cc = static_cast<int>(rng.uniform_index(static_cast<uint64_t>(fw - side + 1)));

    ImageTensor out = ImageTensor::filled(h, w, ch);
    for (int r = 0; r < h; ++r) {
        const int sr = cr + static_cast<int>((static_cast<int64_t>(r) * side) / h);
        const int ir = sr - er; // frame row -> embedded image row
        for (int c = 0; c < w; ++c) {
            const int sc = cc + static_cast<int>((static_cast<int64_t>(c) * side) / h);
            const int ic = sc - ec;
            if (ir < 0 || ir >= h || ic < 0 || ic >= w) continue; // zero fill
            for (int k = 0; k < ch; ++k) out.at(r, c, k) = img.at(ir, ic, k);
        }
    }
    return out;
}

WrenchReading augment_wrench_alpha(const WrenchReading& w, double alpha) {
    WrenchReading out;
    out.f = w.f * alpha;
    out.m = w.m * alpha;
    return out;
}

WrenchReading augment_wrench(const WrenchReading& w, Rng& rng) {
    return augment_wrench_alpha(w, rng.uniform01());
}

Sample augment_sample(const Sample& s, const AugmentConfig& cfg, Rng& rng) {
    Sample out = s;
    if (cfg.visual) {
        switch (pick_color_mode(cfg, rng)) {
            case ColorMode::jitter: out.image = color_jitter(out.image, cfg, rng); break;
            case ColorMode::gray: out.image = gray_scale(out.image); break;
            case ColorMode::randconv: out.image = random_convolution(out.image, cfg, rng); break;
        }
        out.image = translate_and_crop(out.image, cfg, rng);
    }
    if (cfg.force) out.wrench = augment_wrench(out.wrench, rng);
    return out;
}

} // namespace inbench
