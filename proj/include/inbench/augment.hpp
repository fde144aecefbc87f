#pragma once

#include <array>
#include <cstdint>

#include "inbench/collect.hpp"
#include "inbench/rng.hpp"

namespace inbench {

struct AugmentConfig {
    double jitter_h = 0.05;       // hue offset range (wraps)
    double jitter_s = 0.2;        // saturation offset range
    double jitter_v = 0.2;        // value offset range
    double randconv_std = 1.0 / 3.0; // kernel weights ~ N(0, 1/9)
    int pad = 8;                  // translation frame padding [px]
    double crop_min_fraction = 0.8;
    double p_jitter = 0.4, p_gray = 0.4, p_randconv = 0.2;
    bool visual = true;           // master switch for image augmentations
    bool force = true;            // master switch for wrench scaling
    uint64_t rng_seed = 11;

    void validate() const;
};

enum class ColorMode { jitter, gray, randconv };

// Mode draw used by augment_sample; exposed for distribution tests.
ColorMode pick_color_mode(const AugmentConfig& cfg, Rng& rng);

// 3x3x3->3 convolution with replicate padding followed by per-image min-max
// renormalization to [0, 1]. Kernel layout [out][in][ky][kx].
ImageTensor convolve_renorm(const ImageTensor& img, const std::array<float, 81>& kernel);
ImageTensor random_convolution(const ImageTensor& img, const AugmentConfig& cfg, Rng& rng);

// RGB->HSV, uniform per-image channel offsets (hue wraps mod 1, S/V clamped),
// HSV->RGB.
ImageTensor color_jitter(const ImageTensor& img, const AugmentConfig& cfg, Rng& rng);

// Luminance 0.299 r + 0.587 g + 0.114 b replicated to all channels.
ImageTensor gray_scale(const ImageTensor& img);

// Embeds the image at a random offset inside a zero frame grown by pad on
// each side, then extracts a random square crop of side >=
// crop_min_fraction * H, resized back to H x W with nearest neighbor.
ImageTensor translate_and_crop(const ImageTensor& img, const AugmentConfig& cfg, Rng& rng);

// Single alpha ~ U[0,1] scaling all six wrench components.
WrenchReading augment_wrench_alpha(const WrenchReading& w, double alpha);
WrenchReading augment_wrench(const WrenchReading& w, Rng& rng);

// One color transform drawn per the configured probabilities, then
// translate_and_crop, then wrench scaling. Labels pass through untouched.
Sample augment_sample(const Sample& s, const AugmentConfig& cfg, Rng& rng);

// rgb/hsv conversions on [0,1] triples (h wraps in [0,1))
std::array<double, 3> rgb_to_hsv(double r, double g, double b);
std::array<double, 3> hsv_to_rgb(double h, double s, double v);

} // namespace inbench
