#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace r3sgm {

/// Row-major 8-bit grayscale raster. y grows downwards, so the pixel
/// "above" (x, y) is (x, y - 1); raster order is left-to-right, top-to-bottom.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw std::invalid_argument("GrayImage: dimensions must be >= 1");
    }

    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }

    /// Edge-replicated access: out-of-image coordinates clamp to the border.
    std::uint8_t at_clamped(int x, int y) const {
        if (x < 0) x = 0;
        if (x >= width) x = width - 1;
        if (y < 0) y = 0;
        if (y >= height) y = height - 1;
        return at(x, y);
    }

    const std::uint8_t* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width; }

    bool same_size(const GrayImage& o) const { return width == o.width && height == o.height; }
    std::int64_t pixels() const { return static_cast<std::int64_t>(width) * height; }
};

/// Sentinel for pixels with no disparity estimate.
inline constexpr std::int32_t kInvalidDisparity = -1;

/// Integer disparity map; values are in [0, d_max] or kInvalidDisparity.
struct DisparityMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> values;

    DisparityMap() = default;
    DisparityMap(int w, int h, std::int32_t fill = kInvalidDisparity)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw std::invalid_argument("DisparityMap: dimensions must be >= 1");
    }

    std::int32_t at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    std::int32_t& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }

    bool valid(int x, int y) const { return at(x, y) != kInvalidDisparity; }
    bool same_size(const DisparityMap& o) const { return width == o.width && height == o.height; }
    std::int64_t pixels() const { return static_cast<std::int64_t>(width) * height; }

    /// Fraction of pixels with a valid value.
    double density() const {
        std::int64_t n = 0;
        for (auto v : values) n += (v != kInvalidDisparity);
        return pixels() > 0 ? static_cast<double>(n) / static_cast<double>(pixels()) : 0.0;
    }
};

/// Ground-truth disparities; negative values mark pixels excluded from evaluation.
struct GtDisparity {
    int width = 0;
    int height = 0;
    std::vector<float> values;
    double scale = 1.0;  // divisor that was applied to the raw stored integers

    GtDisparity() = default;
    GtDisparity(int w, int h, float fill = -1.0f)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw std::invalid_argument("GtDisparity: dimensions must be >= 1");
    }

    float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    float& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
    bool valid(int x, int y) const { return at(x, y) >= 0.0f; }
};

/// Left-right consistency thresholds: a match survives when the disparity
/// difference is at most max(abs, rel * d).
struct LrThresholds {
    int abs = 1;
    double rel = 0.03;
};

/// Parameters shared by the matching pipeline.
struct StereoParams {
    int d_max = 64;   // disparity search range is [0, d_max]
    int window = 13;  // census window width W (odd, 3..15)
    int p1 = 8;       // small smoothness penalty
    int p2 = 96;      // large smoothness penalty, > p1
    LrThresholds lr;

    /// Largest possible census matching cost (W*W - 1), also the clamp
    /// sentinel for out-of-range disparities.
    int c_max() const { return window * window - 1; }

    void validate() const {
        if (d_max < 0) throw std::invalid_argument("StereoParams: d_max must be >= 0");
        if (window % 2 == 0 || window < 3 || window > 15)
            throw std::invalid_argument("StereoParams: census window width must be odd and in [3, 15]");
        if (p1 <= 0 || p2 <= p1)
            throw std::invalid_argument("StereoParams: penalties must satisfy 0 < P1 < P2");
        if (lr.abs < 0 || lr.rel < 0.0 || lr.rel >= 1.0)
            throw std::invalid_argument("StereoParams: LR thresholds must satisfy abs >= 0, 0 <= rel < 1");
    }
};

}  // namespace r3sgm
