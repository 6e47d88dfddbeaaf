#include "r3sgm/census.hpp"

#include <algorithm>
#include <bit>

namespace r3sgm {
namespace {

void check_window(int window) {
    if (window % 2 == 0 || window < 3 || window > 15)
        throw std::invalid_argument("census window width must be odd and in [3, 15]");
}

// Census from row pointers, so the same comparison loop serves both direct
// image access and the stream's line buffers. rows[i] is the pixel row for
// window row i (already vertically clamped); columns clamp here.
CensusFeature census_from_rows(const std::uint8_t* const* rows, int x, int width, int window) {
    const int half = window / 2;
    const std::uint8_t center = rows[half][x];
    CensusFeature f;
    f.nbits = static_cast<std::int16_t>(window * window - 1);
    int k = 0;
    for (int wy = 0; wy < window; ++wy) {
        const std::uint8_t* row = rows[wy];
        for (int wx = -half; wx <= half; ++wx) {
            if (wy == half && wx == 0) continue;
            int cx = std::clamp(x + wx, 0, width - 1);
            if (row[cx] < center) f.set_bit(k);
            ++k;
        }
    }
    return f;
}

// Line buffers holding the most recent window + 1 raw rows of one image.
class RowBank {
  public:
    RowBank(const GrayImage& img, int window)
        : img_(img), capacity_(window + 1), tags_(static_cast<std::size_t>(window + 1), -1),
          slots_(static_cast<std::size_t>(window + 1) * img.width) {}

    // Makes row y available (no-op when already buffered); rows arrive in
    // non-decreasing order, stale rows are overwritten in place.
    void load(int y) {
        const std::size_t slot = static_cast<std::size_t>(y % capacity_);
        if (tags_[slot] == y) return;
        std::copy_n(img_.row(y), img_.width, slots_.data() + slot * img_.width);
        tags_[slot] = y;
        ++held_;
        if (held_ > capacity_) held_ = capacity_;
        peak_rows_ = std::max(peak_rows_, static_cast<std::size_t>(held_));
    }

    const std::uint8_t* row(int y) const {
        return slots_.data() + static_cast<std::size_t>(y % capacity_) * img_.width;
    }

    std::size_t peak_rows() const { return peak_rows_; }

  private:
    const GrayImage& img_;
    int capacity_;
    int held_ = 0;
    std::size_t peak_rows_ = 0;
    std::vector<int> tags_;
    std::vector<std::uint8_t> slots_;
};

}  // namespace

int hamming(const CensusFeature& a, const CensusFeature& b) {
    if (a.nbits != b.nbits) throw std::invalid_argument("hamming: feature widths differ");
    int n = 0;
    for (int i = 0; i < 4; ++i) n += std::popcount(a.words[i] ^ b.words[i]);
    return n;
}

CensusFeature census_at(const GrayImage& img, int x, int y, int window) {
    check_window(window);
    if (x < 0 || x >= img.width || y < 0 || y >= img.height)
        throw std::invalid_argument("census_at: pixel outside image");
    const int half = window / 2;
    const std::uint8_t* rows[15];
    for (int wy = 0; wy < window; ++wy)
        rows[wy] = img.row(std::clamp(y - half + wy, 0, img.height - 1));
    return census_from_rows(rows, x, img.width, window);
}

struct UnaryStream::Impl {
    const GrayImage& left;
    const GrayImage& right;
    StereoParams params;
    int c_max;
    int half;

    RowBank left_rows;
    RowBank right_rows;
    FeatureRingBuffer left_ring;
    FeatureRingBuffer right_ring;

    int x = 0;  // cursor column, runs to width + d_max - 1 to flush right costs
    int y = 0;

    Impl(const GrayImage& l, const GrayImage& r, const StereoParams& p)
        : left(l), right(r), params(p), c_max(p.c_max()), half(p.window / 2),
          left_rows(l, p.window), right_rows(r, p.window),
          left_ring(p.d_max + 1), right_ring(p.d_max + 1) {}

    void ensure_rows(int row) {
        for (int wy = row - half; wy <= row + half; ++wy) {
            const int cy = std::clamp(wy, 0, left.height - 1);
            left_rows.load(cy);
            right_rows.load(cy);
        }
    }

    CensusFeature census(const RowBank& bank, int px, int py) const {
        const std::uint8_t* rows[15];
        for (int wy = 0; wy < params.window; ++wy)
            rows[wy] = bank.row(std::clamp(py - half + wy, 0, left.height - 1));
        return census_from_rows(rows, px, left.width, params.window);
    }
};

UnaryStream::UnaryStream(const GrayImage& left, const GrayImage& right, const StereoParams& params) {
    params.validate();
    if (!left.same_size(right)) throw std::invalid_argument("UnaryStream: image dimensions differ");
    if (left.width <= params.d_max)
        throw std::invalid_argument("UnaryStream: image width must exceed d_max");
    impl_ = std::make_unique<Impl>(left, right, params);
}

UnaryStream::~UnaryStream() = default;

bool UnaryStream::next(UnaryPair& out) {
    Impl& s = *impl_;
    const int width = s.left.width;
    const int height = s.left.height;
    const int d_max = s.params.d_max;
    const int nd = d_max + 1;

    if (s.y >= height) return false;

    out.left_costs.resize(static_cast<std::size_t>(nd));
    out.right_costs.resize(static_cast<std::size_t>(nd));
    out.y = s.y;
    out.has_left = false;
    out.has_right = false;

    if (s.x == 0) {
        s.left_ring.clear();
        s.right_ring.clear();
    }

    if (s.x < width) {
        // Pixel phase: compute both features, update the rolling buffers,
        // then the left-image costs for the cursor pixel.
        s.ensure_rows(s.y);
        s.left_ring.push(s.census(s.left_rows, s.x, s.y), s.x);
        s.right_ring.push(s.census(s.right_rows, s.x, s.y), s.x);

        const std::size_t features_held =
            static_cast<std::size_t>(s.left_ring.size() + s.right_ring.size());
        stats_.peak_features = std::max(stats_.peak_features, features_held);
        stats_.peak_pixel_rows =
            std::max(stats_.peak_pixel_rows, s.left_rows.peak_rows() + s.right_rows.peak_rows());

        out.x = s.x;
        out.has_left = true;
        const CensusFeature& phi_l = s.left_ring.at_column(s.x);
        for (int d = 0; d < nd; ++d) {
            out.left_costs[static_cast<std::size_t>(d)] =
                d <= s.x ? hamming(phi_l, s.right_ring.at_column(s.x - d)) : s.c_max;
        }
    }

    // Right-image costs for the pixel d_max columns behind the cursor; its
    // candidate matches in the left image are all buffered by now. During the
    // flush phase (x >= width) matches past the row edge clamp to C_max.
    const int qx = s.x - d_max;
    if (qx >= 0) {
        out.right_x = qx;
        out.has_right = true;
        const CensusFeature& phi_r = s.right_ring.at_column(qx);
        for (int d = 0; d < nd; ++d) {
            out.right_costs[static_cast<std::size_t>(d)] =
                qx + d < width ? hamming(phi_r, s.left_ring.at_column(qx + d)) : s.c_max;
        }
    }

    ++s.x;
    if (s.x >= width + d_max) {
        s.x = 0;
        ++s.y;
    }
    return true;
}

}  // namespace r3sgm
