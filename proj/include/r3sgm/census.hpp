#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "r3sgm/types.hpp"

namespace r3sgm {

/// Census transform feature: one bit per non-center pixel of a W x W window,
/// in raster order, set when that neighbour is strictly darker than the
/// center. W <= 15 needs at most 224 bits.
struct CensusFeature {
    std::array<std::uint64_t, 4> words{};
    std::int16_t nbits = 0;

    void set_bit(int k) { words[k >> 6] |= std::uint64_t{1} << (k & 63); }
    bool bit(int k) const { return (words[k >> 6] >> (k & 63)) & 1; }
    bool operator==(const CensusFeature&) const = default;
};

/// Number of differing bits between two equal-width features.
int hamming(const CensusFeature& a, const CensusFeature& b);

/// Census transform of the W x W window centered on (x, y); out-of-image
/// neighbours are border-clamped.
CensusFeature census_at(const GrayImage& img, int x, int y, int window);

/// The most recent census features of one image row, indexed by absolute
/// column; capacity d_max + 1, oldest evicted first, cleared per row.
class FeatureRingBuffer {
  public:
    explicit FeatureRingBuffer(int capacity)
        : slots_(static_cast<std::size_t>(capacity)), capacity_(capacity) {}

    void clear() {
        newest_ = -1;
        held_ = 0;
    }

    void push(const CensusFeature& f, int column) {
        slots_[static_cast<std::size_t>(column % capacity_)] = f;
        newest_ = column;
        if (held_ < capacity_) ++held_;
    }

    bool has_column(int column) const {
        return newest_ >= 0 && column <= newest_ && column > newest_ - held_;
    }

    const CensusFeature& at_column(int column) const {
        return slots_[static_cast<std::size_t>(column % capacity_)];
    }

    int size() const { return held_; }
    int capacity() const { return capacity_; }
    int newest_column() const { return newest_; }

  private:
    std::vector<CensusFeature> slots_;
    int capacity_ = 0;
    int newest_ = -1;
    int held_ = 0;
};

/// One emission of the unary stream: matching costs over the full disparity
/// range for the cursor pixel in the left image and, once the cursor is far
/// enough along the row, for the right-image pixel d_max columns earlier.
struct UnaryPair {
    int x = 0;
    int y = 0;
    bool has_left = false;
    std::vector<std::int32_t> left_costs;

    int right_x = 0;
    bool has_right = false;
    std::vector<std::int32_t> right_costs;
};

/// Peak buffer occupancy observed by a unary stream, for verifying the
/// streaming memory contract.
struct StreamStats {
    std::size_t peak_features = 0;    // census features held across both rings
    std::size_t peak_pixel_rows = 0;  // raw image rows held across both line banks
};

/// Single-pass unary cost generator: walks both images in raster order,
/// keeps W + 1 raw rows per image in line buffers and the most recent
/// d_max + 1 census features per image in rolling buffers, and emits costs
/// as Hamming distances between the buffered features. Strictly sequential;
/// one stream serves one consumer.
class UnaryStream {
  public:
    UnaryStream(const GrayImage& left, const GrayImage& right, const StereoParams& params);
    ~UnaryStream();

    UnaryStream(const UnaryStream&) = delete;
    UnaryStream& operator=(const UnaryStream&) = delete;

    /// Fills `out` with the next emission; returns false when exhausted.
    /// Per row: `width` pixel emissions, then d_max flush emissions carrying
    /// the right-image costs whose left-image matches ran off the row.
    bool next(UnaryPair& out);

    const StreamStats& stats() const { return stats_; }

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    StreamStats stats_;
};

}  // namespace r3sgm
