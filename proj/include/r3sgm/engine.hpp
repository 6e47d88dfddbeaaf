#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "r3sgm/census.hpp"
#include "r3sgm/types.hpp"

namespace r3sgm {

/// Aggregated matching costs of one pixel over the full disparity range.
/// All costs are stored scaled by 4 (the number of aggregation directions):
/// unaries enter as 4*C and penalties as 4*P1 / 4*P2, which keeps the
/// directional average exact in integer arithmetic. cached_min always equals
/// min(costs), maintained incrementally so predecessors never get rescanned.
struct CostVector {
    std::vector<std::int32_t> costs;
    std::int32_t cached_min = 0;

    CostVector() = default;
    explicit CostVector(int n) : costs(static_cast<std::size_t>(n), 0) {}

    int size() const { return static_cast<int>(costs.size()); }
};

/// Smoothness penalty between two disparity labels: 0 when equal, P1 when
/// adjacent, P2 otherwise.
int penalty(int d, int d_prime, const StereoParams& params);

/// Winner-takes-all: smallest disparity attaining the minimum cost.
int wta(std::span<const std::int32_t> costs);
inline int wta(const CostVector& cv) { return wta(cv.costs); }

/// One aggregation update: combines a pixel's unary costs with the cost
/// vectors of its available causal predecessors (left, above-left, above,
/// above-right). Missing predecessors contribute nothing; each present one
/// adds an increment in [0, 4*P2].
CostVector aggregate_step(std::span<const std::int32_t> unary,
                          std::span<const CostVector* const> predecessors,
                          const StereoParams& params);

/// Cost-vector storage for one streaming pass: the previous row, a 3-wide
/// window of the row above the cursor, and the register for the pixel to the
/// cursor's left. Size is O(width * (d_max + 1)), independent of height.
class CostLineBuffer {
  public:
    CostLineBuffer(int width, int d_max);

    void start_row(int y);

    /// Pointers to the available predecessors of the cursor pixel, in the
    /// order left, above-left, above, above-right; absent ones are null.
    std::array<const CostVector*, 4> predecessors() const;

    /// Publishes the cursor pixel's cost vector and moves the cursor right.
    void advance(const CostVector& current);

    /// Live cost entries (int32 slots) held by this buffer.
    std::size_t cost_entries() const;

  private:
    int width_;
    int nd_;
    int x_ = 0;
    int y_ = 0;
    std::vector<CostVector> row_;       // previous row ahead of the cursor, current row behind it
    std::array<CostVector, 3> window_;  // above-left, above, above-right of the cursor
    std::array<bool, 3> have_window_{};
    CostVector left_;
    bool have_left_ = false;
};

struct EngineStats {
    std::size_t peak_cost_entries = 0;  // int32 cost slots live across both lattices
    std::size_t unary_reads_left = 0;   // unary vectors consumed, one per pixel
    std::size_t unary_reads_right = 0;
    StreamStats stream;
};

struct StereoResult {
    DisparityMap left;
    DisparityMap right;  // right-image disparities, stored as non-negative magnitudes
    EngineStats stats;
};

/// Single-pass four-direction matcher: consumes the unary stream in raster
/// order, runs one aggregation step per pixel per image against its own
/// CostLineBuffer, and selects disparities for both images by WTA.
StereoResult run_r3sgm(const GrayImage& left, const GrayImage& right, const StereoParams& params);

}  // namespace r3sgm
