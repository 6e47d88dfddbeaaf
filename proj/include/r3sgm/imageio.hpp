#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "r3sgm/types.hpp"

namespace r3sgm {

/// Thrown for malformed or truncated image files; messages carry the byte
/// offset of the failure where applicable.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// PGM contents at full stored precision (maxval up to 65535).
struct PgmImage {
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::vector<std::uint16_t> samples;  // row-major, top-to-bottom
};

/// Parses binary ("P5") or ASCII ("P2") PGM without rescaling.
PgmImage read_pgm_raw(const std::string& path);

/// Reads a camera image. Inputs with maxval > 255 are reduced to 8 bits by
/// integer division; census matching only uses intensity ordering, so the
/// reduction is lossless for matching purposes.
GrayImage read_pgm(const std::string& path);

/// Writes binary PGM (P5), maxval 255.
void write_pgm(const std::string& path, const GrayImage& img);

/// Grayscale PFM payload after normalising to top-to-bottom row order.
struct PfmImage {
    int width = 0;
    int height = 0;
    std::vector<float> values;
};

/// Parses grayscale PFM ("Pf"); the sign of the scale field selects
/// endianness, rows are stored bottom-to-top on disk.
PfmImage read_pfm(const std::string& path);

/// Writes grayscale PFM: one 32-bit float per pixel, INVALID encoded as -1.0,
/// scale -1.0 (little-endian), bottom-to-top row order.
void write_pfm(const std::string& path, const DisparityMap& disp);

/// Converts PFM floats to an integer disparity map; negative values map to
/// INVALID, everything else is rounded to the nearest integer.
DisparityMap disparity_from_pfm(const PfmImage& pfm);

/// Loads ground truth from PGM (any bit depth) or PFM. PGM raw value 0 and
/// PFM values < 0 map to INVALID; valid PGM values are divided by `scale`.
GtDisparity read_gt(const std::string& path, double scale);

}  // namespace r3sgm
