#include "r3sgm/imageio.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace r3sgm {
namespace {

std::vector<unsigned char> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

// Cursor over a loaded file that reports byte offsets in parse errors.
class ByteCursor {
  public:
    ByteCursor(const std::vector<unsigned char>& bytes, std::string path)
        : bytes_(bytes), path_(std::move(path)) {}

    std::size_t pos() const { return pos_; }
    bool eof() const { return pos_ >= bytes_.size(); }
    unsigned char peek() const { return bytes_[pos_]; }
    unsigned char take() { return bytes_[pos_++]; }
    std::size_t remaining() const { return bytes_.size() - pos_; }
    const unsigned char* data() const { return bytes_.data() + pos_; }

    [[noreturn]] void fail(const std::string& what) const {
        throw IoError(path_ + ": " + what + " at byte " + std::to_string(pos_));
    }

    // Skips whitespace and '#' comment lines (allowed anywhere in PNM headers
    // and in plain-format payloads).
    void skip_space_and_comments() {
        while (!eof()) {
            unsigned char c = peek();
            if (std::isspace(c)) {
                ++pos_;
            } else if (c == '#') {
                while (!eof() && take() != '\n') {}
            } else {
                break;
            }
        }
    }

    long parse_uint(const char* what) {
        skip_space_and_comments();
        if (eof() || !std::isdigit(peek())) fail(std::string("expected ") + what);
        long v = 0;
        while (!eof() && std::isdigit(peek())) {
            v = v * 10 + (take() - '0');
            if (v > 1'000'000'000L) fail(std::string(what) + " out of range");
        }
        return v;
    }

  private:
    const std::vector<unsigned char>& bytes_;
    std::string path_;
    std::size_t pos_ = 0;
};

float byteswap_float(float v) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    u = ((u & 0x000000FFu) << 24) | ((u & 0x0000FF00u) << 8) | ((u & 0x00FF0000u) >> 8) |
        ((u & 0xFF000000u) >> 24);
    std::memcpy(&v, &u, 4);
    return v;
}

}  // namespace

PgmImage read_pgm_raw(const std::string& path) {
    const auto bytes = slurp(path);
    ByteCursor cur(bytes, path);

    if (cur.remaining() < 2) cur.fail("missing PGM magic");
    char m0 = static_cast<char>(cur.take());
    char m1 = static_cast<char>(cur.take());
    if (m0 != 'P' || (m1 != '5' && m1 != '2')) cur.fail("bad magic, expected P5 or P2");
    const bool binary = (m1 == '5');

    PgmImage img;
    img.width = static_cast<int>(cur.parse_uint("width"));
    img.height = static_cast<int>(cur.parse_uint("height"));
    img.maxval = static_cast<int>(cur.parse_uint("maxval"));
    if (img.width < 1 || img.height < 1) cur.fail("dimensions must be >= 1");
    if (img.maxval < 1 || img.maxval > 65535) cur.fail("maxval must be in [1, 65535]");

    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    img.samples.resize(n);

    if (binary) {
        // Exactly one whitespace byte separates the header from the payload.
        if (cur.eof() || !std::isspace(cur.peek())) cur.fail("expected whitespace before payload");
        cur.take();
        const int bytes_per_sample = img.maxval > 255 ? 2 : 1;
        if (cur.remaining() < n * bytes_per_sample)
            throw IoError(path + ": truncated payload, need " + std::to_string(n * bytes_per_sample) +
                          " bytes, have " + std::to_string(cur.remaining()));
        const unsigned char* p = cur.data();
        if (bytes_per_sample == 1) {
            for (std::size_t i = 0; i < n; ++i) img.samples[i] = p[i];
        } else {
            // Multi-byte PNM samples are big-endian.
            for (std::size_t i = 0; i < n; ++i)
                img.samples[i] = static_cast<std::uint16_t>((p[2 * i] << 8) | p[2 * i + 1]);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            long v = cur.parse_uint("sample");
            if (v > img.maxval) cur.fail("sample exceeds maxval");
            img.samples[i] = static_cast<std::uint16_t>(v);
        }
    }
    return img;
}

GrayImage read_pgm(const std::string& path) {
    PgmImage raw = read_pgm_raw(path);
    GrayImage img(raw.width, raw.height);
    if (raw.maxval <= 255) {
        for (std::size_t i = 0; i < raw.samples.size(); ++i)
            img.data[i] = static_cast<std::uint8_t>(raw.samples[i]);
    } else {
        // Smallest divisor that maps [0, maxval] into [0, 255]; equals
        // (maxval + 1) / 256 for 16-bit inputs.
        const int divisor = raw.maxval / 256 + 1;
        for (std::size_t i = 0; i < raw.samples.size(); ++i)
            img.data[i] = static_cast<std::uint8_t>(raw.samples[i] / divisor);
    }
    return img;
}

void write_pgm(const std::string& path, const GrayImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
    if (!out) throw IoError("write failed: " + path);
}

PfmImage read_pfm(const std::string& path) {
    const auto bytes = slurp(path);
    ByteCursor cur(bytes, path);

    if (cur.remaining() < 2) cur.fail("missing PFM magic");
    char m0 = static_cast<char>(cur.take());
    char m1 = static_cast<char>(cur.take());
    if (m0 != 'P' || m1 != 'f') {
        if (m0 == 'P' && m1 == 'F') cur.fail("color PFM (PF) is not supported, expected grayscale Pf");
        cur.fail("bad magic, expected Pf");
    }

    PfmImage img;
    img.width = static_cast<int>(cur.parse_uint("width"));
    img.height = static_cast<int>(cur.parse_uint("height"));
    if (img.width < 1 || img.height < 1) cur.fail("dimensions must be >= 1");

    cur.skip_space_and_comments();
    // Scale line, e.g. "-1.0": sign selects endianness.
    std::string scale_str;
    while (!cur.eof() && !std::isspace(cur.peek())) scale_str.push_back(static_cast<char>(cur.take()));
    if (scale_str.empty()) cur.fail("expected scale");
    double scale = 0.0;
    try {
        scale = std::stod(scale_str);
    } catch (const std::exception&) {
        cur.fail("unparseable scale '" + scale_str + "'");
    }
    if (scale == 0.0) cur.fail("scale must be non-zero");
    if (cur.eof()) cur.fail("expected whitespace before payload");
    cur.take();

    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    if (cur.remaining() < n * 4)
        throw IoError(path + ": truncated payload, need " + std::to_string(n * 4) + " bytes, have " +
                      std::to_string(cur.remaining()));

    const bool file_little = scale < 0.0;
    const bool host_little = (std::endian::native == std::endian::little);
    img.values.resize(n);
    const unsigned char* p = cur.data();
    for (int y = 0; y < img.height; ++y) {
        // PFM rows are stored bottom-to-top.
        const int src_row = img.height - 1 - y;
        for (int x = 0; x < img.width; ++x) {
            float v;
            std::memcpy(&v, p + (static_cast<std::size_t>(src_row) * img.width + x) * 4, 4);
            if (file_little != host_little) v = byteswap_float(v);
            img.values[static_cast<std::size_t>(y) * img.width + x] = v;
        }
    }
    return img;
}

void write_pfm(const std::string& path, const DisparityMap& disp) {
    if (disp.width < 1 || disp.height < 1) throw std::invalid_argument("write_pfm: empty map");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "Pf\n" << disp.width << " " << disp.height << "\n-1.0\n";

    const bool host_little = (std::endian::native == std::endian::little);
    std::vector<float> row(static_cast<std::size_t>(disp.width));
    for (int y = disp.height - 1; y >= 0; --y) {
        for (int x = 0; x < disp.width; ++x) {
            const std::int32_t d = disp.at(x, y);
            float v = d == kInvalidDisparity ? -1.0f : static_cast<float>(d);
            if (!host_little) v = byteswap_float(v);
            row[static_cast<std::size_t>(x)] = v;
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size() * 4));
    }
    if (!out) throw IoError("write failed: " + path);
}

DisparityMap disparity_from_pfm(const PfmImage& pfm) {
    DisparityMap disp(pfm.width, pfm.height);
    for (std::size_t i = 0; i < pfm.values.size(); ++i) {
        const float v = pfm.values[i];
        disp.values[i] = v < 0.0f ? kInvalidDisparity : static_cast<std::int32_t>(std::lround(v));
    }
    return disp;
}

GtDisparity read_gt(const std::string& path, double scale) {
    if (scale <= 0.0) throw std::invalid_argument("read_gt: scale must be positive");

    // Sniff the magic to dispatch between PGM and PFM.
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError("cannot open " + path);
    char magic[2] = {0, 0};
    probe.read(magic, 2);
    probe.close();

    if (magic[0] == 'P' && magic[1] == 'f') {
        PfmImage pfm = read_pfm(path);
        GtDisparity gt(pfm.width, pfm.height);
        gt.scale = 1.0;
        for (std::size_t i = 0; i < pfm.values.size(); ++i)
            gt.values[i] = pfm.values[i] < 0.0f ? -1.0f : pfm.values[i];
        return gt;
    }

    PgmImage raw = read_pgm_raw(path);
    GtDisparity gt(raw.width, raw.height);
    gt.scale = scale;
    for (std::size_t i = 0; i < raw.samples.size(); ++i) {
        // Raw 0 marks a missing measurement in PGM ground truth.
        gt.values[i] = raw.samples[i] == 0 ? -1.0f : static_cast<float>(raw.samples[i] / scale);
    }
    return gt;
}

}  // namespace r3sgm
