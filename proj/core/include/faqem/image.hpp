// 8-bit RGB(A) raster with bilinear sampling, plus PNG load/save.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "faqem/geom.hpp"

namespace faqem {

struct TextureImage {
    int width = 0;
    int height = 0;
    int channels = 3;  // 3 or 4
    // Row-major, top row first.
    std::vector<uint8_t> pixels;

    static TextureImage solid(int w, int h, const Vec3& rgb);

    bool valid() const {
        return width >= 1 && height >= 1 && (channels == 3 || channels == 4) &&
               pixels.size() == static_cast<size_t>(width) * height * channels;
    }
    uint8_t& at(int x, int y, int c) { return pixels[(static_cast<size_t>(y) * width + x) * channels + c]; }
    uint8_t at(int x, int y, int c) const {
        return pixels[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    void set_rgb(int x, int y, const Vec3& rgb);
    Vec3 texel(int x, int y) const;
};

// Bilinear lookup with repeat addressing. UV (0,0) is the bottom-left of
// the image; texel centers sit at (i + 0.5) / extent.
Vec3 sample_texture(const TextureImage& img, const Vec2& uv);

TextureImage load_png(const std::string& path);
void save_png(const TextureImage& img, const std::string& path);

}  // namespace faqem
