#include "faqem/image.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace faqem {

TextureImage TextureImage::solid(int w, int h, const Vec3& rgb) {
    TextureImage img;
    img.width = w;
    img.height = h;
    img.channels = 3;
    img.pixels.resize(static_cast<size_t>(w) * h * 3);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.set_rgb(x, y, rgb);
    return img;
}

void TextureImage::set_rgb(int x, int y, const Vec3& rgb) {
    auto to_byte = [](double v) {
        double c = std::clamp(v, 0.0, 1.0);
        return static_cast<uint8_t>(std::lround(c * 255.0));
    };
    at(x, y, 0) = to_byte(rgb.x);
    at(x, y, 1) = to_byte(rgb.y);
    at(x, y, 2) = to_byte(rgb.z);
    if (channels == 4) at(x, y, 3) = 255;
}

Vec3 TextureImage::texel(int x, int y) const {
    return {at(x, y, 0) / 255.0, at(x, y, 1) / 255.0, at(x, y, 2) / 255.0};
}

Vec3 sample_texture(const TextureImage& img, const Vec2& uv) {
    // Continuous coordinates with texel centers at integers.
    double fx = uv.x * img.width - 0.5;
    double fy = (1.0 - uv.y) * img.height - 0.5;

    double x0f = std::floor(fx);
    double y0f = std::floor(fy);
    double tx = fx - x0f;
    double ty = fy - y0f;

    auto wrap = [](long i, int extent) {
        long m = i % extent;
        return static_cast<int>(m < 0 ? m + extent : m);
    };
    int x0 = wrap(static_cast<long>(x0f), img.width);
    int x1 = wrap(static_cast<long>(x0f) + 1, img.width);
    int y0 = wrap(static_cast<long>(y0f), img.height);
    int y1 = wrap(static_cast<long>(y0f) + 1, img.height);

    Vec3 c00 = img.texel(x0, y0), c10 = img.texel(x1, y0);
    Vec3 c01 = img.texel(x0, y1), c11 = img.texel(x1, y1);
    Vec3 top = c00 * (1.0 - tx) + c10 * tx;
    Vec3 bot = c01 * (1.0 - tx) + c11 * tx;
    return top * (1.0 - ty) + bot * ty;
}

TextureImage load_png(const std::string& path) {
    png_image pimg;
    std::memset(&pimg, 0, sizeof(pimg));
    pimg.version = PNG_IMAGE_VERSION;

    if (!png_image_begin_read_from_file(&pimg, path.c_str())) {
        throw std::runtime_error("cannot read PNG '" + path + "': " + pimg.message);
    }

    TextureImage img;
    img.width = static_cast<int>(pimg.width);
    img.height = static_cast<int>(pimg.height);
    bool has_alpha = (pimg.format & PNG_FORMAT_FLAG_ALPHA) != 0;
    img.channels = has_alpha ? 4 : 3;
    pimg.format = has_alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
    img.pixels.resize(PNG_IMAGE_SIZE(pimg));

    if (!png_image_finish_read(&pimg, nullptr, img.pixels.data(), 0, nullptr)) {
        png_image_free(&pimg);
        throw std::runtime_error("cannot decode PNG '" + path + "': " + pimg.message);
    }
    return img;
}

void save_png(const TextureImage& img, const std::string& path) {
    if (!img.valid()) throw std::runtime_error("refusing to save invalid image to '" + path + "'");

    png_image pimg;
    std::memset(&pimg, 0, sizeof(pimg));
    pimg.version = PNG_IMAGE_VERSION;
    pimg.width = static_cast<png_uint_32>(img.width);
    pimg.height = static_cast<png_uint_32>(img.height);
    pimg.format = img.channels == 4 ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;

    if (!png_image_write_to_file(&pimg, path.c_str(), 0, img.pixels.data(), 0, nullptr)) {
        throw std::runtime_error("cannot write PNG '" + path + "': " + pimg.message);
    }
}

}  // namespace faqem
