#include "hazekit/image_io.hpp"

#include <jpeglib.h>
#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

namespace hazekit {

namespace {

inline unsigned char to_byte(double v) {
    return static_cast<unsigned char>(std::lround(clamp01(v) * 255.0));
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode, const char* action) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw IoError(path + ": cannot open for " + action);
    return f;
}

// ---- PNG ----

RgbImage load_png(std::FILE* fp, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    std::vector<unsigned char> pixels;
    std::vector<png_bytep> rows;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw IoError(path + ": corrupt or truncated PNG");
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    // Normalize every PNG flavor to 8-bit RGB.
    png_byte color = png_get_color_type(png, info);
    png_byte depth = png_get_bit_depth(png, info);
    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int w = int(png_get_image_width(png, info));
    const int h = int(png_get_image_height(png, info));
    pixels.resize(size_t(w) * h * 3);
    rows.resize(h);
    for (int y = 0; y < h; ++y) rows[y] = pixels.data() + size_t(y) * w * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    RgbImage img(w, h);
    for (size_t i = 0; i < img.data.size(); ++i) img.data[i] = pixels[i] / 255.0;
    return img;
}

void save_png_bytes(const std::string& path, int w, int h, int channels,
                    const std::vector<unsigned char>& pixels) {
    FilePtr fp = open_file(path, "wb", "writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError(path + ": PNG write failed");
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, w, h, 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y)
        rows[y] = const_cast<png_bytep>(pixels.data() + size_t(y) * w * channels);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

// ---- JPEG ----

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(mgr->jump, 1);
}

RgbImage load_jpeg(std::FILE* fp, const std::string& path) {
    jpeg_decompress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw IoError(path + ": corrupt or truncated JPEG");
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, fp);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);

    const int w = int(cinfo.output_width), h = int(cinfo.output_height);
    std::vector<unsigned char> row(size_t(w) * 3);
    RgbImage img(w, h);
    unsigned char* rowp = row.data();
    while (cinfo.output_scanline < cinfo.output_height) {
        const int y = int(cinfo.output_scanline);
        jpeg_read_scanlines(&cinfo, &rowp, 1);
        for (int i = 0; i < w * 3; ++i) img.data[size_t(y) * w * 3 + i] = row[i] / 255.0;
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

void save_jpeg(const RgbImage& img, const std::string& path) {
    FilePtr fp = open_file(path, "wb", "writing");
    jpeg_compress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    if (setjmp(err.jump)) {
        jpeg_destroy_compress(&cinfo);
        throw IoError(path + ": JPEG write failed");
    }
    jpeg_create_compress(&cinfo);
    jpeg_stdio_dest(&cinfo, fp.get());
    cinfo.image_width = JDIMENSION(img.width);
    cinfo.image_height = JDIMENSION(img.height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, 95, TRUE);
    jpeg_start_compress(&cinfo, TRUE);

    std::vector<unsigned char> row(size_t(img.width) * 3);
    unsigned char* rowp = row.data();
    while (cinfo.next_scanline < cinfo.image_height) {
        const int y = int(cinfo.next_scanline);
        for (int i = 0; i < img.width * 3; ++i)
            row[i] = to_byte(img.data[size_t(y) * img.width * 3 + i]);
        jpeg_write_scanlines(&cinfo, &rowp, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
}

bool has_suffix_ci(const std::string& s, const std::string& suf) {
    if (s.size() < suf.size()) return false;
    for (size_t i = 0; i < suf.size(); ++i)
        if (std::tolower(s[s.size() - suf.size() + i]) != suf[i]) return false;
    return true;
}

}  // namespace

RgbImage load_image(const std::string& path) {
    FilePtr fp = open_file(path, "rb", "reading");
    unsigned char magic[8] = {0};
    const size_t got = std::fread(magic, 1, sizeof magic, fp.get());
    std::rewind(fp.get());
    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (got >= 8 && std::memcmp(magic, png_sig, 8) == 0) return load_png(fp.get(), path);
    if (got >= 2 && magic[0] == 0xff && magic[1] == 0xd8) return load_jpeg(fp.get(), path);
    throw IoError(path + ": unsupported format (expected PNG or JPEG)");
}

void save_image(const RgbImage& img, const std::string& path) {
    if (has_suffix_ci(path, ".png")) {
        std::vector<unsigned char> pixels(img.data.size());
        for (size_t i = 0; i < img.data.size(); ++i) pixels[i] = to_byte(img.data[i]);
        save_png_bytes(path, img.width, img.height, 3, pixels);
    } else if (has_suffix_ci(path, ".jpg") || has_suffix_ci(path, ".jpeg")) {
        save_jpeg(img, path);
    } else {
        throw IoError(path + ": unsupported output format (use .png, .jpg or .jpeg)");
    }
}

GrayMap load_gray(const std::string& path) {
    const RgbImage img = load_image(path);
    GrayMap out(img.width, img.height);
    for (size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = (img.data[i * 3] + img.data[i * 3 + 1] + img.data[i * 3 + 2]) / 3.0;
    return out;
}

void save_gray(const GrayMap& map, const std::string& path) {
    if (!has_suffix_ci(path, ".png"))
        throw IoError(path + ": grayscale maps are written as PNG only");
    std::vector<unsigned char> pixels(map.data.size());
    for (size_t i = 0; i < map.data.size(); ++i) pixels[i] = to_byte(map.data[i]);
    save_png_bytes(path, map.width, map.height, 1, pixels);
}

}  // namespace hazekit
