#pragma once

#include <png.h>

#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "graspkit/core/image.hpp"

namespace graspkit {

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

inline FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw std::runtime_error("cannot open " + path);
  return f;
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  PngReader() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) {
      png_destroy_read_struct(&png, &info, nullptr);
      throw std::runtime_error("libpng init failed");
    }
  }
  ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
  PngReader(const PngReader&) = delete;
  PngReader& operator=(const PngReader&) = delete;
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  PngWriter() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) {
      png_destroy_write_struct(&png, &info);
      throw std::runtime_error("libpng init failed");
    }
  }
  ~PngWriter() { png_destroy_write_struct(&png, &info); }
  PngWriter(const PngWriter&) = delete;
  PngWriter& operator=(const PngWriter&) = delete;
};

}  // namespace detail

/// Reads any PNG as 8-bit RGB (palette/gray expanded, alpha stripped,
/// 16-bit narrowed).
inline Image<Rgb8> read_png_rgb8(const std::string& path) {
  auto file = detail::open_file(path, "rb");
  detail::PngReader ctx;
  if (setjmp(png_jmpbuf(ctx.png))) throw std::runtime_error("failed to read PNG " + path);
  png_init_io(ctx.png, file.get());
  png_read_info(ctx.png, ctx.info);

  png_set_expand(ctx.png);
  png_set_strip_16(ctx.png);
  png_set_strip_alpha(ctx.png);
  png_set_gray_to_rgb(ctx.png);
  png_read_update_info(ctx.png, ctx.info);

  const int w = static_cast<int>(png_get_image_width(ctx.png, ctx.info));
  const int h = static_cast<int>(png_get_image_height(ctx.png, ctx.info));
  if (png_get_channels(ctx.png, ctx.info) != 3)
    throw std::runtime_error("unexpected channel count in " + path);

  Image<Rgb8> out(w, h);
  std::vector<png_bytep> rows(h);
  for (int r = 0; r < h; ++r) rows[r] = reinterpret_cast<png_bytep>(&out.at(r, 0));
  png_read_image(ctx.png, rows.data());
  png_read_end(ctx.png, nullptr);
  return out;
}

/// Reads a 16-bit single-channel PNG. Anything else is an error.
inline Image<std::uint16_t> read_png_gray16(const std::string& path) {
  auto file = detail::open_file(path, "rb");
  detail::PngReader ctx;
  if (setjmp(png_jmpbuf(ctx.png))) throw std::runtime_error("failed to read PNG " + path);
  png_init_io(ctx.png, file.get());
  png_read_info(ctx.png, ctx.info);

  const int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
  const int color_type = png_get_color_type(ctx.png, ctx.info);
  if (bit_depth != 16 || color_type != PNG_COLOR_TYPE_GRAY)
    throw std::runtime_error("depth image is not single-channel 16-bit: " + path);
  png_set_swap(ctx.png);  // PNG stores big-endian
  png_read_update_info(ctx.png, ctx.info);

  const int w = static_cast<int>(png_get_image_width(ctx.png, ctx.info));
  const int h = static_cast<int>(png_get_image_height(ctx.png, ctx.info));
  Image<std::uint16_t> out(w, h);
  std::vector<png_bytep> rows(h);
  for (int r = 0; r < h; ++r) rows[r] = reinterpret_cast<png_bytep>(&out.at(r, 0));
  png_read_image(ctx.png, rows.data());
  png_read_end(ctx.png, nullptr);
  return out;
}

inline void write_png_rgb8(const std::string& path, const Image<Rgb8>& img) {
  auto file = detail::open_file(path, "wb");
  detail::PngWriter ctx;
  if (setjmp(png_jmpbuf(ctx.png))) throw std::runtime_error("failed to write PNG " + path);
  png_init_io(ctx.png, file.get());
  png_set_IHDR(ctx.png, ctx.info, img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);
  for (int r = 0; r < img.height(); ++r)
    png_write_row(ctx.png, reinterpret_cast<png_const_bytep>(&img.at(r, 0)));
  png_write_end(ctx.png, nullptr);
}

inline void write_png_gray16(const std::string& path, const Image<std::uint16_t>& img) {
  auto file = detail::open_file(path, "wb");
  detail::PngWriter ctx;
  if (setjmp(png_jmpbuf(ctx.png))) throw std::runtime_error("failed to write PNG " + path);
  png_init_io(ctx.png, file.get());
  png_set_IHDR(ctx.png, ctx.info, img.width(), img.height(), 16, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);
  png_set_swap(ctx.png);
  for (int r = 0; r < img.height(); ++r)
    png_write_row(ctx.png, reinterpret_cast<png_const_bytep>(&img.at(r, 0)));
  png_write_end(ctx.png, nullptr);
}

inline void write_png_gray8(const std::string& path, const Image<std::uint8_t>& img) {
  auto file = detail::open_file(path, "wb");
  detail::PngWriter ctx;
  if (setjmp(png_jmpbuf(ctx.png))) throw std::runtime_error("failed to write PNG " + path);
  png_init_io(ctx.png, file.get());
  png_set_IHDR(ctx.png, ctx.info, img.width(), img.height(), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);
  for (int r = 0; r < img.height(); ++r)
    png_write_row(ctx.png, reinterpret_cast<png_const_bytep>(&img.at(r, 0)));
  png_write_end(ctx.png, nullptr);
}

}  // namespace graspkit
