#ifndef INVEXTRACT_RASTER_IO_HPP
#define INVEXTRACT_RASTER_IO_HPP

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "invextract/raster.hpp"

namespace invextract {

// ---------------------------------------------------------------------------
// PNG via the libpng simplified API. 8-bit, sRGB assumed, no ICC handling.
// ---------------------------------------------------------------------------

inline Raster decode_png_bytes(const std::vector<std::uint8_t>& bytes,
                               bool as_gray = false) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    throw IoError(std::string("png decode failed: ") + image.message);
  image.format = as_gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buf.data(), 0, nullptr)) {
    png_image_free(&image);
    throw IoError(std::string("png decode failed: ") + image.message);
  }
  return Raster(static_cast<int>(image.width), static_cast<int>(image.height),
                as_gray ? PixelFormat::Gray8 : PixelFormat::RGB8,
                std::move(buf));
}

inline std::vector<std::uint8_t> encode_png_bytes(const Raster& img) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format =
      img.format() == PixelFormat::RGB8 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.data().data(),
                                 0, nullptr))
    throw IoError(std::string("png encode failed: ") + image.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0,
                                 img.data().data(), 0, nullptr))
    throw IoError(std::string("png encode failed: ") + image.message);
  out.resize(size);
  return out;
}

// ---------------------------------------------------------------------------
// JPEG via libjpeg.
// ---------------------------------------------------------------------------

namespace detail {
struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
};

inline void jpeg_error_exit(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  std::longjmp(mgr->jump, 1);
}
}  // namespace detail

inline Raster decode_jpeg_bytes(const std::vector<std::uint8_t>& bytes) {
  jpeg_decompress_struct cinfo;
  detail::JpegErrorMgr jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = detail::jpeg_error_exit;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw IoError("jpeg decode failed");
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  int w = static_cast<int>(cinfo.output_width);
  int h = static_cast<int>(cinfo.output_height);
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(w) * h * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    std::uint8_t* row = &buf[static_cast<std::size_t>(cinfo.output_scanline) *
                             w * 3];
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return Raster(w, h, PixelFormat::RGB8, std::move(buf));
}

inline std::vector<std::uint8_t> encode_jpeg_bytes(const Raster& img,
                                                   int quality = 90) {
  const Raster* src = &img;
  Raster rgb(1, 1, PixelFormat::RGB8);
  if (img.format() != PixelFormat::RGB8) {
    rgb = gray_to_rgb(img.format() == PixelFormat::Binary ? binary_as_gray(img)
                                                          : img);
    src = &rgb;
  }
  jpeg_compress_struct cinfo;
  detail::JpegErrorMgr jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = detail::jpeg_error_exit;
  unsigned char* mem = nullptr;
  unsigned long mem_size = 0;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_compress(&cinfo);
    if (mem) free(mem);
    throw IoError("jpeg encode failed");
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &mem, &mem_size);
  cinfo.image_width = static_cast<JDIMENSION>(src->width());
  cinfo.image_height = static_cast<JDIMENSION>(src->height());
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    const std::uint8_t* row =
        &src->data()[static_cast<std::size_t>(cinfo.next_scanline) *
                     src->width() * 3];
    JSAMPROW rows[1] = {const_cast<JSAMPROW>(row)};
    jpeg_write_scanlines(&cinfo, rows, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  std::vector<std::uint8_t> out(mem, mem + mem_size);
  free(mem);
  return out;
}

// ---------------------------------------------------------------------------
// File-level helpers with magic-byte sniffing.
// ---------------------------------------------------------------------------

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

inline void write_file_bytes(const std::string& path,
                             const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write file: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write: " + path);
}

/// Decodes a PNG or JPEG file into an RGB8 raster.
inline Raster decode_image(const std::string& path) {
  auto bytes = read_file_bytes(path);
  if (bytes.size() >= 8 && bytes[0] == 0x89 && bytes[1] == 'P' &&
      bytes[2] == 'N' && bytes[3] == 'G')
    return decode_png_bytes(bytes);
  if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 &&
      bytes[2] == 0xFF)
    return decode_jpeg_bytes(bytes);
  throw IoError("unrecognized image format: " + path);
}

inline void encode_png(const Raster& img, const std::string& path) {
  write_file_bytes(path, encode_png_bytes(img));
}

inline void encode_jpeg(const Raster& img, const std::string& path,
                        int quality = 90) {
  write_file_bytes(path, encode_jpeg_bytes(img, quality));
}

}  // namespace invextract

#endif  // INVEXTRACT_RASTER_IO_HPP
