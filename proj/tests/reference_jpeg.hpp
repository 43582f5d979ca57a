#ifndef DCTCODEC_REFERENCE_JPEG_HPP
#define DCTCODEC_REFERENCE_JPEG_HPP

// libjpeg as an independent reference codec. Color files are compared in
// YCbCr: libjpeg's RGB conversion uses its own fixed coefficients, so only the
// component planes are common ground.

#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <jpeglib.h>

#include "dctcodec/core.hpp"
#include "dctcodec/image_io.hpp"

namespace dctcodec::testing {

struct ReferenceDecode {
  bool ok = false;
  std::string error;
  int width = 0, height = 0, components = 0;
  std::vector<std::uint8_t> pixels;  // interleaved
};

struct ErrorManager {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  int warnings = 0;
  char message[JMSG_LENGTH_MAX];
};

inline void on_error(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<ErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

inline void on_message(j_common_ptr cinfo, int level) {
  auto* err = reinterpret_cast<ErrorManager*>(cinfo->err);
  if (level < 0) {
    if (err->warnings++ == 0) (*cinfo->err->format_message)(cinfo, err->message);
  }
}

inline ReferenceDecode reference_decode(const Bytes& bytes) {
  ReferenceDecode out;
  jpeg_decompress_struct cinfo;
  ErrorManager err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = on_error;
  err.pub.emit_message = on_message;
  err.message[0] = '\0';
  if (setjmp(err.jump)) {
    out.error = err.message;
    jpeg_destroy_decompress(&cinfo);
    return out;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = cinfo.num_components == 3 ? JCS_YCbCr : JCS_GRAYSCALE;
  cinfo.do_fancy_upsampling = FALSE;
  cinfo.dct_method = JDCT_ISLOW;
  jpeg_start_decompress(&cinfo);
  out.width = static_cast<int>(cinfo.output_width);
  out.height = static_cast<int>(cinfo.output_height);
  out.components = cinfo.output_components;
  out.pixels.resize(static_cast<std::size_t>(out.width) * out.height * out.components);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * out.width * out.components;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  if (err.warnings > 0) {
    out.error = std::string("warning: ") + err.message;
    return out;
  }
  out.ok = true;
  return out;
}

// Baseline file from the reference encoder (RGB input becomes 4:2:0 YCbCr),
// with a restart marker every restart_mcus MCUs (0 = none).
inline Bytes reference_encode(const RasterImage& image, int quality, int restart_mcus) {
  jpeg_compress_struct cinfo;
  jpeg_error_mgr err;
  cinfo.err = jpeg_std_error(&err);
  jpeg_create_compress(&cinfo);
  unsigned char* buffer = nullptr;
  unsigned long size = 0;
  jpeg_mem_dest(&cinfo, &buffer, &size);
  cinfo.image_width = static_cast<JDIMENSION>(image.width);
  cinfo.image_height = static_cast<JDIMENSION>(image.height);
  const int channels = image.channels();
  cinfo.input_components = channels;
  cinfo.in_color_space = channels == 3 ? JCS_RGB : JCS_GRAYSCALE;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  cinfo.restart_interval = static_cast<unsigned int>(restart_mcus);
  jpeg_start_compress(&cinfo, TRUE);
  std::vector<std::uint8_t> row(static_cast<std::size_t>(image.width) * channels);
  while (cinfo.next_scanline < cinfo.image_height) {
    const Index r = cinfo.next_scanline;
    for (Index c = 0; c < image.width; ++c) {
      for (int k = 0; k < channels; ++k) row[static_cast<std::size_t>(c) * channels + k] = image.planes[k](r, c);
    }
    JSAMPROW ptr = row.data();
    jpeg_write_scanlines(&cinfo, &ptr, 1);
  }
  jpeg_finish_compress(&cinfo);
  Bytes out(buffer, buffer + size);
  jpeg_destroy_compress(&cinfo);
  std::free(buffer);
  return out;
}

}  // namespace dctcodec::testing

#endif  // DCTCODEC_REFERENCE_JPEG_HPP
