#include "ipad/image.hpp"

#include "ipad/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace ipad {

namespace {

// next whitespace-separated token, skipping '#' comment lines
std::string next_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok;
}

long parse_dim(const std::string& tok, const char* what) {
  try {
    const long v = std::stol(tok);
    if (v < 1) throw std::invalid_argument("nonpositive");
    return v;
  } catch (const std::exception&) {
    throw io_error(std::string("PGM header: bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

GrayImage pgm_read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");

  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P' || magic[1] != '5') {
    throw io_error("unsupported PGM format in '" + path +
                   "': expected binary P5");
  }

  GrayImage img;
  img.width = parse_dim(next_token(in), "width");
  img.height = parse_dim(next_token(in), "height");
  const std::string maxval = next_token(in);
  if (maxval != "255") {
    throw io_error("unsupported PGM maxval '" + maxval + "' in '" + path +
                   "': expected 255");
  }
  // exactly one whitespace byte separates the header from the payload
  img.pixels.resize(static_cast<std::size_t>(img.width * img.height));
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != img.pixels.size()) {
    throw io_error("truncated PGM payload in '" + path + "'");
  }
  return img;
}

void pgm_write(const GrayImage& img, const std::string& path) {
  if (img.width < 1 || img.height < 1 ||
      img.pixels.size() != static_cast<std::size_t>(img.width * img.height)) {
    throw io_error("inconsistent image dimensions");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  char header[64];
  const int len = std::snprintf(header, sizeof(header), "P5\n%ld %ld\n255\n",
                                img.width, img.height);
  out.write(header, len);
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
  if (!out) throw io_error("failed writing '" + path + "'");
}

GrayImage add_noise(const GrayImage& img, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw config_error("noise sigma must be nonnegative");
  Rng rng(seed);
  GrayImage out = img;
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    const double v = double(img.pixels[i]) + sigma * rng.next_normal();
    out.pixels[i] =
        static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
  }
  return out;
}

double psnr(const GrayImage& a, const GrayImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw config_error("PSNR requires images of identical dimensions");
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = double(a.pixels[i]) - double(b.pixels[i]);
    sq += d * d;
  }
  const double mse = sq / double(a.pixels.size());
  if (mse == 0.0) return 99.0;
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace ipad
