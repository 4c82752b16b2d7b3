#include "gom/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gom/errors.hpp"

namespace gom {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  return in;
}

// Reads one whitespace-delimited token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    return tok;
  }
  throw FileFormatError("unexpected end of image header");
}

uint8_t quantize(double v) {
  return static_cast<uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

void write_ppm(const std::filesystem::path& path, const ImageRgb& img) {
  auto out = open_out(path);
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  std::vector<uint8_t> row(3u * img.width);
  for (int v = 0; v < img.height; ++v) {
    for (int u = 0; u < img.width; ++u) {
      const Vec3 c = img.at(u, v);
      row[3 * u] = quantize(c.x());
      row[3 * u + 1] = quantize(c.y());
      row[3 * u + 2] = quantize(c.z());
    }
    out.write(reinterpret_cast<const char*>(row.data()), row.size());
  }
  if (!out) throw IoFailure("write failed for " + path.string());
}

ImageRgb read_ppm(const std::filesystem::path& path) {
  auto in = open_in(path);
  if (next_token(in) != "P6") throw FileFormatError("not a binary PPM: " + path.string());
  const int w = std::stoi(next_token(in));
  const int h = std::stoi(next_token(in));
  const int maxval = std::stoi(next_token(in));
  if (maxval != 255) throw FileFormatError("unsupported PPM maxval");
  in.get();  // single whitespace after header
  ImageRgb img(w, h);
  std::vector<uint8_t> row(3u * w);
  for (int v = 0; v < h; ++v) {
    in.read(reinterpret_cast<char*>(row.data()), row.size());
    if (!in) throw FileFormatError("PPM truncated: " + path.string());
    for (int u = 0; u < w; ++u) {
      img.set(u, v, Vec3(row[3 * u], row[3 * u + 1], row[3 * u + 2]) / 255.0);
    }
  }
  return img;
}

void write_pfm(const std::filesystem::path& path, const ImageGray& img) {
  auto out = open_out(path);
  out << "Pf\n" << img.width << " " << img.height << "\n-1.0\n";
  std::vector<float> row(img.width);
  for (int v = img.height - 1; v >= 0; --v) {  // PFM rows run bottom-up
    for (int u = 0; u < img.width; ++u) row[u] = static_cast<float>(img.at(u, v));
    out.write(reinterpret_cast<const char*>(row.data()), row.size() * sizeof(float));
  }
  if (!out) throw IoFailure("write failed for " + path.string());
}

ImageGray read_pfm(const std::filesystem::path& path) {
  auto in = open_in(path);
  if (next_token(in) != "Pf") throw FileFormatError("not a grayscale PFM: " + path.string());
  const int w = std::stoi(next_token(in));
  const int h = std::stoi(next_token(in));
  const double scale = std::stod(next_token(in));
  if (scale >= 0) throw FileFormatError("big-endian PFM unsupported");
  in.get();
  ImageGray img(w, h);
  std::vector<float> row(w);
  for (int v = h - 1; v >= 0; --v) {
    in.read(reinterpret_cast<char*>(row.data()), row.size() * sizeof(float));
    if (!in) throw FileFormatError("PFM truncated: " + path.string());
    for (int u = 0; u < w; ++u) img.set(u, v, row[u]);
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const ImageMask& img) {
  auto out = open_out(path);
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  for (int v = 0; v < img.height; ++v) {
    out.write(reinterpret_cast<const char*>(&img.data[static_cast<size_t>(v) * img.width]),
              img.width);
  }
  if (!out) throw IoFailure("write failed for " + path.string());
}

ImageMask read_pgm(const std::filesystem::path& path) {
  auto in = open_in(path);
  if (next_token(in) != "P5") throw FileFormatError("not a binary PGM: " + path.string());
  const int w = std::stoi(next_token(in));
  const int h = std::stoi(next_token(in));
  const int maxval = std::stoi(next_token(in));
  if (maxval != 255) throw FileFormatError("unsupported PGM maxval");
  in.get();
  ImageMask img(w, h);
  in.read(reinterpret_cast<char*>(img.data.data()), img.data.size());
  if (!in) throw FileFormatError("PGM truncated: " + path.string());
  return img;
}

}  // namespace gom
