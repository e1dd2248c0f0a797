#include <istream>
#include <ostream>
#include <string>

#include "shapeforge/error.hpp"
#include "shapeforge/ingest.hpp"

namespace shapeforge {

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  // The single whitespace byte after the token has been consumed.
  return tok;
}

std::size_t header_number(std::istream& in, const char* what) {
  const std::string tok = header_token(in);
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse, std::string("PGM: invalid ") + what + " '" + tok + "'");
  }
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  if (header_token(in) != "P5") throw Error(ErrorKind::parse, "PGM: expected magic 'P5'");
  GrayImage img;
  img.width = header_number(in, "width");
  img.height = header_number(in, "height");
  const std::size_t maxval = header_number(in, "maxval");
  if (maxval == 0 || maxval > 255) throw Error(ErrorKind::parse, "PGM: only 8-bit maxval is supported");
  img.pixels.resize(img.width * img.height);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != img.pixels.size()) {
    throw Error(ErrorKind::parse, "PGM: truncated pixel data");
  }
  return img;
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

BinaryMask threshold(const GrayImage& image, std::uint8_t level) {
  BinaryMask m{image.width, image.height, std::vector<std::uint8_t>(image.pixels.size())};
  for (std::size_t i = 0; i < image.pixels.size(); ++i) m.cells[i] = image.pixels[i] >= level ? 1 : 0;
  return m;
}

}  // namespace shapeforge
