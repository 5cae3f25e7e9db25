#include "arsr/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace arsr::pipeline {

namespace {

// next token, skipping whitespace and '#' comment lines
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) continue;
    tok.push_back(static_cast<char>(c));
    while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
      tok.push_back(static_cast<char>(in.get()));
    return tok;
  }
  return tok;
}

long parse_dim(const std::string& tok, const std::string& path, const char* what) {
  try {
    const long v = std::stol(tok);
    if (v < 1) throw std::invalid_argument("nonpositive");
    return v;
  } catch (const std::exception&) {
    throw IoError(path + ": malformed PGM " + what);
  }
}

}  // namespace

motion::Frame load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open");
  if (next_token(in) != "P5") throw IoError(path + ": not a binary PGM (P5)");
  const long cols = parse_dim(next_token(in), path, "width");
  const long rows = parse_dim(next_token(in), path, "height");
  const long maxval = parse_dim(next_token(in), path, "maxval");
  if (maxval != 255) throw IoError(path + ": only 8-bit PGM (maxval 255) is supported");
  in.get();  // single whitespace after maxval

  std::vector<unsigned char> raw(static_cast<std::size_t>(rows * cols));
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size()))
    throw IoError(path + ": truncated pixel data");

  motion::Frame f(rows, cols);
  // PGM raster is row-major
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c)
      f.at(r, c) = raw[static_cast<std::size_t>(r * cols + c)] / 255.0;
  return f;
}

void save_pgm(const motion::Frame& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "P5\n" << f.cols() << " " << f.rows() << "\n255\n";
  std::vector<unsigned char> raw(static_cast<std::size_t>(f.rows() * f.cols()));
  for (long r = 0; r < f.rows(); ++r)
    for (long c = 0; c < f.cols(); ++c) {
      const double v = std::clamp(f.at(r, c), 0.0, 1.0);
      raw[static_cast<std::size_t>(r * f.cols() + c)] =
          static_cast<unsigned char>(std::lround(v * 255.0));
    }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw IoError(path + ": write failed");
}

Sequence load_sequence(const std::string& dir, const std::string& background_path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw IoError(dir + ": not a directory");

  std::vector<std::string> frame_paths;
  std::string bg_path = background_path;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".pgm") continue;
    if (entry.path().filename() == "background.pgm") {
      if (bg_path.empty()) bg_path = entry.path().string();
    } else {
      frame_paths.push_back(entry.path().string());
    }
  }
  if (bg_path.empty()) throw IoError(dir + ": missing background.pgm");
  if (frame_paths.empty()) throw IoError(dir + ": no frame .pgm files");
  std::sort(frame_paths.begin(), frame_paths.end());

  Sequence seq;
  seq.background = load_pgm(bg_path);
  seq.frames.reserve(frame_paths.size());
  for (const auto& p : frame_paths) {
    motion::Frame f = load_pgm(p);
    if (f.rows() != seq.background.rows() || f.cols() != seq.background.cols())
      throw IoError(p + ": dimensions differ from background");
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

}  // namespace arsr::pipeline
