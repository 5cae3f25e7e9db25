#pragma once

#include <string>
#include <vector>

#include "arsr/frame.hpp"

namespace arsr::pipeline {

// 8-bit binary PGM (P5, maxval 255). Intensities map to [0,1] as value/255.
motion::Frame load_pgm(const std::string& path);
void save_pgm(const motion::Frame& f, const std::string& path);

struct Sequence {
  motion::Frame background;
  std::vector<motion::Frame> frames;
};

// Reads background.pgm plus every other *.pgm in lexical order. All frames
// must share the background's dimensions. A nonempty background_path reads
// the background from there instead, and the directory needs no
// background.pgm.
Sequence load_sequence(const std::string& dir, const std::string& background_path = "");

}  // namespace arsr::pipeline
