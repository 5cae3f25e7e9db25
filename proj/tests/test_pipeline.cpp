#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "arsr/bounds.hpp"
#include "arsr/kernels.hpp"
#include "arsr/phase.hpp"
#include "arsr/pipeline.hpp"

using namespace arsr;
using namespace arsr::pipeline;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("arsr_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string read_file(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("pgm load: header, values, column-major vectorization") {
  TempDir tmp;
  const auto p = (tmp.path / "t.pgm").string();
  {
    std::ofstream out(p, std::ios::binary);
    out << "P5\n# a comment\n2 2\n255\n";
    const unsigned char bytes[4] = {0, 255, 128, 64};
    out.write(reinterpret_cast<const char*>(bytes), 4);
  }
  const motion::Frame f = load_pgm(p);
  CHECK(f.rows() == 2);
  CHECK(f.cols() == 2);
  CHECK(f.at(0, 0) == doctest::Approx(0.0));
  CHECK(f.at(0, 1) == doctest::Approx(1.0));
  CHECK(f.at(1, 0) == doctest::Approx(128.0 / 255.0));
  CHECK(f.at(1, 1) == doctest::Approx(64.0 / 255.0));
  const SignalVector v = motion::vectorize(f);
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(128.0 / 255.0));  // column-major
  CHECK(v[2] == doctest::Approx(1.0));
  CHECK(v[3] == doctest::Approx(64.0 / 255.0));
}

TEST_CASE("pgm save/load round trip") {
  TempDir tmp;
  motion::Frame f(5, 7);
  for (long c = 0; c < 7; ++c)
    for (long r = 0; r < 5; ++r) f.at(r, c) = ((r * 7 + c) % 256) / 255.0;
  const auto p = (tmp.path / "rt.pgm").string();
  save_pgm(f, p);
  const motion::Frame g = load_pgm(p);
  CHECK((f.pixels - g.pixels).cwiseAbs().maxCoeff() < 0.5 / 255.0 + 1e-12);
}

TEST_CASE("pgm loader rejects malformed input") {
  TempDir tmp;
  const auto bad = (tmp.path / "bad.pgm").string();
  std::ofstream(bad) << "P2\n2 2\n255\n0 0 0 0\n";
  CHECK_THROWS_AS(load_pgm(bad), IoError);
  CHECK_THROWS_AS(load_pgm((tmp.path / "missing.pgm").string()), IoError);

  const auto trunc = (tmp.path / "trunc.pgm").string();
  {
    std::ofstream out(trunc, std::ios::binary);
    out << "P5\n4 4\n255\n";
    out.put(7);
  }
  CHECK_THROWS_AS(load_pgm(trunc), IoError);
}

TEST_CASE("load_sequence wants background plus consistent frames") {
  TempDir tmp;
  CHECK_THROWS_AS(load_sequence(tmp.path.string()), IoError);  // empty dir

  motion::Frame f(4, 4);
  f.pixels.setConstant(0.5);
  save_pgm(f, (tmp.path / "frame_001.pgm").string());
  CHECK_THROWS_AS(load_sequence(tmp.path.string()), IoError);  // no background

  save_pgm(f, (tmp.path / "background.pgm").string());
  const Sequence seq = load_sequence(tmp.path.string());
  CHECK(seq.frames.size() == 1);

  motion::Frame wrong(2, 2);
  save_pgm(wrong, (tmp.path / "frame_002.pgm").string());
  CHECK_THROWS_AS(load_sequence(tmp.path.string()), IoError);  // dim mismatch
}

TEST_CASE("load_sequence with an external background and at survey scale") {
  TempDir tmp, tmp_bg;
  motion::Frame f(128, 128);
  kernels::GaussianStream g(77);
  for (long c = 0; c < 128; ++c)
    for (long r = 0; r < 128; ++r) f.at(r, c) = g.uniform();
  const auto bg_path = (tmp_bg.path / "bg_elsewhere.pgm").string();
  save_pgm(f, bg_path);
  for (int k = 0; k < 282; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%03d.pgm", k);
    save_pgm(f, (tmp.path / name).string());
  }
  const Sequence seq = load_sequence(tmp.path.string(), bg_path);
  CHECK(seq.frames.size() == 282);
  CHECK(seq.frames[0].rows() * seq.frames[0].cols() == 16384);
}

TEST_CASE("synthetic sequences") {
  SyntheticSpec spec;
  spec.rows = 32;
  spec.cols = 32;
  spec.frames = 6;
  spec.object_size = 6;

  SUBCASE("moving square keeps constant sparsity with shifting support") {
    spec.velocity_y = 1;
    spec.velocity_x = 0;
    const auto seq = generate_synthetic(spec);
    REQUIRE(seq.frames.size() == 6);
    for (const auto& x : seq.foregrounds) {
      long s = 0;
      for (Index i = 0; i < x.size(); ++i) s += std::abs(x[i]) > 1e-9;
      CHECK(s == 36);
    }
    // support genuinely moves
    CHECK((seq.foregrounds[0] - seq.foregrounds[3]).lpNorm<1>() > 0.1);
  }

  SUBCASE("zero velocity repeats the same foreground") {
    spec.velocity_y = 0;
    spec.velocity_x = 0;
    const auto seq = generate_synthetic(spec);
    for (std::size_t k = 1; k < seq.foregrounds.size(); ++k)
      CHECK((seq.foregrounds[k] - seq.foregrounds[0]).norm() == 0.0);
  }

  SUBCASE("object larger than the frame is rejected") {
    spec.object_size = 40;
    CHECK_THROWS_AS(generate_synthetic(spec), ParameterError);
  }
}

TEST_CASE("csv write/read round trip, bytewise stable") {
  TempDir tmp;
  std::vector<FrameMetrics> ms(3);
  ms[0].k = 1;
  ms[0].m_k = 623;
  ms[0].phi_k = std::nan("");
  ms[0].bound_cs_oracle = 622.93703467003797;
  ms[0].bound_l1l1_oracle = std::nan("");
  ms[0].est_err = std::nan("");
  ms[0].rec_err = 6.18e-10;
  ms[0].s_hat = 64;
  ms[1].k = 2;
  ms[1].m_k = 623;
  ms[1].phi_k = std::nan("");
  ms[1].rec_err = 1.0 / 3.0;
  ms[1].s_hat = 64;
  ms[1].xi_hat = -8;
  ms[1].hbar_hat = 8;
  ms[2].k = 3;
  ms[2].m_k = 178;
  ms[2].phi_k = 161.77213538469181;
  ms[2].rec_err = 2e-9;
  ms[2].s_hat = 64;
  ms[2].xi_hat = 8;
  ms[2].hbar_hat = 8;
  ms[2].flags = "degenerate|nonconverged";

  const auto p1 = (tmp.path / "a.csv").string();
  const auto p2 = (tmp.path / "b.csv").string();
  write_csv(ms, p1);
  const auto parsed = read_csv(p1);
  REQUIRE(parsed.size() == 3);
  write_csv(parsed, p2);
  CHECK(read_file(p1) == read_file(p2));  // lossless round trip

  CHECK(parsed[0].m_k == 623);
  CHECK(std::isnan(parsed[0].phi_k));
  CHECK(parsed[0].bound_cs_oracle == ms[0].bound_cs_oracle);
  CHECK(parsed[1].xi_hat == -8);
  CHECK(parsed[2].phi_k == ms[2].phi_k);
  CHECK(parsed[2].flags == "degenerate|nonconverged");

  std::string header = read_file(p1).substr(0, std::string(kCsvHeader).size());
  CHECK(header == kCsvHeader);
}

TEST_CASE("bgsub on a small synthetic sequence") {
  RunConfig rc;
  rc.use_synthetic = true;
  rc.synthetic.rows = 32;
  rc.synthetic.cols = 32;
  rc.synthetic.frames = 7;
  rc.synthetic.object_size = 6;
  rc.seed = 3;

  const auto res = run_bgsub(rc);
  REQUIRE(res.metrics.size() == 7);

  // adder identity: z_hat = x_hat + b exactly (b regenerated bit-for-bit)
  const SignalVector b = motion::vectorize(generate_synthetic(rc.synthetic).background);
  for (long k = 1; k <= 7; ++k) {
    const SignalVector z =
        motion::vectorize(res.reconstructed[static_cast<std::size_t>(k - 1)]);
    CHECK((z - (res.state.x_hat(k) + b)).norm() == 0.0);
  }

  // reconstruction quality after initialization
  for (long k = 3; k <= 7; ++k)
    CHECK(res.metrics[static_cast<std::size_t>(k - 1)].rec_err < 1e-4);

  // measurement counts sit well below the basis-pursuit oracle
  for (long k = 3; k <= 7; ++k)
    CHECK(res.metrics[static_cast<std::size_t>(k - 1)].m_k <
          res.metrics[static_cast<std::size_t>(k - 1)].bound_cs_oracle);

  // masks mark the object as dark pixels
  const auto& mask = res.foreground_masks[4];
  long dark = 0;
  for (long c = 0; c < 32; ++c)
    for (long r = 0; r < 32; ++r) dark += mask.at(r, c) < 0.5;
  CHECK(dark == 36);
}

TEST_CASE("bgsub determinism: byte-identical CSV on replay") {
  TempDir tmp1, tmp2;
  RunConfig rc;
  rc.use_synthetic = true;
  rc.synthetic.rows = 32;
  rc.synthetic.cols = 32;
  rc.synthetic.frames = 5;
  rc.synthetic.object_size = 6;
  rc.seed = 11;
  rc.output_dir = tmp1.path.string();
  run_bgsub(rc);
  rc.output_dir = tmp2.path.string();
  run_bgsub(rc);
  CHECK(read_file((tmp1.path / "metrics.csv").string()) ==
        read_file((tmp2.path / "metrics.csv").string()));
}

TEST_CASE("bgsub on an all-background directory floors the rate") {
  TempDir tmp;
  motion::Frame bg(16, 16);
  kernels::GaussianStream g(5);
  for (long c = 0; c < 16; ++c)
    for (long r = 0; r < 16; ++r) bg.at(r, c) = 0.2 + 0.6 * g.uniform();
  save_pgm(bg, (tmp.path / "background.pgm").string());
  const motion::Frame loaded_bg = load_pgm((tmp.path / "background.pgm").string());
  for (int k = 0; k < 6; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%02d.pgm", k);
    save_pgm(loaded_bg, (tmp.path / name).string());
  }

  RunConfig rc;
  rc.input_dir = tmp.path.string();
  rc.seed = 4;
  const auto res = run_bgsub(rc);
  REQUIRE(res.metrics.size() == 6);
  // empty foreground: reconstructions vanish, masks stay white
  for (long k = 1; k <= 6; ++k) CHECK(res.state.x_hat(k).norm() < 1e-6);
  for (const auto& mask : res.foreground_masks)
    CHECK(mask.pixels.minCoeff() > 0.5);
  // rate collapses to the floor (ceiling of (1+delta()*floor) after transects)
  for (long k = 4; k <= 6; ++k) {
    CHECK(res.metrics[static_cast<std::size_t>(k - 1)].m_k <=
          static_cast<long>(std::ceil(1.1 * rc.m_floor)) + 1);
    CHECK(res.metrics[static_cast<std::size_t>(k - 1)].flags.find("degenerate") !=
          std::string::npos);
  }
}

TEST_CASE("phase harness: determined system always succeeds; infeasible cells rejected") {
  phase::PhaseCell cell;
  cell.n = 40;
  cell.s = 4;
  cell.hbar = 2;
  cell.xi = 0;
  cell.m_multiplier = 100.0;  // clamps to m = n
  const auto res = phase::phase_run(cell, phase::WhichSolver::L1L1, 5, 17);
  CHECK(res.m == 40);
  CHECK(res.successes == 5);

  SignalVector x, w;
  CHECK_THROWS_AS(phase::synthesize_pair(40, 4, 0, 6, 1, x, w), ParameterError);
  CHECK_THROWS_AS(phase::synthesize_pair(40, 4, 37, 2, 1, x, w), ParameterError);
}

TEST_CASE("phase harness: half the bound loses most recoveries") {
  phase::PhaseCell cell;
  cell.n = 500;
  cell.s = 25;
  cell.hbar = 3;
  cell.xi = 0;
  cell.m_multiplier = 0.5;
  const auto res = phase::phase_run(cell, phase::WhichSolver::L1L1, 20, 18);
  CHECK(res.m == 27);
  CHECK(res.success_rate < 0.5);
}

TEST_CASE("synthesize_pair hits the requested quality parameters exactly") {
  for (long trial = 0; trial < 20; ++trial) {
    const long s = 3 + trial % 5;
    const long hbar = trial % (s + 1);
    const long xi = trial % 4;
    SignalVector x, w;
    phase::synthesize_pair(60, s, xi, hbar, 300 + trial, x, w);
    const auto q = bounds::quality_params(x, w, 1e-9);
    CHECK(q.s == s);
    CHECK(q.xi == xi);
    CHECK(q.hbar == hbar);
  }
}
