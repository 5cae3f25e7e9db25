#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "arsr/bounds.hpp"
#include "arsr/kernels.hpp"
#include "arsr/online.hpp"
#include "arsr/phase.hpp"

using namespace arsr;
using namespace arsr::online;

namespace {

// constant exactly-sparse signal
SignalVector constant_signal(long n, long s, std::uint64_t seed) {
  kernels::GaussianStream g(seed);
  SignalVector x = SignalVector::Zero(n);
  for (long i = 0; i < s; ++i)
    x[i * (n / s)] = (g.bits() % 2 ? 1.0 : -1.0) * (0.5 + g.uniform());
  return x;
}

PredictFn identity_predictor() {
  return [](long, const std::vector<SignalVector>& xs) { return xs.back(); };
}

OnlineConfig base_config(long n, long s) {
  OnlineConfig c;
  c.n = n;
  c.s_hat_1 = s;
  c.s_hat_2 = s;
  c.alpha = 0.5;
  c.delta_schedule = {0.1};
  c.base_seed = 11;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  OnlineConfig c = base_config(100, 5);
  CHECK_NOTHROW(c.validate());
  c.alpha = 1.5;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c.alpha = 0.5;
  c.s_hat_1 = 0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c.s_hat_1 = 100;  // s >= n degenerates the initial bound
  CHECK_THROWS_AS(c.validate(), DegenerateBoundError);
}

TEST_CASE("initial measurement counts follow the basis-pursuit bound") {
  // the Hall-scale arithmetic (n = 16384, s_hat = 417 -> m = 3647) is pinned
  // in the bounds tests; here we check init_step applies the same rule
  const long n = 400, s = 16;
  OnlineConfig c = base_config(n, s);
  c.s_hat_2 = 21;
  const SignalVector x = constant_signal(n, s, 3);
  auto state = run_sequence([&](long) { return x; }, identity_predictor(), c, 3);
  CHECK(state.records[0].m_k == bounds::cs_bound(n, 16).m_required);
  CHECK(state.records[1].m_k == bounds::cs_bound(n, 21).m_required);
  CHECK(std::isnan(state.records[0].phi_k));
  CHECK(std::isnan(state.records[0].m_hat));
  CHECK(state.records[0].s_hat == 16);
  CHECK(state.records[1].s_hat == 21);
  // phi_3 = m_hat_2 regardless of alpha
  CHECK(state.records[2].phi_k == state.records[1].m_hat);
}

TEST_CASE("constant sequence with identity predictor reaches the filter fixed point") {
  const long n = 400, s = 20;
  OnlineConfig c = base_config(n, s);
  const SignalVector x = constant_signal(n, s, 5);
  const long K = 8;
  auto state = run_sequence([&](long) { return x; }, identity_predictor(), c, K);

  // all reconstructions succeed at these rates
  for (long k = 1; k <= K; ++k)
    CHECK((state.x_hat(k) - x).norm() / x.norm() < 1e-5);

  // from k = 3 on: hbar = 0 and w matches x entrywise within zero_tol, so
  // xi = -s and m_hat = (7/5)(s + xi/2) + 1
  const double expected = 7.0 * (s - s / 2.0) / 5.0 + 1.0;
  for (long k = 3; k <= K; ++k) {
    const auto& r = state.records[static_cast<std::size_t>(k - 1)];
    CHECK(r.hbar_hat == 0);
    CHECK(r.xi_hat == -s);
    CHECK(r.s_hat == s);
    CHECK(r.m_hat == doctest::Approx(expected).epsilon(1e-12));
  }
  // phi converges geometrically toward the fixed point
  const auto& last = state.records.back();
  CHECK(std::abs(last.phi_k - expected) <
        std::abs(state.records[2].phi_k - expected) + 1e-9);
}

TEST_CASE("phi update is the stated convex combination") {
  const long n = 300, s = 10;
  OnlineConfig c = base_config(n, s);
  c.alpha = 0.5;
  const SignalVector x = constant_signal(n, s, 6);
  auto state = run_sequence([&](long) { return x; }, identity_predictor(), c, 6);
  for (std::size_t i = 3; i < state.records.size(); ++i) {
    const auto& prev = state.records[i - 1];
    const auto& cur = state.records[i];
    CHECK(cur.phi_k ==
          doctest::Approx((1.0 - c.alpha) * prev.phi_k + c.alpha * prev.m_hat).epsilon(1e-12));
    CHECK(cur.phi_k >= std::min(prev.phi_k, prev.m_hat) - 1e-12);
    CHECK(cur.phi_k <= std::max(prev.phi_k, prev.m_hat) + 1e-12);
    // m_k = ceil((1+delta) phi_k), clamped
    CHECK(cur.m_k == std::min(c.n, std::max(c.m_floor,
                                            static_cast<long>(std::ceil(1.1 * cur.phi_k)))));
  }
}

TEST_CASE("alpha = 1 passes the estimate straight through") {
  const long n = 300, s = 10;
  OnlineConfig c = base_config(n, s);
  c.alpha = 1.0;
  const SignalVector x = constant_signal(n, s, 7);
  auto state = run_sequence([&](long) { return x; }, identity_predictor(), c, 6);
  for (std::size_t i = 3; i < state.records.size(); ++i)
    CHECK(state.records[i].phi_k == state.records[i - 1].m_hat);
}

TEST_CASE("alpha = 1 with perfect reconstruction matches the oracle bound exactly") {
  // time-varying sequence with known parameters; generous delta
  const long n = 400, s = 16;
  OnlineConfig c = base_config(n, s);
  c.alpha = 1.0;
  c.delta_schedule = {1.0};
  std::vector<SignalVector> xs, ws;
  for (long k = 0; k < 7; ++k) {
    SignalVector x, w;
    phase::synthesize_pair(n, s, 4, 3, kernels::mix_seed(500, k), x, w);
    xs.push_back(x);
    ws.push_back(w);
  }
  PredictFn predict = [&](long k, const std::vector<SignalVector>&) {
    return ws[static_cast<std::size_t>(k - 1)];
  };
  auto state = run_sequence([&](long k) { return xs[static_cast<std::size_t>(k - 1)]; },
                            predict, c, 7);
  for (long k = 3; k <= 7; ++k) {
    const auto& r = state.records[static_cast<std::size_t>(k - 1)];
    REQUIRE((state.x_hat(k) - xs[static_cast<std::size_t>(k - 1)]).norm() /
                xs[static_cast<std::size_t>(k - 1)].norm() <
            1e-6);
    // the estimate equals the oracle value computed from the true signal
    const auto q = bounds::quality_params(xs[static_cast<std::size_t>(k - 1)],
                                          ws[static_cast<std::size_t>(k - 1)], c.zero_tol);
    CHECK(r.m_hat == bounds::l1l1_bound(n, q, c.m_floor).raw_bound);
  }
}

TEST_CASE("lemma-1 regime: oversampling above the minimum delta keeps the sequence perfect") {
  const long n = 400, s = 16;
  const long K = 6;
  // fixed per-step parameters with varying hbar
  const long hbars[] = {0, 0, 2, 3, 4, 3};
  const long xis[] = {0, 0, 2, 4, 2, 0};

  int runs_ok = 0;
  const int runs = 40;
  for (int run = 0; run < runs; ++run) {
    std::vector<SignalVector> xs(1), ws(1);  // 1-based padding
    for (long k = 1; k <= K; ++k) {
      SignalVector x, w;
      phase::synthesize_pair(n, s, xis[k - 1], hbars[k - 1],
                             kernels::mix_seed(600 + run, k), x, w);
      xs.push_back(x);
      ws.push_back(w);
    }
    OnlineConfig c = base_config(n, s);
    c.alpha = 1.0;
    c.base_seed = kernels::mix_seed(9000, run);
    // delta_k at least the lemma condition, floored at a small positive value
    c.delta_schedule.clear();
    for (long k = 3; k <= K; ++k) {
      bounds::QualityParams qp, qc;
      qp.s = s;
      qp.xi = xis[k - 2];
      qp.hbar = hbars[k - 2];
      qc.s = s;
      qc.xi = xis[k - 1];
      qc.hbar = hbars[k - 1];
      c.delta_schedule.push_back(
          std::max(0.05, bounds::lemma1_min_delta(qp, qc, n) + 0.02));
    }
    auto state = run_sequence([&](long k) { return xs[static_cast<std::size_t>(k)]; },
                              [&](long k, const std::vector<SignalVector>&) {
                                return ws[static_cast<std::size_t>(k)];
                              },
                              c, K);
    bool all = true;
    for (long k = 1; k <= K; ++k)
      all = all &&
            (state.x_hat(k) - xs[static_cast<std::size_t>(k)]).norm() /
                    xs[static_cast<std::size_t>(k)].norm() <
                1e-5;
    runs_ok += all;
  }
  // compare against the lemma's probability bound with slack for solver and
  // sampling effects
  long m_lower = bounds::cs_bound(n, s).m_required;
  const double p = bounds::success_probability(m_lower, K);
  CHECK(static_cast<double>(runs_ok) / runs >= p - 0.05);
}

TEST_CASE("empty-foreground steps floor the estimate and recover") {
  const long n = 300, s = 30;
  OnlineConfig c = base_config(n, s);
  const SignalVector x = constant_signal(n, s, 8);
  const SignalVector zero = SignalVector::Zero(n);
  // signal vanishes at k = 4,5 and returns
  SignalSource src = [&](long k) { return (k == 4 || k == 5) ? zero : x; };
  const long K = 12;
  auto state = run_sequence(src, identity_predictor(), c, K);
  // first empty frame still has nonzero side information; the second sees
  // w = x_hat = 0 and the estimate degenerates to the floor
  const auto& r5 = state.records[4];
  CHECK(r5.degenerate_bound);
  CHECK(r5.m_hat == doctest::Approx(static_cast<double>(c.m_floor)));
  // m_k decays toward the floor while the foreground stays empty
  CHECK(state.records[5].m_k < state.records[2].m_k);
  // after the object returns, the rate estimate climbs back and the tail of
  // the sequence is reconstructed again
  CHECK((state.x_hat(K) - x).norm() / x.norm() < 1e-4);
}

TEST_CASE("replay determinism") {
  const long n = 200, s = 8;
  OnlineConfig c = base_config(n, s);
  const SignalVector x = constant_signal(n, s, 9);
  auto s1 = run_sequence([&](long) { return x; }, identity_predictor(), c, 5);
  auto s2 = run_sequence([&](long) { return x; }, identity_predictor(), c, 5);
  REQUIRE(s1.records.size() == s2.records.size());
  for (std::size_t i = 0; i < s1.records.size(); ++i) {
    CHECK(s1.records[i].m_k == s2.records[i].m_k);
    if (!std::isnan(s1.records[i].m_hat))
      CHECK(s1.records[i].m_hat == s2.records[i].m_hat);
    else
      CHECK(std::isnan(s2.records[i].m_hat));
    CHECK((s1.reconstructions[i] - s2.reconstructions[i]).norm() == 0.0);
  }
}

TEST_CASE("noisy mode with sigma 0 and tiny tau tracks the noiseless run") {
  const long n = 200, s = 8;
  OnlineConfig clean = base_config(n, s);
  OnlineConfig noisy = clean;
  noisy.noisy = true;
  noisy.tau = 1e-9;
  noisy.sigma_schedule = {0.0};
  const SignalVector x = constant_signal(n, s, 10);
  auto sc = run_sequence([&](long) { return x; }, identity_predictor(), clean, 5);
  auto sn = run_sequence([&](long) { return x; }, identity_predictor(), noisy, 5);
  for (long k = 1; k <= 5; ++k) {
    CHECK((sc.x_hat(k) - sn.x_hat(k)).norm() < 1e-5);
    if (k >= 2)
      CHECK(std::abs(sc.records[static_cast<std::size_t>(k - 1)].m_hat -
                     sn.records[static_cast<std::size_t>(k - 1)].m_hat) < 1.0);
  }
}

TEST_CASE("oracle diagnostics never feed the trajectory") {
  // records carry oracle columns, but the trajectory is a function of the
  // acquisition stream only: rerunning with the same seed reproduces m_k even
  // though the oracle values are computed from the source
  const long n = 200, s = 8;
  OnlineConfig c = base_config(n, s);
  const SignalVector x = constant_signal(n, s, 12);
  auto st = run_sequence([&](long) { return x; }, identity_predictor(), c, 5);
  for (const auto& r : st.records) {
    if (r.k >= 2) CHECK(std::isfinite(r.oracle_bound_l1l1));
    CHECK(std::isfinite(r.oracle_bound_cs));
  }
}
