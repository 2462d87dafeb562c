#include <algorithm>

#include "dipsim/analytic.hpp"
#include "dipsim/matrix.hpp"
#include "dipsim/ws_array.hpp"
#include "doctest.h"

using dipsim::ArrayConfig;
using dipsim::Matrix;
using dipsim::WsArray;

namespace {

ArrayConfig cfg(int n, int s) {
  ArrayConfig c;
  c.n = n;
  c.mac_stages = s;
  return c;
}

}  // namespace

TEST_CASE("weights shift in vertically over N cycles") {
  WsArray a(cfg(2, 2));
  const Matrix w{{1, 2}, {3, 4}};
  CHECK(a.load_weights(w) == 2);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) CHECK(a.weight(r, c) == w(r, c));
  }

  WsArray b(cfg(3, 2));
  const Matrix w3{{1, 4, 7}, {2, 5, 8}, {3, 6, 9}};
  CHECK(b.load_weights(w3) == 3);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) CHECK(b.weight(r, c) == w3(r, c));
  }
}

TEST_CASE("reloading after drain overwrites every weight") {
  WsArray a(cfg(4, 2));
  a.queue_inputs(dipsim::random_matrix(4, 4, 8, 1));
  a.load_weights(dipsim::random_matrix(4, 4, 8, 2));
  while (a.busy()) a.step();
  const Matrix w2 = dipsim::random_matrix(4, 4, 8, 3);
  a.load_weights(w2);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) CHECK(a.weight(r, c) == w2(r, c));
  }
}

TEST_CASE("reloading mid-computation is rejected") {
  WsArray a(cfg(3, 2));
  a.queue_inputs(dipsim::random_matrix(3, 3, 8, 1));
  a.load_weights(dipsim::random_matrix(3, 3, 8, 2));
  a.step();
  CHECK_THROWS_AS(a.load_weights(dipsim::random_matrix(3, 3, 8, 2)), std::logic_error);
}

TEST_CASE("input wavefront enters at the top-left corner") {
  WsArray a(cfg(4, 2));
  a.queue_inputs(dipsim::random_matrix(4, 4, 8, 5));
  a.load_weights(dipsim::random_matrix(4, 4, 8, 6));
  CHECK(a.cycle() == 0);
  CHECK(a.input_register(0, 0).has_value());
  CHECK_FALSE(a.input_register(1, 0).has_value());
  CHECK(a.step() == 1);  // cycle 1: only PE(0,0) multiplies
  CHECK(a.step() == 3);  // cycle 2: anti-diagonal r + c <= 1
}

TEST_CASE("stepping a drained array does nothing") {
  WsArray a(cfg(3, 1));
  CHECK_THROWS_AS(a.step(), std::logic_error);
  a.load_weights(Matrix::identity(3));
  CHECK(a.step() == 0);
  CHECK_FALSE(a.busy());
}

TEST_CASE("skew FIFO geometry") {
  for (int n : {2, 3, 8, 64}) {
    WsArray a(cfg(n, 2));
    int in = 0;
    int out = 0;
    for (int k = 0; k < n; ++k) {
      in += a.input_fifo_depth(k);
      out += a.output_fifo_depth(k);
    }
    CHECK(in == n * (n - 1) / 2);
    CHECK(out == n * (n - 1) / 2);
    CHECK(a.input_fifo_depth(0) == 0);
    CHECK(a.input_fifo_depth(1) == 1);
    CHECK(a.output_fifo_depth(0) == n - 1);
    CHECK(a.output_fifo_depth(n - 1) == 0);
    CHECK(a.fifo_registers() == dipsim::ws_fifo_register_count(n));
    CHECK(a.storage_registers() == 4 * n * n + n * (n - 1));
  }
  CHECK(dipsim::ws_fifo_register_count(64) == 4032);
  CHECK(dipsim::ws_fifo_register_count(2) == 2);
  CHECK(dipsim::ws_fifo_register_count(3) == 6);
  CHECK_THROWS(dipsim::ws_fifo_register_count(1));
}

TEST_CASE("single-tile latency") {
  const Matrix w3 = dipsim::random_matrix(3, 3, 8, 7);
  const Matrix x3 = dipsim::random_matrix(3, 3, 8, 8);
  const auto r3 = dipsim::ws_run(cfg(3, 2), w3, x3);
  CHECK(r3.trace.compute_cycles == 8);
  CHECK(r3.trace.weight_load_cycles == 3);
  CHECK(r3.output == dipsim::matmul_reference(x3, w3));

  const auto r64 = dipsim::ws_run(cfg(64, 2), dipsim::random_matrix(64, 64, 8, 1),
                                  dipsim::random_matrix(64, 64, 8, 2));
  CHECK(r64.trace.compute_cycles == 191);
  CHECK(r64.trace.tfpu_measured == 127);
}

TEST_CASE("random INT8 tiles match the oracle for both MAC depths") {
  for (int n : {2, 3, 4, 8, 16}) {
    for (int s : {1, 2}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Matrix w = dipsim::random_matrix(n, n, 8, seed * 31 + n);
        const Matrix x = dipsim::random_matrix(n, n, 8, seed * 37 + n + 1);
        const auto run = dipsim::ws_run(cfg(n, s), w, x);
        REQUIRE(run.output == dipsim::matmul_reference(x, w));
        CHECK(run.trace.compute_cycles == dipsim::analytic::ws_latency(n, s));
        CHECK(run.trace.tfpu_measured == 2 * n - 1);
        CHECK(run.trace.last_output_cycle == run.trace.compute_cycles);
        // Whole rows emerge together, one per cycle.
        CHECK(run.trace.first_output_cycle == run.trace.compute_cycles - (n - 1));
      }
    }
  }
}

TEST_CASE("streaming T tiles against one weight tile") {
  for (int n : {3, 8}) {
    for (int s : {1, 2}) {
      for (int t : {1, 2, 5}) {
        const Matrix w = dipsim::random_matrix(n, n, 8, 50 + t);
        const Matrix x = dipsim::random_matrix(t * n, n, 8, 60 + t);
        const auto run = dipsim::ws_run(cfg(n, s), w, x);
        CHECK(run.output == dipsim::matmul_reference(x, w));
        CHECK(run.trace.compute_cycles == t * n + 2 * n + s - 3);
      }
    }
  }
}

TEST_CASE("utilization wavefront") {
  const int n = 8;
  // Single tile: rises and falls along the diagonal but never covers every PE at once.
  const auto single = dipsim::ws_run(cfg(n, 2), dipsim::random_matrix(n, n, 8, 1),
                                     dipsim::random_matrix(n, n, 8, 2));
  const auto& act = single.trace.active_pes_per_cycle;
  const auto peak = std::max_element(act.begin(), act.end());
  CHECK(std::is_sorted(act.begin(), peak + 1));
  CHECK(std::is_sorted(peak, act.end(), std::greater<>()));
  CHECK(*peak < n * n);
  CHECK_FALSE(single.trace.first_full_cycle.has_value());
  for (int v : act) CHECK(v <= n * n);

  // Streaming: every PE busy from cycle 2N-1 while inputs keep coming.
  const auto stream = dipsim::ws_run(cfg(n, 2), dipsim::random_matrix(n, n, 8, 1),
                                     dipsim::random_matrix(4 * n, n, 8, 3));
  const auto& sa = stream.trace.active_pes_per_cycle;
  REQUIRE(stream.trace.first_full_cycle.has_value());
  CHECK(*stream.trace.first_full_cycle == 2 * n - 1);
  CHECK(stream.trace.tfpu_measured == 2 * n - 1);
  const auto speak = std::max_element(sa.begin(), sa.end());
  CHECK(*speak == n * n);
  CHECK(std::is_sorted(sa.begin(), speak + 1));
  CHECK(std::is_sorted(speak, sa.end(), std::greater<>()));
}

TEST_CASE("psum wraparound uses the configured width") {
  ArrayConfig c = cfg(2, 1);
  c.psum_width = 8;
  const Matrix w{{127, 0}, {127, 0}};
  const Matrix x{{127, 127}, {0, 0}};
  const auto run = dipsim::ws_run(c, w, x);
  CHECK(run.output(0, 0) == dipsim::wrap_to_width(2 * 127 * 127, 8));
  CHECK(c.overflow_warning().has_value());
  CHECK_FALSE(cfg(64, 2).overflow_warning().has_value());
}

TEST_CASE("serial and OpenMP clocking agree") {
  const Matrix w = dipsim::random_matrix(32, 32, 8, 11);
  const Matrix x = dipsim::random_matrix(64, 32, 8, 12);
  const auto serial = dipsim::ws_run(cfg(32, 2), w, x, dipsim::Execution::serial);
  const auto par = dipsim::ws_run(cfg(32, 2), w, x, dipsim::Execution::parallel);
  CHECK(serial.output == par.output);
  CHECK(serial.trace.active_pes_per_cycle == par.trace.active_pes_per_cycle);
  CHECK(serial.trace.compute_cycles == par.trace.compute_cycles);
}

TEST_CASE("dimension errors") {
  CHECK_THROWS_AS(dipsim::ws_run(cfg(3, 2), Matrix(2, 2), Matrix(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(dipsim::ws_run(cfg(3, 2), Matrix(3, 3), Matrix(4, 3)), std::invalid_argument);
  CHECK_THROWS_AS(dipsim::ws_run(cfg(3, 2), Matrix(3, 3), Matrix(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(dipsim::ws_run(cfg(3, 2), Matrix(3, 3), Matrix({{300, 0, 0}, {0, 0, 0}, {0, 0, 0}})),
                  std::out_of_range);
  CHECK_THROWS_AS(WsArray(cfg(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(WsArray(cfg(4, 3)), std::invalid_argument);
}
