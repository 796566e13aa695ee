#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "bsdelab/generator.hpp"
#include "bsdelab/squeeze.hpp"
#include "bsdelab/terminal.hpp"

using bsdelab::Generator;
using bsdelab::GridConfig;
using bsdelab::SolveOptions;
using bsdelab::SqueezeConfig;
using bsdelab::SqueezeRow;
using bsdelab::TerminalCondition;

namespace {

GridConfig small_grid(double cap) {
  GridConfig g;
  g.T = 0.25;
  g.num_time_steps = 192;
  g.domain_half_width = 4.0;
  g.num_space_points = 129;
  g.lipschitz_cap = cap;
  return g;
}

SqueezeConfig power_config() {
  SqueezeConfig cfg;
  cfg.generator = Generator::power_z(1.5, 2.0 / 3.0);
  cfg.terminal = TerminalCondition::cosine();
  cfg.grid = small_grid(16.0);
  cfg.n_ladder = {4.0, 8.0, 16.0};
  cfg.report_time = 0.1;
  cfg.report_paths = 512;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("squeeze config validation names the broken field") {
  SqueezeConfig cfg = power_config();
  CHECK_NOTHROW(cfg.validate());

  cfg.n_ladder = {};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = power_config();
  cfg.n_ladder = {8.0, 4.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = power_config();
  cfg.n_ladder = {1.5, 4.0};  // first rung sits exactly at C
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("n <= C"), std::invalid_argument);

  cfg = power_config();
  cfg.grid.lipschitz_cap = 8.0;  // ladder tops out at 16
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("cover the ladder"),
                       std::invalid_argument);

  cfg = power_config();
  cfg.report_time = 0.25;  // == T
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("report_time"), std::invalid_argument);

  cfg = power_config();
  cfg.generator = Generator::sqrt_y();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("absolute-value driver: envelopes coincide and the gap is exactly zero") {
  SqueezeConfig cfg;
  cfg.generator = Generator::abs_z();
  cfg.terminal = TerminalCondition::cosine();
  cfg.grid = small_grid(16.0);
  cfg.n_ladder = {2.0, 4.0, 8.0};
  cfg.seed = 3;

  const auto report = bsdelab::run_squeeze(cfg);
  REQUIRE(report.rows.size() == 3);
  for (const SqueezeRow& row : report.rows) {
    CAPTURE(row.n);
    CHECK(row.y_lower0 == row.y_upper0);
    CHECK(row.gap == 0.0);
    CHECK(row.pass);
    CHECK(!row.has_pathwise);
  }
  CHECK(report.monotone.pass);
  CHECK(report.certificate.pass);
  CHECK(report.certificate.extrapolated_limit == 0.0);
  // |z| is 1-Lipschitz, so the un-enveloped driver is solved and bracketed too.
  CHECK(report.middle_sandwich_checked);
  CHECK(report.middle_sandwich_ok);
  CHECK(report.m0_ok);
  CHECK(report.sup_abs_y <= report.m0_estimate);
  CHECK(report.pass);
}

TEST_CASE("power driver squeeze: positive gaps under the published bound, shrinking") {
  const SqueezeConfig cfg = power_config();
  const auto report = bsdelab::run_squeeze(cfg);
  REQUIRE(report.rows.size() == 3);

  for (const SqueezeRow& row : report.rows) {
    CAPTURE(row.n);
    CHECK(row.pass);
    CHECK(row.gap >= 0.0);
    CHECK(row.bound == bsdelab::envelope_gap_bound(cfg.generator, row.n, cfg.grid.T));
    CHECK(row.gap <= row.bound + row.eps_num);
    CHECK(row.has_pathwise);
    CHECK(row.pathwise_ok);
    CHECK(row.pathwise_stderr > 0.0);
    CHECK(row.lattice_step > 0.0);
  }
  CHECK(report.rows.front().gap > 0.0);
  CHECK(report.rows.back().gap < report.rows.front().gap);
  CHECK(report.monotone.pass);
  CHECK(report.certificate.pass);
  CHECK(report.certificate.gap_sequence.size() == 3);
  // No finite Lipschitz constant => no middle solve for this driver.
  CHECK(!report.middle_sandwich_checked);
  CHECK(report.middle_sandwich_ok);
  CHECK(report.m0_ok);
  CHECK(report.pass);
}

TEST_CASE("squeeze report is bitwise reproducible across thread counts") {
  const SqueezeConfig cfg = power_config();
  SolveOptions one;
  one.threads = 1;
  SolveOptions four;
  four.threads = 4;
  const auto a = bsdelab::run_squeeze(cfg, one);
  const auto b = bsdelab::run_squeeze(cfg, four);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].y_lower0 == b.rows[i].y_lower0);
    CHECK(a.rows[i].y_upper0 == b.rows[i].y_upper0);
    CHECK(a.rows[i].gap == b.rows[i].gap);
    CHECK(a.rows[i].eps_num == b.rows[i].eps_num);
    CHECK(a.rows[i].pathwise_mean_gap == b.rows[i].pathwise_mean_gap);
    CHECK(a.rows[i].pathwise_stderr == b.rows[i].pathwise_stderr);
  }
  CHECK(a.certificate.extrapolated_limit == b.certificate.extrapolated_limit);
  CHECK(a.sup_abs_y == b.sup_abs_y);
}

TEST_CASE("a-priori sup bound has the advertised closed form") {
  GridConfig g = small_grid(16.0);
  const double m0 = bsdelab::a_priori_sup_bound(TerminalCondition::cosine(), g, 1.5);
  const double expected = 1.0 + 1.5 * 0.25 * std::exp(1.5 * 0.25) + 1.0;
  CHECK(m0 == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("monotone check flags drift beyond the numerical tolerance") {
  std::vector<SqueezeRow> rows(2);
  rows[0].n = 4.0;
  rows[0].y_lower0 = 0.5;
  rows[0].y_upper0 = 0.9;
  rows[0].eps_num = 1e-6;
  rows[1].n = 8.0;
  rows[1].y_lower0 = 0.6;
  rows[1].y_upper0 = 0.8;
  rows[1].eps_num = 1e-6;
  CHECK(bsdelab::check_monotone(rows).pass);

  rows[1].y_lower0 = 0.4;  // lower sequence must not fall
  const auto broken = bsdelab::check_monotone(rows);
  CHECK(!broken.pass);
  CHECK(!broken.witnesses.empty());

  rows[1].y_lower0 = 0.85;  // lower above upper within one rung
  rows[1].y_upper0 = 0.7;
  CHECK(!bsdelab::check_monotone(rows).pass);
}

TEST_CASE("certificate extrapolates geometric gap decay to zero and rejects stalls") {
  std::vector<SqueezeRow> rows(4);
  const double gaps[] = {0.8, 0.4, 0.2, 0.1};
  for (int i = 0; i < 4; ++i) {
    rows[static_cast<std::size_t>(i)].gap = gaps[i];
    rows[static_cast<std::size_t>(i)].eps_num = 1e-3;
  }
  const auto cert = bsdelab::uniqueness_certificate(rows);
  CHECK(cert.pass);
  CHECK(cert.extrapolated_limit <= 1e-12);

  const double stalled[] = {0.5, 0.45, 0.44, 0.435};
  for (int i = 0; i < 4; ++i) rows[static_cast<std::size_t>(i)].gap = stalled[i];
  const auto stuck = bsdelab::uniqueness_certificate(rows);
  CHECK(!stuck.pass);
  CHECK(stuck.extrapolated_limit > 0.4);
}
