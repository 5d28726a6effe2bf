#include "doctest.h"

#include <cmath>

#include "json.hpp"
#include "dnsphere/error.hpp"
#include "dnsphere/harness/commands.hpp"
#include "dnsphere/harness/random_fields.hpp"
#include "dnsphere/spectral/modes.hpp"

using namespace dnsphere;

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("config parsing") {
  RunConfig c;
  apply_config_text(c, "# comment\ncommand = tame\n dim=3 \ns_grid = 0.5, 1,2\nseed=42\n\n");
  CHECK(c.command == "tame");
  CHECK(c.dim == 3);
  CHECK(c.s_grid == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(c.seed == 42);
  CHECK_THROWS_AS(apply_config_text(c, "nope = 1"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "dim = two"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "L = 3.5"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "command = plot"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "just words"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "s_grid = ,"), ConfigError);
  RunConfig bad;
  bad.dim = 4;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = RunConfig{};
  bad.h_L = bad.L + 1;
  CHECK_THROWS_AS(run_command(bad), ConfigError);
}

TEST_CASE("resolved config and hash") {
  RunConfig a, b;
  CHECK(a.resolved_text() == b.resolved_text());
  CHECK(a.hash() == b.hash());
  b.seed = 2;
  CHECK(a.hash() != b.hash());
  // the resolved text parses back to the same config
  RunConfig c;
  apply_config_text(c, a.resolved_text());
  CHECK(c.resolved_text() == a.resolved_text());
  b = a;
  b.delta = 0.1 + 1e-18;  // same double
  CHECK(b.hash() == a.hash());
}

TEST_CASE("random fields") {
  auto r1 = sample_rng(5, 3, 0), r2 = sample_rng(5, 3, 0), r3 = sample_rng(5, 4, 0);
  CHECK(r1() == r2());
  CHECK(sample_rng(5, 3, 0)() != r3());
  auto g = sample_rng(1, 0, 0);
  const BoundaryField f = random_boundary_field(3, 6, 0.05, 2.5, g);
  CHECK(sobolev_norm(f, 2.5) == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(f[0] == 0.0);
  // constant and cosine fields evaluate to what they say
  Eigen::VectorXd x(3);
  x << 0.6, 0.0, 0.8;
  CHECK(eval(constant_field(3, 2, 0.05), x) == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(eval(cosine_field(3, 0.04), x) == doctest::Approx(0.032).epsilon(1e-14));
  Eigen::VectorXd y(2);
  y << 0.28, 0.96;
  CHECK(eval(cosine_field(2, 0.04), y) == doctest::Approx(0.0112).epsilon(1e-14));
  RunConfig c;
  c.samples = 3;
  const SampleFields s2 = make_sample(c, 2), s2b = make_sample(c, 2);
  CHECK(sobolev_norm(s2.h - s2b.h, 0) == 0.0);
  CHECK(sobolev_norm(s2.h, c.s0 + 1) == doctest::Approx(c.h_amp).epsilon(1e-14));
}

TEST_CASE("table output") {
  RunConfig c;
  Table t{"demo", {"a", "b", "c"}, {}};
  t.add({1LL, 0.1, std::string("x,y")});
  t.add({2LL, std::nan(""), std::string("z")});
  CHECK_THROWS_AS(t.add({1LL}), InputError);
  const std::string csv = to_csv(t, c);
  CHECK(csv.find("# config_hash=" + c.hash_hex()) != std::string::npos);
  CHECK(csv.find("a,b,c\n1,0.1,\"x,y\"\n2,nan,z\n") != std::string::npos);
  const auto j = nlohmann::json::parse(to_json_text(t, c));
  CHECK(j["config_hash"] == c.hash_hex());
  CHECK(j["config"]["seed"] == "1");
  CHECK(j["rows"][0][1].get<double>() == 0.1);
  CHECK(j["rows"][1][1] == "nan");
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<int> hit(50, 0);
  parallel_for(50, 4, [&](int i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(5, 3, [](int i) {
                    if (i == 2) throw ConvergenceError("x");
                  }),
                  ConvergenceError);
}

TEST_CASE("apply on the unit sphere returns the degree multiplier") {
  for (int dim : {2, 3}) {
    RunConfig c;
    c.dim = dim;
    c.L = 6;
    c.h_family = "zero";
    c.psi_family = "mode";
    c.psi_L = 4;
    c.psi_mode = dim == 2 ? circle_index(2) : sphere_index(2, -1);
    const CommandResult r = run_command(c);
    CHECK(r.exit_code == kExitOk);
    const Table& t = r.tables[0];
    for (const auto& row : t.rows) {
      const double G = std::get<double>(row[3]);
      const double want = std::get<long long>(row[1]) == c.psi_mode ? 2.0 : 0.0;
      CHECK(std::abs(G - want) < 1e-12);
    }
  }
}

TEST_CASE("apply reports non-convergence and keeps rows") {
  RunConfig c;
  c.L = 6;
  c.psi_L = 4;
  c.h_family = "constant";
  c.h_amp = 0.4;
  c.samples = 2;
  const CommandResult r = run_command(c);
  CHECK(r.exit_code == kExitNumerical);
  REQUIRE(r.tables.size() == 2);
  CHECK(r.tables[1].rows.size() == 2);
  CHECK(std::get<std::string>(r.tables[1].rows[0][8]).rfind("error:", 0) == 0);
}

TEST_CASE("derivative check error ratios") {
  RunConfig c;
  c.command = "derivative_check";
  c.L = 12;
  c.h_L = 5;
  c.psi_L = 6;
  c.method = "fixed_point";
  const CommandResult r = run_command(c);
  CHECK(r.exit_code == kExitOk);
  for (const auto& row : r.tables[0].rows) {
    const double q = std::get<double>(row[4]);
    if (std::isnan(q)) continue;
    CHECK(q > 30);
    CHECK(q < 300);
  }
  CHECK(std::get<double>(r.tables[1].rows[0][2]) < 1e-10);
}

TEST_CASE("identical config gives identical tables") {
  RunConfig c;
  c.L = 8;
  c.samples = 3;
  const CommandResult a = run_command(c);
  c.threads = 2;
  const CommandResult b = run_command(c);
  for (size_t k = 0; k < a.tables.size(); ++k) CHECK(to_csv(a.tables[k], c) == to_csv(b.tables[k], c));
}
