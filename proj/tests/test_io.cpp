#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "zeroset/config.hpp"
#include "zeroset/detect.hpp"
#include "zeroset/errors.hpp"
#include "zeroset/experiment.hpp"
#include "zeroset/io.hpp"
#include "zeroset/simulate.hpp"

using namespace zeroset;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "zeroset_test_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("field cache round trip in double precision") {
  const GridSpec g = make_grid(2, 1.0 / 32, 6);
  const SignalModel m = make_signal(SignalKind::Hermite1, 100, 1);
  const auto f = simulate(g, m, 12);
  const fs::path p = scratch("double.bin");
  write_field_cache(p, f, {12, 1, m, Precision::Double});
  const LoadedField back = read_field_cache(p);
  CHECK(back.field.grid() == g);
  CHECK((back.field.values() == f.values()).all());
  CHECK(back.info.seed == 12);
  CHECK(back.info.signal.kind == SignalKind::Hermite1);
  CHECK(back.info.signal.intensity() == doctest::Approx(100));
  REQUIRE(back.field.source() != nullptr);
  // regenerated source reproduces the realization off the grid
  const Complex z(0.3, -0.4);
  CHECK(std::abs(evaluate_continuous(*back.field.source(), z) -
                 evaluate_continuous(*f.source(), z)) < 1e-10);
}

TEST_CASE("field cache in single precision") {
  const GridSpec g = make_grid(1, 1.0 / 16, 6);
  const auto f = simulate(g, SignalModel{}, 3);
  const fs::path p = scratch("single.bin");
  write_field_cache(p, f, {3, 1, SignalModel{}, Precision::Single});
  const LoadedField back = read_field_cache(p, false);
  CHECK(back.info.precision == Precision::Single);
  CHECK(back.field.source() == nullptr);
  CHECK((back.field.values() - f.values()).abs().maxCoeff() < 1e-6);
  CHECK(fs::file_size(p) < fs::file_size(scratch("double.bin")));
}

TEST_CASE("cache writes are byte-identical") {
  const GridSpec g = make_grid(1, 1.0 / 16, 6);
  const fs::path a = scratch("a.bin"), b = scratch("b.bin");
  write_field_cache(a, simulate(g, SignalModel{}, 5), {5, 1, SignalModel{}, Precision::Double});
  write_field_cache(b, simulate(g, SignalModel{}, 5), {5, 1, SignalModel{}, Precision::Double});
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("corrupt caches are data errors") {
  CHECK_THROWS_AS(read_field_cache(scratch("missing.bin")), DataError);
  {
    std::ofstream out(scratch("garbage.bin"), std::ios::binary);
    out << "not a cache at all";
  }
  CHECK_THROWS_AS(read_field_cache(scratch("garbage.bin")), DataError);
  const std::string full = slurp(scratch("double.bin"));
  {
    std::ofstream out(scratch("short.bin"), std::ios::binary);
    out << full.substr(0, full.size() / 2);
  }
  CHECK_THROWS_AS(read_field_cache(scratch("short.bin")), DataError);
  CHECK(field_cache_name(42) == "field_42.bin");
}

TEST_CASE("point CSV round trip") {
  PointSet s{{{-3, 4}, {0, 0}, {17, -2}}, Method::MGN, 1.0 / 64, 3};
  std::stringstream ss;
  write_points_csv(ss, s, 9, "0123456789abcdef");
  const std::string text = ss.str();
  CHECK(text.rfind("# config_hash=0123456789abcdef\nre,im,k,l,method,delta,seed\n", 0) == 0);
  CHECK(text.find("-0.046875,0.0625,-3,4,MGN,0.015625,9") != std::string::npos);
  const PointSet back = read_points_csv(ss, 3);
  CHECK(back.points == s.points);
  CHECK(back.method == Method::MGN);
  CHECK(back.delta == s.delta);
  std::stringstream bad("re,im\n1,2\n");
  CHECK_THROWS_AS(read_points_csv(bad), DataError);
}

TEST_CASE("report writers") {
  std::stringstream stats;
  const std::vector<double> values{0.3, 0.32};
  write_stats_csv(stats, {{"intensity", "AMN", "zero", 0, 1, 1.0 / 64, 4, summarize(values)}}, "h");
  CHECK(stats.str().find("estimator,method,signal,A,sigma,delta,theta_halfwidth,R,mean,std,se\n") !=
        std::string::npos);
  CHECK(stats.str().find("intensity,AMN,zero,0,1,0.015625,4,2,") != std::string::npos);

  std::stringstream cons;
  write_consistency_csv(cons, {{7, Method::ST, 1.0 / 256, 1.0 / 128, 10, 11, 1, 1.0 / 128}}, "h");
  CHECK(cons.str().find("7,ST,0.00390625,0.0078125,10,11,1,0.0078125") != std::string::npos);

  std::stringstream table;
  write_failure_table(table, {1.0 / 128, 1.0 / 64}, {Method::AMN, Method::ST},
                      {{0, 0.5}, {0.25, 1}}, "h");
  CHECK(table.str() == "# config_hash=h\ndelta,AMN,ST\n2^-7,0,0.5\n2^-6,0.25,1\n");
}

TEST_CASE("spacing and seed parsing") {
  CHECK(parse_spacing("2^-7") == 1.0 / 128);
  CHECK(parse_spacing("1/64") == 1.0 / 64);
  CHECK(parse_spacing("0.25") == 0.25);
  CHECK(parse_spacing(" 6 ") == 6);
  CHECK_THROWS_AS(parse_spacing("two"), ConfigError);
  CHECK_THROWS_AS(parse_spacing("1/0"), ConfigError);
  CHECK(format_spacing(1.0 / 512) == "2^-9");
  CHECK(format_spacing(0.3) == "0.29999999999999999");
  CHECK(parse_seeds("0..3") == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(parse_seeds("5, 2,0..1") == std::vector<std::uint64_t>{5, 2, 0, 1});
  CHECK_THROWS_AS(parse_seeds("3..1"), ConfigError);
  CHECK_THROWS_AS(parse_seeds(""), ConfigError);
}

TEST_CASE("configuration files") {
  std::istringstream in(
      "# experiment\n"
      "L = 4\n"
      "delta_hi = 2^-7   # fine grid\n"
      "signal = hermite1:A=100\n"
      "R = 3\n"
      "methods = AMN,ST\n"
      "j = 2\n"
      "precision = float\n");
  ExperimentConfig c;
  c.apply(parse_key_values(in));
  CHECK(c.L == 4);
  CHECK(c.delta == 1.0 / 128);
  CHECK(c.seeds == std::vector<std::uint64_t>{0, 1, 2});
  CHECK(c.methods == std::vector<Method>{Method::AMN, Method::ST});
  CHECK(c.levels == 2);
  CHECK(c.precision == Precision::Single);
  CHECK(c.signal_model().kind == SignalKind::Hermite1);
  CHECK(c.grid().size() == 1025);

  ExperimentConfig d = c;
  CHECK(config_hash(c) == config_hash(d));
  d.apply({{"seeds", "0..3"}});
  CHECK(config_hash(c) != config_hash(d));
  CHECK(config_hash(c).size() == 16);

  CHECK_THROWS_AS(c.apply({{"colour", "red"}}), ConfigError);
  std::istringstream broken("L 4\n");
  CHECK_THROWS_AS(parse_key_values(broken), ConfigError);
  ExperimentConfig bad;
  bad.apply({{"delta", "0.3"}, {"L", "4"}});
  CHECK_THROWS_AS(bad.grid(), ConfigError);
  ExperimentConfig proxy;
  proxy.apply({{"proxy", "ST"}});
  CHECK_THROWS_AS(proxy.grid(), ConfigError);
}

TEST_CASE("parallel map keeps index order and propagates errors") {
  const auto squares = parallel_map(100, 4, [](std::size_t i) { return int(i * i); });
  for (std::size_t i = 0; i < 100; ++i) CHECK(squares[i] == int(i * i));
  CHECK_THROWS_AS(parallel_map(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw DataError("boom");
                                 return 0;
                               }),
                  DataError);
}

TEST_CASE("experiments do not depend on the worker count") {
  ExperimentConfig c;
  c.apply({{"L", "3"}, {"delta", "2^-6"}, {"seeds", "0..5"}, {"levels", "2"},
           {"signal", "gauss:A=1"}});
  auto run = [&](int threads) {
    ExperimentConfig t = c;
    t.threads = threads;
    std::stringstream a, b;
    write_stats_csv(a, run_stats(t, simulation_provider(t)), "h");
    const auto cons = run_consistency(t, simulation_provider(t));
    write_consistency_csv(b, cons.rows, "h");
    return a.str() + b.str();
  };
  CHECK(run(1) == run(3));
}

TEST_CASE("the ladder is subsampled from one field") {
  const GridSpec g = make_grid(2, 1.0 / 32, 6);
  const auto f = simulate(g, SignalModel{}, 2);
  const auto ladder = dyadic_ladder(f, 2);
  REQUIRE(ladder.size() == 3);
  CHECK(ladder[2].grid().delta() == 0.125);
  CHECK(ladder[2].values()(3, 5) == f.values()(12, 20));
}

TEST_CASE("consistency result layout") {
  ExperimentConfig c;
  c.apply({{"L", "3"}, {"delta", "2^-7"}, {"seeds", "0..1"}, {"levels", "2"}});
  const auto r = run_consistency(c, simulation_provider(c));
  CHECK(r.deltas == std::vector<double>{1.0 / 64, 1.0 / 32});
  CHECK(r.rows.size() == 2 * 2 * 3);
  REQUIRE(r.rates.size() == 2);
  for (const auto& level : r.rates)
    for (double p : level) CHECK((p >= 0 && p <= 1));
  ExperimentConfig none = c;
  none.levels = 0;
  CHECK_THROWS_AS(run_consistency(none, simulation_provider(none)), ConfigError);
}
