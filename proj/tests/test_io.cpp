#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "slowdiff/growth.hpp"
#include "slowdiff/io.hpp"

using namespace slowdiff;
namespace fs = std::filesystem;

TEST_CASE("atomic writes land complete and leave no temp files") {
  const fs::path dir = fs::temp_directory_path() / "slowdiff_io_test";
  fs::remove_all(dir);
  const fs::path target = dir / "data.csv";
  write_file_atomic(target, "a,b\n1,2\n");
  write_file_atomic(target, "a,b\n3,4\n");  // overwrite is atomic too
  std::ifstream in(target);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "a,b\n3,4\n");
  int entries = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);  // no leftover temporaries
  fs::remove_all(dir);
}

TEST_CASE("csv writer: header, LF endings, width checked") {
  CsvWriter csv({"x", "y"});
  csv.add_row({"1", "2"});
  csv.add_row({fmt_g17(0.5), fmt_g17(-1.25)});
  CHECK(csv.str() == "x,y\n1,2\n0.5,-1.25\n");
  CHECK_THROWS_AS(csv.add_row({"only-one"}), std::invalid_argument);
}

TEST_CASE("chart machinery supports d = 2 discs") {
  MapConfig cfg;
  cfg.A = BumpProfile(2, 0.3, 0.6);
  const ChartPoint x = make_chart_point(0.2, 0.9, {0.2, -0.1});
  const ChartPoint y = f1_apply(cfg, x);
  CHECK(chart_distance(x, f1_inverse(cfg, y)) <= 1e-14);

  const Matrix j = jacobian_closed(cfg, 25, x);
  CHECK(j.size() == 4);
  CHECK(std::fabs(j.det() - 1.0) <= 1e-10);
  const Matrix chain = jacobian_chain(cfg, 25, x);
  CHECK(max_abs_diff(j, chain) <= 1e-8);

  GridSpec grids;
  grids.u_grid = 17;  // 17^2 u points
  GrowthScanner gs(cfg, grids);
  const GammaPoint g = gs.gamma(8);
  CHECK(g.gamma >= 1.0);
  CHECK(g.argmax.u.size() == 2);
}

TEST_CASE("make_chart_point rejects points outside the disc") {
  CHECK_THROWS_AS(make_chart_point(0.0, 0.0, {1.0}), std::domain_error);
  CHECK_THROWS_AS(make_chart_point(0.0, 0.0, {0.8, 0.7}), std::domain_error);
}
