#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "pellclass/report.hpp"

using namespace pellclass;

TEST_CASE("format_double round trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.1875) == "2.1875");
  CHECK(format_double(1e300) == "1e+300");
  for (const double v : {1.0 / 3.0, M_PI, 1e-17, -2.5e12}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("csv and json carry the same cells") {
  Table t;
  t.columns = {"a", "b", "c", "d"};
  t.add({u64{1}, 0.5, std::string("x,y"), std::monostate{}});
  t.add({i64{-2}, 2.0, std::string("plain"), true});
  const std::string csv = to_csv(t);
  CHECK(csv == "a,b,c,d\n1,0.5,\"x,y\",\n-2,2,plain,1\n");
  const auto j = nlohmann::json::parse(to_json(t));
  REQUIRE(j.size() == 2);
  CHECK(j[0]["a"] == 1);
  CHECK(j[0]["c"] == "x,y");
  CHECK(j[0]["d"].is_null());
  CHECK(j[1]["a"] == -2);
  CHECK(j[1]["d"] == true);
  CHECK(render(t, OutputFormat::csv) == csv);
}

TEST_CASE("table builders") {
  const EnumerationRun run = enumerate(10);
  const Table d = density_table(run);
  CHECK(d.columns == std::vector<std::string>{"x", "records", "pairs", "density", "predicted"});
  CHECK(to_csv(d) == "x,records,pairs,density,predicted\n10,10,11,1,2.1875\n");

  MomentReport m;
  m.x = 10;
  m.k = 1;
  m.runtime_s = 1.5;
  const std::string without = to_csv(moments_table({m}, false));
  const std::string with = to_csv(moments_table({m}, true));
  CHECK(without.find("1.5") == std::string::npos);
  CHECK(with.find("1.5") != std::string::npos);

  const Table c = constants_table({1.0, 12.0}, {C_of_k(1.0), C_of_k(12.0)}, {H_of_k(1.0), H_of_k(12.0)});
  CHECK(c.columns.front() == "k");
  REQUIRE(c.rows.size() == 2);
  CHECK(std::holds_alternative<std::monostate>(c.rows[0][4]));  // no asymptotic below k = 10
  CHECK(std::holds_alternative<double>(c.rows[1][4]));
}
