#include <doctest.h>

#include "helpers.hpp"
#include "mfel/errors.hpp"
#include "mfel/fan_json.hpp"

using namespace mfel;
using namespace mfel::testutil;

TEST_SUITE_BEGIN("fan_json");

TEST_CASE("round trip is idempotent after canonicalization") {
  MultiFan f = p2();
  EdgeVectorSet v = prim(f);
  Divisor xi = canonical0(f);
  std::string once = write_fan_json(f, v, &xi);
  FanFile back = read_fan_json(once);
  std::string twice = write_fan_json(back.fan, back.v, &*back.divisor);
  CHECK(once == twice);
  CHECK(back.fan.rank == 2);
  CHECK(back.fan.rays == f.rays);
  CHECK(back.fan.simplices == f.simplices);
}

TEST_CASE("rationals parse exactly") {
  std::string text = R"({
    "rank": 1,
    "rays": [[1],[-1]],
    "maximal": [{"verts":[1]},{"verts":[2]}],
    "divisor": ["3/2", "-1/3"]
  })";
  FanFile ff = read_fan_json(text);
  REQUIRE(ff.divisor.has_value());
  CHECK(ff.divisor->d[0] == Rat(3, 2));
  CHECK(ff.divisor->d[1] == Rat(-1, 3));
  CHECK(ff.v.mult == IntVec{Int(1), Int(1)});
}

TEST_CASE("unknown fields are named in the error") {
  std::string text = R"({"rank":1,"rays":[[1]],"maximal":[{"verts":[1]}],"spin":3})";
  try {
    read_fan_json(text);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("spin") != std::string::npos);
  }
}

TEST_CASE("verts are 1-based on disk") {
  std::string text = R"({"rank":2,"rays":[[1,0],[0,1]],"maximal":[{"verts":[1,2]}]})";
  FanFile ff = read_fan_json(text);
  CHECK(ff.fan.maximal[0].verts == Simplex{0, 1});
  std::string bad = R"({"rank":2,"rays":[[1,0],[0,1]],"maximal":[{"verts":[0,1]}]})";
  CHECK_THROWS_AS(read_fan_json(bad), SchemaError);
}

TEST_CASE("non-simplicial fans round trip their face lists") {
  MultiFan cube = cube_fan();
  EdgeVectorSet v = prim(cube);
  std::string text = write_fan_json(cube, v);
  FanFile back = read_fan_json(text);
  CHECK_FALSE(back.fan.is_simplicial());
  CHECK(back.fan.faces.size() == cube.faces.size());
  CHECK(write_fan_json(back.fan, back.v) == text);
}

TEST_CASE("morphism serialization carries kappa, rho and the coefficients") {
  BirationalMorphism m = p2_star();
  std::string text = write_morphism_json(m);
  CHECK(text.find("kappa") != std::string::npos);
  CHECK(text.find("\"4\": \"1,2\"") != std::string::npos);  // the new ray maps onto {0,1}
  CHECK(text.find("a") != std::string::npos);
}

TEST_SUITE_END();
