#include "mfel/fan_json.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mfel/errors.hpp"

namespace mfel {

namespace {

using nlohmann::json;

Int json_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (...) {
      throw SchemaError("malformed integer in " + where);
    }
  }
  throw SchemaError("expected integer in " + where);
}

Rat json_rat(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(Int(static_cast<long>(j.get<long long>())));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw SchemaError("expected rational in " + where);
}

json int_out(const Int& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

void check_fields(const json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw SchemaError("unknown field '" + it.key() + "' in " + where);
}

Simplex read_verts(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError("expected vertex array in " + where);
  Simplex s;
  for (const auto& x : j) {
    Int v = json_int(x, where);
    if (v < 1) throw SchemaError("vertex indices are 1-based in " + where);
    s.push_back(static_cast<int>(v.get_si()) - 1);
  }
  std::sort(s.begin(), s.end());
  return s;
}

json write_verts(const Simplex& s) {
  json a = json::array();
  for (int i : s) a.push_back(i + 1);
  return a;
}

}  // namespace

FanFile read_fan_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("JSON parse error: ") + e.what());
  }
  check_fields(j, {"schema", "rank", "rays", "multiplicities", "maximal", "divisor", "faces"},
               "fan");
  if (j.contains("schema") && json_int(j["schema"], "schema") != 1)
    throw SchemaError("unsupported schema version");
  if (!j.contains("rank") || !j.contains("rays") || !j.contains("maximal"))
    throw SchemaError("fan requires 'rank', 'rays' and 'maximal'");

  FanFile out;
  out.fan.rank = static_cast<int>(json_int(j["rank"], "rank").get_si());
  for (const auto& ray : j["rays"]) {
    IntVec r;
    for (const auto& x : ray) r.push_back(json_int(x, "rays"));
    if (static_cast<int>(r.size()) != out.fan.rank)
      throw SchemaError("ray length does not match the rank");
    out.fan.rays.push_back(std::move(r));
  }
  if (j.contains("multiplicities")) {
    for (const auto& x : j["multiplicities"]) {
      Int c = json_int(x, "multiplicities");
      if (c < 1) throw SchemaError("multiplicities must be positive");
      out.v.mult.push_back(std::move(c));
    }
    if (out.v.mult.size() != out.fan.num_rays())
      throw SchemaError("multiplicities length does not match the rays");
  } else {
    out.v.mult.assign(out.fan.num_rays(), Int(1));
  }
  for (const auto& mc : j["maximal"]) {
    check_fields(mc, {"verts", "wplus", "wminus"}, "maximal");
    MaxCone c;
    c.verts = read_verts(mc.at("verts"), "maximal.verts");
    c.wplus = mc.contains("wplus") ? json_int(mc["wplus"], "wplus") : Int(1);
    c.wminus = mc.contains("wminus") ? json_int(mc["wminus"], "wminus") : Int(0);
    out.fan.maximal.push_back(std::move(c));
  }
  if (j.contains("faces")) {
    for (const auto& f : j["faces"]) {
      check_fields(f, {"verts", "facets"}, "faces");
      GeneralFace gf;
      gf.verts = read_verts(f.at("verts"), "faces.verts");
      if (f.contains("facets"))
        for (const auto& x : f["facets"]) gf.facets.push_back(
            static_cast<int>(json_int(x, "faces.facets").get_si()));
      out.fan.faces.push_back(std::move(gf));
    }
  } else {
    out.fan.simplices = simplex_closure(out.fan.maximal);
  }
  if (j.contains("divisor")) {
    Divisor xi;
    for (const auto& x : j["divisor"]) xi.d.push_back(json_rat(x, "divisor"));
    if (xi.d.size() != out.fan.num_rays())
      throw SchemaError("divisor length does not match the rays");
    out.divisor = std::move(xi);
  }
  return out;
}

FanFile read_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open fan file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_fan_json(ss.str());
}

std::string write_fan_json(const MultiFan& fan, const EdgeVectorSet& v, const Divisor* divisor) {
  json j;
  j["schema"] = 1;
  j["rank"] = fan.rank;
  json rays = json::array();
  for (const auto& r : fan.rays) {
    json row = json::array();
    for (const auto& x : r) row.push_back(int_out(x));
    rays.push_back(row);
  }
  j["rays"] = rays;
  json mult = json::array();
  for (const auto& m : v.mult) mult.push_back(int_out(m));
  j["multiplicities"] = mult;
  json maximal = json::array();
  for (const auto& mc : fan.maximal) {
    json c;
    c["verts"] = write_verts(mc.verts);
    c["wplus"] = int_out(mc.wplus);
    c["wminus"] = int_out(mc.wminus);
    maximal.push_back(c);
  }
  j["maximal"] = maximal;
  if (!fan.faces.empty()) {
    json faces = json::array();
    for (const auto& f : fan.faces) {
      json e;
      e["verts"] = write_verts(f.verts);
      e["facets"] = f.facets;
      faces.push_back(e);
    }
    j["faces"] = faces;
  }
  if (divisor) {
    json d = json::array();
    for (const auto& x : divisor->d) d.push_back(rat_str(x));
    j["divisor"] = d;
  }
  return j.dump(2) + "\n";
}

std::string write_morphism_json(const BirationalMorphism& m) {
  json j;
  j["schema"] = 1;
  json kappa = json::array();
  for (int k : m.kappa) kappa.push_back(k + 1);
  j["kappa"] = kappa;
  json rho;
  auto key = [](const Simplex& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(s[i] + 1);
    }
    return out.empty() ? std::string("-") : out;
  };
  for (const auto& [src, dst] : m.rho) rho[key(src)] = key(dst);
  j["rho"] = rho;
  json a = json::array();
  for (std::size_t ip = 0; ip < m.a.rows(); ++ip) {
    json row = json::array();
    for (std::size_t i = 0; i < m.a.cols(); ++i) row.push_back(rat_str(m.a(ip, i)));
    a.push_back(row);
  }
  j["a"] = a;
  return j.dump(2) + "\n";
}

}  // namespace mfel
