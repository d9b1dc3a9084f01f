// mfel: batch interface for multi-fan elliptic genus computations.
//
// Exit codes: 0 success / verification passed, 1 verification failed,
// 2 malformed input or usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfel/errors.hpp"
#include "mfel/fan_json.hpp"
#include "mfel/genus.hpp"
#include "mfel/util.hpp"

using namespace mfel;
using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (...) {
      throw InputError("malformed integer list: " + s);
    }
  }
  return out;
}

Simplex parse_cone(const std::string& s) {
  Simplex out;
  for (long v : parse_longs(s)) {
    if (v < 1) throw InputError("cone vertex indices are 1-based");
    out.push_back(static_cast<int>(v - 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntVec parse_intvec(const std::string& s) {
  IntVec out;
  for (long v : parse_longs(s)) out.push_back(Int(v));
  return out;
}

RatVec parse_ratvec(const std::string& s) {
  RatVec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  return out;
}

// Complex literals of the form "a", "bi", "a+bi", "a-bi".
Cx parse_complex(const std::string& s) {
  std::string t = s;
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  if (t.empty()) throw InputError("empty complex literal");
  try {
    if (t.back() == 'i' || t.back() == 'j') {
      t.pop_back();
      // Split at the last +/- that is not a leading sign or exponent sign.
      for (std::size_t pos = t.size(); pos-- > 1;) {
        if ((t[pos] == '+' || t[pos] == '-') && t[pos - 1] != 'e' && t[pos - 1] != 'E') {
          double re = std::stod(t.substr(0, pos));
          std::string imtxt = t.substr(pos);
          double im = imtxt == "+" ? 1.0 : imtxt == "-" ? -1.0 : std::stod(imtxt);
          return {re, im};
        }
      }
      if (t.empty() || t == "+") return {0.0, 1.0};
      if (t == "-") return {0.0, -1.0};
      return {0.0, std::stod(t)};
    }
    return {std::stod(t), 0.0};
  } catch (const InputError&) {
    throw;
  } catch (...) {
    throw InputError("malformed complex literal: " + s);
  }
}

std::vector<Cx> parse_complex_list(const std::string& s) {
  std::vector<Cx> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
  return out;
}

Divisor resolve_divisor(const std::string& spec, const FanFile& ff) {
  const MultiFan& fan = ff.fan;
  if (spec.empty()) {
    if (ff.divisor) return *ff.divisor;
    Divisor d;
    d.d.assign(fan.num_rays(), Rat(1));
    return d;
  }
  if (spec == "canonical0" || spec == "minus-canonical") {
    Divisor d;
    d.d.assign(fan.num_rays(), Rat(1));
    return d;
  }
  if (spec.rfind("linear:", 0) == 0) {
    RatVec u = parse_ratvec(spec.substr(7));
    if (static_cast<int>(u.size()) != fan.rank) throw InputError("linear divisor needs rank entries");
    Divisor d;
    d.d.resize(fan.num_rays());
    for (std::size_t i = 0; i < fan.num_rays(); ++i)
      d.d[i] = dot(u, ff.v.vector(fan, static_cast<int>(i)));
    return d;
  }
  if (spec.rfind("coeffs:", 0) == 0) {
    Divisor d;
    d.d = parse_ratvec(spec.substr(7));
    if (d.d.size() != fan.num_rays()) throw InputError("divisor needs one coefficient per ray");
    return d;
  }
  throw InputError("unknown divisor spec: " + spec);
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write: " + out_path);
    out << text;
  }
}

json report_json(const CheckReport& rep, unsigned seed) {
  json j;
  j["schema"] = 1;
  j["check"] = rep.name;
  j["status"] = rep.pass ? "pass" : "fail";
  j["max_error"] = rep.max_error;
  j["details"] = rep.details;
  j["seed"] = seed;
  return j;
}

std::string qseries_str(const QSeries<ZetaRF>& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : s.terms()) {
    if (!first) os << "; ";
    first = false;
    Rat e = Rat(Int(k)) / Rat(Int(s.r()));
    os << "q^" << rat_str(e) << ": " << zetarf_str(c);
  }
  if (first) os << "0";
  return os.str();
}

struct MorphismSpec {
  std::string subdivide;  // "1,2@1,1"
  std::string rescale;    // "1,2"
};

BirationalMorphism build_morphism(const FanFile& ff, const MorphismSpec& spec) {
  if (!spec.subdivide.empty()) {
    auto at = spec.subdivide.find('@');
    if (at == std::string::npos) throw InputError("--subdivide expects CONE@RAY");
    Simplex cone = parse_cone(spec.subdivide.substr(0, at));
    IntVec ray = parse_intvec(spec.subdivide.substr(at + 1));
    return star_subdivide(ff.fan, ff.v, cone, ray);
  }
  if (!spec.rescale.empty()) {
    IntVec mult = parse_intvec(spec.rescale);
    if (mult.size() != ff.fan.num_rays()) throw InputError("--rescale needs one factor per ray");
    EdgeVectorSet source_v;
    source_v.mult.resize(mult.size());
    for (std::size_t i = 0; i < mult.size(); ++i) {
      if (mult[i] < 1) throw InputError("rescale factors must be positive");
      source_v.mult[i] = ff.v.mult[i] * mult[i];
    }
    return rescale_morphism(ff.fan, source_v, ff.v);
  }
  throw InputError("verification needs --subdivide or --rescale");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact elliptic-genus engine for simplicial multi-fans"};
  app.require_subcommand(1);

  std::string fan_path, divisor_spec, out_path;
  unsigned seed = 0;

  // genus
  auto* genus_cmd = app.add_subcommand("genus", "evaluate the orbifold elliptic genus");
  genus_cmd->add_option("--fan", fan_path, "fan JSON file")->required();
  genus_cmd->add_option("--divisor", divisor_spec, "canonical0 | minus-canonical | linear:u | coeffs:d1,..");
  std::string numeric_spec;
  long qexp_n = -1, window_r = 4;
  int prod_k = 40;
  genus_cmd->add_option("--numeric", numeric_spec, "w_1,..,w_n,tau,sigma (complex literals)");
  genus_cmd->add_option("--qexp", qexp_n, "q-expansion truncation order");
  genus_cmd->add_option("--window", window_r, "character window radius");
  genus_cmd->add_option("-K,--product-terms", prod_k, "numeric product truncation");
  genus_cmd->add_option("--out", out_path, "write the JSON report here");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run a verification report");
  verify_cmd->require_subcommand(1);
  MorphismSpec mspec;
  int samples = 3;
  double tol = 1e-9;
  long vqexp = 3, vwindow = 4, vdegree = 2;
  std::string u_spec, eta_spec, orders_spec;
  long modulus = 2, kpar = 1;

  auto add_common = [&](CLI::App* cmd, bool with_morphism) {
    cmd->add_option("--fan", fan_path, "fan JSON file")->required();
    cmd->add_option("--divisor", divisor_spec, "divisor spec");
    cmd->add_option("--samples", samples, "number of numeric sample points");
    cmd->add_option("--tol", tol, "numeric tolerance");
    cmd->add_option("--qexp", vqexp, "exact truncation order");
    cmd->add_option("--window", vwindow, "character window radius");
    cmd->add_option("--seed", seed, "sampling seed offset");
    cmd->add_option("--out", out_path, "write the JSON report here");
    if (with_morphism) {
      cmd->add_option("--subdivide", mspec.subdivide, "CONE@RAY star subdivision");
      cmd->add_option("--rescale", mspec.rescale, "per-ray edge rescaling factors");
    }
  };

  auto* inv_cmd = verify_cmd->add_subcommand("invariance", "genus invariance under a morphism");
  add_common(inv_cmd, true);
  auto* rig_cmd = verify_cmd->add_subcommand("rigidity", "rigidity at torsion sigma");
  add_common(rig_cmd, false);
  rig_cmd->add_option("--eta", eta_spec, "integral T-Cartier divisor coefficients")->required();
  rig_cmd->add_option("--u", u_spec, "rational covector")->required();
  rig_cmd->add_option("--modulus", modulus, "the modulus N")->required();
  rig_cmd->add_option("--k", kpar, "numerator of sigma = k/N")->required();
  auto* van_cmd = verify_cmd->add_subcommand("vanishing", "vanishing for embedded divisors");
  add_common(van_cmd, false);
  van_cmd->add_option("--u", u_spec, "rational covector")->required();
  auto* class_cmd = verify_cmd->add_subcommand("class", "class-level invariance");
  add_common(class_cmd, true);
  class_cmd->add_option("--degree", vdegree, "jet degree");
  auto* qc_cmd = verify_cmd->add_subcommand("qcartier", "triangulation independence gate");
  add_common(qc_cmd, false);
  qc_cmd->add_option("--orders", orders_spec, "two ray orders 'a,b,..;c,d,..'");

  // subdivide
  auto* sub_cmd = app.add_subcommand("subdivide", "star subdivision; emits fan and morphism");
  std::string cone_spec, ray_spec, morphism_out;
  sub_cmd->add_option("--fan", fan_path, "fan JSON file")->required();
  sub_cmd->add_option("--cone", cone_spec, "center simplex, 1-based")->required();
  sub_cmd->add_option("--ray", ray_spec, "new ray coordinates")->required();
  sub_cmd->add_option("--out", out_path, "write the new fan here");
  sub_cmd->add_option("--morphism-out", morphism_out, "write the morphism here");

  // validate
  auto* val_cmd = app.add_subcommand("validate", "structural diagnostics of a fan");
  val_cmd->add_option("--fan", fan_path, "fan JSON file")->required();
  val_cmd->add_option("--out", out_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    FanFile ff = read_fan_file(fan_path);

    if (genus_cmd->parsed()) {
      Divisor xi = resolve_divisor(divisor_spec, ff);
      if (!numeric_spec.empty()) {
        auto values = parse_complex_list(numeric_spec);
        if (static_cast<int>(values.size()) != ff.fan.rank + 2)
          throw InputError("--numeric needs rank + 2 complex entries");
        GenusParams p;
        p.K = prod_k;
        p.sigma = values.back();
        values.pop_back();
        p.tau = values.back();
        values.pop_back();
        if (p.tau.imag() <= 0) throw InputError("tau must lie in the upper half plane");
        if (prod_k < 1) throw InputError("product truncation must be positive");
        NumericValue g = genus_numeric(ff.fan, ff.v, xi, values, p);
        json j;
        j["schema"] = 1;
        j["check"] = "genus-numeric";
        j["status"] = "ok";
        j["value"] = {g.value.real(), g.value.imag()};
        j["truncation_bound"] = g.bound;
        emit(j, out_path);
        return 0;
      }
      if (qexp_n < 0) throw InputError("genus needs --numeric or --qexp");
      if (window_r < 1) throw InputError("--window must be at least 1");
      CoefCtx ctx = make_ctx({JobPiece{&ff.fan, &ff.v, &xi}});
      GenusSeries g = genus_char_formula_auto(ff.fan, ff.v, xi, ctx, window_r,
                                              std::max<long>(window_r, 4 * window_r), qexp_n);
      json series;
      for (const auto& [u, s] : g.c) {
        std::string key;
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (i) key += ",";
          key += u[i].get_str();
        }
        series["t^-(" + key + ")"] = qseries_str(s);
      }
      json j;
      j["schema"] = 1;
      j["check"] = "genus-qexp";
      j["status"] = "ok";
      j["window"] = g.window;
      j["qexp"] = g.N;
      j["series"] = series;
      emit(j, out_path);
      return 0;
    }

    if (sub_cmd->parsed()) {
      BirationalMorphism m =
          star_subdivide(ff.fan, ff.v, parse_cone(cone_spec), parse_intvec(ray_spec));
      std::string fan_text = write_fan_json(m.source, m.source_v);
      if (out_path.empty() && morphism_out.empty()) {
        json j;
        j["schema"] = 1;
        j["fan"] = json::parse(fan_text);
        j["morphism"] = json::parse(write_morphism_json(m));
        std::cout << j.dump(2) << "\n";
      } else {
        if (!out_path.empty()) emit(json::parse(fan_text), out_path);
        if (!morphism_out.empty()) emit(json::parse(write_morphism_json(m)), morphism_out);
      }
      return 0;
    }

    if (val_cmd->parsed()) {
      auto report = validate(ff.fan);
      json j;
      j["schema"] = 1;
      j["check"] = "validate";
      j["status"] = report.empty() ? "pass" : "fail";
      j["violations"] = report;
      emit(j, out_path);
      return report.empty() ? 0 : 1;
    }

    // verify subcommands
    Divisor xi = resolve_divisor(divisor_spec, ff);
    CheckReport rep;
    if (inv_cmd->parsed()) {
      BirationalMorphism m = build_morphism(ff, mspec);
      rep = check_invariance(m, xi, samples, tol, vwindow, vqexp);
    } else if (rig_cmd->parsed()) {
      RigidityHypothesis hyp;
      hyp.eta.d = parse_ratvec(eta_spec);
      hyp.u = parse_ratvec(u_spec);
      hyp.modulus = Int(modulus);
      if (hyp.eta.d.size() != ff.fan.num_rays())
        throw InputError("--eta needs one coefficient per ray");
      rep = check_rigidity(ff.fan, ff.v, xi, hyp, kpar, samples, tol);
    } else if (van_cmd->parsed()) {
      rep = check_vanishing(ff.fan, ff.v, parse_ratvec(u_spec), samples, tol, vwindow, vqexp);
    } else if (class_cmd->parsed()) {
      BirationalMorphism m = build_morphism(ff, mspec);
      rep = check_class_invariance(m, xi, vdegree, vqexp);
    } else if (qc_cmd->parsed()) {
      std::vector<int> order1, order2;
      if (!orders_spec.empty()) {
        auto semi = orders_spec.find(';');
        if (semi == std::string::npos) throw InputError("--orders expects 'o1;o2'");
        for (long v : parse_longs(orders_spec.substr(0, semi)))
          order1.push_back(static_cast<int>(v - 1));
        for (long v : parse_longs(orders_spec.substr(semi + 1)))
          order2.push_back(static_cast<int>(v - 1));
      } else {
        for (std::size_t i = 0; i < ff.fan.num_rays(); ++i) {
          order1.push_back(static_cast<int>(i));
          order2.push_back(static_cast<int>(ff.fan.num_rays() - 1 - i));
        }
      }
      rep = check_triangulation_independence(ff.fan, ff.v, xi, order1, order2, samples, tol,
                                             vqexp);
    } else {
      throw InputError("unknown verify subcommand");
    }
    emit(report_json(rep, seed), out_path);
    return rep.pass ? 0 : 1;
  } catch (const SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "check aborted: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
