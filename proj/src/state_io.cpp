#include "geof/state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace geof {

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw InvalidParams(std::string("missing or non-numeric field: ") + key);
  return j.at(key).get<double>();
}

}  // namespace

LoadedState parse_state_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidParams(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || j.size() != 1)
    throw InvalidParams(
        "state JSON must be an object with exactly one of the keys "
        "\"matrix\", \"standard_form\", \"purity_params\"");

  LoadedState out;
  if (j.contains("matrix")) {
    const json& m = j.at("matrix");
    if (!m.is_array() || m.size() != 4)
      throw InvalidParams("\"matrix\" must be a 4x4 array of numbers");
    Eigen::Matrix4d mat;
    for (int r = 0; r < 4; ++r) {
      const json& row = m.at(r);
      if (!row.is_array() || row.size() != 4)
        throw InvalidParams("\"matrix\" must be a 4x4 array of numbers");
      for (int c = 0; c < 4; ++c) {
        if (!row.at(c).is_number()) throw InvalidParams("\"matrix\" entries must be numbers");
        mat(r, c) = row.at(c).get<double>();
      }
    }
    out.cov = CovarianceMatrix::from_matrix(mat);
    out.sf = reduce_to_standard_form(out.cov).sf;
  } else if (j.contains("standard_form")) {
    const json& s = j.at("standard_form");
    StandardForm sf;
    sf.a = number(s, "a");
    sf.b = number(s, "b");
    sf.c1 = number(s, "c1");
    sf.c2 = number(s, "c2");
    if (sf.a < sf.b) throw InvalidParams("standard form requires a >= b");
    if (sf.c1 < std::abs(sf.c2)) throw InvalidParams("standard form requires c1 >= |c2| >= 0");
    out.cov = CovarianceMatrix::from_matrix(expand(sf).m());  // physicality gate
    out.sf = sf;
  } else if (j.contains("purity_params")) {
    const json& p = j.at("purity_params");
    PurityParams params;
    params.mu_a = number(p, "mu_a");
    params.mu_b = number(p, "mu_b");
    params.mu = number(p, "mu");
    params.beta = number(p, "beta");
    out.sf = from_purity_params(params);
    out.cov = expand(out.sf);
    out.params = params;
  } else {
    throw InvalidParams(
        "state JSON must contain one of \"matrix\", \"standard_form\", \"purity_params\"");
  }
  return out;
}

LoadedState load_state_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open state file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_state_json(ss.str());
}

}  // namespace geof
