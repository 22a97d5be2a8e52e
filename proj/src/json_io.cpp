#include "nc/json_io.hpp"

namespace nc {

Json params_to_json(const TorusParams& p) {
  if (p.exact) return Json::array({p.exact->num, p.exact->den});
  return Json(p.theta);
}

TorusParams params_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
      throw std::invalid_argument("theta: expected [num, den] with integer entries");
    }
    return TorusParams::rational(j[0].get<long long>(), j[1].get<long long>());
  }
  if (!j.is_number()) throw std::invalid_argument("theta: expected number or [num, den]");
  return TorusParams::real(j.get<double>());
}

Json element_to_json(const TorusElement& a) {
  Json j = Json::object();
  j["theta"] = params_to_json(a.params());
  Json terms = Json::array();
  for (const auto& [m, c] : a.terms()) {
    terms.push_back(Json::array({m.r, m.s, c.real(), c.imag()}));
  }
  j["terms"] = std::move(terms);
  return j;
}

TorusElement element_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("theta") || !j.contains("terms")) {
    throw std::invalid_argument("element: expected {\"theta\":…, \"terms\":…}");
  }
  TorusElement out(params_from_json(j.at("theta")));
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 4) {
      throw std::invalid_argument("element: each term must be [r, s, re, im]");
    }
    out.add_term(Monomial{t[0].get<long long>(), t[1].get<long long>()},
                 {t[2].get<double>(), t[3].get<double>()});
  }
  return out;
}

Json spec_to_json(const CoveringSpec& spec) {
  Json j = Json::object();
  j["m"] = spec.m;
  j["n"] = spec.n;
  j["k"] = spec.k;
  j["base_theta"] = params_to_json(spec.base);
  j["cover_theta"] = params_to_json(spec.cover());
  return j;
}

CoveringSpec spec_from_json(const Json& j) {
  return CoveringSpec(j.at("m").get<long long>(), j.at("n").get<long long>(),
                      j.at("k").get<long long>(), params_from_json(j.at("base_theta")));
}

}  // namespace nc
