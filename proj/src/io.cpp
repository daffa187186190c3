#include "skewrank/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace skewrank {

using nlohmann::json;
using nlohmann::ordered_json;

Multivector parse_tensor(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    const int dim = j.at("dim").get<int>();
    const int degree = j.at("degree").get<int>();
    const bool dual = j.value("dual", false);
    if (dim < 1 || dim > kMaxDim) throw ParseError("dim must be between 1 and " + std::to_string(kMaxDim));
    if (degree < 0 || degree > dim) throw ParseError("degree must be between 0 and dim");
    mpz_class D = 1;
    if (j.contains("ext")) D = mpz_class(j.at("ext").at("D").get<long>());
    Multivector t(dim, degree, dual);
    for (const auto& term : j.at("terms")) {
      std::vector<int> idx = term.at("indices").get<std::vector<int>>();
      if (static_cast<int>(idx.size()) != degree) throw ParseError("term has the wrong number of indices");
      Scalar c;
      const auto& jc = term.at("coeff");
      if (jc.is_number_integer()) c = Scalar(jc.get<long>());
      else c = Scalar::parse(jc.get<std::string>());
      if (!c.is_rational() && c.D() != squarefree_part(D))
        throw ParseError("coefficient " + c.str() + " does not belong to the declared ext.D");
      int sign = 1;
      Mask m;
      try {
        m = mask_of(idx, dim, &sign);
      } catch (const ContractViolation& e) {
        throw ParseError(e.what());
      }
      t.add_term(m, sign < 0 ? -c : c);
    }
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed tensor file: ") + e.what());
  } catch (const FieldError& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const ParseError*>(&e)) throw;
    throw ParseError(e.what());
  }
}

std::string serialize_tensor(const Multivector& t) {
  ordered_json j;
  j["dim"] = t.dim();
  j["degree"] = t.degree();
  j["dual"] = t.dual();
  j["terms"] = ordered_json::array();
  mpz_class D = 1;
  for (const auto& [m, c] : t.terms()) {
    if (!c.is_rational()) D = c.D();
    j["terms"].push_back({{"coeff", c.str()}, {"indices", mask_indices(m)}});
  }
  if (D != 1) j["ext"] = {{"D", D.get_si()}};
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Multivector read_tensor_file(const std::string& path) { return parse_tensor(read_text_file(path)); }

}  // namespace skewrank
