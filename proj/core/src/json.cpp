#include "charp/json.hpp"

#include "charp/error.hpp"

namespace charp {

Json to_json(const MultiPoly& f) { return to_json(f, default_var_names(f.nvars())); }

Json to_json(const MultiPoly& f, std::span<const std::string> names) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) {
    const auto exps = t.monomial.exponents();
    terms.push_back({{"exp", std::vector<std::uint32_t>(exps.begin(), exps.end())},
                     {"coeff", t.coeff.to_string()}});
  }
  return {{"vars", std::vector<std::string>(names.begin(), names.end())}, {"terms", terms}};
}

MultiPoly poly_from_json(const Json& j, const FieldContext& ctx) {
  try {
    const auto vars = j.at("vars").get<std::vector<std::string>>();
    std::vector<MultiPoly::Term> terms;
    for (const auto& t : j.at("terms")) {
      auto exps = t.at("exp").get<std::vector<std::uint32_t>>();
      if (exps.size() != vars.size()) {
        throw Error(ErrorKind::InvalidArgument, "exponent vector length differs from vars");
      }
      terms.push_back({Monomial(std::move(exps)),
                       parse_field_element(t.at("coeff").get<std::string>(), ctx)});
    }
    return MultiPoly::from_terms(ctx, vars.size(), std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace charp
