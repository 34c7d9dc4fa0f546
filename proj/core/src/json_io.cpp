#include "cehom/json_io.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "cehom/errors.hpp"
#include "json.hpp"

namespace cehom {

namespace {

using nlohmann::json;

json conventions_json() {
  return json{{"koszul_sign", kKoszulConventionTag}, {"bidegree", kBidegreeConventionTag}};
}

json weight_to_json(const DimensionTable& table, int weight, const std::string& surface,
                    const std::string& field_name) {
  json obj;
  obj["surface"] = surface;
  obj["field"] = field_name;
  obj["weight"] = weight;
  obj["k"] = weight;
  // Array slot i holds the dimension in total degree i; degrees below zero
  // (possible only for mod-p bookkeeping tables) appear in "bidegrees" only.
  json dims = json::array();
  int max_degree = -1;
  for (const auto& [degree, dim] : table.totals(weight)) max_degree = std::max(max_degree, degree);
  for (int d = 0; d <= max_degree; ++d) dims.push_back(table.at_total(weight, d));
  obj["dims"] = dims;
  obj["dims_by_total_degree"] = dims;
  json bidegrees = json::array();
  for (const auto& [st, dim] : table.bidegrees(weight))
    bidegrees.push_back(json{{"s", st.first}, {"t", st.second}, {"dim", dim}});
  obj["bidegrees"] = bidegrees;
  obj["conventions"] = conventions_json();
  return obj;
}

Scalar coefficient_from_json(const json& value, const Field& field) {
  if (value.is_number_integer()) return field.from_integer(value.get<long long>());
  if (value.is_string()) {
    const std::string text = value.get<std::string>();
    auto parse_ll = [](const std::string& s) {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) throw ValidationError("malformed coefficient: " + s);
      return v;
    };
    try {
      auto slash = text.find('/');
      if (slash == std::string::npos) return field.from_integer(parse_ll(text));
      return field.from_fraction(parse_ll(text.substr(0, slash)),
                                 parse_ll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw ValidationError("malformed coefficient: " + text);
    }
  }
  throw ValidationError("coefficients must be integers or fraction strings");
}

}  // namespace

std::string dimension_table_to_json(const DimensionTable& table, const std::string& surface,
                                    const std::string& field_name) {
  std::vector<int> weights = table.weights();
  if (weights.size() == 1)
    return weight_to_json(table, weights.front(), surface, field_name).dump(2);
  json arr = json::array();
  for (int w : weights) arr.push_back(weight_to_json(table, w, surface, field_name));
  return arr.dump(2);
}

DimensionTable dimension_table_from_json(const std::string& text) {
  try {
    json parsed = json::parse(text);
    json arr = parsed.is_array() ? parsed : json::array({parsed});
    DimensionTable table;
    for (const json& obj : arr) {
      int weight = obj.contains("weight") ? obj.at("weight").get<int>() : obj.at("k").get<int>();
      for (const json& entry : obj.at("bidegrees"))
        table.add(weight, entry.at("s").get<int>(), entry.at("t").get<int>(),
                  entry.at("dim").get<long>());
    }
    return table;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid dimension table: ") + e.what());
  }
}

std::string dimension_table_to_csv(const DimensionTable& table, const std::string& surface,
                                   const std::string& field_name) {
  std::string out = "# conventions: koszul_sign=";
  out += kKoszulConventionTag;
  out += "; bidegree=";
  out += kBidegreeConventionTag;
  out += "\nsurface,field,weight,degree,dim\n";
  for (int w : table.weights())
    for (const auto& [degree, dim] : table.totals(w))
      out += surface + "," + field_name + "," + std::to_string(w) + "," +
             std::to_string(degree) + "," + std::to_string(dim) + "\n";
  return out;
}

GradedCommutativeAlgebra algebra_from_json(const std::string& text, const Field& field) {
  try {
    json parsed = json::parse(text);
    if (!parsed.is_object()) throw ValidationError("algebra description must be a JSON object");

    std::vector<GradedCommutativeAlgebra::BasisElement> basis;
    std::map<std::string, std::size_t> names;
    for (const json& entry : parsed.at("basis")) {
      GradedCommutativeAlgebra::BasisElement element;
      element.name = entry.at("name").get<std::string>();
      element.degree = entry.at("degree").get<int>();
      if (!names.emplace(element.name, basis.size()).second)
        throw ValidationError("duplicate basis name: " + element.name);
      basis.push_back(std::move(element));
    }
    auto lookup = [&](const std::string& name) {
      auto it = names.find(name);
      if (it == names.end()) throw ValidationError("unknown basis name: " + name);
      return it->second;
    };

    std::map<std::pair<std::size_t, std::size_t>, GradedCommutativeAlgebra::Product> products;
    if (parsed.contains("products")) {
      for (const json& entry : parsed.at("products")) {
        std::pair<std::size_t, std::size_t> key{lookup(entry.at("left").get<std::string>()),
                                                lookup(entry.at("right").get<std::string>())};
        GradedCommutativeAlgebra::Product result;
        for (const json& term : entry.at("result"))
          result.push_back(
              {lookup(term.at("name").get<std::string>()),
               coefficient_from_json(term.at("coeff"), field)});
        if (!products.emplace(key, std::move(result)).second)
          throw ValidationError("duplicate product entry for (" +
                                entry.at("left").get<std::string>() + ", " +
                                entry.at("right").get<std::string>() + ")");
      }
    }

    std::optional<std::size_t> unit;
    if (parsed.contains("unit")) unit = lookup(parsed.at("unit").get<std::string>());

    return GradedCommutativeAlgebra(std::move(basis), std::move(products), unit, field);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid algebra description: ") + e.what());
  }
}

}  // namespace cehom
