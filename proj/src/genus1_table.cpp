#include <json.hpp>

#include "hypcount/engine.hpp"
#include "hypcount/errors.hpp"

namespace hypcount {

using nlohmann::json;

GenusOneTable build_genus1_table(const Genus1BuildOptions& opts) {
  if (opts.max_weight > 7) throw std::invalid_argument("genus-one table supports weight <= 7");
  const std::size_t needed = opts.degree_bound + 1 + opts.validation;
  if (opts.q_values.size() < needed) {
    throw std::invalid_argument("genus-one table needs " + std::to_string(needed) + " sample fields");
  }
  std::vector<AExpr> sampled;
  GenusOneTable table;
  table.max_weight = opts.max_weight;
  for (unsigned w = 0; w <= opts.max_weight; ++w) {
    for (const auto& e : a_expressions_of_weight(w)) {
      if (w % 2 == 1) {
        table.entries[e] = QPoly();  // odd weight vanishes identically
        table.provenance[e] = Genus1Provenance{};
      } else {
        sampled.push_back(e);
      }
    }
  }
  std::vector<std::vector<QSample>> samples(sampled.size());
  for (std::uint64_t q : opts.q_values) {
    CurveLab lab(q, LabBudget{std::uint64_t{1} << 30, std::uint64_t{1} << 22, opts.jobs});
    if (lab.parity() != Parity::Odd) throw std::invalid_argument("genus-one sampling uses odd fields");
    const auto& hist = lab.trace_histogram(1);
    if (opts.progress) {
      opts.progress("genus-one histogram q=" + std::to_string(q) + ": " + hist.curves.get_str() + " curves, " +
                    std::to_string(static_cast<long>(hist.elapsed_ms)) + " ms");
    }
    for (std::size_t i = 0; i < sampled.size(); ++i) {
      samples[i].push_back(QSample{mpq_class(static_cast<unsigned long>(q)), lab.brute_a(sampled[i], 1)});
    }
  }
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    try {
      table.entries[sampled[i]] = interpolate_poly(samples[i], opts.degree_bound, opts.validation);
    } catch (const InterpolationError& err) {
      throw InterpolationError(sampled[i].str() + ": " + err.what());
    }
    table.provenance[sampled[i]] = Genus1Provenance{opts.q_values, opts.degree_bound, opts.validation};
  }
  return table;
}

std::string GenusOneTable::to_json() const {
  json doc;
  doc["engine_version"] = kEngineVersion;
  doc["max_weight"] = max_weight;
  json rows = json::array();
  for (const auto& [expr, poly] : entries) {
    json row;
    row["expr"] = expr.str();
    row["poly"] = poly.str();
    auto it = provenance.find(expr);
    if (it != provenance.end()) {
      row["q_values"] = it->second.q_values;
      row["degree_bound"] = it->second.degree_bound;
      row["validation"] = it->second.validation;
    }
    rows.push_back(row);
  }
  doc["entries"] = rows;
  return doc.dump(1);
}

GenusOneTable GenusOneTable::from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.at("engine_version").get<std::string>() != kEngineVersion) {
    throw ParseError("genus-one table from another engine version");
  }
  GenusOneTable t;
  t.max_weight = doc.at("max_weight").get<unsigned>();
  for (const auto& row : doc.at("entries")) {
    const AExpr e = AExpr::parse(row.at("expr").get<std::string>());
    t.entries[e] = QPoly::parse(row.at("poly").get<std::string>());
    Genus1Provenance p;
    if (row.contains("q_values")) {
      p.q_values = row.at("q_values").get<std::vector<std::uint64_t>>();
      p.degree_bound = row.at("degree_bound").get<unsigned>();
      p.validation = row.at("validation").get<unsigned>();
    }
    t.provenance[e] = p;
  }
  return t;
}

}  // namespace hypcount
