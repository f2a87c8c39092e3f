#include <algorithm>
#include <fstream>
#include <json.hpp>

#include "hypcount/engine.hpp"
#include "hypcount/errors.hpp"
#include "series.hpp"

namespace hypcount {

using nlohmann::json;

namespace {

constexpr const char* kMemoFile = "umemo.jsonl";

}  // namespace

void Engine::load_cache() {
  if (opts_.cache_dir.empty()) return;
  std::ifstream in(opts_.cache_dir / kMemoFile);
  if (!in) return;
  // (tuple, parity) -> g -> value
  std::map<std::pair<UTuple, Parity>, std::map<int, QRat>> found;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const json rec = json::parse(line);
      // a version change invalidates the whole file
      if (rec.at("engine_version").get<std::string>() != kEngineVersion) return;
      const json& key = rec.at("key");
      const UTuple t = UTuple::parse(key.at("tuple").get<std::string>());
      const Parity p = parse_parity(key.at("parity").get<std::string>());
      found[{t, p}][key.at("g").get<int>()] = QRat::parse(rec.at("value").get<std::string>());
    } catch (const std::exception&) {
      return;
    }
  }
  for (auto& [key, values] : found) {
    Series& s = series(key.first, key.second);
    for (auto& [g, v] : values) {
      if (g != static_cast<int>(s.values.size()) - 1) break;  // keep the contiguous prefix
      s.values.push_back(std::move(v));
      s.loaded.push_back(true);
    }
  }
}

void Engine::save_cache() {
  std::lock_guard lock(mu_);
  if (opts_.cache_dir.empty()) return;
  std::filesystem::create_directories(opts_.cache_dir);
  std::vector<std::string> lines;
  for (const auto& [key, s] : series_) {
    for (std::size_t i = 0; i < s->values.size(); ++i) {
      json rec;
      rec["engine_version"] = kEngineVersion;
      rec["key"] = {{"tuple", key.first.str()}, {"g", static_cast<int>(i) - 1}, {"parity", to_string(key.second)}};
      rec["provenance"] = "recursion";
      rec["value"] = s->values[i].str();
      lines.push_back(rec.dump());
    }
  }
  std::sort(lines.begin(), lines.end());
  const auto path = opts_.cache_dir / kMemoFile;
  const auto tmp = opts_.cache_dir / (std::string(kMemoFile) + ".tmp");
  {
    std::ofstream out(tmp);
    for (const auto& l : lines) out << l << "\n";
  }
  std::filesystem::rename(tmp, path);
  dirty_ = false;
}

}  // namespace hypcount
