#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "gpal/games.hpp"
#include "gpal/rewrite.hpp"

namespace gpal {

// Malformed model file. `where` is a JSON-pointer-like location ("/opens/2").
class ModelFormatError : public std::invalid_argument {
 public:
  ModelFormatError(const std::string& where, const std::string& what)
      : std::invalid_argument(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Throws ModelFormatError with the line and column of a JSON syntax error.
nlohmann::json read_json_file(const std::filesystem::path& path);
nlohmann::json parse_json_text(const std::string& text);

// "topo", "ssl", "product" or "game".
std::string model_kind(const nlohmann::json& j);

// Topologies (topo and product factors) must pass verify_topology.
AnyModel model_from_json(const nlohmann::json& j);
nlohmann::ordered_json model_to_json(const AnyModel& m);
// One top-level field per line, values compact; ends with a newline.
std::string dump_model(const AnyModel& m);

// Payoffs are integers or "p/q" strings.
GameSpec game_from_json(const nlohmann::json& j);
nlohmann::ordered_json game_to_json(const GameSpec& g);

// Label-based locus syntax: a point label for topo, a comma-separated tuple
// of labels for product, and a point label plus a comma-separated
// neighbourhood for ssl. Throws std::invalid_argument for unknown labels.
Locus parse_locus(const AnyModel& m, const std::string& at, const std::string& nbhd = "");

}  // namespace gpal
