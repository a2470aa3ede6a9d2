#include "gpal/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace gpal {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string label_of(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ModelFormatError(where, "point labels must be strings or integers");
}

ordered_json label_json(const std::string& s) {
  const bool numeric = !s.empty() && s.size() < 10 && std::all_of(s.begin(), s.end(), ::isdigit) &&
                       (s.size() == 1 || s[0] != '0');
  if (numeric) return std::stoll(s);
  return s;
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ModelFormatError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ModelFormatError(where, std::string("missing field '") + key + "'");
  return *it;
}

const json& array_field(const json& j, const char* key, const std::string& where) {
  const json& a = field(j, key, where);
  if (!a.is_array()) throw ModelFormatError(where + "/" + key, "expected an array");
  return a;
}

std::vector<std::string> read_labels(const json& a, const std::string& where) {
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string l = label_of(a[i], where + "/" + std::to_string(i));
    if (!seen.insert(l).second) throw ModelFormatError(where + "/" + std::to_string(i), "duplicate point '" + l + "'");
    labels.push_back(std::move(l));
  }
  if (labels.size() > static_cast<std::size_t>(kMaxPoints))
    throw ModelFormatError(where, "at most " + std::to_string(kMaxPoints) + " points are supported");
  return labels;
}

int lookup(const std::vector<std::string>& labels, const std::string& l, const std::string& where) {
  auto it = std::find(labels.begin(), labels.end(), l);
  if (it == labels.end()) throw ModelFormatError(where, "undeclared point '" + l + "'");
  return static_cast<int>(it - labels.begin());
}

PointSet read_set(const json& a, const std::vector<std::string>& labels, const std::string& where) {
  if (!a.is_array()) throw ModelFormatError(where, "expected an array of points");
  PointSet s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string w = where + "/" + std::to_string(i);
    s |= PointSet::single(lookup(labels, label_of(a[i], w), w));
  }
  return s;
}

std::vector<PointSet> read_family(const json& a, const std::vector<std::string>& labels, const std::string& where) {
  std::vector<PointSet> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(read_set(a[i], labels, where + "/" + std::to_string(i)));
  return out;
}

void check_atom_name(const std::string& name, const std::string& where) {
  try {
    Formula::atom(name);
  } catch (const std::exception&) {
    throw ModelFormatError(where, "invalid atom name '" + name + "'");
  }
}

Valuation read_valuation(const json& j, const std::vector<std::string>& labels) {
  Valuation v;
  auto it = j.find("valuation");
  if (it == j.end()) return v;
  if (!it->is_object()) throw ModelFormatError("/valuation", "expected an object");
  for (const auto& [name, set] : it->items()) {
    check_atom_name(name, "/valuation/" + name);
    v[name] = read_set(set, labels, "/valuation/" + name);
  }
  return v;
}

Topology read_topology(const json& j, const std::string& where, bool allow_carrier) {
  const auto labels = read_labels(array_field(j, "points", where), where + "/points");
  PointSet carrier = PointSet::first(static_cast<int>(labels.size()));
  if (allow_carrier && j.contains("carrier")) carrier = read_set(j["carrier"], labels, where + "/carrier");
  auto opens = read_family(array_field(j, "opens", where), labels, where + "/opens");
  Topology t = Topology::from_opens(labels, carrier, std::move(opens));
  const auto violations = verify_topology(t);
  if (!violations.empty()) throw ModelFormatError(where + "/opens", "not a topology: " + violations.front().message);
  return t;
}

ordered_json set_json(const std::vector<std::string>& labels, PointSet s) {
  ordered_json a = ordered_json::array();
  for (int p : s.members()) a.push_back(label_json(labels[p]));
  return a;
}

ordered_json labels_json(const std::vector<std::string>& labels) {
  ordered_json a = ordered_json::array();
  for (const auto& l : labels) a.push_back(label_json(l));
  return a;
}

World read_tuple(const json& a, const std::vector<Topology>& factors, const std::string& where) {
  if (!a.is_array() || a.size() != factors.size())
    throw ModelFormatError(where, "expected a tuple with " + std::to_string(factors.size()) + " entries");
  World w;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string wi = where + "/" + std::to_string(i);
    w.push_back(lookup(factors[i].labels(), label_of(a[i], wi), wi));
  }
  return w;
}

ordered_json tuple_json(const ProductModel& m, const World& w) {
  ordered_json a = ordered_json::array();
  for (std::size_t i = 0; i < w.size(); ++i) a.push_back(label_json(m.factors()[i].labels()[w[i]]));
  return a;
}

ordered_json worlds_json(const ProductModel& m, const WorldSet& ws) {
  ordered_json a = ordered_json::array();
  for (auto c = ws.find_first(); c != WorldSet::npos; c = ws.find_next(c)) a.push_back(tuple_json(m, m.decode(c)));
  return a;
}

AnyModel read_topo(const json& j) {
  Topology t = read_topology(j, "", true);
  Valuation v = read_valuation(j, t.labels());
  try {
    return make_topo_model(std::move(t), std::move(v));
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError("/valuation", e.what());
  }
}

AnyModel read_ssl(const json& j) {
  const auto labels = read_labels(array_field(j, "points", ""), "/points");
  PointSet points = PointSet::first(static_cast<int>(labels.size()));
  if (j.contains("carrier")) points = read_set(j["carrier"], labels, "/carrier");
  auto sets = read_family(array_field(j, "sets", ""), labels, "/sets");
  Valuation v = read_valuation(j, labels);
  try {
    return SSLModel::make(labels, points, std::move(sets), std::move(v));
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError("/sets", e.what());
  }
}

AnyModel read_product(const json& j) {
  const json& fs = array_field(j, "factors", "");
  if (fs.empty()) throw ModelFormatError("/factors", "at least one factor is required");
  std::vector<Topology> factors;
  for (std::size_t i = 0; i < fs.size(); ++i) factors.push_back(read_topology(fs[i], "/factors/" + std::to_string(i), false));
  ProductModel shape;
  try {
    shape = ProductModel::full(factors, {});
  } catch (const std::exception& e) {
    throw ModelFormatError("/factors", e.what());
  }
  WorldSet worlds = shape.full_product();
  if (j.contains("worlds")) {
    const json& w = j["worlds"];
    if (w.is_string()) {
      if (w.get<std::string>() != "all") throw ModelFormatError("/worlds", "expected \"all\" or a list of tuples");
    } else if (w.is_array()) {
      worlds = shape.empty_set();
      for (std::size_t i = 0; i < w.size(); ++i)
        worlds.set(shape.encode(read_tuple(w[i], factors, "/worlds/" + std::to_string(i))));
    } else {
      throw ModelFormatError("/worlds", "expected \"all\" or a list of tuples");
    }
  }
  ProductValuation v;
  if (j.contains("valuation")) {
    const json& val = j["valuation"];
    if (!val.is_object()) throw ModelFormatError("/valuation", "expected an object");
    for (const auto& [name, list] : val.items()) {
      const std::string where = "/valuation/" + name;
      check_atom_name(name, where);
      if (!list.is_array()) throw ModelFormatError(where, "expected a list of tuples");
      WorldSet s = shape.empty_set();
      for (std::size_t i = 0; i < list.size(); ++i)
        s.set(shape.encode(read_tuple(list[i], factors, where + "/" + std::to_string(i))));
      v[name] = std::move(s);
    }
  }
  try {
    return ProductModel(std::move(factors), std::move(worlds), std::move(v));
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError("/valuation", e.what());
  }
}

std::vector<Rational> read_payoff(const json& a, const std::string& where) {
  if (!a.is_array() || a.empty()) throw ModelFormatError(where, "payoff must be a nonempty array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string wi = where + "/" + std::to_string(i);
    if (a[i].is_number_integer()) {
      out.emplace_back(a[i].get<long long>());
    } else if (a[i].is_string()) {
      try {
        out.push_back(parse_rational(a[i].get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ModelFormatError(wi, e.what());
      }
    } else {
      throw ModelFormatError(wi, "payoffs must be integers or \"p/q\" strings");
    }
  }
  return out;
}

GameSpec read_game_node(const json& j, const std::string& where) {
  if (!j.is_object()) throw ModelFormatError(where, "expected a game node object");
  if (j.contains("payoff")) {
    if (j.contains("children")) throw ModelFormatError(where, "a node has either a payoff or children");
    return GameSpec::leaf(read_payoff(j["payoff"], where + "/payoff"));
  }
  const json& p = field(j, "player", where);
  if (!p.is_number_integer() || p.get<long long>() < 1) throw ModelFormatError(where + "/player", "player must be a positive integer");
  const json& kids = array_field(j, "children", where);
  if (kids.empty()) throw ModelFormatError(where + "/children", "a decision node needs children");
  std::vector<GameSpec> children;
  for (std::size_t i = 0; i < kids.size(); ++i)
    children.push_back(read_game_node(kids[i], where + "/children/" + std::to_string(i)));
  return GameSpec::node(static_cast<int>(p.get<long long>()), std::move(children));
}

ordered_json payoff_json(const Rational& r) {
  if (denominator(r) == 1) {
    const auto n = numerator(r);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
      return static_cast<long long>(n);
  }
  return format_rational(r);
}

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ModelFormatError("", "JSON syntax error at line " + std::to_string(line) + ", column " +
                                   std::to_string(col));
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFormatError("", "cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

std::string model_kind(const json& j) {
  const json& k = field(j, "kind", "");
  if (!k.is_string()) throw ModelFormatError("/kind", "expected a string");
  const std::string kind = k.get<std::string>();
  if (kind != "topo" && kind != "ssl" && kind != "product" && kind != "game")
    throw ModelFormatError("/kind", "unknown model kind '" + kind + "' (expected topo, ssl, product or game)");
  return kind;
}

AnyModel model_from_json(const json& j) {
  const std::string kind = model_kind(j);
  if (kind == "topo") return read_topo(j);
  if (kind == "ssl") return read_ssl(j);
  if (kind == "product") return read_product(j);
  throw ModelFormatError("/kind", "a game file is not a Kripke-style model here");
}

ordered_json model_to_json(const AnyModel& m) {
  ordered_json j;
  if (auto* t = std::get_if<TopoModel>(&m)) {
    const auto& labels = t->space.labels();
    j["kind"] = "topo";
    j["points"] = labels_json(labels);
    if (t->space.carrier() != PointSet::first(t->space.universe_size())) j["carrier"] = set_json(labels, t->space.carrier());
    j["opens"] = ordered_json::array();
    for (PointSet o : t->space.opens()) j["opens"].push_back(set_json(labels, o));
    j["valuation"] = ordered_json::object();
    for (const auto& [name, set] : t->valuation)
      if (!set.empty()) j["valuation"][name] = set_json(labels, set);
  } else if (auto* s = std::get_if<SSLModel>(&m)) {
    const auto& labels = s->labels();
    j["kind"] = "ssl";
    j["points"] = labels_json(labels);
    if (s->points() != PointSet::first(static_cast<int>(labels.size()))) j["carrier"] = set_json(labels, s->points());
    j["sets"] = ordered_json::array();
    for (PointSet u : s->sigma()) j["sets"].push_back(set_json(labels, u));
    j["valuation"] = ordered_json::object();
    for (const auto& [name, set] : s->valuation())
      if (!set.empty()) j["valuation"][name] = set_json(labels, set);
  } else {
    const auto& pm = std::get<ProductModel>(m);
    j["kind"] = "product";
    j["factors"] = ordered_json::array();
    for (const auto& f : pm.factors()) {
      ordered_json fj;
      fj["points"] = labels_json(f.labels());
      fj["opens"] = ordered_json::array();
      for (PointSet o : f.opens()) fj["opens"].push_back(set_json(f.labels(), o));
      j["factors"].push_back(std::move(fj));
    }
    if (pm.worlds() == pm.full_product())
      j["worlds"] = "all";
    else
      j["worlds"] = worlds_json(pm, pm.worlds());
    j["valuation"] = ordered_json::object();
    for (const auto& [name, set] : pm.valuation())
      if (set.any()) j["valuation"][name] = worlds_json(pm, set);
  }
  return j;
}

std::string dump_model(const AnyModel& m) {
  const ordered_json j = model_to_json(m);
  std::string out = "{\n";
  std::size_t k = 0;
  for (const auto& [key, value] : j.items()) {
    out += "  \"" + key + "\": ";
    if (key == "factors" && !value.empty()) {
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i)
        out += "    " + value[i].dump() + (i + 1 < value.size() ? ",\n" : "\n");
      out += "  ]";
    } else {
      out += value.dump();
    }
    out += ++k < j.size() ? ",\n" : "\n";
  }
  return out + "}\n";
}

GameSpec game_from_json(const json& j) {
  if (j.is_object() && j.contains("kind")) {
    if (model_kind(j) != "game") throw ModelFormatError("/kind", "expected a game file");
    if (j.contains("tree")) return read_game_node(j["tree"], "/tree");
  }
  return read_game_node(j, "");
}

ordered_json game_to_json(const GameSpec& g) {
  ordered_json j;
  if (g.children.empty()) {
    j["payoff"] = ordered_json::array();
    for (const auto& r : g.payoff) j["payoff"].push_back(payoff_json(r));
    return j;
  }
  j["player"] = g.player;
  j["children"] = ordered_json::array();
  for (const auto& c : g.children) j["children"].push_back(game_to_json(c));
  return j;
}

Locus parse_locus(const AnyModel& m, const std::string& at, const std::string& nbhd) {
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  };
  auto find = [](const std::vector<std::string>& labels, const std::string& l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw std::invalid_argument("unknown point '" + l + "'");
    return static_cast<int>(it - labels.begin());
  };
  if (auto* t = std::get_if<TopoModel>(&m)) {
    const int p = find(t->space.labels(), at);
    if (!t->space.carrier().contains(p)) throw std::invalid_argument("point '" + at + "' was removed by an update");
    return p;
  }
  if (auto* s = std::get_if<SSLModel>(&m)) {
    if (nbhd.empty()) throw std::invalid_argument("subset-space models need --nbhd with the neighbourhood");
    PointSet u;
    for (const auto& l : split(nbhd)) u |= PointSet::single(find(s->labels(), l));
    Situation sit{find(s->labels(), at), u};
    if (!s->is_situation(sit))
      throw std::invalid_argument("(" + at + ", {" + nbhd + "}) is not a neighbourhood situation of the model");
    return sit;
  }
  const auto& pm = std::get<ProductModel>(m);
  const auto parts = split(at);
  if (parts.size() != pm.factors().size())
    throw std::invalid_argument("world '" + at + "' needs " + std::to_string(pm.factors().size()) + " coordinates");
  World w;
  for (std::size_t i = 0; i < parts.size(); ++i) w.push_back(find(pm.factors()[i].labels(), parts[i]));
  if (!pm.worlds().test(pm.encode(w))) throw std::invalid_argument("world (" + at + ") is not in the model");
  return w;
}

}  // namespace gpal
