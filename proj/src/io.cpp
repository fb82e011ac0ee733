#include "setlab/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "setlab/combinatorics.hpp"
#include "setlab/errors.hpp"

namespace setlab {

using nlohmann::json;

namespace {

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end())
    throw parse_error(std::string("missing field \"") + name + "\"");
  return *it;
}

int int_field(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number_integer())
    throw parse_error(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

std::vector<Element> element_array(const json& v, const std::string& where) {
  if (!v.is_array())
    throw parse_error(where + " must be an array of integers");
  std::vector<Element> out;
  for (const json& x : v) {
    if (!x.is_number_integer())
      throw parse_error(where + " must contain only integers");
    out.push_back(x.get<Element>());
  }
  return out;
}

std::string join_tuple(const std::vector<Element>& t) {
  std::string key;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(t[i]);
  }
  return key;
}

std::vector<Element> split_tuple(const std::string& key) {
  std::vector<Element> out;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    std::size_t comma = key.find(',', pos);
    std::string part = key.substr(pos, comma == std::string::npos
                                           ? std::string::npos
                                           : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw parse_error("bad tuple key \"" + key + "\"");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

json mapping_to_document(const SetMapping& f) {
  json doc = json::object();
  doc["k"] = f.arity();
  doc["n"] = f.ground_size();
  doc["mu"] = f.budget() ? json(*f.budget()) : json(nullptr);
  doc["flags"] = {{"interval_bounded", f.flags().interval_bounded},
                  {"initial_segment", f.flags().initial_segment}};
  json images = json::object();
  for (const auto& [t, img] : f.images()) images[join_tuple(t)] = img.elements();
  doc["images"] = images;
  return doc;
}

SetMapping mapping_from_document(const json& doc) {
  if (!doc.is_object()) throw parse_error("mapping document must be an object");
  int k = int_field(doc, "k");
  int n = int_field(doc, "n");
  std::optional<int> mu;
  const json& mu_field = field(doc, "mu");
  if (!mu_field.is_null()) {
    if (!mu_field.is_number_integer())
      throw parse_error("field \"mu\" must be an integer or null");
    mu = mu_field.get<int>();
  }
  SetMapping::Flags flags;
  const json& fl = field(doc, "flags");
  if (!fl.is_object()) throw parse_error("field \"flags\" must be an object");
  if (fl.contains("interval_bounded")) {
    if (!fl["interval_bounded"].is_boolean())
      throw parse_error("flag \"interval_bounded\" must be a boolean");
    flags.interval_bounded = fl["interval_bounded"].get<bool>();
  }
  if (fl.contains("initial_segment")) {
    if (!fl["initial_segment"].is_boolean())
      throw parse_error("flag \"initial_segment\" must be a boolean");
    flags.initial_segment = fl["initial_segment"].get<bool>();
  }

  SetMapping f(n, k, mu, flags);
  const json& images = field(doc, "images");
  if (!images.is_object())
    throw parse_error("field \"images\" must be an object");
  for (const auto& [key, value] : images.items()) {
    std::vector<Element> tuple = split_tuple(key);
    std::vector<Element> img =
        element_array(value, "image of (" + key + ")");
    f.set_image(tuple, ElementSet(std::move(img)));
  }
  return f;
}

}  // namespace

std::string mapping_to_json(const SetMapping& f) {
  return dump(mapping_to_document(f));
}

SetMapping mapping_from_json(const std::string& text) {
  return mapping_from_document(parse_document(text));
}

std::string scheme_to_json(const EnumerationScheme& s) {
  json doc = json::object();
  doc["n"] = s.ground_size();
  json orders = json::array();
  for (Element x = 0; x < s.ground_size(); ++x) orders.push_back(s.order_of(x));
  doc["orders"] = orders;
  return dump(doc);
}

EnumerationScheme scheme_from_json(const std::string& text) {
  json doc = parse_document(text);
  if (!doc.is_object()) throw parse_error("scheme document must be an object");
  int n = int_field(doc, "n");
  const json& orders = field(doc, "orders");
  if (!orders.is_array() || static_cast<int>(orders.size()) != n)
    throw parse_error("field \"orders\" must be an array of length n");
  std::vector<std::vector<Element>> parsed;
  for (std::size_t x = 0; x < orders.size(); ++x)
    parsed.push_back(element_array(orders[x],
                                   "order of " + std::to_string(x)));
  return EnumerationScheme(n, std::move(parsed));
}

std::string report_to_json(const SearchReport& r) {
  json doc = json::object();
  doc["optimum"] = r.optimum;
  doc["witness"] = r.witness.elements();
  doc["nodes"] = r.nodes_explored;
  doc["millis"] = r.millis;
  return dump(doc);
}

std::string coloring_to_json(const Coloring& c) {
  json doc = json::object();
  doc["a"] = c.a;
  doc["r"] = c.r;
  std::string bits(c.bits.size(), '0');
  for (std::size_t i = 0; i < c.bits.size(); ++i)
    if (c.bits[i]) bits[i] = '1';
  doc["bits"] = bits;
  return dump(doc);
}

Coloring coloring_from_json(const std::string& text) {
  json doc = parse_document(text);
  if (!doc.is_object()) throw parse_error("coloring document must be an object");
  Coloring col;
  col.a = int_field(doc, "a");
  col.r = int_field(doc, "r");
  const json& bits = field(doc, "bits");
  if (!bits.is_string()) throw parse_error("field \"bits\" must be a string");
  std::string s = bits.get<std::string>();
  for (char ch : s) {
    if (ch != '0' && ch != '1')
      throw parse_error("field \"bits\" must contain only 0 and 1");
    col.bits.push_back(ch == '1' ? 1 : 0);
  }
  if (col.bits.size() != binom(col.a, col.r))
    throw parse_error("bit-string length does not match C(a, r)");
  return col;
}

namespace {

json condition_to_document(const char* flavor, const ElementSet& support,
                           const SetMapping& g) {
  json doc = json::object();
  doc["flavor"] = flavor;
  doc["support"] = support.elements();
  doc["g"] = mapping_to_document(g);
  return doc;
}

std::pair<ElementSet, SetMapping> condition_from_document(
    const json& doc, const char* expected_flavor) {
  if (!doc.is_object())
    throw parse_error("condition document must be an object");
  const json& flavor = field(doc, "flavor");
  if (!flavor.is_string() || flavor.get<std::string>() != expected_flavor)
    throw parse_error(std::string("expected flavor \"") + expected_flavor +
                      "\"");
  ElementSet support(element_array(field(doc, "support"), "support"));
  SetMapping g = mapping_from_document(field(doc, "g"));
  return {std::move(support), std::move(g)};
}

}  // namespace

std::string quad_condition_to_json(const QuadCondition& c) {
  return dump(condition_to_document("quadruple", c.support, c.g));
}

QuadCondition quad_condition_from_json(const std::string& text) {
  auto [support, g] = condition_from_document(parse_document(text), "quadruple");
  return {std::move(support), std::move(g)};
}

std::string ranked_condition_to_json(const RankedCondition& c) {
  json doc = condition_to_document("ranked_pair", c.support, c.g);
  json rank = json::array();
  for (const auto& [set, value] : c.rank)
    rank.push_back({{"set", set}, {"rank", value}});
  doc["rank"] = rank;
  return dump(doc);
}

RankedCondition ranked_condition_from_json(const std::string& text) {
  json doc = parse_document(text);
  auto [support, g] = condition_from_document(doc, "ranked_pair");
  RankFunction rank;
  const json& entries = field(doc, "rank");
  if (!entries.is_array()) throw parse_error("field \"rank\" must be an array");
  for (const json& entry : entries) {
    if (!entry.is_object() || !entry.contains("set") || !entry.contains("rank"))
      throw parse_error("rank entries must be {set, rank} objects");
    std::vector<Element> set = element_array(entry["set"], "rank entry set");
    if (!entry["rank"].is_number_integer())
      throw parse_error("rank values must be integers");
    rank[std::move(set)] = entry["rank"].get<int>();
  }
  return {std::move(support), std::move(g), std::move(rank)};
}

std::string pair_condition_to_json(const PairCondition& c) {
  return dump(condition_to_document("singleton_pair", c.support, c.g));
}

PairCondition pair_condition_from_json(const std::string& text) {
  auto [support, g] =
      condition_from_document(parse_document(text), "singleton_pair");
  return {std::move(support), std::move(g)};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot write file: " + path);
  out << text;
  if (!out) throw parse_error("short write to file: " + path);
}

SetMapping parse_mapping_file(const std::string& path) {
  return mapping_from_json(read_text_file(path));
}

}  // namespace setlab
