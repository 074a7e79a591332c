#include "cdiag/io.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cdiag {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw std::invalid_argument(field + ": " + what);
}

Rat read_fraction(const Json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a fraction string");
  try {
    return parse_fraction(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

long long read_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<long long>();
}

PLMap read_label(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    fail(field, "expected an object with a \"kind\" string");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "id") return PLMap::identity();
  if (kind == "tent") return PLMap::tent();
  if (kind == "g") return PLMap::lower_half();
  if (kind == "h") return PLMap::upper_half();
  if (kind == "const") {
    if (!j.contains("value")) fail(field, "const label needs a \"value\" fraction");
    return PLMap::constant(read_fraction(j["value"], field + ".value"));
  }
  if (kind == "pl") {
    if (!j.contains("breakpoints") || !j.contains("values") || !j["breakpoints"].is_array() ||
        !j["values"].is_array()) {
      fail(field, "pl label needs \"breakpoints\" and \"values\" arrays");
    }
    std::vector<Rat> xs, ys;
    for (std::size_t i = 0; i < j["breakpoints"].size(); ++i) {
      xs.push_back(read_fraction(j["breakpoints"][i],
                                 field + ".breakpoints[" + std::to_string(i) + "]"));
    }
    for (std::size_t i = 0; i < j["values"].size(); ++i) {
      ys.push_back(read_fraction(j["values"][i], field + ".values[" + std::to_string(i) + "]"));
    }
    try {
      return PLMap(std::move(xs), std::move(ys));
    } catch (const std::invalid_argument& e) {
      fail(field, e.what());
    }
  }
  fail(field + ".kind", "unknown label kind \"" + kind + "\"");
}

Json write_label(const PLMap& f) {
  Json j;
  if (f == PLMap::identity()) {
    j["kind"] = "id";
  } else if (f == PLMap::tent()) {
    j["kind"] = "tent";
  } else if (f == PLMap::lower_half()) {
    j["kind"] = "g";
  } else if (f == PLMap::upper_half()) {
    j["kind"] = "h";
  } else if (analyze(f).constant) {
    j["kind"] = "const";
    j["value"] = format_fraction(f.values()[0]);
  } else {
    j["kind"] = "pl";
    Json xs = Json::array(), ys = Json::array();
    for (const Rat& x : f.breakpoints()) xs.push_back(format_fraction(x));
    for (const Rat& y : f.values()) ys.push_back(format_fraction(y));
    j["breakpoints"] = std::move(xs);
    j["values"] = std::move(ys);
  }
  return j;
}

}  // namespace

Diagram parse_spec(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("document: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");
  if (!doc.contains("levels") || !doc["levels"].is_array() || doc["levels"].empty()) {
    fail("levels", "expected a nonempty array of summand lists");
  }
  Diagram d;
  for (std::size_t n = 0; n < doc["levels"].size(); ++n) {
    const std::string lfield = "levels[" + std::to_string(n) + "]";
    const Json& lv = doc["levels"][n];
    if (!lv.is_array() || lv.empty()) fail(lfield, "expected a nonempty summand list");
    std::vector<SummandShape> level;
    for (std::size_t i = 0; i < lv.size(); ++i) {
      const std::string sfield = lfield + "[" + std::to_string(i) + "]";
      const Json& s = lv[i];
      if (!s.is_object() || !s.contains("size") || !s.contains("base")) {
        fail(sfield, "expected {\"size\", \"base\"}");
      }
      SummandShape shape;
      shape.size = read_int(s["size"], sfield + ".size");
      if (!s["base"].is_string()) fail(sfield + ".base", "expected \"point\" or \"interval\"");
      const std::string base = s["base"].get<std::string>();
      if (base == "point") {
        shape.base = Base::Point;
      } else if (base == "interval") {
        shape.base = Base::Interval;
      } else {
        fail(sfield + ".base", "expected \"point\" or \"interval\", got \"" + base + "\"");
      }
      level.push_back(shape);
    }
    d.levels.push_back(std::move(level));
  }
  if (doc.contains("bundles")) {
    if (!doc["bundles"].is_array()) fail("bundles", "expected an array");
    for (std::size_t b = 0; b < doc["bundles"].size(); ++b) {
      const std::string bfield = "bundles[" + std::to_string(b) + "]";
      const Json& jb = doc["bundles"][b];
      if (!jb.is_object() || !jb.contains("level") || !jb.contains("from") ||
          !jb.contains("to") || !jb.contains("labels")) {
        fail(bfield, "expected {\"level\", \"from\", \"to\", \"labels\"}");
      }
      EdgeBundle eb;
      // Documents are 1-based; in-memory indices are 0-based.
      eb.level = static_cast<int>(read_int(jb["level"], bfield + ".level")) - 1;
      eb.source = static_cast<int>(read_int(jb["from"], bfield + ".from")) - 1;
      eb.target = static_cast<int>(read_int(jb["to"], bfield + ".to")) - 1;
      if (eb.level < 0 || eb.level + 1 >= d.depth()) fail(bfield + ".level", "out of range");
      if (eb.source < 0 ||
          eb.source >= static_cast<int>(d.levels[static_cast<std::size_t>(eb.level)].size())) {
        fail(bfield + ".from", "out of range");
      }
      if (eb.target < 0 ||
          eb.target >=
              static_cast<int>(d.levels[static_cast<std::size_t>(eb.level) + 1].size())) {
        fail(bfield + ".to", "out of range");
      }
      if (!jb["labels"].is_array() || jb["labels"].empty()) {
        fail(bfield + ".labels", "expected a nonempty array");
      }
      for (std::size_t y = 0; y < jb["labels"].size(); ++y) {
        eb.labels.push_back(
            read_label(jb["labels"][y], bfield + ".labels[" + std::to_string(y) + "]"));
      }
      d.bundles.push_back(std::move(eb));
    }
  }
  if (doc.contains("repeat")) {
    if (!doc["repeat"].is_boolean()) fail("repeat", "expected a boolean");
    d.repeat_last = doc["repeat"].get<bool>();
  }
  require_valid(d);
  return d;
}

std::string serialize_spec(const Diagram& d) {
  Json doc;
  Json levels = Json::array();
  for (const auto& level : d.levels) {
    Json lv = Json::array();
    for (const auto& s : level) {
      Json js;
      js["size"] = s.size;
      js["base"] = s.base == Base::Point ? "point" : "interval";
      lv.push_back(std::move(js));
    }
    levels.push_back(std::move(lv));
  }
  doc["levels"] = std::move(levels);
  Json bundles = Json::array();
  for (int n = 0; n + 1 < d.depth(); ++n) {
    for (const EdgeBundle* b : d.bundles_at(n)) {
      Json jb;
      jb["level"] = b->level + 1;
      jb["from"] = b->source + 1;
      jb["to"] = b->target + 1;
      Json labels = Json::array();
      for (const PLMap& f : b->labels) labels.push_back(write_label(f));
      jb["labels"] = std::move(labels);
      bundles.push_back(std::move(jb));
    }
  }
  doc["bundles"] = std::move(bundles);
  doc["repeat"] = d.repeat_last;
  return doc.dump(2) + "\n";
}

PLMap parse_label_text(const std::string& text) {
  if (!text.empty() && text[0] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw std::invalid_argument(std::string("label: ") + e.what());
    }
    return read_label(j, "label");
  }
  if (text == "id") return PLMap::identity();
  if (text == "tent") return PLMap::tent();
  if (text == "g") return PLMap::lower_half();
  if (text == "h") return PLMap::upper_half();
  if (text.rfind("const:", 0) == 0) return PLMap::constant(parse_fraction(text.substr(6)));
  throw std::invalid_argument("label: unknown descriptor \"" + text + "\"");
}

IntMatrix parse_int_matrix(const std::string& text) {
  IntMatrix out;
  std::string row_text;
  std::istringstream rows(text);
  while (std::getline(rows, row_text, ';')) {
    std::vector<long long> row;
    std::istringstream entries(row_text);
    long long v = 0;
    while (entries >> v) row.push_back(v);
    if (!entries.eof()) throw std::invalid_argument("matrix: expected integer entries");
    if (!row.empty()) out.push_back(std::move(row));
  }
  if (out.empty()) throw std::invalid_argument("matrix: no rows");
  for (const auto& row : out) {
    if (row.size() != out[0].size()) throw std::invalid_argument("matrix: ragged rows");
  }
  return out;
}

}  // namespace cdiag
